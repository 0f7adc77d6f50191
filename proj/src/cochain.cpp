#include "circlet/cochain.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "circlet/error.hpp"

namespace circlet {
namespace {

template <class T>
void check_shape(const Nerve& nerve, const Cochain<T>& c, const char* what) {
  if (c.degree < 0 || c.degree > kMaxNerveDim ||
      static_cast<int>(c.values.size()) != nerve.count(c.degree))
    throw Error(ErrorKind::ShapeMismatch, std::string(what) + ": cochain does not match the nerve");
}

template <class T>
void check_same(const Cochain<T>& a, const Cochain<T>& b) {
  if (a.degree != b.degree || a.values.size() != b.values.size())
    throw Error(ErrorKind::ShapeMismatch, "cochains have different shapes");
}

int face_position(const Nerve& nerve, const Simplex& s) {
  const int pos = nerve.find(s);
  if (pos < 0) throw Error(ErrorKind::ShapeMismatch, "nerve is not closed under faces");
  return pos;
}

int edge_position(const Nerve& nerve, int j, int k) {
  const int pos = nerve.find(Simplex{std::min(j, k), std::max(j, k)});
  if (pos < 0)
    throw Error(ErrorKind::ShapeMismatch,
                "no edge (" + std::to_string(j) + "," + std::to_string(k) + ") in the nerve");
  return pos;
}

template <class T>
Cochain<T> abelian_coboundary(const Nerve& nerve, const Cochain<T>& c, const Z2Cochain* omega) {
  check_shape(nerve, c, "twisted_coboundary");
  if (c.degree > 2) throw Error(ErrorKind::DegreeUnsupported, "coboundary above degree 2");
  if (omega) check_shape(nerve, *omega, "twisting cochain");
  const int p = c.degree;
  Cochain<T> out{p + 1, std::vector<T>(static_cast<std::size_t>(nerve.count(p + 1)), T{})};
  for (int i = 0; i < nerve.count(p + 1); ++i) {
    const Simplex& s = nerve.at(p + 1, i).vertices;
    const auto faces = facets(s);
    const int w = omega ? omega->values[edge_position(nerve, s[0], s[1])] : 1;
    T acc = static_cast<T>(w) * c.values[face_position(nerve, faces[0])];
    for (std::size_t f = 1; f < faces.size(); ++f) {
      const T v = c.values[face_position(nerve, faces[f])];
      acc += (f % 2 == 1) ? -v : v;
    }
    out.values[i] = acc;
  }
  return out;
}

template <class T>
double abs_distance(const Cochain<T>& a, const Cochain<T>& b) {
  check_same(a, b);
  double d = 0.0;
  for (std::size_t i = 0; i < a.values.size(); ++i)
    d = std::max(d, std::abs(static_cast<double>(a.values[i]) - static_cast<double>(b.values[i])));
  return d;
}

}  // namespace

O2Element o2_edge(const Nerve& nerve, const O2Cochain& c, int j, int k) {
  if (j == k) return O2Element::identity();
  const O2Element& v = c.values[edge_position(nerve, j, k)];
  return j < k ? v : v.inverse();
}

int z2_edge(const Nerve& nerve, const Z2Cochain& c, int j, int k) {
  if (j == k) return 1;
  return c.values[edge_position(nerve, j, k)];
}

double twisted_edge(const Nerve& nerve, const RealCochain& theta, const Z2Cochain& omega, int j,
                    int k) {
  if (j == k) return 0.0;
  const int pos = edge_position(nerve, j, k);
  return j < k ? theta.values[pos] : -omega.values[pos] * theta.values[pos];
}

long long twisted_edge(const Nerve& nerve, const IntCochain& beta, const Z2Cochain& omega, int j,
                       int k) {
  if (j == k) return 0;
  const int pos = edge_position(nerve, j, k);
  return j < k ? beta.values[pos] : -omega.values[pos] * beta.values[pos];
}

RealCochain twisted_coboundary(const Nerve& nerve, const RealCochain& c, const Z2Cochain* omega) {
  return abelian_coboundary(nerve, c, omega);
}

IntCochain twisted_coboundary(const Nerve& nerve, const IntCochain& c, const Z2Cochain* omega) {
  return abelian_coboundary(nerve, c, omega);
}

Z2Cochain z2_coboundary(const Nerve& nerve, const Z2Cochain& c) {
  check_shape(nerve, c, "z2_coboundary");
  if (c.degree > 2) throw Error(ErrorKind::DegreeUnsupported, "coboundary above degree 2");
  const int p = c.degree;
  Z2Cochain out{p + 1, std::vector<int>(static_cast<std::size_t>(nerve.count(p + 1)), 1)};
  for (int i = 0; i < nerve.count(p + 1); ++i) {
    int prod = 1;
    for (const auto& f : facets(nerve.at(p + 1, i).vertices))
      prod *= c.values[face_position(nerve, f)];
    out.values[i] = prod;
  }
  return out;
}

O2Cochain o2_coboundary(const Nerve& nerve, const O2Cochain& c) {
  check_shape(nerve, c, "o2_coboundary");
  if (c.degree != 1) throw Error(ErrorKind::DegreeUnsupported, "O(2) coboundary needs degree 1");
  O2Cochain out{2, std::vector<O2Element>(static_cast<std::size_t>(nerve.count(2)))};
  for (int i = 0; i < nerve.count(2); ++i) {
    const Simplex& s = nerve.at(2, i).vertices;
    const O2Element& jk = c.values[edge_position(nerve, s[0], s[1])];
    const O2Element& kl = c.values[edge_position(nerve, s[1], s[2])];
    const O2Element& jl = c.values[edge_position(nerve, s[0], s[2])];
    out.values[i] = jk * kl * jl.inverse();
  }
  return out;
}

double cochain_distance(const Z2Cochain& a, const Z2Cochain& b) { return abs_distance(a, b); }
double cochain_distance(const IntCochain& a, const IntCochain& b) { return abs_distance(a, b); }
double cochain_distance(const RealCochain& a, const RealCochain& b) { return abs_distance(a, b); }

double cochain_distance(const O2Cochain& a, const O2Cochain& b) {
  check_same(a, b);
  double d = 0.0;
  for (std::size_t i = 0; i < a.values.size(); ++i)
    d = std::max(d, o2_frobenius_distance(a.values[i], b.values[i]));
  return d;
}

double cocycle_defect(const Nerve& nerve, const O2Cochain& omega) {
  const O2Cochain d = o2_coboundary(nerve, omega);
  double worst = 0.0;
  for (const auto& v : d.values)
    worst = std::max(worst, o2_frobenius_distance(v, O2Element::identity()));
  return worst;
}

O2Cochain act_by_potential(const Nerve& nerve, const O2Cochain& phi, const O2Cochain& omega) {
  check_shape(nerve, phi, "act_by_potential potential");
  check_shape(nerve, omega, "act_by_potential cochain");
  if (phi.degree != 0 || omega.degree != 1)
    throw Error(ErrorKind::ShapeMismatch, "act_by_potential needs a 0-cochain and a 1-cochain");
  O2Cochain out = omega;
  for (int i = 0; i < nerve.count(1); ++i) {
    const Simplex& s = nerve.at(1, i).vertices;
    out.values[i] = phi.values[s[0]] * omega.values[i] * phi.values[s[1]].inverse();
  }
  return out;
}

bool is_z2_cocycle(const Nerve& nerve, const Z2Cochain& omega) {
  const Z2Cochain d = z2_coboundary(nerve, omega);
  return std::all_of(d.values.begin(), d.values.end(), [](int v) { return v == 1; });
}

}  // namespace circlet
