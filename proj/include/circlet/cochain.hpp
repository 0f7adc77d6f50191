#pragma once

#include <vector>

#include "circlet/circle_algebra.hpp"
#include "circlet/nerve.hpp"

namespace circlet {

// Values on the degree-p simplices of a nerve, stored in the nerve's
// lexicographic order (vertices increasing). Values on other orderings of
// a simplex follow from the inversion rules below.
template <class T>
struct Cochain {
  int degree = 1;
  std::vector<T> values;

  bool operator==(const Cochain&) const = default;
};

// Z2 is written multiplicatively: entries are +1 or -1.
using Z2Cochain = Cochain<int>;
using IntCochain = Cochain<long long>;
using RealCochain = Cochain<double>;
using O2Cochain = Cochain<O2Element>;

template <class T>
Cochain<T> constant_cochain(const Nerve& nerve, int degree, const T& value) {
  return {degree, std::vector<T>(static_cast<std::size_t>(nerve.count(degree)), value)};
}

// Edge value for an arbitrary ordered pair. O(2): identity when j == k and
// Omega_kj = Omega_jk^{-1}. Z2: symmetric. Twisted real: Theta_kj = -w_jk Theta_jk.
O2Element o2_edge(const Nerve& nerve, const O2Cochain& c, int j, int k);
int z2_edge(const Nerve& nerve, const Z2Cochain& c, int j, int k);
double twisted_edge(const Nerve& nerve, const RealCochain& theta, const Z2Cochain& omega, int j,
                    int k);
long long twisted_edge(const Nerve& nerve, const IntCochain& beta, const Z2Cochain& omega, int j,
                       int k);

// Abelian coboundary, twisted by omega when given (degrees 0, 1, 2):
// (d c)(v0..v_{p+1}) = w_{v0 v1} c(v1..v_{p+1}) + sum_{i>=1} (-1)^i c(.. v_i omitted ..).
RealCochain twisted_coboundary(const Nerve& nerve, const RealCochain& c, const Z2Cochain* omega);
IntCochain twisted_coboundary(const Nerve& nerve, const IntCochain& c, const Z2Cochain* omega);
// Multiplicative coboundary of a Z2 cochain (degrees 0, 1, 2).
Z2Cochain z2_coboundary(const Nerve& nerve, const Z2Cochain& c);
// (d Omega)_jkl = Omega_jk Omega_kl Omega_jl^{-1}.
O2Cochain o2_coboundary(const Nerve& nerve, const O2Cochain& c);

double cochain_distance(const Z2Cochain& a, const Z2Cochain& b);
double cochain_distance(const IntCochain& a, const IntCochain& b);
double cochain_distance(const RealCochain& a, const RealCochain& b);
double cochain_distance(const O2Cochain& a, const O2Cochain& b);

// Max Frobenius distance of (d Omega) from the identity; 0 without triangles.
double cocycle_defect(const Nerve& nerve, const O2Cochain& omega);

// (phi . Omega)_jk = phi_j Omega_jk phi_k^{-1}.
O2Cochain act_by_potential(const Nerve& nerve, const O2Cochain& phi, const O2Cochain& omega);

bool is_z2_cocycle(const Nerve& nerve, const Z2Cochain& omega);

}  // namespace circlet
