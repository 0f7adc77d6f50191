#include "circlet/char_classes.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "circlet/error.hpp"
#include "circlet/integer_linear.hpp"

namespace circlet {

Z2Cochain sw_class(const O2Cochain& witness) {
  Z2Cochain out{witness.degree, std::vector<int>(witness.values.size())};
  for (std::size_t i = 0; i < witness.values.size(); ++i) out.values[i] = witness.values[i].sign;
  return out;
}

CharClassResult euler_cochain(const Nerve& nerve, const O2Cochain& witness) {
  CharClassResult r;
  r.sw = sw_class(witness);
  // Omega r(w) is the rotation by Omega's turn.
  r.lift = {1, std::vector<double>(witness.values.size())};
  for (std::size_t i = 0; i < witness.values.size(); ++i) r.lift.values[i] = principal_turn(witness.values[i].turn);
  r.witness_defect = cocycle_defect(nerve, witness);
  r.defect_warning = r.witness_defect >= 0.5;

  const RealCochain pre = twisted_coboundary(nerve, r.lift, &r.sw);
  r.euler = {2, std::vector<long long>(pre.values.size())};
  for (std::size_t i = 0; i < pre.values.size(); ++i) {
    const double v = pre.values[i];
    const double rounded = std::nearbyint(v);
    r.bracket_margin = std::min(r.bracket_margin, 0.5 - std::abs(v - rounded));
    r.euler.values[i] = static_cast<long long>(rounded);
  }
  if (r.bracket_margin < kBracketGuard)
    throw Error(ErrorKind::BracketAmbiguous, "a pre-rounding Euler value is within 1e-6 of a half-integer");
  return r;
}

FundamentalClass fundamental_class_twisted(const Nerve& nerve, const Z2Cochain& omega) {
  FundamentalClass out;
  const IntMatrix D2 = twisted_boundary_matrix(nerve, omega, 2);
  const IntMatrix D3 = twisted_boundary_matrix(nerve, omega, 3);
  const int n2 = D2.cols();

  SNFOptions opt;
  opt.want_L = false;
  opt.want_R = true;
  opt.want_R_inverse = true;
  const SNFResult snf = smith_normal_form(D2, opt);
  const int k = n2 - snf.rank;
  out.kernel_rank = k;
  if (k < 1) throw Error(ErrorKind::NotASurface, "twisted boundary on 2-chains has trivial kernel");

  // Columns of D3 lie in ker D2, so R^{-1} D3 vanishes outside its last k rows.
  const IntMatrix RinvD3 = snf.R_inverse * D3;
  IntMatrix B(k, D3.cols());
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < D3.cols(); ++j) B(i, j) = RinvD3(n2 - k + i, j);

  SNFOptions opt_b;
  opt_b.want_L = false;
  opt_b.want_R = false;
  opt_b.want_L_inverse = true;
  const SNFResult snf_b = smith_normal_form(B, opt_b);
  out.boundary_rank = snf_b.rank;
  if (k - snf_b.rank != 1)
    throw Error(ErrorKind::NotASurface, "free rank of twisted H_2 is " + std::to_string(k - snf_b.rank) + ", not 1");

  // Last coordinate of the cokernel of B, expressed in the kernel basis.
  std::vector<BigInt> v(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) v[i] = snf_b.L_inverse(i, k - 1);
  std::vector<BigInt> chain(static_cast<std::size_t>(n2));
  for (int t = 0; t < n2; ++t)
    for (int i = 0; i < k; ++i) chain[t] += snf.R(t, n2 - k + i) * v[i];

  const auto cols = filtration_positions(nerve, 2);
  out.mu = {2, std::vector<long long>(static_cast<std::size_t>(n2))};
  for (int t = 0; t < n2; ++t) {
    if (!chain[t].fits_slong_p()) throw Error(ErrorKind::NotASurface, "fundamental class coefficient overflow");
    out.mu.values[cols[t]] = chain[t].get_si();
  }
  auto first = std::find_if(out.mu.values.begin(), out.mu.values.end(), [](long long x) { return x != 0; });
  if (first != out.mu.values.end() && *first < 0)
    for (auto& x : out.mu.values) x = -x;
  return out;
}

EulerNumber euler_number(const IntCochain& euler, const IntCochain& mu) {
  if (euler.degree != 2 || mu.degree != 2 || euler.values.size() != mu.values.size())
    throw Error(ErrorKind::ShapeMismatch, "euler cochain and fundamental class differ in shape");
  EulerNumber n;
  for (std::size_t i = 0; i < mu.values.size(); ++i) n.value += euler.values[i] * mu.values[i];
  return n;
}

StageSize stage_size(const Nerve& nerve, int r) {
  StageSize s;
  s.stage = r;
  for (int i = 0; i < r && i < static_cast<int>(nerve.order.size()); ++i) ++s.simplices[nerve.order[i].first];
  return s;
}

namespace {

double weight_at(const Nerve& nerve, int index) {
  return index >= 1 ? nerve.by_filtration(index).weight : 0.0;
}

// p-simplices with filtration index <= limit, ordered by index.
std::vector<int> rows_up_to(const Nerve& nerve, int p, int limit) {
  std::vector<int> rows;
  for (int pos : filtration_positions(nerve, p))
    if (nerve.at(p, pos).filtration_index <= limit) rows.push_back(pos);
  return rows;
}

// Coefficient of each facet of a p-simplex in the coboundary: w_{v0 v1}
// for the face that drops v0, (-1)^i for the face that drops v_i.
std::vector<std::pair<int, int>> coboundary_row(const Nerve& nerve, int p, int pos, const Z2Cochain* omega) {
  const Simplex& s = nerve.at(p, pos).vertices;
  std::vector<std::pair<int, int>> out;
  const auto faces = facets(s);
  for (std::size_t i = 0; i < faces.size(); ++i) {
    int c = (i % 2 == 0) ? 1 : -1;
    if (i == 0 && omega) c = omega->values[nerve.find(Simplex{s[0], s[1]})];
    out.emplace_back(nerve.find(faces[i]), c);
  }
  return out;
}

template <class T>
int first_nonzero_coboundary(const Nerve& nerve, const Cochain<T>& d, T zero) {
  int first = nerve.size() + 1;
  for (std::size_t i = 0; i < d.values.size(); ++i)
    if (d.values[i] != zero) first = std::min(first, nerve.at(d.degree, static_cast<int>(i)).filtration_index);
  return first - 1;
}

// Echelon reduction of the coboundary matrix over the integers, one row at a
// time in filtration order, with forward substitution of lambda.
int codeath_matrix_twisted(const Nerve& nerve, const IntCochain& lambda, const Z2Cochain& omega, int limit) {
  const int p = lambda.degree;
  const auto rows = rows_up_to(nerve, p, limit);
  const int m = static_cast<int>(rows.size());
  const int n = nerve.count(p - 1);
  std::vector<std::vector<BigInt>> col(static_cast<std::size_t>(n), std::vector<BigInt>(static_cast<std::size_t>(m)));
  for (int i = 0; i < m; ++i)
    for (auto [face, c] : coboundary_row(nerve, p, rows[i], &omega)) col[face][i] += c;

  std::vector<int> free_cols(static_cast<std::size_t>(n));
  for (int c = 0; c < n; ++c) free_cols[c] = c;
  std::vector<std::pair<int, BigInt>> pivots;  // (column, solved y)

  auto axpy = [&](int target, int source, const BigInt& f, int from) {
    for (int r = from; r < m; ++r)
      if (sgn(col[source][r]) != 0) mpz_submul(col[target][r].get_mpz_t(), f.get_mpz_t(), col[source][r].get_mpz_t());
  };

  for (int i = 0; i < m; ++i) {
    int survivor = -1;
    for (int c : free_cols) {
      if (sgn(col[c][i]) == 0) continue;
      if (survivor < 0) {
        survivor = c;
        continue;
      }
      int a = survivor, b = c;
      while (sgn(col[b][i]) != 0) {
        BigInt q = col[a][i] / col[b][i];
        axpy(a, b, q, i);
        std::swap(a, b);
      }
      survivor = a;
    }
    BigInt v = static_cast<long>(lambda.values[rows[i]]);
    for (const auto& [c, y] : pivots)
      if (sgn(col[c][i]) != 0) v -= col[c][i] * y;
    const int index = nerve.at(p, rows[i]).filtration_index;
    if (survivor >= 0) {
      const BigInt& g = col[survivor][i];
      if (!mpz_divisible_p(v.get_mpz_t(), g.get_mpz_t())) return index - 1;
      pivots.emplace_back(survivor, v / g);
      free_cols.erase(std::find(free_cols.begin(), free_cols.end(), survivor));
    } else if (sgn(v) != 0) {
      return index - 1;
    }
  }
  return limit;
}

int codeath_matrix_z2(const Nerve& nerve, const Z2Cochain& lambda, int limit) {
  const int p = lambda.degree;
  const auto rows = rows_up_to(nerve, p, limit);
  const int m = static_cast<int>(rows.size());
  const int n = nerve.count(p - 1);
  std::vector<boost::dynamic_bitset<>> col(static_cast<std::size_t>(n), boost::dynamic_bitset<>(static_cast<std::size_t>(m)));
  for (int i = 0; i < m; ++i)
    for (auto [face, c] : coboundary_row(nerve, p, rows[i], nullptr)) col[face].flip(i);

  std::vector<int> free_cols(static_cast<std::size_t>(n));
  for (int c = 0; c < n; ++c) free_cols[c] = c;
  std::vector<std::pair<int, bool>> pivots;
  for (int i = 0; i < m; ++i) {
    int survivor = -1;
    for (int c : free_cols) {
      if (!col[c][i]) continue;
      if (survivor < 0)
        survivor = c;
      else
        col[c] ^= col[survivor];
    }
    bool v = lambda.values[rows[i]] < 0;
    for (const auto& [c, y] : pivots)
      if (col[c][i] && y) v = !v;
    const int index = nerve.at(p, rows[i]).filtration_index;
    if (survivor >= 0) {
      pivots.emplace_back(survivor, v);
      free_cols.erase(std::find(free_cols.begin(), free_cols.end(), survivor));
    } else if (v) {
      return index - 1;
    }
  }
  return limit;
}

// Stages where a p-simplex enters, up to the limit; between two of them
// coboundary status cannot change.
std::vector<int> entry_stages(const Nerve& nerve, int p, int limit) {
  std::vector<int> stages;
  for (int pos : rows_up_to(nerve, p, limit)) stages.push_back(nerve.at(p, pos).filtration_index);
  return stages;
}

template <class Solvable>
int bruteforce_codeath(const std::vector<int>& stages, int limit, bool exhaustive, Solvable solvable) {
  if (stages.empty()) return limit;
  if (exhaustive) {
    for (int r : stages)
      if (!solvable(r)) return r - 1;
    return limit;
  }
  if (solvable(stages.back())) return limit;
  int lo = -1, hi = static_cast<int>(stages.size()) - 1;  // stages[hi] fails
  while (hi - lo > 1) {
    const int mid = (lo + hi) / 2;
    if (solvable(stages[mid]))
      lo = mid;
    else
      hi = mid;
  }
  return stages[hi] - 1;
}

}  // namespace

int codeath_bruteforce_twisted(const Nerve& nerve, const IntCochain& lambda, const Z2Cochain& omega, int limit,
                               bool exhaustive) {
  const int p = lambda.degree;
  auto solvable = [&](int r) {
    const auto rows = rows_up_to(nerve, p, r);
    std::vector<int> cols;
    for (int pos : filtration_positions(nerve, p - 1))
      if (nerve.at(p - 1, pos).filtration_index <= r) cols.push_back(pos);
    std::map<int, int> col_of;
    for (std::size_t c = 0; c < cols.size(); ++c) col_of[cols[c]] = static_cast<int>(c);
    IntMatrix A(static_cast<int>(rows.size()), static_cast<int>(cols.size()));
    std::vector<BigInt> b(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
      for (auto [face, c] : coboundary_row(nerve, p, rows[i], &omega)) A(static_cast<int>(i), col_of.at(face)) += c;
      b[i] = static_cast<long>(lambda.values[rows[i]]);
    }
    return solve_integer(A, b).has_value();
  };
  return bruteforce_codeath(entry_stages(nerve, p, limit), limit, exhaustive, solvable);
}

int codeath_bruteforce_z2(const Nerve& nerve, const Z2Cochain& lambda, int limit, bool exhaustive) {
  const int p = lambda.degree;
  auto solvable = [&](int r) {
    const auto rows = rows_up_to(nerve, p, r);
    std::vector<int> cols;
    for (int pos : filtration_positions(nerve, p - 1))
      if (nerve.at(p - 1, pos).filtration_index <= r) cols.push_back(pos);
    std::map<int, int> col_of;
    for (std::size_t c = 0; c < cols.size(); ++c) col_of[cols[c]] = static_cast<int>(c);
    GF2Matrix A(static_cast<int>(rows.size()), static_cast<int>(cols.size()));
    boost::dynamic_bitset<> b(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
      for (auto [face, c] : coboundary_row(nerve, p, rows[i], nullptr)) {
        const int j = col_of.at(face);
        A.set(static_cast<int>(i), j, !A.get(static_cast<int>(i), j));
      }
      b[i] = lambda.values[rows[i]] < 0;
    }
    return solve_gf2(A, b).has_value();
  };
  return bruteforce_codeath(entry_stages(nerve, p, limit), limit, exhaustive, solvable);
}

ClassPersistence persistence_z2(const Nerve& nerve, const Z2Cochain& lambda) {
  if (!nerve.has_filtration()) throw Error(ErrorKind::IndexOutOfRange, "persistence needs a filtration");
  if (lambda.degree < 1) throw Error(ErrorKind::DegreeUnsupported, "persistence needs degree >= 1");
  ClassPersistence out;
  out.limit = nerve.size();
  int b = nerve.size();
  if (lambda.degree < kMaxNerveDim) b = std::min(b, first_nonzero_coboundary(nerve, z2_coboundary(nerve, lambda), 1));
  out.cobirth = {b, weight_at(nerve, b)};
  out.matrix_codeath = codeath_matrix_z2(nerve, lambda, out.limit);
  int d = out.matrix_codeath;
  if (nerve.size() <= kCrossCheckLimit) {
    out.cross_checked = true;
    const int brute = codeath_bruteforce_z2(nerve, lambda, out.limit, false);
    out.methods_agree = brute == d;
    d = brute;
  }
  out.codeath = {d, weight_at(nerve, d)};
  return out;
}

ClassPersistence persistence_twisted(const Nerve& nerve, const IntCochain& lambda, const Z2Cochain& omega,
                                     int limit) {
  if (!nerve.has_filtration()) throw Error(ErrorKind::IndexOutOfRange, "persistence needs a filtration");
  if (lambda.degree < 1) throw Error(ErrorKind::DegreeUnsupported, "persistence needs degree >= 1");
  ClassPersistence out;
  out.limit = std::clamp(limit, 0, nerve.size());
  int b = out.limit;
  if (lambda.degree < kMaxNerveDim)
    b = std::min(b, first_nonzero_coboundary(nerve, twisted_coboundary(nerve, lambda, &omega), 0LL));
  out.cobirth = {b, weight_at(nerve, b)};
  out.matrix_codeath = codeath_matrix_twisted(nerve, lambda, omega, out.limit);
  int d = out.matrix_codeath;
  if (nerve.size() <= kCrossCheckLimit) {
    out.cross_checked = true;
    const int brute = codeath_bruteforce_twisted(nerve, lambda, omega, out.limit, false);
    out.methods_agree = brute == d;
    d = brute;
  }
  out.codeath = {d, weight_at(nerve, d)};
  return out;
}

PersistenceReport persistence(const Nerve& nerve, const Z2Cochain& sw, const IntCochain& euler) {
  PersistenceReport rep;
  rep.nerve_size = nerve.size();
  rep.sw = persistence_z2(nerve, sw);
  rep.euler = persistence_twisted(nerve, euler, sw, rep.sw.cobirth.index);
  for (int d = 0; d <= kMaxNerveDim; ++d)
    for (const auto& s : nerve.simplices[d]) rep.w_max = std::max(rep.w_max, s.weight);
  for (int r : {rep.sw.cobirth.index, rep.sw.codeath.index, rep.euler.cobirth.index, rep.euler.codeath.index,
                nerve.size()})
    rep.stages.push_back(stage_size(nerve, r));
  return rep;
}

}  // namespace circlet

namespace circlet {

std::optional<std::vector<int>> z2_potential(const Nerve& nerve, const Z2Cochain& w) {
  GF2Matrix A(nerve.count(1), nerve.count(0));
  boost::dynamic_bitset<> b(static_cast<std::size_t>(nerve.count(1)));
  for (int e = 0; e < nerve.count(1); ++e) {
    const Simplex& s = nerve.at(1, e).vertices;
    A.set(e, s[0]);
    A.set(e, s[1]);
    b[e] = w.values[e] < 0;
  }
  const auto x = solve_gf2(A, b);
  if (!x) return std::nullopt;
  std::vector<int> phi(static_cast<std::size_t>(nerve.count(0)));
  for (int j = 0; j < nerve.count(0); ++j) phi[j] = (*x)[j] ? -1 : 1;
  return phi;
}

std::optional<IntCochain> integer_potential(const Nerve& nerve, const IntCochain& e) {
  IntMatrix A(nerve.count(2), nerve.count(1));
  std::vector<BigInt> b(static_cast<std::size_t>(nerve.count(2)));
  for (int t = 0; t < nerve.count(2); ++t) {
    const auto faces = facets(nerve.at(2, t).vertices);
    for (std::size_t i = 0; i < faces.size(); ++i) A(t, nerve.find(faces[i])) += (i % 2 == 0) ? 1 : -1;
    b[t] = static_cast<long>(e.values[t]);
  }
  const auto x = solve_integer(A, b);
  if (!x) return std::nullopt;
  IntCochain beta{1, std::vector<long long>(static_cast<std::size_t>(nerve.count(1)))};
  for (int i = 0; i < nerve.count(1); ++i) {
    if (!(*x)[i].fits_slong_p()) throw Error(ErrorKind::NoSolution, "integer potential overflow");
    beta.values[i] = (*x)[i].get_si();
  }
  return beta;
}

}  // namespace circlet
