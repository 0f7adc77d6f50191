#include "circlet/projection.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <string>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "circlet/char_classes.hpp"
#include "circlet/error.hpp"

namespace circlet {

double PartitionOfUnity::at(int sample, int set) const {
  for (const auto& [j, w] : weights[sample])
    if (j == set) return w;
  return 0.0;
}

PartitionOfUnity partition_of_unity(const BundleDataset& dataset, const Cover& cover) {
  const std::size_t n = dataset.samples.size();
  PartitionOfUnity rho;
  rho.weights.assign(n, {});
  for (std::size_t j = 0; j < cover.size(); ++j) {
    const auto& set = cover[j];
    for (int x : set.members) {
      if (x < 0 || static_cast<std::size_t>(x) >= n)
        throw Error(ErrorKind::IndexOutOfRange, "cover member " + std::to_string(x));
      double w = 1.0;
      if (set.center && set.radius && dataset.base_space.kind != BaseKind::Abstract)
        w = std::max(0.0, *set.radius - dataset.base_space.distance(dataset.samples[x].base, *set.center));
      rho.weights[x].emplace_back(static_cast<int>(j), w);
    }
  }
  for (std::size_t x = 0; x < n; ++x) {
    auto& ws = rho.weights[x];
    if (ws.empty())
      throw Error(ErrorKind::UncoveredPoint, "sample " + std::to_string(dataset.samples[x].id) + " lies in no set");
    double total = 0.0;
    for (const auto& p : ws) total += p.second;
    if (total <= 0.0) {
      for (auto& p : ws) p.second = 1.0;
      total = static_cast<double>(ws.size());
    }
    for (auto& p : ws) p.second /= total;
  }
  return rho;
}

Eigen::MatrixXd gr_project(const Eigen::MatrixXd& A) {
  const Eigen::Index D = A.rows();
  if (A.cols() != D || D < 2) throw Error(ErrorKind::ShapeMismatch, "gr_project needs a square matrix of size >= 2");
  const Eigen::MatrixXd sym = 0.5 * (A + A.transpose());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(sym);
  // Eigenvalues ascend.
  const auto& vals = eig.eigenvalues();
  if (D > 2 && vals(D - 2) - vals(D - 3) <= kEigengapGuard)
    throw Error(ErrorKind::EigengapTooSmall, "second and third eigenvalues coincide");
  const Eigen::MatrixXd V = eig.eigenvectors().rightCols(2);
  return V * V.transpose();
}

Eigen::Matrix2d inverse_sqrt_2x2(const Eigen::Matrix2d& G) {
  const double det = G.determinant();
  const double tr = G.trace();
  if (det <= 0.0 || tr <= 0.0) throw Error(ErrorKind::RankDeficient, "2x2 Gram matrix is not positive definite");
  const double s = std::sqrt(det);
  const double t = std::sqrt(tr + 2.0 * s);
  const Eigen::Matrix2d root = (G + s * Eigen::Matrix2d::Identity()) / t;
  return root.inverse();
}

Eigen::MatrixXd stiefel_fiber_project(const Eigen::MatrixXd& P, const Eigen::MatrixXd& A) {
  if (A.cols() != 2 || P.rows() != A.rows() || P.cols() != A.rows())
    throw Error(ErrorKind::ShapeMismatch, "stiefel_fiber_project needs D x D and D x 2");
  const Eigen::MatrixXd PA = P * A;
  const Eigen::Matrix2d G = PA.transpose() * PA;
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> eig(G);
  if (std::sqrt(std::max(0.0, eig.eigenvalues()(0))) <= kRankGuard)
    throw Error(ErrorKind::RankDeficient, "projected frame has a vanishing singular value");
  return PA * inverse_sqrt_2x2(G);
}

namespace {

// Local frames at one base point; block i (for the i-th containing set) is
// sqrt(rho_i) Omega_{set_i, j}.
LocalClassifying local_classifying(const Nerve& nerve, const O2Cochain& omega,
                                   const std::vector<std::pair<int, double>>& ws) {
  LocalClassifying lc;
  const int m = static_cast<int>(ws.size());
  for (const auto& p : ws) lc.sets.push_back(p.first);
  lc.ftilde = Eigen::MatrixXd::Zero(2 * m, 2 * m);
  for (int a = 0; a < m; ++a) {
    Eigen::MatrixXd phi(2 * m, 2);
    for (int i = 0; i < m; ++i)
      phi.block(2 * i, 0, 2, 2) = std::sqrt(ws[i].second) * o2_edge(nerve, omega, ws[i].first, ws[a].first).matrix();
    lc.ftilde += ws[a].second * phi * phi.transpose();
    lc.frames.push_back(std::move(phi));
  }
  return lc;
}

std::string sample_name(const BundleDataset* dataset, int x) {
  return "sample " + std::to_string(dataset ? dataset->samples[x].id : x);
}

}  // namespace

ProjectorField classifying_map(const Nerve& nerve, const O2Cochain& omega, const PartitionOfUnity& rho) {
  ProjectorField field;
  field.points.resize(rho.weights.size());
  for (std::size_t x = 0; x < rho.weights.size(); ++x) {
    auto lc = local_classifying(nerve, omega, rho.weights[x]);
    try {
      lc.projector = gr_project(lc.ftilde);
    } catch (const Error& e) {
      throw Error(e.kind(), sample_name(nullptr, static_cast<int>(x)) + ": " + e.what());
    }
    field.points[x] = std::move(lc);
  }
  return field;
}

O2Element ProjectedCocycle::value(int sample, int j, int k) const {
  if (j == k) return O2Element::identity();
  const int a = std::min(j, k), b = std::max(j, k);
  for (const auto& e : points[sample])
    if (e.j == a && e.k == b) return j < k ? e.value : e.value.inverse();
  throw Error(ErrorKind::IndexOutOfRange,
              "sets " + std::to_string(j) + " and " + std::to_string(k) + " do not both contain the sample");
}

ProjectedCocycle project_cocycle(const Nerve& nerve, const O2Cochain& omega, const PartitionOfUnity& rho) {
  ProjectedCocycle out;
  out.defect_warning = cocycle_defect(nerve, omega) >= std::sqrt(2.0) / 4.0;
  const ProjectorField field = classifying_map(nerve, omega, rho);
  out.points.resize(field.points.size());
  for (std::size_t x = 0; x < field.points.size(); ++x) {
    const auto& lc = field.points[x];
    const int m = static_cast<int>(lc.sets.size());
    std::vector<Eigen::MatrixXd> frames(static_cast<std::size_t>(m));
    try {
      for (int a = 0; a < m; ++a) frames[a] = stiefel_fiber_project(lc.projector, lc.frames[a]);
    } catch (const Error& e) {
      throw Error(e.kind(), sample_name(nullptr, static_cast<int>(x)) + ": " + e.what());
    }
    auto& edges = out.points[x];
    for (int a = 0; a < m; ++a) {
      for (int b = a + 1; b < m; ++b) {
        const Eigen::Matrix2d prod = frames[a].transpose() * frames[b];
        ProjectedEdge e;
        e.j = lc.sets[a];
        e.k = lc.sets[b];
        e.value = O2Element::nearest(prod);
        e.rounding_residual = (prod - e.value.matrix()).norm();
        out.max_rounding_residual = std::max(out.max_rounding_residual, e.rounding_residual);
        out.distance_to_input =
            std::max(out.distance_to_input, o2_frobenius_distance(e.value, o2_edge(nerve, omega, e.j, e.k)));
        edges.push_back(e);
      }
    }
    for (int a = 0; a < m; ++a)
      for (int b = a + 1; b < m; ++b)
        for (int c = b + 1; c < m; ++c) {
          const int j = lc.sets[a], k = lc.sets[b], l = lc.sets[c];
          const O2Element loop = out.value(static_cast<int>(x), j, k) * out.value(static_cast<int>(x), k, l) *
                                 out.value(static_cast<int>(x), j, l).inverse();
          out.max_cocycle_residual =
              std::max(out.max_cocycle_residual, o2_frobenius_distance(loop, O2Element::identity()));
        }
  }
  return out;
}

namespace {

// Karcher mean of transition-moved values; the caller names the sample on failure.
S1Point merged_value(const std::vector<std::pair<int, double>>& ws, int j, int x,
                     const std::function<O2Element(int, int)>& transition,
                     const std::function<S1Point(int)>& local_value) {
  std::vector<S1Point> pts;
  std::vector<double> wts;
  for (const auto& [k, w] : ws) {
    pts.push_back(o2_apply(transition(j, k), local_value(k)));
    wts.push_back(w);
  }
  try {
    return karcher_mean(pts, wts);
  } catch (const Error& e) {
    throw Error(e.kind(), "sample " + std::to_string(x) + ", set " + std::to_string(j) + ": " + e.what());
  }
}

const S1Point& local_at(const Trivialization& trivs, int set, int x) {
  const S1Point* v = trivs[set].find(x);
  if (!v)
    throw Error(ErrorKind::IndexOutOfRange,
                "set " + std::to_string(set) + " has no coordinate for sample " + std::to_string(x));
  return *v;
}

}  // namespace

Trivialization project_trivialization(const Trivialization& trivs, const ProjectedCocycle& projected,
                                      const PartitionOfUnity& rho) {
  Trivialization out(trivs.size());
  for (std::size_t j = 0; j < trivs.size(); ++j) {
    out[j].samples = trivs[j].samples;
    out[j].values.reserve(trivs[j].samples.size());
    for (int x : trivs[j].samples) {
      out[j].values.push_back(merged_value(
          rho.weights[x], static_cast<int>(j), x, [&](int a, int b) { return projected.value(x, a, b); },
          [&](int k) { return local_at(trivs, k, x); }));
    }
  }
  return out;
}

ReducedFrames stiefel_reduce(const std::vector<Eigen::MatrixXd>& frames, int d) {
  if (frames.empty()) throw Error(ErrorKind::ShapeMismatch, "no frames to reduce");
  const Eigen::Index D = frames.front().rows();
  if (d < 2 || d > D)
    throw Error(ErrorKind::ShapeMismatch, "target dimension " + std::to_string(d) + " outside [2, " +
                                              std::to_string(D) + "]");
  Eigen::MatrixXd M = Eigen::MatrixXd::Zero(D, D);
  for (const auto& f : frames) {
    if (f.rows() != D || f.cols() != 2) throw Error(ErrorKind::ShapeMismatch, "frames must share shape D x 2");
    M.noalias() += f * f.transpose();
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(M);
  ReducedFrames out;
  out.basis = eig.eigenvectors().rightCols(d);
  out.frames.reserve(frames.size());
  out.errors.reserve(frames.size());
  for (const auto& f : frames) {
    const Eigen::MatrixXd c = out.basis.transpose() * f;
    const double err = (f - out.basis * c).norm();
    out.errors.push_back(err);
    out.max_error = std::max(out.max_error, err);
    const Eigen::Matrix2d G = c.transpose() * c;
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> g(G);
    if (std::sqrt(std::max(0.0, g.eigenvalues()(0))) <= kRankGuard)
      throw Error(ErrorKind::RankDeficient, "reduced frame has a vanishing singular value");
    out.frames.push_back(c * inverse_sqrt_2x2(G));
  }
  return out;
}

std::vector<ReductionErrorPoint> reduction_error_curve(const std::vector<Eigen::MatrixXd>& frames) {
  std::vector<ReductionErrorPoint> curve;
  if (frames.empty()) return curve;
  const int D = static_cast<int>(frames.front().rows());
  Eigen::MatrixXd M = Eigen::MatrixXd::Zero(D, D);
  for (const auto& f : frames) M.noalias() += f * f.transpose();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(M);
  for (int d = 2; d <= D; ++d) {
    const Eigen::MatrixXd E = eig.eigenvectors().rightCols(d);
    ReductionErrorPoint p;
    p.dim = d;
    for (const auto& f : frames) {
      const double err = (f - E * (E.transpose() * f)).norm();
      p.max_error = std::max(p.max_error, err);
      p.mean_error += err;
    }
    p.mean_error /= static_cast<double>(frames.size());
    curve.push_back(p);
  }
  return curve;
}

BundleMapResult bundle_map(const BundleDataset& dataset, const Cover& cover, const Nerve& nerve,
                           const Trivialization& trivs, const O2Cochain& omega, int r, int d) {
  if (trivs.size() != cover.size()) throw Error(ErrorKind::ShapeMismatch, "one trivialization per cover set");
  BundleMapResult out;
  out.stage = r;
  out.dim = d;
  CutResult cut = cut_base(dataset, cover, nerve, r);
  out.stage_cover = cut.cover;
  out.cut_exact = cut.exact();
  out.cut_log = std::move(cut.log);
  const Cover& cr = out.stage_cover;
  const int n = static_cast<int>(cr.size());
  const PartitionOfUnity rho = partition_of_unity(dataset, cr);
  const std::size_t ns = dataset.samples.size();

  // Global frames Phi_j(b) in R^{2n x 2}, one per (sample, containing set).
  std::vector<Eigen::MatrixXd> global;
  std::vector<std::size_t> first(ns + 1, 0);
  for (std::size_t x = 0; x < ns; ++x) {
    first[x] = global.size();
    const auto& ws = rho.weights[x];
    for (const auto& [j, wj] : ws) {
      (void)wj;
      Eigen::MatrixXd phi = Eigen::MatrixXd::Zero(2 * n, 2);
      for (const auto& [i, wi] : ws) phi.block(2 * i, 0, 2, 2) = std::sqrt(wi) * o2_edge(nerve, omega, i, j).matrix();
      global.push_back(std::move(phi));
    }
  }
  first[ns] = global.size();
  const ReducedFrames reduced = stiefel_reduce(global, d);
  out.max_reduction_error = reduced.max_error;
  out.reduction_curve = reduction_error_curve(global);
  out.reduction = reduced.method;

  out.coords.resize(ns);
  for (std::size_t x = 0; x < ns; ++x) {
    const auto& ws = rho.weights[x];
    const int m = static_cast<int>(ws.size());
    Eigen::MatrixXd ft = Eigen::MatrixXd::Zero(d, d);
    for (int a = 0; a < m; ++a) ft += ws[a].second * reduced.frames[first[x] + a] * reduced.frames[first[x] + a].transpose();
    std::vector<Eigen::MatrixXd> phi(static_cast<std::size_t>(m));
    Eigen::MatrixXd f;
    try {
      f = gr_project(ft);
      for (int a = 0; a < m; ++a) phi[a] = stiefel_fiber_project(f, reduced.frames[first[x] + a]);
    } catch (const Error& e) {
      throw Error(e.kind(), sample_name(&dataset, static_cast<int>(x)) + ": " + e.what());
    }
    auto pos = [&](int set) {
      for (int a = 0; a < m; ++a)
        if (ws[a].first == set) return a;
      return -1;
    };
    auto transition = [&](int j, int k) {
      return O2Element::nearest(phi[pos(j)].transpose() * phi[pos(k)]);
    };
    std::vector<Eigen::VectorXd> F(static_cast<std::size_t>(m));
    int best = 0;
    for (int a = 0; a < m; ++a) {
      const S1Point v = merged_value(ws, ws[a].first, dataset.samples[x].id, transition,
                                     [&](int k) { return local_at(trivs, k, static_cast<int>(x)); });
      F[a] = phi[a] * v.vec();
      if (ws[a].second > ws[best].second) best = a;
    }
    for (int a = 0; a < m; ++a)
      for (int b = a + 1; b < m; ++b) out.overlap_residual = std::max(out.overlap_residual, (F[a] - F[b]).norm());
    out.coords[x] = F[best];
    const Eigen::MatrixXd I = Eigen::MatrixXd::Identity(d, d);
    out.plane_residual = std::max(out.plane_residual, ((I - f) * F[best]).norm());
  }
  return out;
}

GlobalTrivialization global_trivialize(const BundleDataset& dataset, const Cover& cover, const Nerve& nerve,
                                       const Trivialization& trivs, const O2Cochain& omega) {
  if (trivs.size() != cover.size()) throw Error(ErrorKind::ShapeMismatch, "one trivialization per cover set");
  const CharClassResult cls = euler_cochain(nerve, omega);
  const auto phi = z2_potential(nerve, cls.sw);
  if (!phi) throw NotTrivializableError("sw");

  // Omega^ = phi . Omega is a rotation cocycle; phi_j Theta_jk lifts it and
  // its coboundary rounds to phi_j e_jkl.
  RealCochain theta{1, std::vector<double>(cls.lift.values.size())};
  for (int e = 0; e < nerve.count(1); ++e) theta.values[e] = (*phi)[nerve.at(1, e).vertices[0]] * cls.lift.values[e];
  IntCochain euler{2, std::vector<long long>(cls.euler.values.size())};
  for (int t = 0; t < nerve.count(2); ++t) euler.values[t] = (*phi)[nerve.at(2, t).vertices[0]] * cls.euler.values[t];
  const auto beta = integer_potential(nerve, euler);
  if (!beta) throw NotTrivializableError("euler");

  GlobalTrivialization out;
  out.phi = *phi;
  out.beta = *beta;
  auto corrected = [&](int k, int j) {
    if (k == j) return 0.0;
    const int a = std::min(j, k), b = std::max(j, k);
    const int e = nerve.find({a, b});
    if (e < 0)
      throw Error(ErrorKind::IndexOutOfRange, "sets " + std::to_string(a) + " and " + std::to_string(b) +
                                                  " do not overlap in the nerve");
    const double v = theta.values[e] - static_cast<double>(beta->values[e]);
    return k < j ? v : -v;
  };

  // Samples shared by sets without a nerve edge leave one of them first.
  const Cover used = nerve_consistent_cover(cover, nerve).cover;
  const PartitionOfUnity rho = partition_of_unity(dataset, used);
  const std::size_t ns = dataset.samples.size();
  out.aligned.resize(trivs.size());
  std::vector<std::vector<S1Point>> per_sample(ns);
  std::vector<std::vector<double>> per_weight(ns);
  for (std::size_t j = 0; j < trivs.size(); ++j) {
    out.aligned[j].samples = used[j].members;
    for (int x : used[j].members) {
      double mu = 0.0;
      for (const auto& [k, w] : rho.weights[x]) mu += w * corrected(k, static_cast<int>(j));
      S1Point v = local_at(trivs, static_cast<int>(j), x);
      if ((*phi)[j] < 0) v = S1Point(v.x, -v.y);
      const S1Point aligned = o2_apply(O2Element::rotation(mu), v);
      out.aligned[j].values.push_back(aligned);
      per_sample[x].push_back(aligned);
      per_weight[x].push_back(rho.at(x, static_cast<int>(j)));
    }
  }
  out.angle_turns.assign(ns, 0.0);
  for (std::size_t x = 0; x < ns; ++x) {
    const auto& pts = per_sample[x];
    if (pts.empty())
      throw Error(ErrorKind::UncoveredPoint, sample_name(&dataset, static_cast<int>(x)) + " has no local coordinate");
    for (std::size_t a = 0; a < pts.size(); ++a)
      for (std::size_t b = a + 1; b < pts.size(); ++b) out.overlap_residual = std::max(out.overlap_residual, chord(pts[a], pts[b]));
    try {
      out.angle_turns[x] = karcher_mean(pts, per_weight[x]).turn();
    } catch (const Error& e) {
      throw Error(e.kind(), sample_name(&dataset, static_cast<int>(x)) + ": " + e.what());
    }
  }
  return out;
}

}  // namespace circlet
