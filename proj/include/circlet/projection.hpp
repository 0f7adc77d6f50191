#pragma once

#include <string>
#include <utility>
#include <vector>

#include <Eigen/Core>

#include "circlet/cochain.hpp"
#include "circlet/dataset.hpp"
#include "circlet/filtration.hpp"
#include "circlet/nerve.hpp"

namespace circlet {

// Evaluated at the base point of every sample.
struct PartitionOfUnity {
  // Per sample: (cover position, rho) for every set containing the sample,
  // sorted by position; rho may be 0 on a set boundary.
  std::vector<std::vector<std::pair<int, double>>> weights;

  double at(int sample, int set) const;
};

// Parametric covers: rho_j proportional to max(0, radius_j - dist(b, c_j))
// over the sets containing b, falling back to the membership indicator when
// all of those vanish. Abstract or centerless covers use the indicator.
// Throws UncoveredPoint for a sample in no set.
PartitionOfUnity partition_of_unity(const BundleDataset& dataset, const Cover& cover);

inline constexpr double kEigengapGuard = 1e-10;
inline constexpr double kRankGuard = 1e-10;

// Nearest rank-2 orthogonal projector to the symmetric part of A.
Eigen::MatrixXd gr_project(const Eigen::MatrixXd& A);

// U = PA ((PA)^T PA)^{-1/2}: the nearest frame to A spanning range(P).
Eigen::MatrixXd stiefel_fiber_project(const Eigen::MatrixXd& P, const Eigen::MatrixXd& A);

// Inverse square root of a symmetric positive definite 2x2 matrix.
Eigen::Matrix2d inverse_sqrt_2x2(const Eigen::Matrix2d& G);

// Classifying data at one base point, in the coordinates of the sets that
// contain it: block i of a frame is sqrt(rho_i) Omega_ij.
struct LocalClassifying {
  std::vector<int> sets;
  std::vector<Eigen::MatrixXd> frames;  // Phi_j for j in sets
  Eigen::MatrixXd ftilde;               // sum_j rho_j Phi_j Phi_j^T
  Eigen::MatrixXd projector;            // gr_project(ftilde)
};

struct ProjectorField {
  std::vector<LocalClassifying> points;  // per sample
};

// Throws EigengapTooSmall naming the sample.
ProjectorField classifying_map(const Nerve& nerve, const O2Cochain& omega, const PartitionOfUnity& rho);

struct ProjectedEdge {
  int j = 0;
  int k = 0;  // j < k, both cover positions
  O2Element value;
  double rounding_residual = 0.0;  // |Phi_j^T Phi_k - nearest O(2)|_F
};

struct ProjectedCocycle {
  std::vector<std::vector<ProjectedEdge>> points;  // per sample
  double max_rounding_residual = 0.0;
  double max_cocycle_residual = 0.0;  // over triples of sets at each point
  double distance_to_input = 0.0;     // sup Frobenius distance to Omega
  bool defect_warning = false;        // input defect >= sqrt(2)/4

  // Omega~_jk at a sample (identity for j == k, inverse for j > k).
  O2Element value(int sample, int j, int k) const;
};

ProjectedCocycle project_cocycle(const Nerve& nerve, const O2Cochain& omega, const PartitionOfUnity& rho);

// f~_j(x) = Karcher mean of Omega~_jk(x) f_k(x) with weights rho_k(x).
// Throws DiameterTooLarge naming the sample.
Trivialization project_trivialization(const Trivialization& trivs, const ProjectedCocycle& projected,
                                      const PartitionOfUnity& rho);

inline constexpr const char* kReductionMethod = "psc-substitute";

struct ReducedFrames {
  std::vector<Eigen::MatrixXd> frames;  // d x 2, orthonormal columns
  Eigen::MatrixXd basis;                // D x d principal subspace
  std::vector<double> errors;           // |Phi - E E^T Phi|_F per frame
  double max_error = 0.0;
  std::string method = kReductionMethod;
};

// Principal subspace of all frame columns (uncentered), projection, and
// polar re-orthonormalization. Throws RankDeficient for a degenerate frame.
ReducedFrames stiefel_reduce(const std::vector<Eigen::MatrixXd>& frames, int d);

struct ReductionErrorPoint {
  int dim = 0;
  double max_error = 0.0;
  double mean_error = 0.0;
};

// Projection error of stiefel_reduce for d = 2..ambient.
std::vector<ReductionErrorPoint> reduction_error_curve(const std::vector<Eigen::MatrixXd>& frames);

struct BundleMapResult {
  int stage = 0;
  int dim = 0;
  std::vector<Eigen::VectorXd> coords;  // per sample, unit vectors in R^d
  double overlap_residual = 0.0;        // max |F_j(x) - F_k(x)|
  double plane_residual = 0.0;          // max |(I - f(b)) F(x)|
  double max_reduction_error = 0.0;
  std::vector<ReductionErrorPoint> reduction_curve;
  Cover stage_cover;
  std::vector<CutLogEntry> cut_log;
  bool cut_exact = true;  // the stage cover's nerve is exactly W^r
  std::string reduction = kReductionMethod;
};

// Coordinatization at filtration stage r into V(2,d) x_O(2) S^1, returned
// as a unit vector per sample. The nerve must carry the weights filtration.
BundleMapResult bundle_map(const BundleDataset& dataset, const Cover& cover, const Nerve& nerve,
                           const Trivialization& trivs, const O2Cochain& omega, int r, int d);

struct GlobalTrivialization {
  std::vector<double> angle_turns;  // per sample
  Trivialization aligned;           // rotated local coordinates that agree on overlaps
  double overlap_residual = 0.0;    // max chord between aligned values of one sample
  std::vector<int> phi;             // orientation potential
  IntCochain beta;                  // integer potential of the untwisted Euler cochain
};

// Throws NotTrivializableError("sw") or NotTrivializableError("euler").
GlobalTrivialization global_trivialize(const BundleDataset& dataset, const Cover& cover, const Nerve& nerve,
                                       const Trivialization& trivs, const O2Cochain& omega);

}  // namespace circlet
