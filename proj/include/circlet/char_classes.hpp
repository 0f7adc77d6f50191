#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "circlet/cochain.hpp"
#include "circlet/nerve.hpp"

namespace circlet {

// Entrywise determinant of a witness.
Z2Cochain sw_class(const O2Cochain& witness);

struct CharClassResult {
  Z2Cochain sw;
  IntCochain euler;   // twisted by sw
  RealCochain lift;   // principal logs of the rotation parts, in turns
  double bracket_margin = 0.5;  // min distance of pre-rounding values to a half-integer
  double witness_defect = 0.0;
  bool defect_warning = false;  // witness defect >= 1/2
};

inline constexpr double kBracketGuard = 1e-6;

// Throws BracketAmbiguous when some pre-rounding value is within 1e-6 of a
// half-integer.
CharClassResult euler_cochain(const Nerve& nerve, const O2Cochain& witness);

inline constexpr const char* kFundamentalSignConvention =
    "first nonzero coefficient in lexicographic triangle order is positive";

struct FundamentalClass {
  IntCochain mu;  // degree-2 chain, lexicographic triangle order
  int kernel_rank = 0;     // rank of ker of the twisted boundary on 2-chains
  int boundary_rank = 0;   // rank of the image of 3-chains inside that kernel
  std::string sign_convention = kFundamentalSignConvention;
};

// Generator of the free part of twisted H_2 of the nerve. Throws
// NotASurface unless that rank is exactly 1.
FundamentalClass fundamental_class_twisted(const Nerve& nerve, const Z2Cochain& omega);

struct EulerNumber {
  long long value = 0;
  std::string sign_convention = kFundamentalSignConvention;
};

EulerNumber euler_number(const IntCochain& euler, const IntCochain& mu);

struct PersistencePoint {
  int index = 0;
  double weight = 0.0;
};

struct ClassPersistence {
  PersistencePoint cobirth;
  PersistencePoint codeath;
  int limit = 0;                 // last stage considered
  bool cross_checked = false;    // per-stage solves were run
  bool methods_agree = true;
  int matrix_codeath = 0;        // codeath from the echelon method
};

struct StageSize {
  int stage = 0;
  std::array<int, kMaxNerveDim + 1> simplices{};
};

struct PersistenceReport {
  ClassPersistence sw;
  ClassPersistence euler;  // stages clipped to the sw cobirth
  double w_max = 0.0;
  int nerve_size = 0;
  std::vector<StageSize> stages;  // sizes at the reported indices and the full nerve
};

inline constexpr int kCrossCheckLimit = 500;

// cobirth: largest r with the restriction to W_r a cocycle. codeath:
// largest r with the restriction a coboundary. Requires a filtration.
ClassPersistence persistence_z2(const Nerve& nerve, const Z2Cochain& lambda);
ClassPersistence persistence_twisted(const Nerve& nerve, const IntCochain& lambda, const Z2Cochain& omega,
                                     int limit);
PersistenceReport persistence(const Nerve& nerve, const Z2Cochain& sw, const IntCochain& euler);

// Codeath from a separate linear solve at every stage where a simplex of
// the cochain's degree enters (exhaustive) or by bisection over those
// stages (nested coboundary conditions make the predicate monotone).
int codeath_bruteforce_z2(const Nerve& nerve, const Z2Cochain& lambda, int limit, bool exhaustive);
int codeath_bruteforce_twisted(const Nerve& nerve, const IntCochain& lambda, const Z2Cochain& omega, int limit,
                               bool exhaustive);

StageSize stage_size(const Nerve& nerve, int r);

// Some phi (entries +-1) with phi_j phi_k = w_jk on every edge, or nullopt.
std::optional<std::vector<int>> z2_potential(const Nerve& nerve, const Z2Cochain& w);
// Some integer 1-cochain beta with (untwisted) d beta = e, or nullopt.
std::optional<IntCochain> integer_potential(const Nerve& nerve, const IntCochain& e);

}  // namespace circlet
