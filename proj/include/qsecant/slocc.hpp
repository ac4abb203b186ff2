#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "qsecant/state.hpp"

namespace qsecant {

using Op2 = Eigen::Matrix2cd;

/// One 2x2 operator per party, applied as A_1 (x) ... (x) A_n.
struct LocalOperatorSet {
  std::vector<Op2> ops;

  int qubits() const { return static_cast<int>(ops.size()); }
  /// |det A_i| > rel_tol * ||A_i||^2 for every operator.
  bool invertible(double rel_tol = 1e-12) const;
  static LocalOperatorSet identity(int n);
  static LocalOperatorSet replicate(const Op2& op, int n);
};

/// (A_1 (x) ... (x) A_n)|s>. With require_invertible a singular operator is an error.
PureState apply_local(const PureState& s, const LocalOperatorSet& ops, bool require_invertible = false);

/// (A_I) M_I[s] (A_complement)^T, or without the transpose on the right factor
/// (the wrong formula, kept for negative controls).
Eigen::MatrixXcd predicted_flattening(const PureState& s, const LocalOperatorSet& ops,
                                      const PartySubset& subset, bool transpose_right = true);

/// True iff M_I[apply_local(s, L)] matches predicted_flattening entrywise within
/// rel_tol relative to the largest entry.
bool flattening_covariance_check(const PureState& s, const LocalOperatorSet& ops,
                                 const PartySubset& subset, double rel_tol = 1e-10);

/// Gaussian 2x2 matrices rescaled to unit determinant. Draws with |det| < 1e-6
/// are discarded and redrawn.
LocalOperatorSet random_sl2_set(int n, std::uint64_t seed);

enum class LimitFamilyId { A, B, C };

LimitFamilyId parse_limit_family(const std::string& name);
std::string to_string(LimitFamilyId id);

/// Single-matrix families eps^(-1/4) [[w, x], [eps, 0]] applied to all four qubits.
struct LimitFamily {
  LimitFamilyId id = LimitFamilyId::A;
  Complex top_left;
  Complex top_right;
  std::string source;  // human-readable source state
  std::string target;

  Op2 at(double eps) const;
  LocalOperatorSet operators(double eps, int n = 4) const;
};

LimitFamily limit_family(LimitFamilyId id);
/// Default source state of a family: GHZ4 for A, X4 (d1 = d4 = 1) for B, M4 (1, 1, 1) for C.
PureState limit_source(LimitFamilyId id);

struct ConvergenceReport {
  std::vector<double> eps;
  std::vector<double> fidelity;
  bool eventually_monotone = false;
  double final_fidelity = 0.0;
  bool passed = false;
};

/// Fidelities along a parameter schedule. The sequence counts as eventually
/// monotone when its second half (rounded up) never decreases by more than
/// 1e-12; the report passes when that holds and the last fidelity is at least
/// 1 - fidelity_gap.
ConvergenceReport verify_limit(const std::function<PureState(double)>& family, const PureState& target,
                               const std::vector<double>& schedule, double fidelity_gap = 1e-4);

/// verify_limit for apply_local(source, fam.operators(eps)).
ConvergenceReport verify_degeneration(const PureState& source, const LimitFamily& fam,
                                      const PureState& target, const std::vector<double>& eps_schedule,
                                      double fidelity_gap = 1e-4);

/// `steps` values spaced geometrically from `from` down to `to`.
std::vector<double> geometric_schedule(double from, double to, int steps);

nlohmann::json to_json(const ConvergenceReport& r);

}  // namespace qsecant
