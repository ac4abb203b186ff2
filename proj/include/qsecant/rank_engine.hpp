#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qsecant/multirank.hpp"
#include "qsecant/state.hpp"

namespace qsecant {

/// Knobs shared by every fit. Defaults are the CLI defaults.
struct FitOptions {
  int restarts = 16;
  int iters = 500;
  std::uint64_t seed = 42;
  double fit_tol = 1e-7;
  /// A product term larger than this (relative to the unit-norm input) counts
  /// as a diverging coefficient.
  double divergence_threshold = 1e3;
  /// Levenberg-Marquardt refinement after the alternating sweeps.
  bool polish = true;
  /// Stop at the first restart that meets fit_tol with bounded terms.
  bool stop_on_success = true;
};

/// coefficient * (f_1 (x) ... (x) f_n) with unit-norm factors.
struct ProductTerm {
  Complex coefficient;
  std::vector<std::array<Complex, 2>> factors;
};

PureState expand(const std::vector<ProductTerm>& terms);

struct RankFitResult {
  int k = 0;
  /// || s/|s| - best rank-k combination ||.
  double residual = 1.0;
  /// Largest |coefficient| among the k terms.
  double max_term_norm = 0.0;
  std::vector<ProductTerm> terms;
  /// residual < fit_tol.
  bool converged = false;
  int restart = -1;
  int iterations = 0;
};

/// Alternating least squares over k rank-one terms, best of `restarts` seeded
/// random starts. Non-convergence is reported through `converged`.
RankFitResult best_rank_k_fit(const PureState& s, int k, int restarts, int iters,
                              std::uint64_t seed);
RankFitResult best_rank_k_fit(const PureState& s, int k, const FitOptions& opts);

/// Polynomial curves u_{j,i}(t) = sum_e t^e a_{j,i,e}, one per term j and qubit i.
using CurveSet = std::vector<std::vector<std::vector<std::array<Complex, 2>>>>;

/// Fit of s as the t^degree coefficient of sum_j (x)_i u_{j,i}(t) with every
/// lower coefficient vanishing. A zero residual places s in the closure of the
/// k-secant variety; degree 0 is an ordinary rank-k decomposition.
struct DegenerationFitResult {
  int k = 0;
  int degree = 0;
  double residual = 1.0;
  double max_term_norm = 0.0;
  bool converged = false;
  CurveSet curves;
};

DegenerationFitResult degeneration_fit(const PureState& s, int k, int degree,
                                       const FitOptions& opts);

/// Evaluates the coefficient of t^degree of a curve set (lower orders ignored).
PureState curve_coefficient(const CurveSet& curves, int n, int degree);

enum class SecantKind { ProperSecant, Tangent };

std::string to_string(SecantKind kind);

struct SecantOptions {
  FitOptions fit;
  double rank_tol = kDefaultRankTol;
  /// Residuals between fit_tol and this bound are treated as ambiguous.
  double undecided_band = 1e-4;
  /// Tolerance on |hyperdeterminant| of the normalized state (n = 3).
  double hyperdeterminant_tol = 1e-9;
  /// Degeneration fits fall into diverging swamps more often than ordinary
  /// fits, so they get this many times more restarts.
  int border_restart_factor = 4;
  /// Let the closed-form three-qubit test override the numerical verdict.
  bool use_closed_form = true;
  /// Skip fitting at the top level when every state there has rank <= k.
  bool use_max_rank_shortcut = true;
};

/// Per-level evidence collected by secant_level.
struct LevelProbe {
  int k = 0;
  double proper_residual = 1.0;
  double proper_max_term_norm = 0.0;
  double border_residual = 1.0;
  int border_degree = 0;
};

/// Family coordinate: level k of the secant variety and whether the state is a
/// proper k-secant point or only reachable as a limit of k-secants.
struct SecantClass {
  int k = 1;
  SecantKind kind = SecantKind::ProperSecant;
  bool undecided = false;
  /// Verdict rests on fits alone (no closed form, no flattening certificate).
  bool numerical_only = false;
  std::vector<LevelProbe> probes;
  std::vector<std::string> diagnostics;

  /// "Σ" for k = 1, otherwise "σk" or "τk".
  std::string family() const;
};

SecantClass secant_level(const PureState& s, const SecantOptions& opts = {});

/// Largest entry of the multirank signature; no state of secant level below it.
int flattening_lower_bound(const PureState& s, double rel_tol = kDefaultRankTol);

/// Cayley's degree-4 hyperdeterminant of a three-qubit amplitude tensor.
Complex cayley_hyperdeterminant(const PureState& s);

/// Highest tensor rank known to occur for n qubits, when it is known.
std::optional<int> known_max_tensor_rank(int n);

/// x_0 + x_0' + ... + x_0^(k-1) for x_t = (x)_i (base_i + t dir_i).
PureState tangent_curve_point(const std::vector<std::array<Complex, 2>>& base,
                              const std::vector<std::array<Complex, 2>>& dir, int k);

/// tangent_curve_point with Gaussian base and direction vectors drawn from seed.
PureState tangent_sample(int n, int k, std::uint64_t seed);

}  // namespace qsecant
