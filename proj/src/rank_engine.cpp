#include "qsecant/rank_engine.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "qsecant/classifier.hpp"
#include "qsecant/random.hpp"

namespace qsecant {

namespace {

using Vec = Eigen::VectorXcd;
using PolyVec = std::vector<Vec>;  // coefficient of t^e at index e

// Truncated Kronecker product of two vector-valued polynomials.
PolyVec poly_kron(const PolyVec& a, const PolyVec& b, int degree) {
  PolyVec out(static_cast<std::size_t>(degree + 1), Vec::Zero(a[0].size() * b[0].size()));
  for (int ea = 0; ea <= degree; ++ea) {
    const Vec& va = a[static_cast<std::size_t>(ea)];
    if (va.isZero(0.0)) continue;
    for (int eb = 0; ea + eb <= degree; ++eb) {
      const Vec& vb = b[static_cast<std::size_t>(eb)];
      Vec& dst = out[static_cast<std::size_t>(ea + eb)];
      for (Eigen::Index x = 0; x < va.size(); ++x) {
        if (va[x] == Complex{}) continue;
        dst.segment(x * vb.size(), vb.size()) += va[x] * vb;
      }
    }
  }
  return out;
}

PolyVec poly_unit(int degree) {
  PolyVec p(static_cast<std::size_t>(degree + 1), Vec::Zero(1));
  p[0][0] = 1.0;
  return p;
}

// Sum over terms j of the product curve (x)_i u_{j,i}(t), truncated at `degree`.
// Parameters are laid out as [term][qubit][power][component].
class CurveModel {
 public:
  CurveModel(int n, int k, int degree)
      : n_(n), k_(k), degree_(degree), dim_(Eigen::Index{1} << n),
        params_(static_cast<std::size_t>(k * n * (degree + 1) * 2)) {}

  int qubits() const { return n_; }
  int terms() const { return k_; }
  int degree() const { return degree_; }
  Eigen::Index rows() const { return dim_ * (degree_ + 1); }
  Eigen::Index mode_cols() const { return k_ * (degree_ + 1) * 2; }
  Eigen::Index param_count() const { return static_cast<Eigen::Index>(params_.size()); }

  Complex& at(int j, int i, int e, int c) { return params_[index(j, i, e, c)]; }
  Complex at(int j, int i, int e, int c) const { return params_[index(j, i, e, c)]; }
  std::vector<Complex>& raw() { return params_; }
  const std::vector<Complex>& raw() const { return params_; }

  void randomize(CounterRng& rng) {
    for (auto& p : params_) p = rng.complex_normal() / std::sqrt(2.0);
  }

  PolyVec factor(int j, int i) const {
    PolyVec p(static_cast<std::size_t>(degree_ + 1), Vec::Zero(2));
    for (int e = 0; e <= degree_; ++e) {
      p[static_cast<std::size_t>(e)][0] = at(j, i, e, 0);
      p[static_cast<std::size_t>(e)][1] = at(j, i, e, 1);
    }
    return p;
  }

  // Stacked coefficients C_0, ..., C_degree.
  Vec evaluate() const {
    Vec out = Vec::Zero(rows());
    for (int j = 0; j < k_; ++j) {
      PolyVec p = poly_unit(degree_);
      for (int i = 0; i < n_; ++i) p = poly_kron(p, factor(j, i), degree_);
      for (int e = 0; e <= degree_; ++e) out.segment(e * dim_, dim_) += p[static_cast<std::size_t>(e)];
    }
    return out;
  }

  // Columns d(model)/d a_{j,i,e,c} for one qubit i, ordered (j, e, c).
  Eigen::MatrixXcd mode_design(int i) const {
    Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(rows(), mode_cols());
    for (int j = 0; j < k_; ++j) fill_columns(a, j, i, j * (degree_ + 1) * 2);
    return a;
  }

  Eigen::MatrixXcd jacobian() const {
    Eigen::MatrixXcd jac = Eigen::MatrixXcd::Zero(rows(), param_count());
    for (int j = 0; j < k_; ++j) {
      for (int i = 0; i < n_; ++i) {
        fill_columns(jac, j, i, static_cast<Eigen::Index>(index(j, i, 0, 0)));
      }
    }
    return jac;
  }

  Vec mode_params(int i) const {
    Vec x(mode_cols());
    Eigen::Index col = 0;
    for (int j = 0; j < k_; ++j) {
      for (int e = 0; e <= degree_; ++e) {
        for (int c = 0; c < 2; ++c) x[col++] = at(j, i, e, c);
      }
    }
    return x;
  }

  void set_mode(int i, const Vec& x) {
    Eigen::Index col = 0;
    for (int j = 0; j < k_; ++j) {
      for (int e = 0; e <= degree_; ++e) {
        for (int c = 0; c < 2; ++c) at(j, i, e, c) = x[col++];
      }
    }
  }

  double block_norm(int j, int i) const {
    double acc = 0.0;
    for (int e = 0; e <= degree_; ++e) {
      acc += std::norm(at(j, i, e, 0)) + std::norm(at(j, i, e, 1));
    }
    return std::sqrt(acc);
  }

  // Equalize per-qubit block norms within each term; the model is unchanged.
  void balance() {
    for (int j = 0; j < k_; ++j) {
      std::vector<double> norms(static_cast<std::size_t>(n_));
      double log_mean = 0.0;
      bool degenerate = false;
      for (int i = 0; i < n_; ++i) {
        norms[static_cast<std::size_t>(i)] = block_norm(j, i);
        if (norms[static_cast<std::size_t>(i)] <= 1e-300) degenerate = true;
        else log_mean += std::log(norms[static_cast<std::size_t>(i)]);
      }
      if (degenerate) continue;
      const double target = std::exp(log_mean / n_);
      for (int i = 0; i < n_; ++i) {
        const double f = target / norms[static_cast<std::size_t>(i)];
        for (int e = 0; e <= degree_; ++e) {
          at(j, i, e, 0) *= f;
          at(j, i, e, 1) *= f;
        }
      }
    }
  }

  double max_term_norm() const {
    double best = 0.0;
    for (int j = 0; j < k_; ++j) {
      double prod = 1.0;
      for (int i = 0; i < n_; ++i) prod *= block_norm(j, i);
      best = std::max(best, prod);
    }
    return best;
  }

 private:
  std::size_t index(int j, int i, int e, int c) const {
    return static_cast<std::size_t>(((j * n_ + i) * (degree_ + 1) + e) * 2 + c);
  }

  // Writes the 2*(degree+1) columns of term j, qubit i starting at `col0`.
  void fill_columns(Eigen::MatrixXcd& m, int j, int i, Eigen::Index col0) const {
    PolyVec left = poly_unit(degree_);
    for (int q = 0; q < i; ++q) left = poly_kron(left, factor(j, q), degree_);
    PolyVec right = poly_unit(degree_);
    for (int q = n_ - 1; q > i; --q) right = poly_kron(factor(j, q), right, degree_);
    const PolyVec outer = poly_kron(left, right, degree_);
    const Eigen::Index right_dim = Eigen::Index{1} << (n_ - i - 1);
    for (int b = 0; b <= degree_; ++b) {
      for (int c = 0; c < 2; ++c) {
        const Eigen::Index col = col0 + b * 2 + c;
        for (int e = b; e <= degree_; ++e) {
          const Vec& v = outer[static_cast<std::size_t>(e - b)];
          for (Eigen::Index xy = 0; xy < v.size(); ++xy) {
            const Eigen::Index x = xy / right_dim;
            const Eigen::Index y = xy % right_dim;
            const Eigen::Index idx = (x << (n_ - i)) | (Eigen::Index{c} << (n_ - i - 1)) | y;
            m(e * dim_ + idx, col) = v[xy];
          }
        }
      }
    }
  }

  int n_;
  int k_;
  int degree_;
  Eigen::Index dim_;
  std::vector<Complex> params_;
};

Vec solve_ridge(const Eigen::MatrixXcd& a, const Vec& y, double rel_ridge) {
  Eigen::MatrixXcd g = a.adjoint() * a;
  const Vec rhs = a.adjoint() * y;
  double scale = 0.0;
  for (Eigen::Index d = 0; d < g.rows(); ++d) scale = std::max(scale, g(d, d).real());
  const double ridge = rel_ridge * std::max(scale, 1e-300);
  g.diagonal().array() += ridge;
  return g.ldlt().solve(rhs);
}

// Ordinary fits must stay bounded to count as exact decompositions. A
// degeneration curve certifies closure membership at any finite size, so it
// only needs to stay small enough for cancellation errors to sit far below
// fit_tol.
double norm_limit(int degree, const FitOptions& opts) {
  return degree == 0 ? opts.divergence_threshold : 1e3 * opts.divergence_threshold;
}

struct SingleRun {
  CurveModel model;
  double residual;
  int iterations;
};

// Alternating sweeps, then optional Levenberg-Marquardt refinement.
SingleRun run_fit(const Vec& target, int n, int k, int degree, const FitOptions& opts,
                  CounterRng& rng) {
  CurveModel model(n, k, degree);
  model.randomize(rng);
  model.balance();
  const double stop_at = opts.fit_tol * 1e-2;
  double residual = (model.evaluate() - target).norm();
  double checkpoint = residual;
  int it = 0;
  // For degeneration curves a decaying ridge steers early sweeps away from
  // diverging swamps. Ordinary fits keep a negligible ridge: a large one
  // starves terms to zero and strands the sweep in a lower-rank fit.
  double ridge = degree > 0 ? 1e-1 : 1e-13;
  for (; it < opts.iters; ++it) {
    ridge = std::max(ridge * 0.9, 1e-13);
    for (int i = 0; i < n; ++i) {
      model.set_mode(i, solve_ridge(model.mode_design(i), target, ridge));
    }
    model.balance();
    if (it % 5 == 4 || it + 1 == opts.iters) {
      residual = (model.evaluate() - target).norm();
      if (!std::isfinite(residual)) break;
      if (residual < stop_at) break;
      // Degeneration curves that run off to infinity are swamps, not answers.
      if (degree > 0 && model.max_term_norm() > 10.0 * norm_limit(degree, opts)) break;
    }
    // Abandon swamps that are nowhere near a solution.
    if (it % 100 == 99) {
      if (residual > 1e-3 && checkpoint - residual < 1e-3 * checkpoint) break;
      checkpoint = residual;
    }
  }
  residual = (model.evaluate() - target).norm();
  if (opts.polish && std::isfinite(residual) && residual < 5e-2 && residual >= stop_at) {
    double mu = 1e-3;
    for (int step = 0; step < 200 && residual >= stop_at; ++step) {
      const Vec r = model.evaluate() - target;
      const Eigen::MatrixXcd jac = model.jacobian();
      Eigen::MatrixXcd g = jac.adjoint() * jac;
      const Vec grad = jac.adjoint() * r;
      const std::vector<Complex> saved = model.raw();
      bool improved = false;
      for (int attempt = 0; attempt < 12; ++attempt) {
        Eigen::MatrixXcd damped = g;
        for (Eigen::Index d = 0; d < g.rows(); ++d) {
          damped(d, d) += mu * std::max(g(d, d).real(), 1e-12);
        }
        const Vec delta = damped.ldlt().solve(-grad);
        auto& raw = model.raw();
        for (std::size_t p = 0; p < raw.size(); ++p) raw[p] = saved[p] + delta[static_cast<Eigen::Index>(p)];
        const double trial = (model.evaluate() - target).norm();
        if (std::isfinite(trial) && trial < residual) {
          residual = trial;
          mu = std::max(mu / 3.0, 1e-12);
          improved = true;
          break;
        }
        model.raw() = saved;
        mu *= 4.0;
      }
      if (!improved) break;
      model.balance();
      if (degree > 0 && model.max_term_norm() > 10.0 * norm_limit(degree, opts)) break;
    }
    residual = (model.evaluate() - target).norm();
  }
  return {std::move(model), residual, it};
}

Vec target_vector(const PureState& s, int degree) {
  const PureState u = normalize(s);
  const Eigen::Index dim = static_cast<Eigen::Index>(u.dim());
  Vec y = Vec::Zero(dim * (degree + 1));
  for (Eigen::Index x = 0; x < dim; ++x) y[degree * dim + x] = u[static_cast<std::size_t>(x)];
  return y;
}

struct FitOutcome {
  std::optional<SingleRun> best;
  int restart = -1;
};

bool fit_succeeded(const SingleRun& run, int degree, const FitOptions& opts) {
  return run.residual < opts.fit_tol && run.model.max_term_norm() <= norm_limit(degree, opts);
}

FitOutcome multi_start(const PureState& s, int k, int degree, const FitOptions& opts) {
  if (k < 1) throw Error("number of terms must be >= 1");
  if (degree < 0) throw Error("degeneration degree must be >= 0");
  if (opts.restarts < 1) throw Error("restarts must be >= 1");
  const Vec target = target_vector(s, degree);
  FitOutcome out;
  bool best_ok = false;
  for (int r = 0; r < opts.restarts; ++r) {
    const std::uint64_t stream = (static_cast<std::uint64_t>(k) << 40) ^
                                 (static_cast<std::uint64_t>(degree) << 32) ^
                                 static_cast<std::uint64_t>(r);
    CounterRng rng(opts.seed, stream);
    SingleRun run = run_fit(target, s.qubits(), k, degree, opts, rng);
    const bool ok = fit_succeeded(run, degree, opts);
    // Successful fits first, then smaller residual; ties keep the earlier restart.
    const bool better = !out.best || (ok && !best_ok) ||
                        (ok == best_ok && run.residual < out.best->residual);
    if (better) {
      best_ok = ok;
      out.best.emplace(std::move(run));
      out.restart = r;
    }
    if (best_ok && opts.stop_on_success) break;
  }
  return out;
}

}  // namespace

PureState expand(const std::vector<ProductTerm>& terms) {
  if (terms.empty()) throw Error("expand: no terms");
  const int n = static_cast<int>(terms.front().factors.size());
  std::vector<Complex> amps(std::size_t{1} << n);
  for (const auto& t : terms) {
    for (std::size_t x = 0; x < amps.size(); ++x) {
      Complex v = t.coefficient;
      for (int q = 0; q < n; ++q) v *= t.factors[static_cast<std::size_t>(q)][(x >> (n - 1 - q)) & 1u];
      amps[x] += v;
    }
  }
  return PureState(n, std::move(amps));
}

RankFitResult best_rank_k_fit(const PureState& s, int k, const FitOptions& opts) {
  const FitOutcome fit = multi_start(s, k, 0, opts);
  const SingleRun& run = *fit.best;
  RankFitResult res;
  res.k = k;
  res.residual = run.residual;
  res.max_term_norm = run.model.max_term_norm();
  res.converged = run.residual < opts.fit_tol;
  res.restart = fit.restart;
  res.iterations = run.iterations;
  const int n = s.qubits();
  for (int j = 0; j < k; ++j) {
    ProductTerm term;
    term.coefficient = 1.0;
    for (int i = 0; i < n; ++i) {
      std::array<Complex, 2> f{run.model.at(j, i, 0, 0), run.model.at(j, i, 0, 1)};
      const double nf = std::sqrt(std::norm(f[0]) + std::norm(f[1]));
      if (nf > 0.0) {
        f[0] /= nf;
        f[1] /= nf;
      }
      term.coefficient *= nf;
      term.factors.push_back(f);
    }
    res.terms.push_back(std::move(term));
  }
  return res;
}

RankFitResult best_rank_k_fit(const PureState& s, int k, int restarts, int iters,
                              std::uint64_t seed) {
  FitOptions opts;
  opts.restarts = restarts;
  opts.iters = iters;
  opts.seed = seed;
  opts.polish = false;
  opts.stop_on_success = false;
  return best_rank_k_fit(s, k, opts);
}

DegenerationFitResult degeneration_fit(const PureState& s, int k, int degree,
                                       const FitOptions& opts) {
  const FitOutcome fit = multi_start(s, k, degree, opts);
  const SingleRun& run = *fit.best;
  DegenerationFitResult res;
  res.k = k;
  res.degree = degree;
  res.residual = run.residual;
  res.max_term_norm = run.model.max_term_norm();
  res.converged = fit_succeeded(run, degree, opts);
  const int n = s.qubits();
  res.curves.assign(static_cast<std::size_t>(k),
                    std::vector<std::vector<std::array<Complex, 2>>>(
                        static_cast<std::size_t>(n),
                        std::vector<std::array<Complex, 2>>(static_cast<std::size_t>(degree + 1))));
  for (int j = 0; j < k; ++j) {
    for (int i = 0; i < n; ++i) {
      for (int e = 0; e <= degree; ++e) {
        res.curves[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)][static_cast<std::size_t>(e)] = {
            run.model.at(j, i, e, 0), run.model.at(j, i, e, 1)};
      }
    }
  }
  return res;
}

PureState curve_coefficient(const CurveSet& curves, int n, int degree) {
  if (curves.empty()) throw Error("curve_coefficient: empty curve set");
  const int k = static_cast<int>(curves.size());
  const int stored = static_cast<int>(curves.front().front().size()) - 1;
  CurveModel model(n, k, std::max(stored, degree));
  for (int j = 0; j < k; ++j) {
    for (int i = 0; i < n; ++i) {
      for (int e = 0; e <= stored; ++e) {
        const auto& v = curves[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)][static_cast<std::size_t>(e)];
        model.at(j, i, e, 0) = v[0];
        model.at(j, i, e, 1) = v[1];
      }
    }
  }
  const Vec all = model.evaluate();
  const Eigen::Index dim = Eigen::Index{1} << n;
  std::vector<Complex> amps(static_cast<std::size_t>(dim));
  for (Eigen::Index x = 0; x < dim; ++x) amps[static_cast<std::size_t>(x)] = all[degree * dim + x];
  return PureState(n, std::move(amps));
}

std::string to_string(SecantKind kind) {
  return kind == SecantKind::Tangent ? "tangent" : "proper-secant";
}

std::string SecantClass::family() const {
  if (k == 1) return "Σ";
  return (kind == SecantKind::Tangent ? "τ" : "σ") + std::to_string(k);
}

int flattening_lower_bound(const PureState& s, double rel_tol) {
  if (s.qubits() == 1) return 1;
  return multirank_signature(s, rel_tol).max_rank();
}

Complex cayley_hyperdeterminant(const PureState& s) {
  if (s.qubits() != 3) throw Error("hyperdeterminant needs exactly three qubits");
  const Complex c0 = s[0], c1 = s[1], c2 = s[2], c3 = s[3];
  const Complex c4 = s[4], c5 = s[5], c6 = s[6], c7 = s[7];
  const Complex p07 = c0 * c7, p16 = c1 * c6, p25 = c2 * c5, p34 = c3 * c4;
  return (p07 * p07 + p16 * p16 + p25 * p25 + p34 * p34) -
         2.0 * p07 * (p16 + p25 + p34) - 2.0 * p16 * (p25 + p34) - 2.0 * p25 * p34 +
         4.0 * (c0 * c3 * c5 * c6 + c1 * c2 * c4 * c7);
}

std::optional<int> known_max_tensor_rank(int n) {
  switch (n) {
    case 1: return 1;
    case 2: return 2;
    case 3: return 3;
    case 4: return 4;
    default: return std::nullopt;
  }
}

namespace {

std::string fmt_sci(double x) {
  std::ostringstream os;
  os.precision(3);
  os << std::scientific << x;
  return os.str();
}

struct LevelVerdict {
  enum class Outcome { Proper, Tangent, TangentByDivergence, Ambiguous, Absent } outcome;
  LevelProbe probe;
};

LevelVerdict probe_level(const PureState& s, int k, const FitOptions& fit,
                         const SecantOptions& opts) {
  const double undecided_band = opts.undecided_band;
  FitOptions border_fit = fit;
  border_fit.restarts = fit.restarts * std::max(1, opts.border_restart_factor);
  LevelVerdict v{LevelVerdict::Outcome::Absent, {}};
  v.probe.k = k;
  const RankFitResult proper = best_rank_k_fit(s, k, fit);
  v.probe.proper_residual = proper.residual;
  v.probe.proper_max_term_norm = proper.max_term_norm;
  if (proper.residual < fit.fit_tol && proper.max_term_norm <= fit.divergence_threshold) {
    v.outcome = LevelVerdict::Outcome::Proper;
    return v;
  }
  double best_border = 1.0;
  for (int degree = 1; degree <= k - 1; ++degree) {
    const DegenerationFitResult border = degeneration_fit(s, k, degree, border_fit);
    if (border.residual < best_border) {
      best_border = border.residual;
      v.probe.border_residual = border.residual;
      v.probe.border_degree = degree;
    }
    if (border.converged) {
      v.probe.border_residual = border.residual;
      v.probe.border_degree = degree;
      v.outcome = LevelVerdict::Outcome::Tangent;
      return v;
    }
  }
  // Unbounded rank-k fits that keep improving while their terms blow up are
  // the signature of a limit point even without an explicit degeneration.
  if (proper.residual < undecided_band && proper.max_term_norm > fit.divergence_threshold) {
    FitOptions longer = fit;
    longer.iters = fit.iters * 2;
    const RankFitResult again = best_rank_k_fit(s, k, longer);
    if (again.max_term_norm >= proper.max_term_norm && again.residual <= proper.residual) {
      v.outcome = LevelVerdict::Outcome::TangentByDivergence;
      return v;
    }
  }
  const double best_bounded = std::min(
      proper.max_term_norm <= fit.divergence_threshold ? proper.residual : 1.0, best_border);
  if (best_bounded < undecided_band) v.outcome = LevelVerdict::Outcome::Ambiguous;
  return v;
}

}  // namespace

SecantClass secant_level(const PureState& input, const SecantOptions& opts) {
  const PureState s = normalize(input);
  const int n = s.qubits();
  SecantClass out;
  if (n == 1) {
    out.diagnostics.push_back("single qubit: always separable");
    return out;
  }
  const MultirankSignature sig = multirank_signature(s, opts.rank_tol);
  const int lower = sig.max_rank();
  if (lower <= 1) {
    out.diagnostics.push_back("all flattening ranks are one: separable");
    return out;
  }

  if (n == 3 && opts.use_closed_form) {
    const double delta = std::abs(cayley_hyperdeterminant(s));
    out.k = 2;
    const bool genuine = !sig.any_one();
    out.kind = (delta <= opts.hyperdeterminant_tol && genuine) ? SecantKind::Tangent
                                                                 : SecantKind::ProperSecant;
    out.diagnostics.push_back("closed-form three-qubit verdict, |hyperdeterminant| = " +
                              fmt_sci(delta));
    return out;
  }

  const int top = family_count(n);
  const auto max_rank = known_max_tensor_rank(n);
  for (int k = lower; k <= top; ++k) {
    if (opts.use_max_rank_shortcut && k == top && max_rank && *max_rank <= top) {
      out.k = k;
      out.kind = SecantKind::ProperSecant;
      out.diagnostics.push_back("top secant level with maximal tensor rank " +
                                std::to_string(*max_rank) + ": every state is a proper secant point");
      return out;
    }
    LevelVerdict v = probe_level(s, k, opts.fit, opts);
    if (v.outcome == LevelVerdict::Outcome::Ambiguous) {
      FitOptions harder = opts.fit;
      harder.restarts *= 4;
      harder.iters *= 4;
      harder.seed ^= 0x5bd1e995ULL;
      out.diagnostics.push_back("level " + std::to_string(k) +
                                " ambiguous; retried with more restarts");
      v = probe_level(s, k, harder, opts);
    }
    out.probes.push_back(v.probe);
    out.k = k;
    out.numerical_only = true;
    switch (v.outcome) {
      case LevelVerdict::Outcome::Proper:
        out.kind = SecantKind::ProperSecant;
        out.diagnostics.push_back("exact rank-" + std::to_string(k) + " decomposition, residual " +
                                  fmt_sci(v.probe.proper_residual) + ", max term norm " +
                                  fmt_sci(v.probe.proper_max_term_norm));
        return out;
      case LevelVerdict::Outcome::Tangent:
        out.kind = SecantKind::Tangent;
        out.diagnostics.push_back(
            "no bounded rank-" + std::to_string(k) + " decomposition (best residual " +
            fmt_sci(v.probe.proper_residual) + ", max term norm " +
            fmt_sci(v.probe.proper_max_term_norm) + "); degree-" +
            std::to_string(v.probe.border_degree) + " degeneration of " + std::to_string(k) +
            " product curves reaches residual " + fmt_sci(v.probe.border_residual));
        return out;
      case LevelVerdict::Outcome::TangentByDivergence:
        out.kind = SecantKind::Tangent;
        out.diagnostics.push_back("tangent inferred from diverging rank-" + std::to_string(k) +
                                  " coefficients (uncertified heuristic)");
        return out;
      case LevelVerdict::Outcome::Ambiguous:
        out.undecided = true;
        out.diagnostics.push_back("undecided: residuals at level " + std::to_string(k) +
                                  " straddle the fit tolerance");
        return out;
      case LevelVerdict::Outcome::Absent:
        break;
    }
  }
  out.k = top;
  out.undecided = true;
  out.diagnostics.push_back("undecided: no fit succeeded up to the top secant level");
  return out;
}

PureState tangent_curve_point(const std::vector<std::array<Complex, 2>>& base,
                              const std::vector<std::array<Complex, 2>>& dir, int k) {
  if (base.size() != dir.size() || base.empty()) throw Error("curve needs matching base/direction lists");
  if (k < 1) throw Error("tangent order must be >= 1");
  const int n = static_cast<int>(base.size());
  const int degree = std::min(k - 1, n);
  CurveModel model(n, 1, degree);
  for (int i = 0; i < n; ++i) {
    model.at(0, i, 0, 0) = base[static_cast<std::size_t>(i)][0];
    model.at(0, i, 0, 1) = base[static_cast<std::size_t>(i)][1];
    if (degree >= 1) {
      model.at(0, i, 1, 0) = dir[static_cast<std::size_t>(i)][0];
      model.at(0, i, 1, 1) = dir[static_cast<std::size_t>(i)][1];
    }
  }
  const Vec coeffs = model.evaluate();
  const Eigen::Index dim = Eigen::Index{1} << n;
  std::vector<Complex> amps(static_cast<std::size_t>(dim));
  double factorial = 1.0;
  for (int e = 0; e <= degree; ++e) {
    if (e > 0) factorial *= e;
    for (Eigen::Index x = 0; x < dim; ++x) amps[static_cast<std::size_t>(x)] += factorial * coeffs[e * dim + x];
  }
  return PureState(n, std::move(amps));
}

PureState tangent_sample(int n, int k, std::uint64_t seed) {
  if (n < 1) throw Error("tangent_sample: n must be >= 1");
  CounterRng rng(seed, 0x7a6e67656e74ULL);
  std::vector<std::array<Complex, 2>> base(static_cast<std::size_t>(n));
  std::vector<std::array<Complex, 2>> dir(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    base[static_cast<std::size_t>(i)] = {rng.complex_normal(), rng.complex_normal()};
    dir[static_cast<std::size_t>(i)] = {rng.complex_normal(), rng.complex_normal()};
  }
  return tangent_curve_point(base, dir, k);
}

}  // namespace qsecant
