#include "qsecant/slocc.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "qsecant/multirank.hpp"
#include "qsecant/random.hpp"

namespace qsecant {

bool LocalOperatorSet::invertible(double rel_tol) const {
  return std::all_of(ops.begin(), ops.end(), [&](const Op2& a) {
    const double scale = a.squaredNorm();
    return scale > 0.0 && std::abs(a.determinant()) > rel_tol * scale;
  });
}

LocalOperatorSet LocalOperatorSet::identity(int n) { return replicate(Op2::Identity(), n); }

LocalOperatorSet LocalOperatorSet::replicate(const Op2& op, int n) {
  return {std::vector<Op2>(static_cast<std::size_t>(n), op)};
}

PureState apply_local(const PureState& s, const LocalOperatorSet& ops, bool require_invertible) {
  const int n = s.qubits();
  if (ops.qubits() != n) {
    throw DimensionError("apply_local: " + std::to_string(ops.qubits()) + " operators for " +
                std::to_string(n) + " qubits");
  }
  if (require_invertible && !ops.invertible()) throw Error("apply_local: singular local operator");
  std::vector<Complex> amps(s.amplitudes().begin(), s.amplitudes().end());
  std::vector<Complex> next(amps.size());
  for (int q = 1; q <= n; ++q) {
    const Op2& a = ops.ops[static_cast<std::size_t>(q - 1)];
    const std::size_t mask = std::size_t{1} << (n - q);
    for (std::size_t i = 0; i < amps.size(); ++i) {
      if (i & mask) continue;
      const Complex c0 = amps[i];
      const Complex c1 = amps[i | mask];
      next[i] = a(0, 0) * c0 + a(0, 1) * c1;
      next[i | mask] = a(1, 0) * c0 + a(1, 1) * c1;
    }
    amps.swap(next);
  }
  return PureState(n, std::move(amps));
}

namespace {

Eigen::MatrixXcd kron_over(const LocalOperatorSet& ops, const std::vector<int>& parties) {
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Identity(1, 1);
  for (int p : parties) {
    const Op2& a = ops.ops[static_cast<std::size_t>(p - 1)];
    Eigen::MatrixXcd next(out.rows() * 2, out.cols() * 2);
    for (Eigen::Index i = 0; i < out.rows(); ++i) {
      for (Eigen::Index j = 0; j < out.cols(); ++j) {
        next.block(i * 2, j * 2, 2, 2) = out(i, j) * a;
      }
    }
    out = std::move(next);
  }
  return out;
}

}  // namespace

Eigen::MatrixXcd predicted_flattening(const PureState& s, const LocalOperatorSet& ops,
                                      const PartySubset& subset, bool transpose_right) {
  if (ops.qubits() != s.qubits()) throw DimensionError("predicted_flattening: operator count mismatch");
  const Eigen::MatrixXcd left = kron_over(ops, subset.parties());
  const Eigen::MatrixXcd right = kron_over(ops, subset.complement().parties());
  const Eigen::MatrixXcd m = matricize(s, subset).matrix;
  if (transpose_right) return left * m * right.transpose();
  return left * m * right;
}

bool flattening_covariance_check(const PureState& s, const LocalOperatorSet& ops,
                                 const PartySubset& subset, double rel_tol) {
  const Eigen::MatrixXcd actual = matricize(apply_local(s, ops), subset).matrix;
  const Eigen::MatrixXcd predicted = predicted_flattening(s, ops, subset, true);
  const double scale = std::max(actual.cwiseAbs().maxCoeff(), predicted.cwiseAbs().maxCoeff());
  if (scale == 0.0) return true;
  return (actual - predicted).cwiseAbs().maxCoeff() <= rel_tol * scale;
}

LocalOperatorSet random_sl2_set(int n, std::uint64_t seed) {
  if (n < 1) throw Error("random_sl2_set: n must be positive");
  CounterRng rng(seed, 0x534c320000000000ULL + static_cast<std::uint64_t>(n));
  LocalOperatorSet out;
  while (out.qubits() < n) {
    Op2 a;
    a << rng.complex_normal(), rng.complex_normal(), rng.complex_normal(), rng.complex_normal();
    const Complex det = a.determinant();
    if (std::abs(det) < 1e-6) continue;
    a /= std::sqrt(det);
    out.ops.push_back(a);
  }
  return out;
}

LimitFamilyId parse_limit_family(const std::string& name) {
  if (name == "A" || name == "a") return LimitFamilyId::A;
  if (name == "B" || name == "b") return LimitFamilyId::B;
  if (name == "C" || name == "c") return LimitFamilyId::C;
  throw Error("unknown limit family '" + name + "' (expected A, B or C)");
}

std::string to_string(LimitFamilyId id) {
  switch (id) {
    case LimitFamilyId::A: return "A";
    case LimitFamilyId::B: return "B";
    case LimitFamilyId::C: return "C";
  }
  return "?";
}

Op2 LimitFamily::at(double eps) const {
  if (!(eps > 0.0)) throw Error("limit family parameter must be positive");
  Op2 a;
  a << top_left, top_right, eps, 0.0;
  return a * std::pow(eps, -0.25);
}

LocalOperatorSet LimitFamily::operators(double eps, int n) const {
  return LocalOperatorSet::replicate(at(eps), n);
}

LimitFamily limit_family(LimitFamilyId id) {
  using std::numbers::pi;
  // Principal branches: (-1)^(1/4) = e^{i pi/4}, (-1)^(7/12) = e^{7 i pi/12}.
  const Complex root8 = std::polar(1.0, pi / 4.0);
  LimitFamily f;
  f.id = id;
  f.top_left = root8;
  f.target = "W4";
  switch (id) {
    case LimitFamilyId::A:
      f.top_right = 1.0;
      f.source = "GHZ4";
      break;
    case LimitFamilyId::B:
      f.top_right = std::polar(std::cbrt(4.0), 7.0 * pi / 12.0);
      f.source = "X4 (d1 = d4 = 1)";
      break;
    case LimitFamilyId::C:
      f.top_right = std::sqrt(Complex(-std::sqrt(3.0), -1.0) / 2.0);
      f.source = "M4 (alpha = beta = gamma = 1)";
      break;
  }
  return f;
}

PureState limit_source(LimitFamilyId id) {
  switch (id) {
    case LimitFamilyId::A:
      return make_state(4, {{"0000", 1.0}, {"1111", 1.0}});
    case LimitFamilyId::B:
      return make_state(4, {{"1000", 1.0}, {"0100", 1.0}, {"0010", 1.0}, {"0001", 1.0}, {"1111", 1.0}});
    case LimitFamilyId::C:
      return make_state(4, {{"0000", 1.0}, {"0011", 1.0}, {"1111", 1.0}});
  }
  throw Error("unknown limit family");
}

ConvergenceReport verify_limit(const std::function<PureState(double)>& family, const PureState& target,
                               const std::vector<double>& schedule, double fidelity_gap) {
  if (schedule.empty()) throw Error("verify_limit: empty schedule");
  for (std::size_t i = 0; i < schedule.size(); ++i) {
    if (!(schedule[i] > 0.0) || (i > 0 && !(schedule[i] < schedule[i - 1]))) {
      throw Error("verify_limit: schedule must be positive and strictly decreasing");
    }
  }
  ConvergenceReport r;
  r.eps = schedule;
  for (double e : schedule) r.fidelity.push_back(fidelity(family(e), target));
  const std::size_t tail = r.fidelity.size() / 2;
  r.eventually_monotone = true;
  for (std::size_t i = tail + 1; i < r.fidelity.size(); ++i) {
    if (r.fidelity[i] < r.fidelity[i - 1] - 1e-12) r.eventually_monotone = false;
  }
  r.final_fidelity = r.fidelity.back();
  r.passed = r.eventually_monotone && r.final_fidelity >= 1.0 - fidelity_gap;
  return r;
}

ConvergenceReport verify_degeneration(const PureState& source, const LimitFamily& fam,
                                      const PureState& target, const std::vector<double>& eps_schedule,
                                      double fidelity_gap) {
  const int n = source.qubits();
  return verify_limit([&](double e) { return apply_local(source, fam.operators(e, n)); }, target,
                      eps_schedule, fidelity_gap);
}

std::vector<double> geometric_schedule(double from, double to, int steps) {
  if (steps < 1 || !(from > 0.0) || !(to > 0.0)) throw Error("geometric_schedule: bad arguments");
  if (steps == 1) return {from};
  if (!(to < from)) throw Error("geometric_schedule: expected from > to");
  std::vector<double> out;
  const double ratio = std::log(to / from) / (steps - 1);
  for (int i = 0; i < steps; ++i) out.push_back(from * std::exp(ratio * i));
  out.back() = to;
  return out;
}

nlohmann::json to_json(const ConvergenceReport& r) {
  nlohmann::json rows = nlohmann::json::array();
  for (std::size_t i = 0; i < r.eps.size(); ++i) rows.push_back({{"eps", r.eps[i]}, {"fidelity", r.fidelity[i]}});
  return {{"schedule", rows},
          {"eventually_monotone", r.eventually_monotone},
          {"final_fidelity", r.final_fidelity},
          {"passed", r.passed}};
}

}  // namespace qsecant
