#include <doctest.h>

#include <cmath>
#include <numbers>

#include "qsecant/rank_engine.hpp"
#include "qsecant/state_factory.hpp"

using namespace qsecant;

namespace {

PureState power_of(const std::array<Complex, 2>& v, int n) {
  PureState out(1, {v[0], v[1]});
  for (int i = 1; i < n; ++i) out = tensor_product(out, PureState(1, {v[0], v[1]}));
  return out;
}

PureState product(const std::vector<std::string>& kets) {
  PureState out = basis_state(kets.front());
  for (std::size_t i = 1; i < kets.size(); ++i) out = tensor_product(out, basis_state(kets[i]));
  return out;
}

double distance(const PureState& a, const PureState& b) {
  double d = 0.0;
  for (std::size_t i = 0; i < a.dim(); ++i) d = std::max(d, std::abs(a[i] - b[i]));
  return d;
}

// Cayley's hyperdeterminant written out term by term.
Complex cayley_oracle(const PureState& s) {
  auto a = [&](int i, int j, int k) { return s[static_cast<std::size_t>(4 * i + 2 * j + k)]; };
  Complex d = a(0, 0, 0) * a(0, 0, 0) * a(1, 1, 1) * a(1, 1, 1) + a(0, 0, 1) * a(0, 0, 1) * a(1, 1, 0) * a(1, 1, 0) +
              a(0, 1, 0) * a(0, 1, 0) * a(1, 0, 1) * a(1, 0, 1) + a(1, 0, 0) * a(1, 0, 0) * a(0, 1, 1) * a(0, 1, 1);
  d -= 2.0 * (a(0, 0, 0) * a(1, 1, 1) * a(0, 0, 1) * a(1, 1, 0) + a(0, 0, 0) * a(1, 1, 1) * a(0, 1, 0) * a(1, 0, 1) +
              a(0, 0, 0) * a(1, 1, 1) * a(1, 0, 0) * a(0, 1, 1) + a(0, 0, 1) * a(1, 1, 0) * a(0, 1, 0) * a(1, 0, 1) +
              a(0, 0, 1) * a(1, 1, 0) * a(1, 0, 0) * a(0, 1, 1) + a(0, 1, 0) * a(1, 0, 1) * a(1, 0, 0) * a(0, 1, 1));
  d += 4.0 * (a(0, 0, 0) * a(0, 1, 1) * a(1, 0, 1) * a(1, 1, 0) + a(1, 1, 1) * a(1, 0, 0) * a(0, 1, 0) * a(0, 0, 1));
  return d;
}

FitOptions quick_fit() {
  FitOptions o;
  o.restarts = 8;
  o.iters = 400;
  return o;
}

}  // namespace

TEST_CASE("D4^2 is a sum of three fourth powers") {
  const Complex om = std::polar(1.0, 2.0 * std::numbers::pi / 3.0);
  PureState sum = scale(power_of({1.0, 1.0}, 4), 1.0);
  for (int j = 1; j < 3; ++j) sum = add(sum, power_of({1.0, std::pow(om, j)}, 4), std::pow(om, j));
  const PureState expected = scale(dicke(4, 2), 3.0 * std::sqrt(6.0));
  CHECK(distance(sum, expected) < 1e-12);
}

TEST_CASE("X4 is a sum of three fourth powers") {
  const Complex om = std::polar(1.0, 2.0 * std::numbers::pi / 3.0);
  PureState sum = power_of({1.0, 1.0}, 4);
  for (int j = 1; j < 3; ++j) sum = add(sum, power_of({1.0, std::pow(om, j)}, 4), std::pow(om, -j));
  CHECK(distance(scale(sum, 1.0 / 3.0), x4(1.0, 1.0, false)) < 1e-12);
}

TEST_CASE("a border-looking normal form has an explicit rank-3 decomposition") {
  const PureState nf = make_state(4, {{"0010", 1.0}, {"0001", 1.0}, {"1100", 1.0}, {"1001", 1.0}});
  PureState plus(1, {1.0, 1.0});
  PureState sum = add(product({"0", "010"}), tensor_product(plus, basis_state("001")));
  sum = add(sum, product({"1", "100"}));
  CHECK(distance(sum, nf) < 1e-15);
  CHECK(best_rank_k_fit(nf, 3, quick_fit()).converged);
}

TEST_CASE("expand reproduces a weighted sum of products") {
  ProductTerm t1{2.0, {{1.0, 0.0}, {0.0, 1.0}}};
  ProductTerm t2{Complex(0, 1), {{1.0, 0.0}, {1.0, 0.0}}};
  const PureState s = expand({t1, t2});
  CHECK(s[0b01] == Complex(2.0));
  CHECK(s[0b00] == Complex(0, 1));
  CHECK(std::abs(s[0b10]) + std::abs(s[0b11]) == 0.0);
}

TEST_CASE("rank fits") {
  const auto g2 = best_rank_k_fit(ghz(4), 2, quick_fit());
  CHECK(g2.converged);
  CHECK(expand(g2.terms).qubits() == 4);
  CHECK(fidelity(expand(g2.terms), ghz(4)) == doctest::Approx(1.0).epsilon(1e-10));
  // W3 has rank 3 but border rank 2: a rank-2 fit keeps a residual only by
  // letting its terms grow, so a bounded exact fit must not be reported.
  const auto w2 = best_rank_k_fit(w(3), 2, quick_fit());
  CHECK((!w2.converged || w2.max_term_norm > 1e2));
  CHECK(best_rank_k_fit(w(3), 3, quick_fit()).converged);
  CHECK(best_rank_k_fit(dicke(4, 2), 3, quick_fit()).converged);
}

TEST_CASE("fits are reproducible for a fixed seed") {
  const PureState s = random_state(3, 5);
  const auto a = best_rank_k_fit(s, 2, 4, 200, 9);
  const auto b = best_rank_k_fit(s, 2, 4, 200, 9);
  CHECK(a.residual == b.residual);
  CHECK(a.restart == b.restart);
}

TEST_CASE("tangent curve points are border rank k, rank above k") {
  const PureState t = tangent_sample(3, 2, 4);
  CHECK(std::abs(cayley_hyperdeterminant(normalize(t))) < 1e-10);
  CHECK(multirank_signature(t).compact(1) == "222");
  DegenerationFitResult d = degeneration_fit(w(3), 2, 1, quick_fit());
  CHECK(d.converged);
  CHECK(fidelity(curve_coefficient(d.curves, 3, 1), w(3)) == doctest::Approx(1.0).epsilon(1e-8));
}

TEST_CASE("hyperdeterminant agrees with the written-out formula") {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const PureState s = random_state(3, seed);
    CHECK(std::abs(cayley_hyperdeterminant(s) - cayley_oracle(s)) < 1e-12);
  }
  CHECK(std::abs(cayley_hyperdeterminant(ghz(3))) == doctest::Approx(0.25));
  CHECK(std::abs(cayley_hyperdeterminant(w(3))) < 1e-15);
}

TEST_CASE("secant levels of small states") {
  SecantOptions o;
  o.fit = quick_fit();
  const auto sep = secant_level(basis_state("000"), o);
  CHECK(sep.k == 1);
  CHECK(sep.family() == "Σ");
  const auto g = secant_level(ghz(3), o);
  CHECK(g.family() == "σ2");
  const auto wt = secant_level(w(3), o);
  CHECK(wt.family() == "τ2");
  const auto w4 = secant_level(w(4), o);
  CHECK(w4.family() == "τ2");
  CHECK(w4.numerical_only);
  const auto cl = secant_level(cluster4(), o);
  CHECK(cl.k == 4);
  CHECK_FALSE(cl.undecided);
}

TEST_CASE("flattening lower bound and known maximal ranks") {
  CHECK(flattening_lower_bound(cluster4()) == 4);
  CHECK(flattening_lower_bound(ghz(5)) == 2);
  CHECK(known_max_tensor_rank(2) == 2);
  CHECK(known_max_tensor_rank(3) == 3);
  CHECK(known_max_tensor_rank(4) == 4);
}
