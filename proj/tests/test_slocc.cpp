#include <doctest.h>

#include <cmath>

#include "qsecant/multirank.hpp"
#include "qsecant/slocc.hpp"
#include "qsecant/state_factory.hpp"

using namespace qsecant;

TEST_CASE("identity operators leave a state unchanged") {
  const PureState s = random_state(3, 1);
  const PureState t = apply_local(s, LocalOperatorSet::identity(3));
  for (std::size_t i = 0; i < s.dim(); ++i) CHECK(std::abs(s[i] - t[i]) < 1e-15);
}

TEST_CASE("apply_local matches an explicit Kronecker product") {
  const auto ops = random_sl2_set(2, 3);
  const PureState s = random_state(2, 4);
  Eigen::Matrix4cd k;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) k.block(2 * i, 2 * j, 2, 2) = ops.ops[0](i, j) * ops.ops[1];
  Eigen::Vector4cd v;
  for (int i = 0; i < 4; ++i) v(i) = s[static_cast<std::size_t>(i)];
  const Eigen::Vector4cd expected = k * v;
  const PureState got = apply_local(s, ops);
  for (int i = 0; i < 4; ++i) CHECK(std::abs(got[static_cast<std::size_t>(i)] - expected(i)) < 1e-12);
}

TEST_CASE("apply_local composes as a group action") {
  const auto a = random_sl2_set(3, 1);
  const auto b = random_sl2_set(3, 2);
  LocalOperatorSet ab;
  for (int q = 0; q < 3; ++q) ab.ops.push_back(a.ops[q] * b.ops[q]);
  const PureState s = random_state(3, 5);
  const PureState lhs = apply_local(apply_local(s, b), a);
  const PureState rhs = apply_local(s, ab);
  for (std::size_t i = 0; i < s.dim(); ++i) CHECK(std::abs(lhs[i] - rhs[i]) < 1e-10);
}

TEST_CASE("random SL(2) sets have unit determinant and are seed-deterministic") {
  const auto a = random_sl2_set(5, 77);
  const auto b = random_sl2_set(5, 77);
  for (int q = 0; q < 5; ++q) {
    CHECK(std::abs(a.ops[q].determinant() - Complex(1.0)) < 1e-12);
    CHECK((a.ops[q] - b.ops[q]).norm() == 0.0);
  }
  CHECK(a.invertible());
}

TEST_CASE("singular operators") {
  LocalOperatorSet ops = LocalOperatorSet::identity(2);
  ops.ops[1] << 1.0, 1.0, 1.0, 1.0;
  CHECK_FALSE(ops.invertible());
  CHECK_THROWS_AS(apply_local(ghz(2), ops, true), Error);
  CHECK_NOTHROW(apply_local(ghz(2), ops, false));
  CHECK_THROWS_AS(apply_local(ghz(3), ops), DimensionError);
}

TEST_CASE("flattening covariance, with the untransposed formula as a negative control") {
  int negative_hits = 0;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const PureState s = random_state(4, seed);
    const auto ops = random_sl2_set(4, seed + 100);
    for (const auto& subset : signature_subsets(4, 2)) {
      CHECK(flattening_covariance_check(s, ops, subset));
      const Eigen::MatrixXcd actual = matricize(apply_local(s, ops), subset).matrix;
      const Eigen::MatrixXcd wrong = predicted_flattening(s, ops, subset, false);
      if ((actual - wrong).norm() > 1e-6 * actual.norm()) ++negative_hits;
    }
  }
  CHECK(negative_hits == 60);
}

TEST_CASE("SL(2) actions preserve multirank signatures") {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const PureState s = permutation_orbit(w_hybrid(4, 1, 2))[seed % 4];
    const auto ops = random_sl2_set(4, seed);
    CHECK(multirank_signature(apply_local(s, ops)) == multirank_signature(s));
  }
}

TEST_CASE("limit families") {
  CHECK(parse_limit_family("b") == LimitFamilyId::B);
  CHECK_THROWS_AS(parse_limit_family("D"), Error);
  const auto fam = limit_family(LimitFamilyId::A);
  const Op2 a = fam.at(0.01);
  CHECK(std::abs(a(1, 0) - Complex(std::pow(0.01, 0.75))) < 1e-15);
  CHECK(std::abs(a(1, 1)) == 0.0);
  CHECK_THROWS_AS(fam.at(0.0), Error);
  const auto schedule = geometric_schedule(1e-1, 1e-4, 7);
  const auto rep = verify_degeneration(limit_source(LimitFamilyId::A), fam, w(4), schedule, 1e-4);
  CHECK(rep.passed);
  CHECK(rep.eventually_monotone);
  CHECK(rep.final_fidelity > 1.0 - 1e-6);
}

TEST_CASE("family C on M4 converges to fidelity 3/4 with W4") {
  // The leading order of C_eps applied to M4 is w^3 W4 + x^2 w (|1000> + |0100>)
  // with w, x the top row of the family matrix. That point lies in the W4 orbit
  // but has fidelity exactly 3/4 with W4 itself.
  const auto fam = limit_family(LimitFamilyId::C);
  const auto rep = verify_degeneration(limit_source(LimitFamilyId::C), fam, w(4),
                                       geometric_schedule(1e-1, 1e-6, 11), 1e-4);
  CHECK(rep.final_fidelity == doctest::Approx(0.75).epsilon(1e-5));
  CHECK_FALSE(rep.passed);
  const PureState lead = add(scale(w(4, false), std::pow(fam.top_left, 3)),
                             make_state(4, {{"1000", 1.0}, {"0100", 1.0}}),
                             fam.top_right * fam.top_right * fam.top_left);
  CHECK(fidelity(lead, w(4)) == doctest::Approx(0.75).epsilon(1e-12));
}

TEST_CASE("verify_limit validates schedules and detects late decreases") {
  const PureState target = basis_state("0");
  CHECK_THROWS_AS(verify_limit([](double) { return basis_state("0"); }, target, {}), Error);
  CHECK_THROWS_AS(verify_limit([](double) { return basis_state("0"); }, target, {0.1, 0.2}), Error);
  auto wobble = [](double e) {
    const double angle = (e < 0.015 && e > 0.005) ? 0.0 : e;
    return PureState(1, {std::cos(angle), std::sin(angle)});
  };
  const auto rep = verify_limit(wobble, target, {0.1, 0.05, 0.02, 0.01, 0.001});
  CHECK_FALSE(rep.eventually_monotone);
  CHECK_FALSE(rep.passed);
}

TEST_CASE("geometric schedule endpoints") {
  const auto s = geometric_schedule(1e-1, 1e-4, 4);
  REQUIRE(s.size() == 4);
  CHECK(s.front() == 1e-1);
  CHECK(s.back() == 1e-4);
  CHECK(s[1] == doctest::Approx(1e-2));
  CHECK_THROWS_AS(geometric_schedule(1e-4, 1e-1, 4), Error);
}
