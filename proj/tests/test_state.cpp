#include <doctest.h>

#include <cmath>

#include "qsecant/state.hpp"

using namespace qsecant;

TEST_CASE("qubit 1 is the most significant bit") {
  const PureState s = basis_state("100");
  CHECK(s.dim() == 8);
  CHECK(s[4] == Complex(1.0));
  CHECK(s.bit(4, 1) == 1);
  CHECK(s.bit(4, 3) == 0);
  CHECK(bitstring(4, 3) == "100");
  CHECK(bitstring(1, 3) == "001");
}

TEST_CASE("make_state sums duplicate terms") {
  const PureState s = make_state(2, {{"01", 1.0}, {"01", Complex(0.0, 2.0)}, {"10", -1.0}});
  CHECK(s[1] == Complex(1.0, 2.0));
  CHECK(s[2] == Complex(-1.0));
  CHECK(s[0] == Complex(0.0));
}

TEST_CASE("zero and malformed states are rejected") {
  CHECK_THROWS_AS(PureState(2, std::vector<Complex>(4, 0.0)), Error);
  CHECK_THROWS_AS(PureState(2, std::vector<Complex>(3, 1.0)), DimensionError);
  CHECK_THROWS_AS(basis_state("012"), Error);
  CHECK_THROWS_AS(add(basis_state("0"), basis_state("00")), DimensionError);
}

TEST_CASE("tensor product places the first factor on the leading qubits") {
  const PureState ab = tensor_product(basis_state("1"), basis_state("01"));
  CHECK(projectively_equal(ab, basis_state("101")));
}

TEST_CASE("party permutation and its inverse") {
  const PureState s = make_state(3, {{"100", 1.0}, {"011", Complex(0, 1)}});
  const std::vector<int> perm{2, 3, 1};
  const PureState p = permute_parties(s, perm);
  // Party 1 moves to position 2: |100> becomes |010>, |011> becomes |101>.
  CHECK(p[0b010] == Complex(1.0));
  CHECK(p[0b101] == Complex(0, 1));
  const auto inv = inverse_permutation(perm);
  CHECK(projectively_equal(permute_parties(p, inv), s));
  CHECK_THROWS_AS(permute_parties(s, std::vector<int>{1, 1, 2}), Error);
}

TEST_CASE("fidelity ignores norm and global phase") {
  const PureState a = make_state(2, {{"00", 1.0}, {"11", 1.0}});
  const PureState b = scale(a, std::polar(3.0, 0.7));
  CHECK(fidelity(a, b) == doctest::Approx(1.0));
  CHECK(projectively_equal(a, b));
  CHECK(fidelity(a, basis_state("00")) == doctest::Approx(0.5));
  CHECK(fidelity(basis_state("01"), basis_state("10")) == doctest::Approx(0.0));
}

TEST_CASE("json round trip and parse errors") {
  const PureState s = make_state(2, {{"00", Complex(0.5, -0.25)}, {"11", 2.0}});
  const PureState back = state_from_json(to_json(s));
  for (std::size_t i = 0; i < s.dim(); ++i) CHECK(std::abs(back[i] - s[i]) == 0.0);
  const PureState parsed = parse_state(R"({"n": 1, "amplitudes": [[1, 0], [0, 1]]})");
  CHECK(parsed[1] == Complex(0, 1));
  try {
    parse_state("{\"n\": 1,\n \"amplitudes\": [[1, 0], ");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()).find("line 2") != std::string::npos);
  }
  CHECK_THROWS_AS(parse_state(R"({"n": 2, "amplitudes": [[1, 0]]})"), Error);
}

TEST_CASE("PartySubset") {
  const PartySubset s(4, {1, 3});
  CHECK(s.label() == "13");
  CHECK(s.complement().parties() == std::vector<int>{2, 4});
  CHECK(s.contains(3));
  CHECK_FALSE(s.contains(2));
  CHECK_THROWS_AS(PartySubset(3, {2, 1}), Error);
  CHECK_THROWS_AS(PartySubset(3, {1, 2, 3}), Error);
  CHECK_THROWS_AS(PartySubset(3, {4}), Error);
}
