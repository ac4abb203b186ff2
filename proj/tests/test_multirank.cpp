#include <doctest.h>

#include <algorithm>

#include "qsecant/multirank.hpp"
#include "qsecant/state_factory.hpp"

using namespace qsecant;

namespace {

// Flattening rank of |D_n^l> across a k | n-k cut: the number of weights j
// with 0 <= j <= k and 0 <= l - j <= n - k.
int dicke_cut_rank(int n, int l, int k) {
  int r = 0;
  for (int j = 0; j <= k; ++j) {
    if (l - j >= 0 && l - j <= n - k) ++r;
  }
  return r;
}

}  // namespace

TEST_CASE("matricize follows the row/column bit order") {
  // |0110> on subset {1,3}: row bits (q1,q3) = (0,1), column bits (q2,q4) = (1,0).
  const PureState s = basis_state("0110");
  const Flattening f = matricize(s, PartySubset(4, {1, 3}));
  CHECK(f.matrix.rows() == 4);
  CHECK(f.matrix.cols() == 4);
  CHECK(f.matrix(1, 2) == Complex(1.0));
  CHECK(f.matrix.cwiseAbs().sum() == doctest::Approx(1.0));
}

TEST_CASE("numerical rank uses a relative cutoff") {
  Matrix m = Matrix::Zero(3, 3);
  m(0, 0) = 1.0;
  m(1, 1) = 1e-6;
  m(2, 2) = 1e-12;
  CHECK(numerical_rank(m) == 2);
  CHECK(numerical_rank(m, 1e-3) == 1);
  CHECK(numerical_rank(Matrix::Zero(2, 2)) == 0);
  CHECK(numerical_rank(1e-20 * m) == 2);
}

TEST_CASE("signature subsets") {
  auto labels = [](int n, int l) {
    std::vector<std::string> out;
    for (const auto& s : signature_subsets(n, l)) out.push_back(s.label());
    return out;
  };
  CHECK(labels(4, 2) == std::vector<std::string>{"12", "13", "14"});
  CHECK(labels(3, 1) == std::vector<std::string>{"1", "2", "3"});
  CHECK(signature_subsets(5, 2).size() == 10);
  CHECK(signature_subsets(6, 3).size() == 10);
}

TEST_CASE("signatures of standard states") {
  CHECK(multirank_signature(ghz(3)).compact(1) == "222");
  CHECK(multirank_signature(w(3)).compact(1) == "222");
  const auto sep = multirank_signature(basis_state("0101"));
  CHECK(sep.all_ones());
  CHECK_FALSE(is_genuinely_entangled(sep));
  CHECK(multirank_signature(cluster4()).compact(2) == "244");
  CHECK(is_genuinely_entangled(ghz(5)));
}

TEST_CASE("Dicke flattening ranks match the counting formula") {
  for (int n = 2; n <= 6; ++n) {
    for (int l = 0; l <= n; ++l) {
      const auto sig = multirank_signature(dicke(n, l));
      for (int k = 1; k <= n / 2; ++k) {
        for (int r : sig.level(k)) CHECK(r == dicke_cut_rank(n, l, k));
      }
    }
  }
}

TEST_CASE("reduced density matrix is a unit-trace PSD matrix") {
  const PureState s = random_state(4, 3);
  const Matrix rho = reduced_density(s, PartySubset(4, {2, 4}));
  CHECK(rho.trace().real() == doctest::Approx(1.0));
  CHECK(std::abs(rho.trace().imag()) < 1e-12);
  CHECK((rho - rho.adjoint()).norm() < 1e-12);
  Eigen::SelfAdjointEigenSolver<Matrix> es(rho);
  CHECK(es.eigenvalues().minCoeff() > -1e-12);
}

TEST_CASE("signature json lists subsets per level") {
  const auto j = to_json(multirank_signature(ghz(4)));
  CHECK(j.at("l=2") == nlohmann::json({2, 2, 2}));
  CHECK(j.at("subsets").at("l=2") == nlohmann::json({"12", "13", "14"}));
}
