#pragma once

#include <string>
#include <vector>

#include <Eigen/Dense>

#include "qsecant/state.hpp"

namespace qsecant {

using Matrix = Eigen::MatrixXcd;

/// Default relative singular-value cutoff for numerical rank.
inline constexpr double kDefaultRankTol = 1e-9;

/// Reshape of a state across I | complement(I). Row index enumerates the bits
/// of I (first party most significant), column index the bits of the rest.
struct Flattening {
  PartySubset subset;
  Matrix matrix;
};

Flattening matricize(const PureState& s, const PartySubset& subset);

std::vector<double> singular_values(const Matrix& m);

/// Number of singular values above rel_tol * sigma_max. Zero only for the zero matrix.
int numerical_rank(const Matrix& m, double rel_tol = kDefaultRankTol);

/// Subsets reported for a given l, in lexicographic order. For the middle cut
/// of even n only subsets containing party 1 are kept.
std::vector<PartySubset> signature_subsets(int n, int l);

/// Per-l tuples of flattening ranks for l = 1..floor(n/2).
struct MultirankSignature {
  int n = 0;
  std::vector<std::vector<int>> ranks;  // ranks[l-1][j] pairs with subsets(n, l)[j]

  const std::vector<int>& level(int l) const { return ranks.at(static_cast<std::size_t>(l - 1)); }
  int max_rank() const;
  bool all_ones() const;
  bool any_one() const;

  /// Digits of one level, e.g. "122" or "244".
  std::string compact(int l) const;

  friend bool operator==(const MultirankSignature&, const MultirankSignature&) = default;
  friend auto operator<=>(const MultirankSignature&, const MultirankSignature&) = default;
};

MultirankSignature multirank_signature(const PureState& s, double rel_tol = kDefaultRankTol);

/// Genuine entanglement: no flattening has rank one.
bool is_genuinely_entangled(const PureState& s, double rel_tol = kDefaultRankTol);
bool is_genuinely_entangled(const MultirankSignature& sig);

/// Tr over the complement of |s><s| (s normalized first): M M^dagger.
Matrix reduced_density(const PureState& s, const PartySubset& subset);

/// {"l=1": [...], "l=2": [...], "subsets": {"l=1": ["1","2",...], ...}}
nlohmann::json to_json(const MultirankSignature& sig);

}  // namespace qsecant
