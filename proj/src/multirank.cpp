#include "qsecant/multirank.hpp"

#include <algorithm>

namespace qsecant {

Flattening matricize(const PureState& s, const PartySubset& subset) {
  const int n = s.qubits();
  if (subset.qubits() != n) throw DimensionError("subset was built for a different qubit count");
  const PartySubset rest = subset.complement();
  const int l = subset.size();
  Matrix m = Matrix::Zero(Eigen::Index{1} << l, Eigen::Index{1} << (n - l));
  for (std::size_t i = 0; i < s.dim(); ++i) {
    Eigen::Index row = 0;
    Eigen::Index col = 0;
    for (int p : subset.parties()) row = (row << 1) | s.bit(i, p);
    for (int p : rest.parties()) col = (col << 1) | s.bit(i, p);
    m(row, col) = s[i];
  }
  return {subset, std::move(m)};
}

std::vector<double> singular_values(const Matrix& m) {
  Eigen::JacobiSVD<Matrix> svd(m);
  const auto& sv = svd.singularValues();
  return {sv.data(), sv.data() + sv.size()};
}

int numerical_rank(const Matrix& m, double rel_tol) {
  const auto sv = singular_values(m);
  if (sv.empty() || sv.front() == 0.0) return 0;
  const double cutoff = rel_tol * sv.front();
  return static_cast<int>(std::count_if(sv.begin(), sv.end(), [&](double x) { return x > cutoff; }));
}

std::vector<PartySubset> signature_subsets(int n, int l) {
  if (l < 1 || 2 * l > n) throw Error("signature level out of range");
  std::vector<PartySubset> out;
  std::vector<int> pick(static_cast<std::size_t>(l));
  for (int i = 0; i < l; ++i) pick[static_cast<std::size_t>(i)] = i + 1;
  while (true) {
    if (2 * l != n || pick.front() == 1) out.emplace_back(n, pick);
    int pos = l - 1;
    while (pos >= 0 && pick[static_cast<std::size_t>(pos)] == n - l + pos + 1) --pos;
    if (pos < 0) break;
    ++pick[static_cast<std::size_t>(pos)];
    for (int j = pos + 1; j < l; ++j) {
      pick[static_cast<std::size_t>(j)] = pick[static_cast<std::size_t>(j - 1)] + 1;
    }
  }
  return out;
}

int MultirankSignature::max_rank() const {
  int best = 0;
  for (const auto& lvl : ranks) {
    for (int r : lvl) best = std::max(best, r);
  }
  return best;
}

bool MultirankSignature::all_ones() const {
  for (const auto& lvl : ranks) {
    for (int r : lvl) {
      if (r != 1) return false;
    }
  }
  return true;
}

bool MultirankSignature::any_one() const {
  for (const auto& lvl : ranks) {
    for (int r : lvl) {
      if (r == 1) return true;
    }
  }
  return false;
}

std::string MultirankSignature::compact(int l) const {
  std::string out;
  for (int r : level(l)) out += std::to_string(r);
  return out;
}

MultirankSignature multirank_signature(const PureState& s, double rel_tol) {
  MultirankSignature sig;
  sig.n = s.qubits();
  for (int l = 1; 2 * l <= sig.n; ++l) {
    std::vector<int> lvl;
    for (const auto& subset : signature_subsets(sig.n, l)) {
      lvl.push_back(numerical_rank(matricize(s, subset).matrix, rel_tol));
    }
    sig.ranks.push_back(std::move(lvl));
  }
  return sig;
}

bool is_genuinely_entangled(const MultirankSignature& sig) {
  return sig.n >= 2 && !sig.any_one();
}

bool is_genuinely_entangled(const PureState& s, double rel_tol) {
  if (s.qubits() < 2) throw Error("genuine entanglement needs at least two qubits");
  return is_genuinely_entangled(multirank_signature(s, rel_tol));
}

Matrix reduced_density(const PureState& s, const PartySubset& subset) {
  const Matrix m = matricize(normalize(s), subset).matrix;
  return m * m.adjoint();
}

nlohmann::json to_json(const MultirankSignature& sig) {
  nlohmann::json j = nlohmann::json::object();
  nlohmann::json order = nlohmann::json::object();
  for (int l = 1; 2 * l <= sig.n; ++l) {
    const std::string key = "l=" + std::to_string(l);
    j[key] = sig.level(l);
    nlohmann::json names = nlohmann::json::array();
    for (const auto& subset : signature_subsets(sig.n, l)) names.push_back(subset.label());
    order[key] = std::move(names);
  }
  j["subsets"] = std::move(order);
  return j;
}

}  // namespace qsecant
