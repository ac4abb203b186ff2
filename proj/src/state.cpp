#include "qsecant/state.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace qsecant {

PureState::PureState(int n, std::vector<Complex> amplitudes)
    : n_(n), amps_(std::move(amplitudes)) {
  if (n < 1 || n > kMaxQubits) {
    throw Error("qubit count must be in 1.." + std::to_string(kMaxQubits) +
                ", got " + std::to_string(n));
  }
  if (amps_.size() != (std::size_t{1} << n)) {
    throw DimensionError("expected " + std::to_string(std::size_t{1} << n) +
                " amplitudes for n=" + std::to_string(n) + ", got " +
                std::to_string(amps_.size()));
  }
  for (const auto& a : amps_) {
    if (!std::isfinite(a.real()) || !std::isfinite(a.imag())) {
      throw Error("amplitudes must be finite");
    }
  }
  if (norm() == 0.0) throw Error("the zero vector is not a state");
}

double PureState::norm() const {
  double acc = 0.0;
  for (const auto& a : amps_) acc += std::norm(a);
  return std::sqrt(acc);
}

PartySubset::PartySubset(int n, std::vector<int> parties)
    : n_(n), parties_(std::move(parties)) {
  if (parties_.empty() || static_cast<int>(parties_.size()) > n - 1) {
    throw Error("party subset size must be in 1..n-1");
  }
  for (std::size_t i = 0; i < parties_.size(); ++i) {
    if (parties_[i] < 1 || parties_[i] > n) {
      throw Error("party index out of range: " + std::to_string(parties_[i]));
    }
    if (i > 0 && parties_[i] <= parties_[i - 1]) {
      throw Error("party subset must be strictly increasing");
    }
  }
}

PartySubset PartySubset::complement() const {
  std::vector<int> rest;
  for (int q = 1; q <= n_; ++q) {
    if (!contains(q)) rest.push_back(q);
  }
  return PartySubset(n_, std::move(rest));
}

bool PartySubset::contains(int party) const {
  return std::binary_search(parties_.begin(), parties_.end(), party);
}

std::string PartySubset::label() const {
  std::string out;
  for (int p : parties_) out += std::to_string(p);
  return out;
}

std::string bitstring(std::size_t index, int n) {
  std::string out(static_cast<std::size_t>(n), '0');
  for (int q = 0; q < n; ++q) {
    if ((index >> (n - 1 - q)) & 1u) out[static_cast<std::size_t>(q)] = '1';
  }
  return out;
}

PureState make_state(int n, std::span<const std::pair<std::string, Complex>> terms) {
  if (n < 1 || n > kMaxQubits) throw Error("qubit count out of range");
  std::vector<Complex> amps(std::size_t{1} << n);
  for (const auto& [bits, amp] : terms) {
    if (static_cast<int>(bits.size()) != n) {
      throw Error("bitstring '" + bits + "' does not have length " + std::to_string(n));
    }
    std::size_t index = 0;
    for (char c : bits) {
      if (c != '0' && c != '1') throw Error("bitstring '" + bits + "' is not binary");
      index = (index << 1) | static_cast<std::size_t>(c == '1');
    }
    amps[index] += amp;
  }
  return PureState(n, std::move(amps));
}

PureState make_state(int n, std::initializer_list<std::pair<std::string, Complex>> terms) {
  return make_state(n, std::span<const std::pair<std::string, Complex>>(terms.begin(), terms.size()));
}

PureState basis_state(const std::string& bits) {
  return make_state(static_cast<int>(bits.size()), {{bits, 1.0}});
}

PureState normalize(const PureState& s) {
  return scale(s, 1.0 / s.norm());
}

PureState scale(const PureState& s, Complex factor) {
  std::vector<Complex> amps(s.amplitudes().begin(), s.amplitudes().end());
  for (auto& a : amps) a *= factor;
  return PureState(s.qubits(), std::move(amps));
}

PureState add(const PureState& a, const PureState& b, Complex b_factor) {
  if (a.qubits() != b.qubits()) throw DimensionError("qubit count mismatch in add");
  std::vector<Complex> amps(a.dim());
  for (std::size_t i = 0; i < a.dim(); ++i) amps[i] = a[i] + b_factor * b[i];
  return PureState(a.qubits(), std::move(amps));
}

PureState tensor_product(const PureState& a, const PureState& b) {
  std::vector<Complex> amps(a.dim() * b.dim());
  for (std::size_t i = 0; i < a.dim(); ++i) {
    for (std::size_t j = 0; j < b.dim(); ++j) amps[i * b.dim() + j] = a[i] * b[j];
  }
  return PureState(a.qubits() + b.qubits(), std::move(amps));
}

namespace {

void check_permutation(std::span<const int> perm, int n) {
  if (static_cast<int>(perm.size()) != n) throw DimensionError("permutation has wrong length");
  std::vector<bool> seen(static_cast<std::size_t>(n), false);
  for (int p : perm) {
    if (p < 1 || p > n || seen[static_cast<std::size_t>(p - 1)]) {
      throw Error("not a permutation of 1..n");
    }
    seen[static_cast<std::size_t>(p - 1)] = true;
  }
}

}  // namespace

std::vector<int> inverse_permutation(std::span<const int> perm) {
  const int n = static_cast<int>(perm.size());
  check_permutation(perm, n);
  std::vector<int> inv(perm.size());
  for (int q = 1; q <= n; ++q) inv[static_cast<std::size_t>(perm[q - 1] - 1)] = q;
  return inv;
}

PureState permute_parties(const PureState& s, std::span<const int> perm) {
  const int n = s.qubits();
  check_permutation(perm, n);
  std::vector<Complex> amps(s.dim());
  for (std::size_t i = 0; i < s.dim(); ++i) {
    std::size_t target = 0;
    for (int q = 1; q <= n; ++q) {
      if (s.bit(i, q)) target |= std::size_t{1} << (n - perm[q - 1]);
    }
    amps[target] = s[i];
  }
  return PureState(n, std::move(amps));
}

double fidelity(const PureState& a, const PureState& b) {
  if (a.qubits() != b.qubits()) throw DimensionError("fidelity: qubit count mismatch");
  Complex overlap = 0.0;
  for (std::size_t i = 0; i < a.dim(); ++i) overlap += std::conj(a[i]) * b[i];
  const double na = a.norm();
  const double nb = b.norm();
  return std::min(1.0, std::norm(overlap) / (na * na * nb * nb));
}

bool projectively_equal(const PureState& a, const PureState& b, double tol) {
  return 1.0 - fidelity(a, b) <= tol;
}

nlohmann::json to_json(const PureState& s) {
  nlohmann::json amps = nlohmann::json::array();
  for (const auto& a : s.amplitudes()) amps.push_back({a.real(), a.imag()});
  return {{"n", s.qubits()}, {"amplitudes", std::move(amps)}};
}

PureState state_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("n") || !j.contains("amplitudes")) {
    throw ParseError("state JSON needs fields \"n\" and \"amplitudes\"");
  }
  if (!j["n"].is_number_integer()) throw ParseError("\"n\" must be an integer");
  const int n = j["n"].get<int>();
  if (n < 1 || n > kMaxQubits) throw ParseError("\"n\" out of range");
  const auto& arr = j["amplitudes"];
  if (!arr.is_array()) throw ParseError("\"amplitudes\" must be an array");
  if (arr.size() != (std::size_t{1} << n)) {
    throw DimensionError("expected " + std::to_string(std::size_t{1} << n) +
                     " amplitudes, got " + std::to_string(arr.size()));
  }
  std::vector<Complex> amps;
  amps.reserve(arr.size());
  for (const auto& e : arr) {
    if (e.is_number()) {
      amps.emplace_back(e.get<double>(), 0.0);
    } else if (e.is_array() && e.size() == 2 && e[0].is_number() && e[1].is_number()) {
      amps.emplace_back(e[0].get<double>(), e[1].get<double>());
    } else {
      throw ParseError("each amplitude must be [re, im]");
    }
  }
  return PureState(n, std::move(amps));
}

PureState parse_state(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(e.what());
  }
  return state_from_json(j);
}

}  // namespace qsecant
