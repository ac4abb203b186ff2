#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

namespace qsecant {

using Complex = std::complex<double>;

/// Raised for contract violations (bad sizes, invalid subsets, zero states).
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised when objects of incompatible sizes meet (qubit counts, lengths).
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// Raised when input text cannot be parsed as a state or option document.
class ParseError : public Error {
 public:
  using Error::Error;
};

/// Largest qubit count the dense representation accepts.
inline constexpr int kMaxQubits = 24;

/// Default projective-equality tolerance on 1 - fidelity.
inline constexpr double kDefaultFidelityTol = 1e-10;

/// Dense n-qubit amplitude vector. Index i encodes the bitstring i1...in with
/// qubit 1 as the most significant bit. Not necessarily normalized, never zero.
class PureState {
 public:
  PureState(int n, std::vector<Complex> amplitudes);

  int qubits() const { return n_; }
  std::size_t dim() const { return amps_.size(); }
  std::span<const Complex> amplitudes() const { return amps_; }
  Complex operator[](std::size_t i) const { return amps_[i]; }

  double norm() const;

  /// Bit (0 or 1) carried by `qubit` (1-based) in basis index `index`.
  int bit(std::size_t index, int qubit) const {
    return static_cast<int>((index >> (n_ - qubit)) & 1u);
  }

 private:
  int n_;
  std::vector<Complex> amps_;
};

/// Strictly increasing list of 1-based parties; 1 <= size <= n-1.
class PartySubset {
 public:
  PartySubset(int n, std::vector<int> parties);

  int qubits() const { return n_; }
  int size() const { return static_cast<int>(parties_.size()); }
  const std::vector<int>& parties() const { return parties_; }
  PartySubset complement() const;
  bool contains(int party) const;

  /// Compact label such as "12" or "135".
  std::string label() const;

  friend bool operator==(const PartySubset&, const PartySubset&) = default;

 private:
  int n_;
  std::vector<int> parties_;
};

/// Builds a state from (bitstring, amplitude) terms. Duplicates are summed.
PureState make_state(int n, std::span<const std::pair<std::string, Complex>> terms);
PureState make_state(int n, std::initializer_list<std::pair<std::string, Complex>> terms);

/// Basis state |bits>.
PureState basis_state(const std::string& bits);

PureState normalize(const PureState& s);

/// Kronecker product: a occupies the leading (most significant) qubits.
PureState tensor_product(const PureState& a, const PureState& b);

/// Party q of the input becomes party perm[q-1] of the output (1-based values).
PureState permute_parties(const PureState& s, std::span<const int> perm);
std::vector<int> inverse_permutation(std::span<const int> perm);

/// |<a|b>|^2 / (|a|^2 |b|^2).
double fidelity(const PureState& a, const PureState& b);

bool projectively_equal(const PureState& a, const PureState& b,
                        double tol = kDefaultFidelityTol);

PureState scale(const PureState& s, Complex factor);
PureState add(const PureState& a, const PureState& b, Complex b_factor = 1.0);

/// {"n": int, "amplitudes": [[re, im], ...]}
nlohmann::json to_json(const PureState& s);
PureState state_from_json(const nlohmann::json& j);
PureState parse_state(const std::string& text);

std::string bitstring(std::size_t index, int n);

}  // namespace qsecant
