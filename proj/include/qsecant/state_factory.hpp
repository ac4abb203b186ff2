#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "qsecant/state.hpp"

namespace qsecant {

// Constructors return the sums exactly as written (unit amplitudes) when
// normalized = false; by default the result is scaled to unit norm.

enum class BellKind { PhiPlus, PhiMinus, PsiPlus, PsiMinus };

BellKind parse_bell_kind(const std::string& name);

PureState ghz(int n, bool normalized = true);
PureState w(int n, bool normalized = true);
PureState bell(BellKind kind = BellKind::PhiPlus, bool normalized = true);
/// Binomially weighted sum of all weight-l basis states.
PureState dicke(int n, int l, bool normalized = true);
/// (|0000> + |0011> + |1100> - |1111>) / 2.
PureState cluster4(bool normalized = true);

/// GHZ_n + P{0^r 1^(n-r)}; the permutation acts on the added term.
PureState m_state(int n, int r, std::span<const int> perm = {}, bool normalized = true);
/// W_n + P{1^t 0^(n-t)}; the permutation acts on the added term.
PureState n_state(int n, int t, std::span<const int> perm = {}, bool normalized = true);
/// P{a|0^n> + b|0^r 1^(n-r)> + c|1^r 0^(n-r)> + d|1^n>}.
PureState g_state(int n, int r, Complex a, Complex b, Complex c, Complex d,
                  std::span<const int> perm = {}, bool normalized = true);
/// |0>_i |GHZ_(n-1)> + |1>_i P{1^s 0^(n-s-1)}, reported as "ghz-hybrid".
PureState ghz_hybrid(int n, int i, int s, std::span<const int> perm = {}, bool normalized = true);
/// |0>_i |W_(n-1)> + |1>_i P{1^(t-1) 0^(n-t)}, reported as "w-hybrid".
PureState w_hybrid(int n, int i, int t, std::span<const int> perm = {}, bool normalized = true);
/// d1 |W_4> + d4 |1111> with |W_4> taken unnormalized.
PureState x4(Complex d1, Complex d4, bool normalized = true);
/// a|0000> + b|0011> + c|1111>.
PureState m4(Complex a, Complex b, Complex c, bool normalized = true);

/// sum_l coeffs[l] |D_n^l>, n = coeffs.size() - 1.
PureState symmetric_state(std::span<const Complex> coeffs, bool normalized = true);

/// a (x) b with the parties of a placed on `placement` and b on its complement.
PureState biseparable(const PureState& a, const PureState& b, const PartySubset& placement);

/// Normalized i.i.d. complex Gaussian amplitudes.
PureState random_state(int n, std::uint64_t seed);
/// symmetric_state with Gaussian coefficients.
PureState random_symmetric(int n, std::uint64_t seed);
/// Product of Gaussian single-qubit vectors.
PureState random_separable(int n, std::uint64_t seed);

/// Builds a state from a constructor description such as
/// {"name": "dicke", "n": 4, "l": 2} or {"name": "biseparable", "a": {...},
/// "b": {...}, "placement": [1, 3]}. Complex parameters accept numbers or [re, im].
PureState state_from_spec(const nlohmann::json& spec);

/// Names understood by state_from_spec.
const std::vector<std::string>& spec_names();

/// A named state together with the table cell it belongs to.
struct Representative {
  std::string label;   // expected subfamily label
  std::string family;  // expected secant family, e.g. "σ3" or "τ2"
  std::string description;
  PureState state;
};

std::vector<Representative> table1_representatives();
std::vector<Representative> table2_representatives();
std::vector<Representative> table3_representatives();

/// Every distinct image of s under party permutations.
std::vector<PureState> permutation_orbit(const PureState& s);

}  // namespace qsecant
