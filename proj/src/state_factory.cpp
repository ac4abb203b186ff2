#include "qsecant/state_factory.hpp"

#include <algorithm>
#include <cmath>
#include <bit>
#include <map>
#include <numeric>
#include <set>

#include "qsecant/random.hpp"

namespace qsecant {

namespace {

PureState finish(int n, std::vector<Complex> amps, bool normalized) {
  PureState s(n, std::move(amps));
  return normalized ? normalize(s) : s;
}

void require(bool ok, const std::string& msg) {
  if (!ok) throw Error(msg);
}

std::size_t index_of(const std::string& bits) {
  std::size_t idx = 0;
  for (char c : bits) idx = (idx << 1) | static_cast<std::size_t>(c == '1');
  return idx;
}

// Index of the basis state `bits` after moving party q to perm[q-1].
std::size_t permuted_index(const std::string& bits, std::span<const int> perm) {
  const int n = static_cast<int>(bits.size());
  if (perm.empty()) return index_of(bits);
  require(static_cast<int>(perm.size()) == n, "permutation length must equal n");
  std::string out(bits.size(), '0');
  for (int q = 0; q < n; ++q) {
    const int target = perm[static_cast<std::size_t>(q)];
    require(target >= 1 && target <= n, "permutation entries must lie in 1..n");
    out[static_cast<std::size_t>(target - 1)] = bits[static_cast<std::size_t>(q)];
  }
  return index_of(out);
}

std::vector<Complex> ghz_amps(int n) {
  std::vector<Complex> a(std::size_t{1} << n);
  a.front() = 1.0;
  a.back() = 1.0;
  return a;
}

std::vector<Complex> dicke_amps(int n, int l, double weight) {
  std::vector<Complex> a(std::size_t{1} << n);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (std::popcount(i) == l) a[i] = weight;
  }
  return a;
}

double binomial(int n, int k) {
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

std::string ones_then_zeros(int ones, int zeros) {
  return std::string(static_cast<std::size_t>(ones), '1') + std::string(static_cast<std::size_t>(zeros), '0');
}

std::string zeros_then_ones(int zeros, int ones) {
  return std::string(static_cast<std::size_t>(zeros), '0') + std::string(static_cast<std::size_t>(ones), '1');
}

}  // namespace

BellKind parse_bell_kind(const std::string& name) {
  if (name == "phi+" || name == "Φ+" || name == "phiplus") return BellKind::PhiPlus;
  if (name == "phi-" || name == "Φ-" || name == "phiminus") return BellKind::PhiMinus;
  if (name == "psi+" || name == "Ψ+" || name == "psiplus") return BellKind::PsiPlus;
  if (name == "psi-" || name == "Ψ-" || name == "psiminus") return BellKind::PsiMinus;
  throw Error("unknown Bell state kind: " + name);
}

PureState ghz(int n, bool normalized) {
  require(n >= 2, "ghz needs n >= 2");
  return finish(n, ghz_amps(n), normalized);
}

PureState w(int n, bool normalized) {
  require(n >= 2, "w needs n >= 2");
  return finish(n, dicke_amps(n, 1, 1.0), normalized);
}

PureState bell(BellKind kind, bool normalized) {
  std::vector<Complex> a(4);
  switch (kind) {
    case BellKind::PhiPlus: a = {1.0, 0.0, 0.0, 1.0}; break;
    case BellKind::PhiMinus: a = {1.0, 0.0, 0.0, -1.0}; break;
    case BellKind::PsiPlus: a = {0.0, 1.0, 1.0, 0.0}; break;
    case BellKind::PsiMinus: a = {0.0, 1.0, -1.0, 0.0}; break;
  }
  return finish(2, std::move(a), normalized);
}

PureState dicke(int n, int l, bool normalized) {
  require(n >= 1, "dicke needs n >= 1");
  require(l >= 0 && l <= n, "dicke excitation count must lie in 0..n");
  // The binomial weight makes the written sum already unit norm.
  return finish(n, dicke_amps(n, l, 1.0 / std::sqrt(binomial(n, l))), normalized);
}

PureState cluster4(bool normalized) {
  std::vector<Complex> a(16);
  a[0] = 0.5;
  a[3] = 0.5;
  a[12] = 0.5;
  a[15] = -0.5;
  return finish(4, std::move(a), normalized);
}

PureState m_state(int n, int r, std::span<const int> perm, bool normalized) {
  require(n >= 4, "m_state needs n >= 4");
  require(r >= 2 && r <= n - 2, "m_state needs 2 <= r <= n-2");
  auto a = ghz_amps(n);
  a[permuted_index(zeros_then_ones(r, n - r), perm)] += 1.0;
  return finish(n, std::move(a), normalized);
}

PureState n_state(int n, int t, std::span<const int> perm, bool normalized) {
  require(n >= 4, "n_state needs n >= 4");
  require(t >= 2 && t <= n, "n_state needs 2 <= t <= n");
  auto a = dicke_amps(n, 1, 1.0);
  a[permuted_index(ones_then_zeros(t, n - t), perm)] += 1.0;
  return finish(n, std::move(a), normalized);
}

PureState g_state(int n, int r, Complex a, Complex b, Complex c, Complex d,
                  std::span<const int> perm, bool normalized) {
  require(n >= 4, "g_state needs n >= 4");
  require(r >= 2 && r <= n - 2, "g_state needs 2 <= r <= n-2");
  std::vector<Complex> amps(std::size_t{1} << n);
  amps[permuted_index(std::string(static_cast<std::size_t>(n), '0'), perm)] += a;
  amps[permuted_index(zeros_then_ones(r, n - r), perm)] += b;
  amps[permuted_index(ones_then_zeros(r, n - r), perm)] += c;
  amps[permuted_index(std::string(static_cast<std::size_t>(n), '1'), perm)] += d;
  return finish(n, std::move(amps), normalized);
}

namespace {

// Places `bits_rest` (n-1 bits) around party i carrying bit `b`.
std::string with_party(int i, char b, const std::string& bits_rest) {
  std::string out = bits_rest;
  out.insert(out.begin() + (i - 1), b);
  return out;
}

}  // namespace

PureState ghz_hybrid(int n, int i, int s, std::span<const int> perm, bool normalized) {
  require(n >= 4, "ghz_hybrid needs n >= 4");
  require(i >= 1 && i <= n, "ghz_hybrid party index out of range");
  require(s >= 1 && s <= n - 2, "ghz_hybrid needs 1 <= s <= n-2");
  std::vector<Complex> a(std::size_t{1} << n);
  a[index_of(with_party(i, '0', std::string(static_cast<std::size_t>(n - 1), '0')))] += 1.0;
  a[index_of(with_party(i, '0', std::string(static_cast<std::size_t>(n - 1), '1')))] += 1.0;
  // The permutation acts on the n-1 parties other than i.
  const std::string tail = ones_then_zeros(s, n - 1 - s);
  const std::string placed = bitstring(permuted_index(tail, perm), n - 1);
  a[index_of(with_party(i, '1', placed))] += 1.0;
  return finish(n, std::move(a), normalized);
}

PureState w_hybrid(int n, int i, int t, std::span<const int> perm, bool normalized) {
  require(n >= 4, "w_hybrid needs n >= 4");
  require(i >= 1 && i <= n, "w_hybrid party index out of range");
  require(t >= 2 && t <= n, "w_hybrid needs 2 <= t <= n");
  std::vector<Complex> a(std::size_t{1} << n);
  for (int q = 0; q < n - 1; ++q) {
    std::string rest(static_cast<std::size_t>(n - 1), '0');
    rest[static_cast<std::size_t>(q)] = '1';
    a[index_of(with_party(i, '0', rest))] += 1.0;
  }
  const std::string tail = ones_then_zeros(t - 1, n - t);
  const std::string placed = bitstring(permuted_index(tail, perm), n - 1);
  a[index_of(with_party(i, '1', placed))] += 1.0;
  return finish(n, std::move(a), normalized);
}

PureState x4(Complex d1, Complex d4, bool normalized) {
  auto a = dicke_amps(4, 1, 1.0);
  for (auto& v : a) v *= d1;
  a[15] += d4;
  return finish(4, std::move(a), normalized);
}

PureState m4(Complex a, Complex b, Complex c, bool normalized) {
  std::vector<Complex> amps(16);
  amps[0] = a;
  amps[3] = b;
  amps[15] = c;
  return finish(4, std::move(amps), normalized);
}

PureState symmetric_state(std::span<const Complex> coeffs, bool normalized) {
  require(coeffs.size() >= 2, "symmetric_state needs n >= 1 (n+1 coefficients)");
  const int n = static_cast<int>(coeffs.size()) - 1;
  std::vector<Complex> a(std::size_t{1} << n);
  for (std::size_t i = 0; i < a.size(); ++i) {
    const int l = std::popcount(i);
    a[i] = coeffs[static_cast<std::size_t>(l)] / std::sqrt(binomial(n, l));
  }
  require(std::any_of(coeffs.begin(), coeffs.end(), [](Complex c) { return c != Complex{}; }),
          "symmetric_state needs a nonzero coefficient");
  return finish(n, std::move(a), normalized);
}

PureState biseparable(const PureState& a, const PureState& b, const PartySubset& placement) {
  const int n = a.qubits() + b.qubits();
  require(placement.qubits() == n, "placement must be a subset of the combined parties");
  require(placement.size() == a.qubits(), "placement size must equal the first block's qubit count");
  const PartySubset rest = placement.complement();
  std::vector<int> perm;
  for (int p : placement.parties()) perm.push_back(p);
  for (int p : rest.parties()) perm.push_back(p);
  return permute_parties(tensor_product(a, b), perm);
}

PureState random_state(int n, std::uint64_t seed) {
  CounterRng rng(seed, 0x4861617200000000ULL + static_cast<std::uint64_t>(n));
  std::vector<Complex> a(std::size_t{1} << n);
  for (auto& v : a) v = rng.complex_normal();
  return finish(n, std::move(a), true);
}

PureState random_symmetric(int n, std::uint64_t seed) {
  CounterRng rng(seed, 0x53796d6d00000000ULL + static_cast<std::uint64_t>(n));
  std::vector<Complex> c(static_cast<std::size_t>(n + 1));
  for (auto& v : c) v = rng.complex_normal();
  return symmetric_state(c, true);
}

PureState random_separable(int n, std::uint64_t seed) {
  CounterRng rng(seed, 0x5365700000000000ULL + static_cast<std::uint64_t>(n));
  PureState out(1, {rng.complex_normal(), rng.complex_normal()});
  for (int q = 1; q < n; ++q) {
    out = tensor_product(out, PureState(1, {rng.complex_normal(), rng.complex_normal()}));
  }
  return normalize(out);
}

namespace {

Complex json_complex(const nlohmann::json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number()) {
    return {j[0].get<double>(), j[1].get<double>()};
  }
  throw ParseError("complex parameter must be a number or [re, im]");
}

int json_int(const nlohmann::json& spec, const char* key) {
  if (!spec.contains(key)) throw ParseError(std::string("missing parameter '") + key + "'");
  const auto& v = spec.at(key);
  if (!v.is_number_integer()) throw ParseError(std::string("parameter '") + key + "' must be an integer");
  return v.get<int>();
}

int json_int_or(const nlohmann::json& spec, const char* key, int fallback) {
  return spec.contains(key) ? json_int(spec, key) : fallback;
}

Complex json_complex_or(const nlohmann::json& spec, const char* key, Complex fallback) {
  return spec.contains(key) ? json_complex(spec.at(key)) : fallback;
}

std::vector<int> json_perm(const nlohmann::json& spec) {
  if (!spec.contains("perm")) return {};
  try {
    return spec.at("perm").get<std::vector<int>>();
  } catch (const nlohmann::json::exception&) {
    throw ParseError("'perm' must be a list of integers");
  }
}

std::uint64_t json_seed(const nlohmann::json& spec) {
  if (!spec.contains("seed")) return 42;
  const auto& v = spec.at("seed");
  if (!v.is_number_integer()) throw ParseError("'seed' must be an integer");
  return v.get<std::uint64_t>();
}

PureState build(const nlohmann::json& spec) {
  if (!spec.is_object() || !spec.contains("name") || !spec.at("name").is_string()) {
    throw ParseError("state spec must be an object with a string 'name'");
  }
  const std::string name = spec.at("name").get<std::string>();
  const bool norm = spec.value("normalize", true);
  const auto perm = json_perm(spec);
  if (name == "ghz") return ghz(json_int(spec, "n"), norm);
  if (name == "w") return w(json_int(spec, "n"), norm);
  if (name == "bell") return bell(parse_bell_kind(spec.value("kind", std::string("phi+"))), norm);
  if (name == "dicke") return dicke(json_int(spec, "n"), json_int(spec, "l"), norm);
  if (name == "cluster4") return cluster4(norm);
  if (name == "m") return m_state(json_int(spec, "n"), json_int(spec, "r"), perm, norm);
  if (name == "n") return n_state(json_int(spec, "n"), json_int(spec, "t"), perm, norm);
  if (name == "g") {
    return g_state(json_int(spec, "n"), json_int(spec, "r"), json_complex_or(spec, "alpha", 1.0),
                   json_complex_or(spec, "beta", 0.0), json_complex_or(spec, "gamma", 0.0),
                   json_complex_or(spec, "delta", 1.0), perm, norm);
  }
  if (name == "ghz-hybrid") {
    return ghz_hybrid(json_int(spec, "n"), json_int_or(spec, "i", 1), json_int(spec, "s"), perm, norm);
  }
  if (name == "w-hybrid") {
    return w_hybrid(json_int(spec, "n"), json_int_or(spec, "i", 1), json_int(spec, "t"), perm, norm);
  }
  if (name == "x4") {
    return x4(json_complex_or(spec, "d1", 1.0), json_complex_or(spec, "d4", 1.0), norm);
  }
  if (name == "m4") {
    return m4(json_complex_or(spec, "alpha", 1.0), json_complex_or(spec, "beta", 1.0),
              json_complex_or(spec, "gamma", 1.0), norm);
  }
  if (name == "symmetric") {
    if (!spec.contains("coeffs") || !spec.at("coeffs").is_array()) {
      throw ParseError("symmetric spec needs a 'coeffs' array");
    }
    std::vector<Complex> c;
    for (const auto& v : spec.at("coeffs")) c.push_back(json_complex(v));
    return symmetric_state(c, norm);
  }
  if (name == "basis") {
    if (!spec.contains("bits") || !spec.at("bits").is_string()) throw ParseError("basis spec needs 'bits'");
    const PureState s = basis_state(spec.at("bits").get<std::string>());
    return norm ? normalize(s) : s;
  }
  if (name == "biseparable") {
    if (!spec.contains("a") || !spec.contains("b") || !spec.contains("placement")) {
      throw ParseError("biseparable spec needs 'a', 'b' and 'placement'");
    }
    const PureState a = build(spec.at("a"));
    const PureState b = build(spec.at("b"));
    std::vector<int> placement;
    try {
      placement = spec.at("placement").get<std::vector<int>>();
    } catch (const nlohmann::json::exception&) {
      throw ParseError("'placement' must be a list of integers");
    }
    const PureState s = biseparable(a, b, PartySubset(a.qubits() + b.qubits(), placement));
    return norm ? normalize(s) : s;
  }
  if (name == "random") return random_state(json_int(spec, "n"), json_seed(spec));
  if (name == "random-symmetric") return random_symmetric(json_int(spec, "n"), json_seed(spec));
  if (name == "random-separable") return random_separable(json_int(spec, "n"), json_seed(spec));
  throw ParseError("unknown state constructor '" + name + "'");
}

}  // namespace

PureState state_from_spec(const nlohmann::json& spec) {
  PureState s = build(spec);
  if (spec.contains("perm") && spec.at("name") != "m" && spec.at("name") != "n" &&
      spec.at("name") != "g" && spec.at("name") != "ghz-hybrid" && spec.at("name") != "w-hybrid") {
    s = permute_parties(s, json_perm(spec));
  }
  return s;
}

const std::vector<std::string>& spec_names() {
  static const std::vector<std::string> names{
      "ghz", "w", "bell", "dicke", "cluster4", "m", "n", "g", "ghz-hybrid", "w-hybrid", "x4",
      "m4", "symmetric", "basis", "biseparable", "random", "random-symmetric", "random-separable"};
  return names;
}

namespace {

PureState zeros(int n) { return basis_state(std::string(static_cast<std::size_t>(n), '0')); }

PureState plus_product(int n) {
  std::vector<Complex> a(std::size_t{1} << n, 1.0);
  return PureState(n, std::move(a));
}

// Block `a` on the parties in `placement`, |0...0> elsewhere.
PureState embed(const PureState& a, int n, std::vector<int> placement) {
  return normalize(biseparable(a, zeros(n - a.qubits()), PartySubset(n, std::move(placement))));
}

std::vector<int> all_but(int n, int skip) {
  std::vector<int> out;
  for (int q = 1; q <= n; ++q) {
    if (q != skip) out.push_back(q);
  }
  return out;
}

}  // namespace

std::vector<Representative> table1_representatives() {
  std::vector<Representative> out;
  out.push_back({"Sep", "Σ", "|000>", normalize(zeros(3))});
  out.push_back({"GHZ3", "σ2", "|000> + |111>", ghz(3)});
  out.push_back({"W3", "τ2", "|001> + |010> + |100>", w(3)});
  for (int i = 1; i <= 3; ++i) {
    out.push_back({"B" + std::to_string(i), "σ2", "Bell pair on the parties other than " + std::to_string(i),
                   embed(bell(), 3, all_but(3, i))});
  }
  return out;
}

std::vector<Representative> table2_representatives() {
  std::vector<Representative> out;
  const PureState c4 = cluster4(false);
  out.push_back({"Sep", "Σ", "|0000>", normalize(zeros(4))});
  out.push_back({"GHZ4", "σ2", "|0000> + |1111>", ghz(4)});
  for (int i = 1; i <= 4; ++i) {
    out.push_back({"B" + std::to_string(i) + "^GHZ3", "σ2", "GHZ3 on the parties other than " + std::to_string(i),
                   embed(ghz(3), 4, all_but(4, i))});
  }
  const std::vector<std::vector<int>> pairs{{1, 2}, {1, 3}, {1, 4}, {2, 3}, {2, 4}, {3, 4}};
  for (std::size_t p = 0; p < pairs.size(); ++p) {
    out.push_back({"T" + std::to_string(p + 1), "σ2",
                   "Bell pair on parties " + std::to_string(pairs[p][0]) + std::to_string(pairs[p][1]),
                   embed(bell(), 4, pairs[p])});
  }
  out.push_back({"W4", "τ2", "W4", w(4)});
  for (int i = 1; i <= 4; ++i) {
    out.push_back({"B" + std::to_string(i) + "^W3", "τ2", "W3 on the parties other than " + std::to_string(i),
                   embed(w(3), 4, all_but(4, i))});
  }
  // Proper three-secants: GHZ4 joined with one product state.
  out.push_back({"(333)", "σ3", "GHZ4 + (|0>+|1>)^4", normalize(add(ghz(4, false), plus_product(4)))});
  out.push_back({"(233)", "σ3", "M4: |0000> + |0011> + |1111>", m4(1.0, 1.0, 1.0)});
  out.push_back({"(233)", "σ3", "M_4^2 with alpha, beta, gamma = 1, 2, 3", m4(1.0, 2.0, 3.0)});
  const std::vector<int> swap23{1, 3, 2, 4};
  const std::vector<int> swap24{1, 4, 3, 2};
  out.push_back({"(323)", "σ3", "GHZ4 + |0101>", m_state(4, 2, swap23)});
  out.push_back({"(332)", "σ3", "GHZ4 + |0110>", m_state(4, 2, swap24)});
  out.push_back({"(233)", "σ3", "ghz-hybrid |0>|GHZ3> + |1>|100>", ghz_hybrid(4, 1, 1)});
  // Tangents to the three-secant.
  out.push_back({"(333)'", "τ3", "X4: W4 + |1111>", x4(1.0, 1.0)});
  out.push_back({"(333)'", "τ3", "D4^2", dicke(4, 2)});
  out.push_back({"(233)'", "τ3", "N_4^2: W4 + |1100>", n_state(4, 2)});
  out.push_back({"(323)'", "τ3", "W4 + |1010>", n_state(4, 2, swap23)});
  out.push_back({"(332)'", "τ3", "W4 + |1001>", n_state(4, 2, swap24)});
  out.push_back({"(333)'", "τ3", "N_4^3: W4 + |1110>", n_state(4, 3)});
  // Four-secants.
  out.push_back({"(444)", "σ4", "generic Gaussian state", random_state(4, 2024)});
  out.push_back({"(244)", "σ4", "cluster state Cl4", cluster4()});
  out.push_back({"(244)", "σ4", "G_4^2 with alpha..delta = 1, 2, 3, 4", g_state(4, 2, 1.0, 2.0, 3.0, 4.0)});
  out.push_back({"(424)", "σ4", "Cl4 with parties 2, 3 swapped", permute_parties(cluster4(), swap23)});
  out.push_back({"(442)", "σ4", "Cl4 with parties 2, 4 swapped", permute_parties(cluster4(), swap24)});
  const PureState c4p = normalize(add(c4, plus_product(4), 0.5));
  out.push_back({"(344)", "σ4", "Cl4 + (|0>+|1>)^4 / 2", c4p});
  out.push_back({"(434)", "σ4", "Cl4 + (|0>+|1>)^4 / 2, parties 2, 3 swapped", permute_parties(c4p, swap23)});
  out.push_back({"(443)", "σ4", "Cl4 + (|0>+|1>)^4 / 2, parties 2, 4 swapped", permute_parties(c4p, swap24)});
  const std::vector<std::vector<int>> bb{{1, 2}, {1, 3}, {1, 4}};
  for (std::size_t p = 0; p < bb.size(); ++p) {
    out.push_back({"BB" + std::to_string(p + 1), "σ4",
                   "Bell pairs on " + std::to_string(bb[p][0]) + std::to_string(bb[p][1]) + " and the rest",
                   normalize(biseparable(bell(), bell(), PartySubset(4, bb[p])))});
  }
  return out;
}

std::vector<Representative> table3_representatives() {
  std::vector<Representative> out;
  out.push_back({"Sep", "Σ", "|00000>", normalize(zeros(5))});
  out.push_back({"GHZ5", "σ2", "GHZ5", ghz(5)});
  out.push_back({"W5", "τ2", "W5", w(5)});
  out.push_back({"B1^GHZ4", "σ2", "GHZ4 on parties 2..5", embed(ghz(4), 5, {2, 3, 4, 5})});
  out.push_back({"B3^W4", "τ2", "W4 on parties 1, 2, 4, 5", embed(w(4), 5, {1, 2, 4, 5})});
  out.push_back({"T1^GHZ3", "σ2", "GHZ3 on parties 3, 4, 5", embed(ghz(3), 5, {3, 4, 5})});
  out.push_back({"T1^W3", "τ2", "W3 on parties 3, 4, 5", embed(w(3), 5, {3, 4, 5})});
  out.push_back({"Q1", "σ2", "Bell pair on parties 1, 2", embed(bell(), 5, {1, 2})});
  out.push_back({"P{Bell.GHZ3}_1", "σ4", "Bell (12) x GHZ3 (345)",
                 normalize(biseparable(bell(), ghz(3), PartySubset(5, {1, 2})))});
  out.push_back({"P{Bell.W3}_1", "τ4", "Bell (12) x W3 (345)",
                 normalize(biseparable(bell(), w(3), PartySubset(5, {1, 2})))});
  return out;
}

std::vector<PureState> permutation_orbit(const PureState& s) {
  const int n = s.qubits();
  std::vector<int> perm(static_cast<std::size_t>(n));
  std::iota(perm.begin(), perm.end(), 1);
  std::vector<PureState> out;
  do {
    PureState p = permute_parties(s, perm);
    const bool seen = std::any_of(out.begin(), out.end(), [&](const PureState& q) {
      for (std::size_t i = 0; i < q.dim(); ++i) {
        if (q[i] != p[i]) return false;
      }
      return true;
    });
    if (!seen) out.push_back(std::move(p));
  } while (std::next_permutation(perm.begin(), perm.end()));
  return out;
}

}  // namespace qsecant
