#include "qsecant/classifier.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>
#include <tuple>

#include "qsecant/random.hpp"
#include "qsecant/slocc.hpp"
#include "qsecant/state_factory.hpp"

namespace qsecant {

int family_count(int n) {
  if (n < 1 || n > 30) throw Error("family_count: n out of range");
  const long long num = (1LL << n);
  return static_cast<int>((num + n) / (n + 1));
}

bool theorem2_achievable(const TwoMultirankTriple& t) {
  for (int r : t) {
    if (r < 1 || r > 4) throw Error("two-multirank entries must lie in 1..4");
  }
  const int top = *std::max_element(t.begin(), t.end());
  if (std::count(t.begin(), t.end(), top) < 2) return false;
  TwoMultirankTriple sorted = t;
  std::sort(sorted.begin(), sorted.end());
  return sorted != TwoMultirankTriple{1, 3, 3};
}

namespace {

struct Block {
  std::vector<int> parties;  // global, increasing
  PureState state;
};

// Rank-one split of s across `subset`: returns (state on subset, state on the rest).
std::pair<PureState, PureState> split_product(const PureState& s, const PartySubset& subset) {
  const Matrix m = matricize(s, subset).matrix;
  Eigen::JacobiSVD<Matrix> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const Eigen::VectorXcd u = svd.matrixU().col(0);
  const Eigen::VectorXcd v = svd.matrixV().col(0).conjugate() * svd.singularValues()(0);
  return {PureState(subset.size(), std::vector<Complex>(u.data(), u.data() + u.size())),
          PureState(s.qubits() - subset.size(), std::vector<Complex>(v.data(), v.data() + v.size()))};
}

// Finest product decomposition. The smallest rank-one cut containing the first
// party is that party's block.
void collect_blocks(const PureState& s, const std::vector<int>& parties, double tol,
                    std::vector<Block>& out) {
  const int n = s.qubits();
  if (n == 1) {
    out.push_back({parties, s});
    return;
  }
  for (int size = 1; size < n; ++size) {
    std::vector<bool> pick(static_cast<std::size_t>(n - 1), false);
    std::fill(pick.begin(), pick.begin() + (size - 1), true);
    do {
      std::vector<int> local{1};
      for (int i = 0; i < n - 1; ++i) {
        if (pick[static_cast<std::size_t>(i)]) local.push_back(i + 2);
      }
      const PartySubset subset(n, local);
      if (numerical_rank(matricize(s, subset).matrix, tol) != 1) continue;
      auto [head, rest] = split_product(s, subset);
      std::vector<int> head_parties;
      std::vector<int> rest_parties;
      for (int i = 1; i <= n; ++i) {
        (subset.contains(i) ? head_parties : rest_parties).push_back(parties[static_cast<std::size_t>(i - 1)]);
      }
      out.push_back({head_parties, head});
      collect_blocks(rest, rest_parties, tol, out);
      return;
    } while (std::prev_permutation(pick.begin(), pick.end()));
  }
  out.push_back({parties, s});
}

std::vector<Block> product_blocks(const PureState& s, double tol) {
  std::vector<int> parties(static_cast<std::size_t>(s.qubits()));
  for (int i = 0; i < s.qubits(); ++i) parties[static_cast<std::size_t>(i)] = i + 1;
  std::vector<Block> out;
  collect_blocks(normalize(s), parties, tol, out);
  std::sort(out.begin(), out.end(), [](const Block& a, const Block& b) {
    if (a.parties.size() != b.parties.size()) return a.parties.size() > b.parties.size();
    return a.parties < b.parties;
  });
  return out;
}

// 1-based position of {a, b} among the lexicographically ordered pairs of 1..n.
int pair_index(int n, int a, int b) {
  if (a > b) std::swap(a, b);
  int idx = 0;
  for (int i = 1; i <= n; ++i) {
    for (int j = i + 1; j <= n; ++j) {
      ++idx;
      if (i == a && j == b) return idx;
    }
  }
  throw Error("pair_index: invalid pair");
}

std::string digits(const std::vector<int>& v) {
  std::string out;
  for (int r : v) out += std::to_string(r);
  return out;
}

std::string prime_if(bool tangent) { return tangent ? "'" : ""; }

// Family implied by a four-qubit subfamily label.
std::string table2_family(const std::string& label) {
  if (label == "Sep") return "Σ";
  if (label == "GHZ4" || label.rfind("T", 0) == 0 || label.find("^GHZ3") != std::string::npos) return "σ2";
  if (label == "W4" || label.find("^W3") != std::string::npos) return "τ2";
  if (label.rfind("BB", 0) == 0) return "σ4";
  if (label.size() >= 5 && label[0] == '(') {
    const bool primed = label.back() == '\'';
    const std::string t = label.substr(1, 3);
    const bool has4 = t.find('4') != std::string::npos;
    if (has4) return "σ4";
    return primed ? "τ3" : "σ3";
  }
  return "";
}

struct Labeling {
  std::string subfamily;
  std::string expected_family;  // empty when the label carries no family of its own
  std::vector<std::string> notes;
};

Labeling genuine_label(int n, const MultirankSignature& sig, const SecantClass& sc) {
  const bool tangent = sc.kind == SecantKind::Tangent;
  const std::string fam = sc.family();
  if (n == 2) return {"Bell", "σ2", {}};
  if (sc.k == 2) {
    const std::string base = tangent ? "W" : "GHZ";
    return {base + std::to_string(n), fam, {}};
  }
  if (n == 4) {
    return {"(" + digits(sig.level(2)) + ")" + prime_if(tangent), fam, {}};
  }
  if (n == 5) {
    std::string label = "(" + digits(sig.level(2)) + ")";
    if (sc.k > 3) label += "_" + std::to_string(sc.k);
    return {label + prime_if(tangent), fam, {}};
  }
  return {"undecided", "", {"no subfamily table for " + std::to_string(n) + " genuinely entangled qubits"}};
}

ClassificationReport classify_impl(const PureState& input, const ClassifyOptions& opts, int depth);

Labeling block_label(const PureState& s, const MultirankSignature& sig, const SecantClass& sc,
                     const ClassifyOptions& opts, int depth) {
  const int n = s.qubits();
  const double tol = opts.secant.rank_tol;
  const std::vector<Block> blocks = product_blocks(s, tol);
  std::vector<int> sizes;
  for (const auto& b : blocks) sizes.push_back(static_cast<int>(b.parties.size()));
  if (blocks.size() == 1) return genuine_label(n, sig, sc);
  if (std::all_of(sizes.begin(), sizes.end(), [](int x) { return x == 1; })) return {"Sep", "Σ", {}};

  auto sub = [&](const Block& b) { return classify_impl(b.state, opts, depth + 1); };
  auto singles = [&]() {
    std::vector<int> out;
    for (const auto& b : blocks) {
      if (b.parties.size() == 1) out.push_back(b.parties.front());
    }
    return out;
  };
  auto undecided_block = [](const ClassificationReport& r) {
    return Labeling{"undecided", "", {"block classification undecided: " + r.subfamily}};
  };

  if (n == 3 && sizes == std::vector<int>{2, 1}) {
    return {"B" + std::to_string(blocks[1].parties.front()), "σ2", {}};
  }
  if (n == 4) {
    if (sizes == std::vector<int>{3, 1}) {
      const auto r = sub(blocks[0]);
      if (r.undecided) return undecided_block(r);
      const std::string i = std::to_string(blocks[1].parties.front());
      return {"B" + i + "^" + r.subfamily, r.subfamily == "GHZ3" ? "σ2" : "τ2", {}};
    }
    if (sizes == std::vector<int>{2, 1, 1}) {
      return {"T" + std::to_string(pair_index(4, blocks[0].parties[0], blocks[0].parties[1])), "σ2", {}};
    }
    if (sizes == std::vector<int>{2, 2}) {
      const auto& with1 = blocks[0].parties.front() == 1 ? blocks[0] : blocks[1];
      return {"BB" + std::to_string(with1.parties[1] - 1), "σ4", {}};
    }
  }
  if (n == 5) {
    const auto one = singles();
    if (sizes == std::vector<int>{2, 1, 1, 1}) {
      return {"Q" + std::to_string(pair_index(5, blocks[0].parties[0], blocks[0].parties[1])), "σ2", {}};
    }
    if (sizes == std::vector<int>{3, 1, 1}) {
      const auto r = sub(blocks[0]);
      if (r.undecided) return undecided_block(r);
      return {"T" + std::to_string(pair_index(5, one[0], one[1])) + "^" + r.subfamily,
              r.subfamily == "GHZ3" ? "σ2" : "τ2", {}};
    }
    if (sizes == std::vector<int>{3, 2}) {
      const auto r = sub(blocks[0]);
      if (r.undecided) return undecided_block(r);
      const bool w = r.subfamily == "W3";
      return {std::string("P{Bell.") + (w ? "W3" : "GHZ3") + "}_" +
                  std::to_string(pair_index(5, blocks[1].parties[0], blocks[1].parties[1])),
              w ? "τ4" : "σ4", {}};
    }
    if (sizes == std::vector<int>{4, 1} || sizes == std::vector<int>{2, 2, 1}) {
      const int single = one.front();
      PartySubset cut(5, {single});
      const PureState rest = split_product(normalize(s), cut).second;
      const auto r = classify_impl(rest, opts, depth + 1);
      if (r.undecided) return undecided_block(r);
      const std::string i = std::to_string(single);
      if (r.subfamily == "GHZ4" || r.subfamily == "W4") {
        return {"B" + i + "^" + r.subfamily, r.family, {}};
      }
      return {"B" + i + "[" + r.subfamily + "]", r.family, {}};
    }
  }
  std::ostringstream why;
  why << "no subfamily pattern for product blocks of sizes";
  for (int x : sizes) why << ' ' << x;
  return {"undecided", "", {why.str()}};
}

const std::vector<std::string>& two_qubit_labels() {
  static const std::vector<std::string> labels{"Sep", "Bell"};
  return labels;
}

ClassificationReport classify_impl(const PureState& input, const ClassifyOptions& opts, int depth) {
  const int n = input.qubits();
  if (n < 2 || n > 5) throw Error("classify supports 2 to 5 qubits, got " + std::to_string(n));
  const PureState s = normalize(input);
  ClassificationReport r;
  r.n = n;
  r.signature = multirank_signature(s, opts.secant.rank_tol);
  r.genuine = is_genuinely_entangled(r.signature);
  r.secant = secant_level(s, opts.secant);
  r.family = r.secant.family();
  for (const auto& d : r.secant.diagnostics) r.diagnostics.push_back(d);
  if (r.secant.numerical_only) r.diagnostics.push_back("secant verdict is numerical only");
  if (n == 4) {
    const auto& t = r.signature.level(2);
    if (!theorem2_achievable({t[0], t[1], t[2]})) {
      r.diagnostics.push_back("two-multirank triple (" + digits(t) + ") violates the achievability rule");
    }
  }
  if (r.secant.undecided) {
    r.undecided = true;
    r.subfamily = "undecided";
    return r;
  }
  Labeling lab = block_label(s, r.signature, r.secant, opts, depth);
  for (auto& note : lab.notes) r.diagnostics.push_back(std::move(note));
  if (lab.subfamily == "undecided") {
    r.undecided = true;
    r.subfamily = "undecided";
    return r;
  }
  if (!lab.expected_family.empty() && lab.expected_family != r.family) {
    r.diagnostics.push_back("product structure suggests " + lab.subfamily + " (" + lab.expected_family +
                            ") but the secant estimate is " + r.family);
    r.undecided = true;
    r.subfamily = "undecided";
    return r;
  }
  const std::vector<std::string>* closed = nullptr;
  if (n == 2) closed = &two_qubit_labels();
  if (n == 3) closed = &table1_labels();
  if (n == 4) closed = &table2_labels();
  if (closed && std::find(closed->begin(), closed->end(), lab.subfamily) == closed->end()) {
    r.diagnostics.push_back("label " + lab.subfamily + " is outside the fixed subfamily table");
    r.undecided = true;
    r.subfamily = "undecided";
    return r;
  }
  if (n == 4 && table2_family(lab.subfamily) != r.family) {
    r.diagnostics.push_back("label " + lab.subfamily + " belongs to " + table2_family(lab.subfamily) +
                            ", not " + r.family);
    r.undecided = true;
    r.subfamily = "undecided";
    return r;
  }
  r.subfamily = lab.subfamily;
  return r;
}

std::string signature_key(const MultirankSignature& sig) {
  std::string out;
  for (std::size_t l = 0; l < sig.ranks.size(); ++l) {
    if (l) out += '|';
    out += digits(sig.ranks[l]);
  }
  return out;
}

}  // namespace

ClassificationReport classify(const PureState& s, const ClassifyOptions& opts) {
  return classify_impl(s, opts, 0);
}

nlohmann::json to_json(const ClassificationReport& r) {
  nlohmann::json probes = nlohmann::json::array();
  for (const auto& p : r.secant.probes) {
    probes.push_back({{"k", p.k},
                      {"proper_residual", p.proper_residual},
                      {"proper_max_term_norm", p.proper_max_term_norm},
                      {"border_residual", p.border_residual},
                      {"border_degree", p.border_degree}});
  }
  return {{"spec_version", kSpecVersion},
          {"n", r.n},
          {"family", r.family},
          {"subfamily", r.subfamily},
          {"undecided", r.undecided},
          {"genuine", r.genuine},
          {"signature", to_json(r.signature)},
          {"secant",
           {{"k", r.secant.k},
            {"kind", to_string(r.secant.kind)},
            {"undecided", r.secant.undecided},
            {"numerical_only", r.secant.numerical_only},
            {"probes", probes}}},
          {"diagnostics", r.diagnostics}};
}

std::string to_text(const ClassificationReport& r) {
  std::ostringstream out;
  out << "qubits:     " << r.n << '\n';
  out << "family:     " << r.family << (r.undecided ? " (undecided)" : "") << '\n';
  out << "subfamily:  " << r.subfamily << '\n';
  out << "secant:     k = " << r.secant.k << ", " << to_string(r.secant.kind) << '\n';
  out << "genuine:    " << (r.genuine ? "yes" : "no") << '\n';
  for (std::size_t l = 0; l < r.signature.ranks.size(); ++l) {
    out << "l=" << l + 1 << " ranks: (" << digits(r.signature.ranks[l]) << ")\n";
  }
  for (const auto& d : r.diagnostics) out << "  - " << d << '\n';
  out << "spec_version " << kSpecVersion << '\n';
  return out.str();
}

const std::vector<std::string>& table1_labels() {
  static const std::vector<std::string> labels{"Sep", "B1", "B2", "B3", "GHZ3", "W3"};
  return labels;
}

const std::vector<std::string>& table2_labels() {
  static const std::vector<std::string> labels = [] {
    std::vector<std::string> out{"Sep", "GHZ4"};
    for (int i = 1; i <= 4; ++i) out.push_back("B" + std::to_string(i) + "^GHZ3");
    for (int i = 1; i <= 6; ++i) out.push_back("T" + std::to_string(i));
    out.push_back("W4");
    for (int i = 1; i <= 4; ++i) out.push_back("B" + std::to_string(i) + "^W3");
    for (const char* t : {"(333)", "(332)", "(323)", "(233)"}) out.push_back(t);
    for (const char* t : {"(333)'", "(332)'", "(323)'", "(233)'"}) out.push_back(t);
    for (const char* t : {"(444)", "(443)", "(434)", "(344)", "(442)", "(424)", "(244)"}) out.push_back(t);
    for (int i = 1; i <= 3; ++i) out.push_back("BB" + std::to_string(i));
    return out;
  }();
  return labels;
}

// ---------------------------------------------------------------- census

namespace {

std::string generator_name(CensusGenerator g) {
  switch (g) {
    case CensusGenerator::Haar: return "haar";
    case CensusGenerator::Structured: return "structured";
    case CensusGenerator::Symmetric: return "symmetric";
    case CensusGenerator::Separable: return "separable";
  }
  return "?";
}

std::vector<PureState> structured_pool(int n) {
  std::vector<PureState> pool;
  auto take = [&](const std::vector<Representative>& reps) {
    for (const auto& r : reps) pool.push_back(r.state);
  };
  if (n == 3) take(table1_representatives());
  if (n == 4) take(table2_representatives());
  if (n == 5) take(table3_representatives());
  if (pool.empty()) {
    pool.push_back(ghz(n));
    pool.push_back(w(n));
    if (n >= 2) pool.push_back(dicke(n, n / 2));
    pool.push_back(random_separable(n, 1));
  }
  return pool;
}

}  // namespace

CensusGenerator parse_census_generator(const std::string& name) {
  if (name == "haar") return CensusGenerator::Haar;
  if (name == "structured") return CensusGenerator::Structured;
  if (name == "symmetric") return CensusGenerator::Symmetric;
  if (name == "separable") return CensusGenerator::Separable;
  throw Error("unknown census generator '" + name + "'");
}

CensusResult census(const CensusOptions& opts) {
  if (opts.samples < 1) throw Error("census: samples must be positive");
  if (opts.n < 2 || opts.n > 10) throw Error("census: n must lie in 2..10");
  if (opts.with_secant && opts.n > 5) throw Error("census: secant estimates need n <= 5");
  std::map<std::tuple<std::string, std::string, std::string>, long> hist;
  CensusResult out;
  const std::vector<PureState> pool = structured_pool(opts.n);
  for (std::size_t g = 0; g < opts.generators.size(); ++g) {
    const CensusGenerator gen = opts.generators[g];
    CounterRng rng(opts.seed, 0x43656e7300000000ULL + g);
    for (long i = 0; i < opts.samples; ++i) {
      const std::uint64_t sample_seed = rng();
      PureState s = [&] {
        switch (gen) {
          case CensusGenerator::Haar: return random_state(opts.n, sample_seed);
          case CensusGenerator::Symmetric: return random_symmetric(opts.n, sample_seed);
          case CensusGenerator::Separable: return random_separable(opts.n, sample_seed);
          case CensusGenerator::Structured: {
            const auto& base = pool[static_cast<std::size_t>(sample_seed % pool.size())];
            return normalize(apply_local(base, random_sl2_set(opts.n, sample_seed)));
          }
        }
        throw Error("census: unknown generator");
      }();
      const MultirankSignature sig = multirank_signature(s, opts.secant.rank_tol);
      if (opts.n == 4) {
        const auto& t = sig.level(2);
        if (!theorem2_achievable({t[0], t[1], t[2]})) ++out.theorem2_violations;
      }
      std::string family = "-";
      if (opts.with_secant) {
        const SecantClass sc = secant_level(s, opts.secant);
        family = sc.undecided ? "undecided" : sc.family();
        if (!sc.undecided) out.max_secant_level = std::max(out.max_secant_level, sc.k);
      }
      ++hist[{generator_name(gen), signature_key(sig), family}];
      ++out.samples;
    }
  }
  for (const auto& [key, count] : hist) {
    out.rows.push_back({std::get<0>(key), std::get<1>(key), std::get<2>(key), count});
  }
  return out;
}

std::string census_csv(const CensusResult& r) {
  std::ostringstream out;
  out << "generator,signature,family,count\n";
  for (const auto& row : r.rows) {
    out << row.generator << ',' << row.signature << ',' << row.family << ',' << row.count << '\n';
  }
  return out.str();
}

// ---------------------------------------------------------------- Hasse graph

HasseGraph hasse_graph(int n) {
  if (n != 4) throw Error("hasse_graph is only available for four qubits");
  HasseGraph g;
  g.nodes = table2_labels();
  auto verified = [&](const std::string& from, const std::string& to, const std::string& witness) {
    g.edges.push_back({from, to, true, true, witness});
  };
  verified("GHZ4", "W4", "A_eps");
  verified("(333)", "W4", "B_eps on X4");
  verified("(233)", "W4", "C_eps on M4");
  verified("(233)", "GHZ4", "M4 with beta -> 0");
  auto sketch = [&](const std::string& from, const std::string& to) {
    const bool dup = std::any_of(g.edges.begin(), g.edges.end(),
                                 [&](const HasseEdge& e) { return e.from == from && e.to == to; });
    if (!dup) g.edges.push_back({from, to, false, true, "unverified, from figure"});
  };
  // Coarse order between neighbouring families; the exact arrow set is only drawn in a figure.
  for (const char* t : {"(443)", "(434)", "(344)", "(442)", "(424)", "(244)"}) sketch("(444)", t);
  for (const char* t : {"(443)", "(434)", "(344)"}) sketch(t, "(333)");
  sketch("(442)", "(332)");
  sketch("(424)", "(323)");
  sketch("(244)", "(233)");
  for (const char* t : {"(333)", "(332)", "(323)", "(233)"}) sketch(t, std::string(t) + "'");
  for (const char* t : {"(333)'", "(332)'", "(323)'", "(233)'"}) sketch(t, "GHZ4");
  // Each pair of Bell pairs degenerates to either of its pairs.
  static const int bb_pairs[3][2] = {{1, 6}, {2, 5}, {3, 4}};
  for (int i = 0; i < 3; ++i) {
    for (int t : bb_pairs[i]) sketch("BB" + std::to_string(i + 1), "T" + std::to_string(t));
  }
  for (int i = 1; i <= 4; ++i) {
    const std::string b = std::to_string(i);
    sketch("GHZ4", "B" + b + "^GHZ3");
    sketch("W4", "B" + b + "^W3");
    sketch("B" + b + "^GHZ3", "B" + b + "^W3");
  }
  for (int i = 1; i <= 6; ++i) sketch("T" + std::to_string(i), "Sep");
  // W3 on three parties degenerates to a Bell pair on any two of them.
  static const int pairs[6][2] = {{1, 2}, {1, 3}, {1, 4}, {2, 3}, {2, 4}, {3, 4}};
  for (int i = 1; i <= 4; ++i) {
    for (int p = 1; p <= 6; ++p) {
      if (pairs[p - 1][0] != i && pairs[p - 1][1] != i) {
        sketch("B" + std::to_string(i) + "^W3", "T" + std::to_string(p));
      }
    }
  }
  return g;
}

std::string to_dot(const HasseGraph& g) {
  auto quote = [](const std::string& s) {
    std::string out = "\"";
    for (char c : s) {
      if (c == '"' || c == '\\') out += '\\';
      out += c;
    }
    return out + "\"";
  };
  std::ostringstream out;
  out << "digraph hasse {\n  rankdir=TB;\n";
  for (const auto& node : g.nodes) out << "  " << quote(node) << " [label=" << quote(node) << "];\n";
  for (const auto& e : g.edges) {
    out << "  " << quote(e.from) << " -> " << quote(e.to) << " [verified=" << (e.verified ? "true" : "false")
        << ", approximate=" << (e.approximate ? "true" : "false") << ", label=" << quote(e.witness)
        << (e.verified ? "" : ", style=dashed") << "];\n";
  }
  out << "}\n";
  return out.str();
}

}  // namespace qsecant
