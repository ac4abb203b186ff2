// Command-line front end. Talks to the library exclusively through the C API.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <iterator>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "qsecant/qsecant.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitUndecided = 2;
constexpr int kExitNumerical = 3;

struct StateDeleter {
  void operator()(qsecant_state* s) const { qsecant_state_free(s); }
};
using StateHandle = std::unique_ptr<qsecant_state, StateDeleter>;

struct CStringDeleter {
  void operator()(char* s) const { qsecant_string_free(s); }
};
using CString = std::unique_ptr<char, CStringDeleter>;

struct CliError {
  int code;
  std::string message;
};

void check(qsecant_status st, const std::string& context) {
  if (st == QSECANT_OK) return;
  const int code = st == QSECANT_NUMERICAL ? kExitNumerical
                   : st == QSECANT_INTERNAL ? kExitNumerical
                                            : kExitUsage;
  throw CliError{code, context + ": " + qsecant_status_name(st) + ": " + qsecant_last_error()};
}

struct Common {
  double rank_tol = 1e-9;
  double fit_tol = 1e-7;
  int restarts = 16;
  int iters = 500;
  unsigned long long seed = 42;
  std::string output;

  nlohmann::json fit_options() const {
    return {{"rank_tol", rank_tol}, {"fit_tol", fit_tol}, {"restarts", restarts}, {"iters", iters}, {"seed", seed}};
  }
};

std::string read_input(const std::string& path) {
  if (path.empty() || path == "-") {
    return std::string(std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>());
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw CliError{kExitUsage, "cannot open '" + path + "'"};
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_output(const Common& c, const std::string& text) {
  if (c.output.empty()) {
    std::cout << text;
    if (!text.empty() && text.back() != '\n') std::cout << '\n';
    return;
  }
  std::ofstream out(c.output, std::ios::binary);
  if (!out) throw CliError{kExitUsage, "cannot write '" + c.output + "'"};
  out << text;
  if (!text.empty() && text.back() != '\n') out << '\n';
}

// Accepts either a literal state document or a constructor description
// (an object with a "name" key).
StateHandle load_state(const std::string& path) {
  const std::string text = read_input(path);
  qsecant_state* raw = nullptr;
  bool is_spec = false;
  try {
    const auto j = nlohmann::json::parse(text);
    is_spec = j.is_object() && j.contains("name") && !j.contains("amplitudes");
  } catch (const nlohmann::json::parse_error&) {
    // Reported below with the library's message.
  }
  check(is_spec ? qsecant_state_build(text.c_str(), &raw) : qsecant_state_parse(text.c_str(), &raw),
        "reading state");
  return StateHandle(raw);
}

void add_common(CLI::App* sub, Common& c, bool fit) {
  if (fit) {
    sub->add_option("--tol-rank", c.rank_tol, "relative singular-value cutoff for ranks")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    sub->add_option("--fit-tol", c.fit_tol, "residual accepted as an exact fit")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    sub->add_option("--restarts", c.restarts, "random restarts per fit")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    sub->add_option("--iters", c.iters, "iterations per restart")->check(CLI::PositiveNumber)->capture_default_str();
  }
  sub->add_option("--seed", c.seed, "seed for every random choice")->capture_default_str();
  sub->add_option("-o,--output", c.output, "write to this file instead of stdout");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Entanglement family classification of multiqubit pure states"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(qsecant_version()));

  Common common;

  // classify
  std::string classify_input = "-";
  std::string classify_format = "json";
  auto* classify = app.add_subcommand("classify", "classify a state read from a file or stdin");
  classify->add_option("input", classify_input, "state JSON or constructor JSON ('-' for stdin)");
  classify->add_option("--format", classify_format, "json or text")
      ->check(CLI::IsMember({"json", "text"}))
      ->capture_default_str();
  add_common(classify, common, true);

  // gen
  std::string gen_name;
  std::optional<int> gen_n, gen_l, gen_r, gen_t, gen_s, gen_i;
  std::string gen_kind, gen_bits;
  std::vector<int> gen_perm;
  std::vector<std::string> gen_sets;
  bool gen_raw = false;
  auto* gen = app.add_subcommand("gen", "emit a named state as JSON");
  gen->add_option("name", gen_name, "constructor name (see --list)");
  gen->add_option("--n", gen_n, "number of qubits");
  gen->add_option("--l", gen_l, "Dicke excitation number");
  gen->add_option("--r", gen_r, "split point for m and g states");
  gen->add_option("--t", gen_t, "weight for n and w-hybrid states");
  gen->add_option("--s", gen_s, "weight for ghz-hybrid states");
  gen->add_option("--i", gen_i, "control party for hybrid states");
  gen->add_option("--kind", gen_kind, "Bell kind: phi+, phi-, psi+, psi-");
  gen->add_option("--bits", gen_bits, "bitstring for the basis constructor");
  gen->add_option("--perm", gen_perm, "party permutation (1-based images)");
  gen->add_option("--set", gen_sets, "extra parameter as key=JSON, e.g. alpha=[1,2]");
  gen->add_flag("--unnormalized", gen_raw, "keep unit amplitudes as written");
  bool gen_list = false;
  gen->add_flag("--list", gen_list, "print the constructor names");
  add_common(gen, common, false);

  // census
  int census_n = 4;
  long census_samples = 1000;
  std::vector<std::string> census_generators{"haar"};
  bool census_secant = false;
  auto* census = app.add_subcommand("census", "histogram of multirank signatures over random states (CSV)");
  census->add_option("--n", census_n, "number of qubits")->check(CLI::Range(2, 12))->capture_default_str();
  census->add_option("--samples", census_samples, "samples per generator")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  census->add_option("--generators", census_generators, "haar, structured, symmetric, separable")
      ->check(CLI::IsMember({"haar", "structured", "symmetric", "separable"}))
      ->delimiter(',');
  census->add_flag("--with-secant", census_secant, "also estimate the secant family of each sample");
  add_common(census, common, true);

  // limits
  std::vector<std::string> limit_families{"A", "B", "C"};
  double eps_from = 1e-1, eps_to = 1e-4;
  int eps_steps = 13;
  double gap = 1e-4;
  std::string limit_source, limit_target;
  auto* limits = app.add_subcommand("limits", "check SLOCC degenerations onto W4");
  limits->add_option("--family", limit_families, "A, B, C (repeatable)")
      ->check(CLI::IsMember({"A", "B", "C", "a", "b", "c"}))
      ->delimiter(',');
  limits->add_option("--eps-from", eps_from)->check(CLI::PositiveNumber)->capture_default_str();
  limits->add_option("--eps-to", eps_to)->check(CLI::PositiveNumber)->capture_default_str();
  limits->add_option("--steps", eps_steps)->check(CLI::PositiveNumber)->capture_default_str();
  limits->add_option("--gap", gap, "required final 1 - fidelity")->check(CLI::PositiveNumber)->capture_default_str();
  limits->add_option("--source", limit_source, "state file replacing the family's default source");
  limits->add_option("--target", limit_target, "state file replacing W4 as the target");
  add_common(limits, common, false);

  // invariant
  std::string invariant_input = "-";
  int invariant_m = 4;
  auto* invariant = app.add_subcommand("invariant", "degree-m invariant projection norm");
  invariant->add_option("input", invariant_input, "state JSON ('-' for stdin)");
  invariant->add_option("--m", invariant_m, "degree")->check(CLI::Range(1, 6))->capture_default_str();
  add_common(invariant, common, false);

  // hasse
  int hasse_n = 4;
  std::string hasse_format = "dot";
  auto* hasse = app.add_subcommand("hasse", "four-qubit degeneration graph");
  hasse->add_option("--n", hasse_n)->capture_default_str();
  hasse->add_option("--format", hasse_format, "dot or json")
      ->check(CLI::IsMember({"dot", "json"}))
      ->capture_default_str();
  add_common(hasse, common, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*classify) {
      const StateHandle s = load_state(classify_input);
      char* raw = nullptr;
      int undecided = 0;
      const std::string opts = common.fit_options().dump();
      check(qsecant_classify(s.get(), opts.c_str(), classify_format == "text" ? QSECANT_FORMAT_TEXT : QSECANT_FORMAT_JSON,
                             &raw, &undecided),
            "classify");
      const CString out(raw);
      write_output(common, out.get());
      return undecided ? kExitUndecided : kExitOk;
    }

    if (*gen) {
      if (gen_list) {
        char* raw = nullptr;
        check(qsecant_constructor_names(&raw), "gen");
        const CString out(raw);
        write_output(common, out.get());
        return kExitOk;
      }
      if (gen_name.empty()) throw CliError{kExitUsage, "gen: a constructor name is required (see --list)"};
      nlohmann::json spec{{"name", gen_name}, {"seed", common.seed}};
      if (gen_raw) spec["normalize"] = false;
      if (gen_n) spec["n"] = *gen_n;
      if (gen_l) spec["l"] = *gen_l;
      if (gen_r) spec["r"] = *gen_r;
      if (gen_t) spec["t"] = *gen_t;
      if (gen_s) spec["s"] = *gen_s;
      if (gen_i) spec["i"] = *gen_i;
      if (!gen_kind.empty()) spec["kind"] = gen_kind;
      if (!gen_bits.empty()) spec["bits"] = gen_bits;
      if (!gen_perm.empty()) spec["perm"] = gen_perm;
      for (const auto& kv : gen_sets) {
        const auto eq = kv.find('=');
        if (eq == std::string::npos || eq == 0) throw CliError{kExitUsage, "gen: --set expects key=JSON"};
        try {
          spec[kv.substr(0, eq)] = nlohmann::json::parse(kv.substr(eq + 1));
        } catch (const nlohmann::json::parse_error& e) {
          throw CliError{kExitUsage, "gen: --set " + kv.substr(0, eq) + ": " + e.what()};
        }
      }
      qsecant_state* raw_state = nullptr;
      check(qsecant_state_build(spec.dump().c_str(), &raw_state), "gen");
      const StateHandle s(raw_state);
      char* raw = nullptr;
      check(qsecant_state_to_json(s.get(), &raw), "gen");
      const CString out(raw);
      write_output(common, out.get());
      return kExitOk;
    }

    if (*census) {
      nlohmann::json opts = common.fit_options();
      opts["n"] = census_n;
      opts["samples"] = census_samples;
      opts["generators"] = census_generators;
      opts["with_secant"] = census_secant;
      char* raw = nullptr;
      check(qsecant_census(opts.dump().c_str(), &raw), "census");
      const CString out(raw);
      write_output(common, "# spec_version " + std::string(qsecant_schema_version()) + "\n" + out.get());
      return kExitOk;
    }

    if (*limits) {
      nlohmann::json results = nlohmann::json::array();
      bool all_passed = true;
      for (const auto& fam : limit_families) {
        nlohmann::json opts{{"family", fam}, {"eps_from", eps_from}, {"eps_to", eps_to}, {"steps", eps_steps}, {"gap", gap}};
        if (!limit_source.empty()) opts["source"] = nlohmann::json::parse(read_input(limit_source));
        if (!limit_target.empty()) opts["target"] = nlohmann::json::parse(read_input(limit_target));
        char* raw = nullptr;
        int passed = 0;
        check(qsecant_limit(opts.dump().c_str(), &raw, &passed), "limits " + fam);
        const CString out(raw);
        results.push_back(nlohmann::json::parse(out.get()));
        all_passed = all_passed && passed;
      }
      const nlohmann::json doc{{"spec_version", qsecant_schema_version()}, {"limits", results}, {"passed", all_passed}};
      write_output(common, doc.dump(2));
      return all_passed ? kExitOk : kExitNumerical;
    }

    if (*invariant) {
      const StateHandle s = load_state(invariant_input);
      char* raw = nullptr;
      check(qsecant_invariant(s.get(), invariant_m, &raw), "invariant");
      const CString out(raw);
      write_output(common, out.get());
      return kExitOk;
    }

    if (*hasse) {
      char* raw = nullptr;
      check(qsecant_hasse(hasse_n, hasse_format == "json" ? QSECANT_FORMAT_JSON : QSECANT_FORMAT_DOT, &raw), "hasse");
      const CString out(raw);
      write_output(common, out.get());
      return kExitOk;
    }
  } catch (const CliError& e) {
    std::cerr << "error: " << e.message << '\n';
    return e.code;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}
