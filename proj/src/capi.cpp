#include "qsecant/qsecant.h"

#include <cstdlib>
#include <cstring>
#include <new>
#include <string>

#include "qsecant/classifier.hpp"
#include "qsecant/covariants.hpp"
#include "qsecant/multirank.hpp"
#include "qsecant/rank_engine.hpp"
#include "qsecant/slocc.hpp"
#include "qsecant/state.hpp"
#include "qsecant/state_factory.hpp"

struct qsecant_state {
  qsecant::PureState state;
};

namespace {

thread_local std::string g_last_error;

using json = nlohmann::json;

qsecant_status fail(qsecant_status code, std::string message) {
  g_last_error = std::move(message);
  return code;
}

// Runs body, translating exceptions into status codes.
template <class F>
qsecant_status guarded(F&& body) {
  g_last_error.clear();
  try {
    return body();
  } catch (const qsecant::ParseError& e) {
    return fail(QSECANT_PARSE, e.what());
  } catch (const json::parse_error& e) {
    return fail(QSECANT_PARSE, e.what());
  } catch (const json::exception& e) {
    return fail(QSECANT_PARSE, e.what());
  } catch (const qsecant::DimensionError& e) {
    return fail(QSECANT_DIMENSION, e.what());
  } catch (const qsecant::Error& e) {
    return fail(QSECANT_INVALID_ARGUMENT, e.what());
  } catch (const std::bad_alloc&) {
    return fail(QSECANT_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(QSECANT_INTERNAL, e.what());
  } catch (...) {
    return fail(QSECANT_INTERNAL, "unknown exception");
  }
}

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

json parse_options(const char* text) {
  if (!text || !*text) return json::object();
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw qsecant::ParseError(std::string("options: ") + e.what());
  }
  if (!j.is_object()) throw qsecant::ParseError("options must be a JSON object");
  return j;
}

template <class T>
T option(const json& j, const char* key, T fallback) {
  if (!j.contains(key)) return fallback;
  try {
    return j.at(key).get<T>();
  } catch (const json::exception&) {
    throw qsecant::ParseError(std::string("option '") + key + "' has the wrong type");
  }
}

double positive_option(const json& j, const char* key, double fallback) {
  const double v = option<double>(j, key, fallback);
  if (!(v > 0.0)) throw qsecant::Error(std::string("option '") + key + "' must be positive");
  return v;
}

int count_option(const json& j, const char* key, int fallback) {
  const int v = option<int>(j, key, fallback);
  if (v < 1) throw qsecant::Error(std::string("option '") + key + "' must be at least 1");
  return v;
}

qsecant::SecantOptions secant_options(const json& j) {
  qsecant::SecantOptions o;
  o.rank_tol = positive_option(j, "rank_tol", o.rank_tol);
  o.fit.fit_tol = positive_option(j, "fit_tol", o.fit.fit_tol);
  o.fit.restarts = count_option(j, "restarts", o.fit.restarts);
  o.fit.iters = count_option(j, "iters", o.fit.iters);
  o.fit.seed = option<std::uint64_t>(j, "seed", o.fit.seed);
  return o;
}

json with_version(json j) {
  j["spec_version"] = qsecant::kSpecVersion;
  return j;
}

qsecant_status emit(const std::string& text, char** out) {
  *out = dup_string(text);
  return QSECANT_OK;
}

#define QSECANT_REQUIRE(cond, what) \
  if (!(cond)) return fail(QSECANT_INVALID_ARGUMENT, what)

}  // namespace

extern "C" {

const char* qsecant_version(void) { return "0.1.0"; }

const char* qsecant_schema_version(void) { return qsecant::kSpecVersion; }

const char* qsecant_last_error(void) { return g_last_error.c_str(); }

const char* qsecant_status_name(qsecant_status status) {
  switch (status) {
    case QSECANT_OK: return "ok";
    case QSECANT_INVALID_ARGUMENT: return "invalid argument";
    case QSECANT_PARSE: return "parse error";
    case QSECANT_DIMENSION: return "dimension mismatch";
    case QSECANT_NUMERICAL: return "numerical failure";
    case QSECANT_INTERNAL: return "internal error";
  }
  return "unknown status";
}

void qsecant_string_free(char* s) { std::free(s); }

qsecant_status qsecant_state_parse(const char* text, qsecant_state** out) {
  return guarded([&] {
    QSECANT_REQUIRE(text && out, "qsecant_state_parse: null argument");
    *out = new qsecant_state{qsecant::parse_state(text)};
    return QSECANT_OK;
  });
}

qsecant_status qsecant_state_build(const char* spec_json, qsecant_state** out) {
  return guarded([&] {
    QSECANT_REQUIRE(spec_json && out, "qsecant_state_build: null argument");
    json spec;
    try {
      spec = json::parse(spec_json);
    } catch (const json::parse_error& e) {
      throw qsecant::ParseError(e.what());
    }
    *out = new qsecant_state{qsecant::state_from_spec(spec)};
    return QSECANT_OK;
  });
}

qsecant_status qsecant_state_from_amplitudes(int n, const double* re_im, qsecant_state** out) {
  return guarded([&] {
    QSECANT_REQUIRE(re_im && out, "qsecant_state_from_amplitudes: null argument");
    QSECANT_REQUIRE(n >= 1 && n <= qsecant::kMaxQubits, "qsecant_state_from_amplitudes: qubit count out of range");
    const std::size_t dim = std::size_t{1} << n;
    std::vector<qsecant::Complex> amps(dim);
    for (std::size_t i = 0; i < dim; ++i) amps[i] = {re_im[2 * i], re_im[2 * i + 1]};
    *out = new qsecant_state{qsecant::PureState(n, std::move(amps))};
    return QSECANT_OK;
  });
}

void qsecant_state_free(qsecant_state* state) { delete state; }

qsecant_status qsecant_state_qubits(const qsecant_state* state, int* n) {
  return guarded([&] {
    QSECANT_REQUIRE(state && n, "qsecant_state_qubits: null argument");
    *n = state->state.qubits();
    return QSECANT_OK;
  });
}

qsecant_status qsecant_state_amplitude(const qsecant_state* state, size_t index, double* re, double* im) {
  return guarded([&] {
    QSECANT_REQUIRE(state && re && im, "qsecant_state_amplitude: null argument");
    if (index >= state->state.dim()) return fail(QSECANT_DIMENSION, "qsecant_state_amplitude: index out of range");
    *re = state->state[index].real();
    *im = state->state[index].imag();
    return QSECANT_OK;
  });
}

qsecant_status qsecant_state_to_json(const qsecant_state* state, char** out) {
  return guarded([&] {
    QSECANT_REQUIRE(state && out, "qsecant_state_to_json: null argument");
    return emit(with_version(qsecant::to_json(state->state)).dump(), out);
  });
}

qsecant_status qsecant_constructor_names(char** out) {
  return guarded([&] {
    QSECANT_REQUIRE(out, "qsecant_constructor_names: null argument");
    return emit(json(qsecant::spec_names()).dump(), out);
  });
}

qsecant_status qsecant_multirank(const qsecant_state* state, double rank_tol, char** json_out) {
  return guarded([&] {
    QSECANT_REQUIRE(state && json_out, "qsecant_multirank: null argument");
    QSECANT_REQUIRE(rank_tol > 0.0, "qsecant_multirank: rank_tol must be positive");
    const auto sig = qsecant::multirank_signature(state->state, rank_tol);
    json j{{"n", sig.n}, {"multirank", qsecant::to_json(sig)}, {"genuine", qsecant::is_genuinely_entangled(sig)}};
    return emit(with_version(j).dump(), json_out);
  });
}

qsecant_status qsecant_classify(const qsecant_state* state, const char* options_json, qsecant_format format,
                                char** out, int* undecided) {
  return guarded([&] {
    QSECANT_REQUIRE(state && out, "qsecant_classify: null argument");
    QSECANT_REQUIRE(format == QSECANT_FORMAT_JSON || format == QSECANT_FORMAT_TEXT,
                    "qsecant_classify: format must be json or text");
    qsecant::ClassifyOptions opts;
    opts.secant = secant_options(parse_options(options_json));
    const auto report = qsecant::classify(state->state, opts);
    if (undecided) *undecided = report.undecided ? 1 : 0;
    if (format == QSECANT_FORMAT_TEXT) return emit(qsecant::to_text(report), out);
    return emit(qsecant::to_json(report).dump(2), out);
  });
}

qsecant_status qsecant_census(const char* options_json, char** csv_out) {
  return guarded([&] {
    QSECANT_REQUIRE(csv_out, "qsecant_census: null argument");
    const json j = parse_options(options_json);
    qsecant::CensusOptions opts;
    opts.n = option<int>(j, "n", opts.n);
    opts.samples = option<long>(j, "samples", opts.samples);
    QSECANT_REQUIRE(opts.samples >= 0, "qsecant_census: samples must be non-negative");
    opts.seed = option<std::uint64_t>(j, "seed", opts.seed);
    opts.with_secant = option<bool>(j, "with_secant", false);
    opts.secant = secant_options(j);
    if (j.contains("generators")) {
      opts.generators.clear();
      for (const auto& g : option<std::vector<std::string>>(j, "generators", {})) {
        opts.generators.push_back(qsecant::parse_census_generator(g));
      }
      QSECANT_REQUIRE(!opts.generators.empty(), "qsecant_census: empty generator list");
    }
    return emit(qsecant::census_csv(qsecant::census(opts)), csv_out);
  });
}

qsecant_status qsecant_limit(const char* options_json, char** json_out, int* passed) {
  return guarded([&] {
    QSECANT_REQUIRE(json_out, "qsecant_limit: null argument");
    const json j = parse_options(options_json);
    const auto id = qsecant::parse_limit_family(option<std::string>(j, "family", "A"));
    const auto fam = qsecant::limit_family(id);
    const qsecant::PureState source =
        j.contains("source") ? qsecant::state_from_json(j.at("source")) : qsecant::limit_source(id);
    const qsecant::PureState target = j.contains("target") ? qsecant::state_from_json(j.at("target")) : qsecant::w(4);
    QSECANT_REQUIRE(source.qubits() == 4 && target.qubits() == 4, "qsecant_limit: source and target must be four-qubit");
    const auto schedule = qsecant::geometric_schedule(positive_option(j, "eps_from", 1e-1),
                                                      positive_option(j, "eps_to", 1e-4), count_option(j, "steps", 13));
    const double gap = positive_option(j, "gap", 1e-4);
    const auto report = qsecant::verify_degeneration(source, fam, target, schedule, gap);
    if (passed) *passed = report.passed ? 1 : 0;
    json out = qsecant::to_json(report);
    out["family"] = qsecant::to_string(id);
    out["source"] = fam.source;
    out["target"] = fam.target;
    out["gap"] = gap;
    return emit(with_version(out).dump(2), json_out);
  });
}

qsecant_status qsecant_invariant(const qsecant_state* state, int m, char** json_out) {
  return guarded([&] {
    QSECANT_REQUIRE(state && json_out, "qsecant_invariant: null argument");
    QSECANT_REQUIRE(m >= 1, "qsecant_invariant: m must be positive");
    std::string note;
    const double norm = qsecant::invariant_projection_norm(state->state, m, &note);
    json out{{"n", state->state.qubits()}, {"m", m}, {"invariant_projection_norm", norm}};
    if (!note.empty()) out["note"] = note;
    if (state->state.qubits() == 3) {
      const auto h = qsecant::cayley_hyperdeterminant(qsecant::normalize(state->state));
      out["hyperdeterminant"] = {h.real(), h.imag()};
      out["hyperdeterminant_abs"] = std::abs(h);
    }
    return emit(with_version(out).dump(2), json_out);
  });
}

qsecant_status qsecant_hasse(int n, qsecant_format format, char** out) {
  return guarded([&] {
    QSECANT_REQUIRE(out, "qsecant_hasse: null argument");
    QSECANT_REQUIRE(format == QSECANT_FORMAT_DOT || format == QSECANT_FORMAT_JSON,
                    "qsecant_hasse: format must be dot or json");
    const auto g = qsecant::hasse_graph(n);
    if (format == QSECANT_FORMAT_DOT) {
      return emit("// spec_version " + std::string(qsecant::kSpecVersion) + "\n" + qsecant::to_dot(g), out);
    }
    json edges = json::array();
    for (const auto& e : g.edges) {
      edges.push_back({{"from", e.from},
                       {"to", e.to},
                       {"verified", e.verified},
                       {"approximate", e.approximate},
                       {"witness", e.witness}});
    }
    return emit(with_version({{"n", n}, {"nodes", g.nodes}, {"edges", edges}}).dump(2), out);
  });
}

qsecant_status qsecant_family_count(int n, int* out) {
  return guarded([&] {
    QSECANT_REQUIRE(out, "qsecant_family_count: null argument");
    *out = qsecant::family_count(n);
    return QSECANT_OK;
  });
}

}  // extern "C"
