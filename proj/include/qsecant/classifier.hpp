#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qsecant/multirank.hpp"
#include "qsecant/rank_engine.hpp"
#include "qsecant/state.hpp"

namespace qsecant {

/// ceil(2^n / (n + 1)): the number of secant families of n qubits.
int family_count(int n);

/// Four-qubit two-multirank triple ordered by the cuts (12), (13), (14).
using TwoMultirankTriple = std::array<int, 3>;

/// True iff the maximum entry occurs at least twice and the sorted triple is not (1,3,3).
bool theorem2_achievable(const TwoMultirankTriple& t);

/// Version tag carried by every serialized report.
inline constexpr const char* kSpecVersion = "1.0";

struct ClassifyOptions {
  SecantOptions secant;
};

struct ClassificationReport {
  int n = 0;
  MultirankSignature signature;
  SecantClass secant;
  bool genuine = false;
  std::string family;
  std::string subfamily;
  bool undecided = false;
  std::vector<std::string> diagnostics;
};

ClassificationReport classify(const PureState& s, const ClassifyOptions& opts = {});

nlohmann::json to_json(const ClassificationReport& r);
std::string to_text(const ClassificationReport& r);

/// The closed set of four-qubit subfamily labels (35 entries).
const std::vector<std::string>& table2_labels();
/// The three-qubit subfamily labels (6 entries).
const std::vector<std::string>& table1_labels();

enum class CensusGenerator { Haar, Structured, Symmetric, Separable };

/// "haar", "structured", "symmetric" or "separable".
CensusGenerator parse_census_generator(const std::string& name);

/// Structured samples are table representatives (or, outside n = 3..5, GHZ,
/// W, a Dicke state and a product state) moved by a random SL(2)^n element.
struct CensusOptions {
  int n = 4;
  long samples = 1000;
  std::uint64_t seed = 42;
  std::vector<CensusGenerator> generators{CensusGenerator::Haar};
  /// Also estimate the secant level of each sample (slower).
  bool with_secant = false;
  SecantOptions secant;
};

struct CensusRow {
  std::string generator;
  std::string signature;  // levels joined by '|', e.g. "2222|444"
  std::string family;     // secant family or "-" when not computed
  long count = 0;
};

struct CensusResult {
  std::vector<CensusRow> rows;
  long samples = 0;
  long theorem2_violations = 0;
  int max_secant_level = 0;
};

CensusResult census(const CensusOptions& opts);
std::string census_csv(const CensusResult& r);

struct HasseEdge {
  std::string from;
  std::string to;
  bool verified = false;
  bool approximate = true;
  std::string witness;
};

struct HasseGraph {
  std::vector<std::string> nodes;
  std::vector<HasseEdge> edges;
};

HasseGraph hasse_graph(int n = 4);
std::string to_dot(const HasseGraph& g);

}  // namespace qsecant
