#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "coinv/divisor_calc.hpp"
#include "coinv/fnef.hpp"
#include "coinv/fusion_ring.hpp"

namespace coinv::cli {

using Json = nlohmann::ordered_json;

// Model expressions:
//   expr := term (("⊗" | "x") term)*
//   term := "(" expr ")" | "ising" | "lattice:<m>" | "holomorphic:<c>" | "file:<path>"
// The ASCII operator "x" must stand alone between whitespace.

/// Parses and resolves a model expression without validating the result.
/// Throws ParseError (with byte position) or the leaf's own error.
FusionModel build_model(const std::string& expr);

/// build_model() followed by validate_model(); throws InvalidModel listing
/// every diagnostic when a law fails.
FusionModel parse_model(const std::string& expr);

/// Model data document: labels, vacuum, dual, mult (sparse quadruples),
/// conf_dim, central_charge. Rationals are "p/q" strings. Unknown fields are
/// rejected; dual entries may be omitted for self-dual labels and omitted
/// multiplicities are 0.
FusionModel model_from_json(const Json& doc);
Json model_to_json(const FusionModel& model);
FusionModel load_model_file(const std::string& path);

/// Splits "a,b,(c,d),s^3" at top-level commas; "x^k" repeats x k times.
std::vector<std::string> split_labels(const std::string& text);

Json to_json(const DivisorClass& d);
Json to_json(const FCurve& f);
Json to_json(const NefCertificate& cert);
Json to_json(const GgReport& report);

enum class Format { Table, Machine };

struct JobSpec {
  std::string command;
  std::string model = "ising";
  int genus = 0;
  std::vector<std::string> labels;
  std::string label;
  long n_max = 10;
  Format format = Format::Table;
  bool symmetric = false;
  unsigned workers = 1;
  long p = 0;
  long q = 0;
  /// Rank-d lattice for the zhu commands: rows separated by ';', entries by ','.
  std::string gram;
  /// Coset vector for --gram, comma separated rationals.
  std::string coset;
};

inline constexpr int kExitOk = 0;
inline constexpr int kExitObstruction = 1;
inline constexpr int kExitInputError = 2;

/// Dispatches one job; output goes to `out`, errors to `err`.
/// Exit code 0 on success, 1 when an obstruction (negative degree or
/// F-curve witness) is found, 2 on input errors.
int run(const JobSpec& job, std::ostream& out, std::ostream& err);

}  // namespace coinv::cli
