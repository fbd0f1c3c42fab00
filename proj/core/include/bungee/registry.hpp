#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "bungee/expr.hpp"
#include "bungee/orbit.hpp"
#include "bungee/relations.hpp"

namespace bungee {

/// Where an expectation's expected outcome comes from.
///   Published:  a result stated in the literature for this example
///   Elementary: forced by direct arithmetic (fixed points, invariant circles)
///   Computed:   established by an independent numerical procedure
enum class Provenance { Published, Elementary, Computed };
std::string_view to_string(Provenance p);

struct ExampleFlags {
  std::optional<HypothesisFlag> permutable;
  std::optional<HypothesisFlag> no_finite_asymptotic_values;
  bool oracle_not_entire = false;
  std::vector<std::string> notes;

  friend bool operator==(const ExampleFlags&, const ExampleFlags&) = default;
};

nlohmann::json to_json(const ExampleFlags& flags);
ExampleFlags flags_from_json(const nlohmann::json& j);

struct ExampleEntry;

struct RunContext {
  ClassifierConfig cfg;
  unsigned workers = 1;
};

struct ExpectationResult {
  bool passed = false;
  std::string measured;
};

struct Expectation {
  std::string description;
  std::string expected;
  Provenance provenance;
  std::function<ExpectationResult(const ExampleEntry&, const RunContext&)> check;
};

struct ExampleEntry {
  std::string id;
  std::string summary;
  FunctionExpr f;
  std::optional<FunctionExpr> g;
  std::optional<AffineMap> conjugation;
  std::map<std::string, double> parameters;
  ExampleFlags flags;
  std::optional<ClassifierConfig> cfg_override;
  std::vector<Expectation> expectations;

  /// cfg_override if present, otherwise the defaults.
  ClassifierConfig config() const { return cfg_override.value_or(ClassifierConfig{}); }
};

/// Stable order.
std::vector<std::pair<std::string, std::string>> list_examples();

/// Throws std::out_of_range for an unknown id.
const ExampleEntry& get_example(std::string_view id);

struct RunOverrides {
  std::optional<ClassifierConfig> cfg;
  unsigned workers = 1;
};

struct ExpectationOutcome {
  std::string description;
  std::string expected;
  Provenance provenance;
  bool passed;
  std::string measured;
};

struct ExampleReport {
  std::string id;
  ClassifierConfig config;
  std::vector<ExpectationOutcome> outcomes;

  bool all_passed() const;
};

/// Recomputes every expectation of the entry. Throws std::out_of_range for
/// an unknown id.
ExampleReport run_example(std::string_view id, const RunOverrides& overrides = {});

nlohmann::json to_json(const ExampleEntry& entry);
nlohmann::json to_json(const ExampleReport& report);
/// JSON array of every entry.
nlohmann::json export_registry();

}  // namespace bungee
