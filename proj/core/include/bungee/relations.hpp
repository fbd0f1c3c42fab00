#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "bungee/expr.hpp"
#include "bungee/grid.hpp"
#include "bungee/orbit.hpp"

namespace bungee {

/// Seeds to test: an explicit list, or every `stride`-th cell center of a grid
/// in both directions.
class SamplePlan {
 public:
  static SamplePlan list(std::vector<Complex> seeds);
  static SamplePlan grid(GridSpec spec, std::size_t stride = 1);

  const std::vector<Complex>& seeds() const { return seeds_; }
  std::size_t sample_count() const { return seeds_.size(); }

  nlohmann::json to_json() const;

 private:
  SamplePlan() = default;
  std::vector<Complex> seeds_;
  std::optional<GridSpec> grid_;
  std::size_t stride_ = 1;
};

enum class RelationId {
  AffineBungeeEqual,           // BU(f) = BU(a f + b)
  BuSwap,                      // z in BU(f o g)  <=>  g(z) in BU(g o f)
  KIntersectionIntoComposite,  // K(f) n K(g) c K(f o g)
  EscapingInvariance,          // f(I(g)) c I(g)
  EscapingUnion,               // I(f) u I(g) c I(f o g), optionally equality
  BungeeComposite,             // BU(f o g) c BU(f) n BU(g)
  KSwap,                       // z in K(f o g)  <=>  g(z) in K(g o f)
  ConjugacyTransport,          // class_f(z) = class_h(phi(z)), h = phi o f o phi^-1
  DisjointKandBU,              // K(f) n K(g) = {} and BU(f) n BU(g) = {}
  StripContainment,            // Escaping seeds lie in the half-plane strips
};

enum class CheckKind { Inclusion, Equivalence, Equality, Emptiness };

struct RelationInfo {
  RelationId id;
  std::string_view name;
  CheckKind kind;
  bool needs_g;
  bool needs_affine;
  bool assumes_permutable;
  bool assumes_no_finite_asymptotic_values;
  std::string_view statement;
};

const RelationInfo& relation_info(RelationId id);
const std::vector<RelationInfo>& all_relations();
/// Accepts RelationInfo::name; throws std::invalid_argument.
RelationId relation_from_string(std::string_view name);

/// A theorem hypothesis that is supplied, never computed.
struct HypothesisFlag {
  bool value = false;
  std::string provenance;

  friend bool operator==(const HypothesisFlag&, const HypothesisFlag&) = default;
};

struct AffineMap {
  Complex a{1.0, 0.0};
  Complex b{0.0, 0.0};

  Complex operator()(Complex z) const { return a * z + b; }
};

/// Which strip family StripContainment checks.
///   Left:  Re z < 0, (4k-3)pi/2 < Im z < (4k-1)pi/2
///   Right: Re z > 0, (4k-1)pi/2 < Im z < (4k+1)pi/2
enum class StripSide { Left, Right };
bool in_strip(Complex z, StripSide side);

struct RelationInputs {
  FunctionExpr f;
  std::optional<FunctionExpr> g;
  std::optional<AffineMap> affine;
  std::optional<HypothesisFlag> no_finite_asymptotic_values;
  bool equality_mode = false;  // EscapingUnion: also test I(f o g) c I(f) u I(g)
  StripSide strip = StripSide::Left;
};

struct PermutabilityResult {
  double max_dev = 0.0;  // NaN when nothing was evaluable
  bool permutable = false;
  std::size_t evaluated = 0;
  std::size_t skipped = 0;  // samples where either order was non-finite
};

inline constexpr double kDefaultPermutabilityTol = 1e-9;

/// max over finite samples of |f(g(z)) - g(f(z))| / (1 + |f(g(z))|).
/// Throws std::runtime_error("no evaluable samples") if every sample is skipped.
PermutabilityResult check_permutable(const FunctionExpr& f, const FunctionExpr& g, const SamplePlan& plan,
                                     double tol = kDefaultPermutabilityTol, unsigned workers = 1);

struct SideVerdict {
  std::string side;  // e.g. "fog@z", "gof@g(z)"
  Classification verdict;

  friend bool operator==(const SideVerdict&, const SideVerdict&) = default;
};

struct Violation {
  Complex seed;
  std::vector<SideVerdict> verdicts;

  friend bool operator==(const Violation&, const Violation&) = default;
};

struct RelationReport {
  RelationId relation;
  std::size_t sample_count = 0;
  std::size_t evaluated_count = 0;
  std::size_t unresolved_count = 0;
  std::vector<Violation> violations;
  double violation_rate = 0.0;
  std::optional<PermutabilityResult> permutability;
  std::optional<HypothesisFlag> no_finite_asymptotic_values;
  std::vector<std::string> sides;
  /// Per side, counts of each Classification (indexed by code) over all samples.
  std::vector<std::array<std::size_t, 4>> tallies;
  ClassifierConfig config;
  nlohmann::json plan;
};

struct VerifyOptions {
  unsigned workers = 1;
  double permutability_tol = kDefaultPermutabilityTol;
};

/// Classifies every seed on each side the relation compares. A seed is a
/// violation when all its verdicts are resolved and the relation fails; a
/// seed with any Unresolved verdict (or a non-finite image point) is counted
/// as unresolved. Throws std::invalid_argument on missing inputs and
/// std::runtime_error when no seed is evaluable.
RelationReport verify_relation(RelationId rel, const RelationInputs& in, const SamplePlan& plan,
                               const ClassifierConfig& cfg, const VerifyOptions& opts = {});

nlohmann::json to_json(const RelationReport& r);
nlohmann::json to_json(const PermutabilityResult& p);
nlohmann::json to_json(const HypothesisFlag& h);
HypothesisFlag hypothesis_from_json(const nlohmann::json& j);

}  // namespace bungee
