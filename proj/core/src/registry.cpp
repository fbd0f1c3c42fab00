#include "bungee/registry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>
#include <stdexcept>

namespace bungee {

std::string_view to_string(Provenance p) {
  switch (p) {
    case Provenance::Published: return "published";
    case Provenance::Elementary: return "elementary";
    case Provenance::Computed: break;
  }
  return "computed";
}

namespace {

using C = Classification;
constexpr double kPi = std::numbers::pi;

template <class... Args>
std::string cat(const Args&... args) {
  std::ostringstream os;
  os.precision(10);
  (os << ... << args);
  return os.str();
}

// Which orbit an expectation looks at.
enum class Map { F, G, FoG };

FunctionExpr pick(const ExampleEntry& e, Map m) {
  switch (m) {
    case Map::F: return e.f;
    case Map::G: return e.g.value();
    case Map::FoG: break;
  }
  return compose(e.f, e.g.value());
}

const char* map_name(Map m) { return m == Map::F ? "f" : m == Map::G ? "g" : "f o g"; }

Expectation point_class(Map m, Complex z, C want, Provenance prov, std::string why = {}) {
  std::string desc = cat(format_number(z.real()), (z.imag() < 0 ? "-" : "+"), format_number(std::abs(z.imag())),
                         "i classifies ", to_string(want), " under ", map_name(m));
  if (!why.empty()) desc += " (" + why + ")";
  return {desc, std::string(to_string(want)), prov, [m, z, want](const ExampleEntry& e, const RunContext& ctx) {
            const C got = classify_point(pick(e, m), z, ctx.cfg);
            return ExpectationResult{got == want, std::string(to_string(got))};
          }};
}

struct RelationCheck {
  RelationId rel;
  SamplePlan plan;
  double max_rate = 0.0;
  double min_resolved = 0.0;  // fraction of samples that must be evaluable
  std::optional<AffineMap> affine;
  bool equality_mode = false;
  StripSide strip = StripSide::Left;
  bool swap = false;  // run with (g, f) in place of (f, g)
};

RelationCheck check(RelationId rel, SamplePlan plan, double max_rate = 0.0, double min_resolved = 0.0) {
  return {rel, std::move(plan), max_rate, min_resolved, std::nullopt, false, StripSide::Left, false};
}

Expectation relation_expectation(std::string desc, RelationCheck rc, Provenance prov) {
  std::string expected = rc.max_rate == 0.0 ? "0 violations" : cat("violation rate <= ", rc.max_rate);
  if (rc.min_resolved > 0.0) expected += cat(", >= ", rc.min_resolved * 100.0, "% resolved");
  return {std::move(desc), expected, prov, [rc](const ExampleEntry& e, const RunContext& ctx) {
            RelationInputs in;
            in.f = rc.swap ? e.g.value() : e.f;
            if (rc.swap)
              in.g = e.f;
            else
              in.g = e.g;
            in.affine = rc.affine ? rc.affine : e.conjugation;
            in.no_finite_asymptotic_values = e.flags.no_finite_asymptotic_values;
            in.equality_mode = rc.equality_mode;
            in.strip = rc.strip;
            if (!relation_info(rc.rel).needs_g && rc.swap) in.g.reset();
            try {
              const RelationReport r = verify_relation(rc.rel, in, rc.plan, ctx.cfg, {ctx.workers});
              const double resolved = static_cast<double>(r.evaluated_count) / static_cast<double>(r.sample_count);
              const bool ok = r.violation_rate <= rc.max_rate && resolved >= rc.min_resolved;
              return ExpectationResult{ok, cat(r.violations.size(), " violations / ", r.evaluated_count,
                                               " evaluated of ", r.sample_count, " (rate ", r.violation_rate, ")")};
            } catch (const std::runtime_error& err) {
              return ExpectationResult{false, err.what()};
            }
          }};
}

// Counts seeds on which the verdicts of f and g are both in `a` and `b`.
Expectation joint_count_zero(std::string desc, SamplePlan plan, C a, C b, Provenance prov) {
  return {std::move(desc), "0 seeds", prov, [plan, a, b](const ExampleEntry& e, const RunContext& ctx) {
            std::size_t both = 0;
            for (Complex z : plan.seeds())
              if (classify_point(e.f, z, ctx.cfg) == a && classify_point(e.g.value(), z, ctx.cfg) == b) ++both;
            return ExpectationResult{both == 0, cat(both, " of ", plan.sample_count(), " seeds")};
          }};
}

Expectation permutability_expectation(SamplePlan plan, bool want_commute, double threshold, Provenance prov) {
  std::string desc = want_commute ? "f o g = g o f on the sample plan" : "f o g differs from g o f";
  std::string expected = want_commute ? cat("max_dev < ", threshold) : cat("max_dev > ", threshold);
  return {desc, expected, prov, [plan, want_commute, threshold](const ExampleEntry& e, const RunContext& ctx) {
            try {
              const PermutabilityResult p = check_permutable(e.f, e.g.value(), plan, kDefaultPermutabilityTol, ctx.workers);
              const bool ok = want_commute ? p.max_dev < threshold : p.max_dev > threshold;
              return ExpectationResult{ok, cat("max_dev = ", p.max_dev, " over ", p.evaluated, " samples")};
            } catch (const std::runtime_error& err) {
              return ExpectationResult{false, err.what()};
            }
          }};
}

std::vector<Complex> annulus_seeds(std::size_t count, double r_in, double r_out, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<Complex> out;
  out.reserve(count);
  for (std::size_t k = 0; k < count; ++k) {
    // Uniform in area.
    const double r = std::sqrt(r_in * r_in + u(rng) * (r_out * r_out - r_in * r_in));
    out.push_back(std::polar(r, 2.0 * kPi * u(rng)));
  }
  return out;
}

std::vector<Complex> circle_seeds(std::size_t count) {
  std::vector<Complex> out;
  for (std::size_t k = 0; k < count; ++k)
    out.push_back(std::polar(1.0, 2.0 * kPi * static_cast<double>(k) / static_cast<double>(count)));
  return out;
}

ClassifierConfig drift_config() {
  ClassifierConfig c;
  c.r_bound = 1e2;
  c.r_esc = 1e3;
  c.max_iter = 2000;
  return c;
}

// Smaller root of lambda e^x = x on [0, 1] by bisection, 0 < lambda < 1/e.
double attracting_fixed_point(double lambda) {
  double lo = 0.0, hi = 1.0;
  for (int k = 0; k < 200; ++k) {
    const double mid = 0.5 * (lo + hi);
    (lambda * std::exp(mid) - mid > 0.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

ExampleEntry rational_bungee() {
  ExampleEntry e;
  e.id = "ex_rational_bungee";
  e.summary = "R(z) = 1/z^2: BU(R) is the plane minus the unit circle";
  e.f = parse("1/pow(z,2)");
  e.parameters = {{"d", 2.0}};
  e.flags.oracle_not_entire = true;
  e.flags.notes = {"meromorphic test oracle, not entire",
                   "1/z^d with d >= 2 alternates between |z|^(d^n) and |z|^(-d^n) off the unit circle"};
  e.expectations.push_back(point_class(Map::F, 0.5, C::Bungee, Provenance::Published, "|z| < 1"));
  e.expectations.push_back(point_class(Map::F, 2.0, C::Bungee, Provenance::Published, "|z| > 1"));
  e.expectations.push_back(point_class(Map::F, 1.0, C::Bounded, Provenance::Elementary, "fixed point"));
  const auto annulus = annulus_seeds(500, 0.1, 0.9, 20240501);
  e.expectations.push_back(
      {"500 seeds in 0.1 <= |z| <= 0.9: at least 95% Bungee and none Bounded", ">= 95% Bungee, 0 Bounded",
       Provenance::Published, [annulus](const ExampleEntry& ex, const RunContext& ctx) {
         std::size_t bungee = 0, bounded = 0;
         for (Complex z : annulus) {
           const C c = classify_point(ex.f, z, ctx.cfg);
           bungee += c == C::Bungee;
           bounded += c == C::Bounded;
         }
         const bool ok = static_cast<double>(bungee) >= 0.95 * static_cast<double>(annulus.size()) && bounded == 0;
         return ExpectationResult{ok, cat(bungee, " Bungee, ", bounded, " Bounded of ", annulus.size())};
       }});
  const auto circle = circle_seeds(64);
  e.expectations.push_back({"64 evenly spaced seeds on |z| = 1 classify Bounded", "64 Bounded", Provenance::Elementary,
                            [circle](const ExampleEntry& ex, const RunContext& ctx) {
                              std::size_t bounded = 0;
                              for (Complex z : circle) bounded += classify_point(ex.f, z, ctx.cfg) == C::Bounded;
                              return ExpectationResult{bounded == circle.size(), cat(bounded, " Bounded")};
                            }});
  return e;
}

ExampleEntry sine_pair() {
  ExampleEntry e;
  e.id = "ex_sine_pair";
  e.summary = "f = z + sin z, g = z + sin z + 2 pi: 0 is in K(f) and I(g) but not in K(f o g)";
  e.f = parse("z+sin(z)");
  e.g = parse("z+sin(z)+2*pi");
  e.cfg_override = drift_config();
  e.flags.notes = {"g^n(0) = 2 n pi drifts linearly; the override lowers r_esc to 1e3 and runs 2000 steps",
                   "K(f) u K(g) c K(f o g) fails at 0"};
  e.expectations.push_back({"|g^n(0) - 2 pi n| <= 1e-6 for n <= 30", "max error <= 1e-6", Provenance::Published,
                            [](const ExampleEntry& ex, const RunContext& ctx) {
                              ClassifierConfig c = ctx.cfg;
                              c.max_iter = std::max(c.max_iter, 31);
                              c.tail_window = std::min(c.tail_window, c.max_iter - 1);
                              const OrbitRecord rec = iterate_orbit(*ex.g, 0.0, c);
                              if (rec.values.size() < 31) return ExpectationResult{false, "orbit ended before n = 30"};
                              double worst = 0.0;
                              for (std::size_t n = 0; n <= 30; ++n)
                                worst = std::max(worst, std::abs(rec.values[n] - Complex(2.0 * kPi * static_cast<double>(n), 0.0)));
                              return ExpectationResult{worst <= 1e-6, cat("max error ", worst)};
                            }});
  e.expectations.push_back(point_class(Map::F, 0.0, C::Bounded, Provenance::Published, "f(0) = 0"));
  e.expectations.push_back(point_class(Map::G, 0.0, C::Escaping, Provenance::Published, "g^n(0) = 2 n pi"));
  e.expectations.push_back(point_class(Map::FoG, 0.0, C::Escaping, Provenance::Published, "(f o g)^n(0) = 2 n pi"));
  e.expectations.push_back(
      {"k pi classifies Bounded under f for k in -3..3", "7 Bounded", Provenance::Elementary,
       [](const ExampleEntry& ex, const RunContext& ctx) {
         std::size_t bounded = 0;
         for (int k = -3; k <= 3; ++k) bounded += classify_point(ex.f, Complex(k * kPi, 0.0), ctx.cfg) == C::Bounded;
         return ExpectationResult{bounded == 7, cat(bounded, " Bounded")};
       }});
  e.expectations.push_back(permutability_expectation(SamplePlan::grid({-2, 2, -2, 2, 20, 10}), true, 1e-9,
                                                     Provenance::Computed));
  e.expectations.push_back(relation_expectation(
      "KSwap over a 10x10 grid on [-1,1]^2",
      check(RelationId::KSwap, SamplePlan::grid({-1, 1, -1, 1, 10, 10}), 0.0, 0.8), Provenance::Published));
  return e;
}

ExampleEntry exponential_family() {
  constexpr double lambda = 0.3;
  ExampleEntry e;
  e.id = "ex_exponential_family";
  e.summary = "f = lambda e^z with lambda in (0, 1/e); default lambda = 0.3";
  e.f = parse(cat(format_number(lambda), "*exp(z)"));
  e.conjugation = AffineMap{2.0, 1.0};
  e.parameters = {{"lambda", lambda}};
  e.flags.notes = {"attracting basin: for lambda in (0, 1/e) the Fatou set is one completely invariant attracting basin",
                   "J(f) is the boundary of the basin and meets BU(f)"};
  e.expectations.push_back(
      {"17 seeds on [-2, 0] classify Bounded at the attracting fixed point q = lambda e^q",
       "17 Bounded, |cycle value - q| <= 1e-6", Provenance::Published,
       [lambda](const ExampleEntry& ex, const RunContext& ctx) {
         const double q = attracting_fixed_point(lambda);
         std::size_t good = 0;
         double worst = 0.0;
         for (int k = 0; k <= 16; ++k) {
           const Complex z0(-2.0 + 0.125 * k, 0.0);
           const OrbitRecord rec = iterate_orbit(ex.f, z0, ctx.cfg);
           if (classify(rec, ctx.cfg) != C::Bounded || rec.termination.kind != Termination::Kind::CycleFound) continue;
           const double err = std::abs(rec.values[rec.termination.entry] - Complex(q, 0.0));
           worst = std::max(worst, err);
           good += err <= 1e-6;
         }
         return ExpectationResult{good == 17, cat(good, " Bounded at q = ", q, ", worst error ", worst)};
       }});
  e.expectations.push_back(point_class(Map::F, 3.0, C::Escaping, Provenance::Computed,
                                       "beyond the repelling fixed point on the real axis"));
  e.expectations.push_back(point_class(Map::F, 0.0, C::Bounded, Provenance::Published, "in the attracting basin"));
  e.expectations.push_back(relation_expectation("ConjugacyTransport under phi(z) = 2z + 1 over 500 samples in [-2,2]^2",
                                                check(RelationId::ConjugacyTransport, SamplePlan::grid({-2, 2, -2, 2, 25, 20}), 0.01),
                                                Provenance::Published));
  return e;
}

ExampleEntry exp_translate() {
  ExampleEntry e;
  e.id = "ex_exp_translate";
  e.summary = "f = z + 1 + e^-z, g = f + 2 pi i: permutable, without finite asymptotic values";
  e.f = parse("z+1+exp(-z)");
  e.g = parse("z+1+exp(-z)+2*pi*i");
  e.cfg_override = drift_config();
  e.flags.permutable = HypothesisFlag{true, "stated: f o g = g o f for this pair"};
  e.flags.no_finite_asymptotic_values =
      HypothesisFlag{true, "stated for this pair when illustrating f(I(g)) c I(g)"};
  e.flags.notes = {"g^n = f^n + 2 n pi i", "K(f) n K(g) and BU(f) n BU(g) are both empty"};
  const SamplePlan square = SamplePlan::grid({-2, 2, -2, 2, 20, 10});
  e.expectations.push_back(permutability_expectation(square, true, 1e-9, Provenance::Published));
  e.expectations.push_back(relation_expectation("EscapingInvariance f(I(g)) c I(g) over 200 samples in [-2,2]^2",
                                                check(RelationId::EscapingInvariance, square), Provenance::Published));
  RelationCheck rev = check(RelationId::EscapingInvariance, square);
  rev.swap = true;
  e.expectations.push_back(relation_expectation("EscapingInvariance g(I(f)) c I(f) over 200 samples in [-2,2]^2", rev,
                                                Provenance::Published));
  RelationCheck uni = check(RelationId::EscapingUnion, square);
  uni.equality_mode = true;
  e.expectations.push_back(relation_expectation("EscapingUnion I(f o g) = I(f) u I(g) over 200 samples in [-2,2]^2",
                                                uni, Provenance::Published));
  e.expectations.push_back(relation_expectation("BungeeComposite BU(f o g) c BU(f) n BU(g) over 200 samples",
                                                check(RelationId::BungeeComposite, square), Provenance::Published));
  e.expectations.push_back(relation_expectation("KIntersectionIntoComposite K(f) n K(g) c K(f o g) over 200 samples",
                                                check(RelationId::KIntersectionIntoComposite, square), Provenance::Published));
  e.expectations.push_back(relation_expectation(
      "DisjointKandBU over a 100x100 grid on [-3,3]^2",
      check(RelationId::DisjointKandBU, SamplePlan::grid({-3, 3, -3, 3, 100, 100})), Provenance::Published));
  return e;
}

ExampleEntry halfplane_pair() {
  ExampleEntry e;
  e.id = "ex_halfplane_pair";
  e.summary = "f = e^(-z-1) + 1, g = e^(z-1) - 1: escaping sets in opposite half-plane strips";
  e.f = parse("exp(-z-1)+1");
  e.g = parse("exp(z-1)-1");
  e.parameters = {{"lambda", -1.0}, {"xi", 1.0}, {"mu", -1.0}, {"zeta", -1.0}};
  e.flags.no_finite_asymptotic_values =
      HypothesisFlag{false, "stated: 1 is an asymptotic value of f and -1 of g"};
  e.flags.notes = {
      "members of e^(-z+lambda) + xi (Re lambda < 0, Re xi >= 1) and e^(z+mu) + zeta (Re mu < 0, Re zeta <= -1)",
      "e^(z+1) - 1 is conjugate to e^z (Re mu = 1 lies outside the family) and its escaping set reaches Re z <= 0",
      "singular values lie in attracting basins; imaginary-axis orbits converge"};
  const SamplePlan square = SamplePlan::grid({-4, 4, -4, 4, 100, 100});
  e.expectations.push_back(joint_count_zero("I(f) n I(g) = {}: no seed Escaping under both over [-4,4]^2", square,
                                            C::Escaping, C::Escaping, Provenance::Published));
  e.expectations.push_back(joint_count_zero("BU(f) n BU(g) = {}: no seed Bungee under both over [-4,4]^2", square,
                                            C::Bungee, C::Bungee, Provenance::Published));
  e.expectations.push_back(relation_expectation("StripContainment of I(f) in the left strips over [-4,4]^2",
                                                check(RelationId::StripContainment, square, 0.01), Provenance::Published));
  RelationCheck right = check(RelationId::StripContainment, square, 0.01);
  right.strip = StripSide::Right;
  right.swap = true;
  e.expectations.push_back(relation_expectation("StripContainment of I(g) in the right strips over [-4,4]^2", right,
                                                Provenance::Published));
  e.expectations.push_back({"K(f) n K(g) is nonempty: imaginary-axis seeds in [-4i, 4i] Bounded under both",
                            "41 of 41", Provenance::Published, [](const ExampleEntry& ex, const RunContext& ctx) {
                              std::size_t both = 0;
                              for (int k = 0; k <= 40; ++k) {
                                const Complex z(0.0, -4.0 + 0.2 * k);
                                both += classify_point(ex.f, z, ctx.cfg) == C::Bounded &&
                                        classify_point(*ex.g, z, ctx.cfg) == C::Bounded;
                              }
                              return ExpectationResult{both == 41, cat(both, " of 41")};
                            }});
  e.expectations.push_back({"e^(z+1) - 1 escapes from 0, outside the right strips", "Escaping",
                            Provenance::Elementary, [](const ExampleEntry&, const RunContext& ctx) {
                              const C c = classify_point(parse("exp(z+1)-1"), 0.0, ctx.cfg);
                              const bool outside = !in_strip(0.0, StripSide::Right);
                              return ExpectationResult{c == C::Escaping && outside, std::string(to_string(c))};
                            }});
  return e;
}

ExampleEntry periodic_translate() {
  ExampleEntry e;
  e.id = "ex_periodic_translate";
  e.summary = "f = e^z, g = f^l + 2 pi i with l = 1: g^n = f^(l n) + 2 pi i, so I(f) = I(g)";
  e.f = parse("exp(z)");
  e.g = parse("exp(z)+2*pi*i");
  e.parameters = {{"l", 1.0}};
  e.flags.notes = {"any periodic f with g = f (or an iterate of f) translated by its period behaves the same way; "
                   "only l = 1 is checked",
                   "BU(f) = BU(g) and K(f) = K(g) as well"};
  const SamplePlan square = SamplePlan::grid({-2, 2, -2, 2, 10, 10});
  e.expectations.push_back(
      {"class_f(z) = class_g(z) for every resolved seed of a 10x10 grid on [-2,2]^2", "0 disagreements",
       Provenance::Published, [square](const ExampleEntry& ex, const RunContext& ctx) {
         std::size_t agree = 0, disagree = 0;
         for (Complex z : square.seeds()) {
           const C a = classify_point(ex.f, z, ctx.cfg);
           const C b = classify_point(*ex.g, z, ctx.cfg);
           if (a == C::Unresolved || b == C::Unresolved) continue;
           (a == b ? agree : disagree) += 1;
         }
         return ExpectationResult{disagree == 0 && agree > 0, cat(agree, " agree, ", disagree, " disagree")};
       }});
  e.expectations.push_back(
      permutability_expectation(SamplePlan::grid({-2, 2, -2, 2, 20, 10}), false, 1.0, Provenance::Computed));
  return e;
}

const std::vector<ExampleEntry>& registry() {
  static const std::vector<ExampleEntry> entries = [] {
    std::vector<ExampleEntry> v;
    v.push_back(rational_bungee());
    v.push_back(sine_pair());
    v.push_back(exponential_family());
    v.push_back(exp_translate());
    v.push_back(halfplane_pair());
    v.push_back(periodic_translate());
    return v;
  }();
  return entries;
}

nlohmann::json optional_flag(const std::optional<HypothesisFlag>& f) {
  return f ? to_json(*f) : nlohmann::json(nullptr);
}

std::optional<HypothesisFlag> optional_flag_from(const nlohmann::json& j) {
  if (j.is_null()) return std::nullopt;
  return hypothesis_from_json(j);
}

}  // namespace

nlohmann::json to_json(const ExampleFlags& flags) {
  return {{"permutable", optional_flag(flags.permutable)},
          {"no_finite_asymptotic_values", optional_flag(flags.no_finite_asymptotic_values)},
          {"oracle_not_entire", flags.oracle_not_entire},
          {"notes", flags.notes}};
}

ExampleFlags flags_from_json(const nlohmann::json& j) {
  ExampleFlags f;
  f.permutable = optional_flag_from(j.at("permutable"));
  f.no_finite_asymptotic_values = optional_flag_from(j.at("no_finite_asymptotic_values"));
  f.oracle_not_entire = j.at("oracle_not_entire").get<bool>();
  f.notes = j.at("notes").get<std::vector<std::string>>();
  return f;
}

std::vector<std::pair<std::string, std::string>> list_examples() {
  std::vector<std::pair<std::string, std::string>> out;
  for (const auto& e : registry()) out.emplace_back(e.id, e.summary);
  return out;
}

const ExampleEntry& get_example(std::string_view id) {
  for (const auto& e : registry())
    if (e.id == id) return e;
  throw std::out_of_range("unknown example id '" + std::string(id) + "'");
}

bool ExampleReport::all_passed() const {
  return std::all_of(outcomes.begin(), outcomes.end(), [](const auto& o) { return o.passed; });
}

ExampleReport run_example(std::string_view id, const RunOverrides& overrides) {
  const ExampleEntry& e = get_example(id);
  const RunContext ctx{overrides.cfg.value_or(e.config()), overrides.workers};
  ctx.cfg.validate();
  ExampleReport report{e.id, ctx.cfg, {}};
  for (const auto& x : e.expectations) {
    const ExpectationResult r = x.check(e, ctx);
    report.outcomes.push_back({x.description, x.expected, x.provenance, r.passed, r.measured});
  }
  return report;
}

nlohmann::json to_json(const ExampleEntry& e) {
  nlohmann::json expectations = nlohmann::json::array();
  for (const auto& x : e.expectations)
    expectations.push_back(
        {{"description", x.description}, {"expected", x.expected}, {"provenance", std::string(to_string(x.provenance))}});
  nlohmann::json j = {{"id", e.id},
                      {"summary", e.summary},
                      {"f", format(e.f)},
                      {"parameters", e.parameters},
                      {"flags", to_json(e.flags)},
                      {"expectations", std::move(expectations)}};
  j["g"] = e.g ? nlohmann::json(format(*e.g)) : nlohmann::json(nullptr);
  j["conjugation"] = e.conjugation
                         ? nlohmann::json{{"a", {e.conjugation->a.real(), e.conjugation->a.imag()}},
                                          {"b", {e.conjugation->b.real(), e.conjugation->b.imag()}}}
                         : nlohmann::json(nullptr);
  j["cfg_override"] = e.cfg_override ? to_json(*e.cfg_override) : nlohmann::json(nullptr);
  return j;
}

nlohmann::json to_json(const ExampleReport& r) {
  nlohmann::json outcomes = nlohmann::json::array();
  for (const auto& o : r.outcomes)
    outcomes.push_back({{"description", o.description},
                        {"expected", o.expected},
                        {"provenance", std::string(to_string(o.provenance))},
                        {"passed", o.passed},
                        {"measured", o.measured}});
  return {{"id", r.id}, {"config", to_json(r.config)}, {"all_passed", r.all_passed()}, {"outcomes", std::move(outcomes)}};
}

nlohmann::json export_registry() {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& e : registry()) out.push_back(to_json(e));
  return out;
}

}  // namespace bungee
