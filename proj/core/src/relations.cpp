#include "bungee/relations.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "bungee/parallel.hpp"

namespace bungee {

SamplePlan SamplePlan::list(std::vector<Complex> seeds) {
  if (seeds.empty()) throw std::invalid_argument("SamplePlan: at least one seed is required");
  for (Complex z : seeds)
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
      throw std::invalid_argument("SamplePlan: seeds must be finite");
  SamplePlan p;
  p.seeds_ = std::move(seeds);
  return p;
}

SamplePlan SamplePlan::grid(GridSpec spec, std::size_t stride) {
  spec.validate();
  if (stride < 1) throw std::invalid_argument("SamplePlan: stride must be positive");
  SamplePlan p;
  for (std::size_t j = 0; j < spec.ny; j += stride)
    for (std::size_t i = 0; i < spec.nx; i += stride) p.seeds_.push_back(spec.cell_center(i, j));
  p.grid_ = spec;
  p.stride_ = stride;
  return p;
}

nlohmann::json SamplePlan::to_json() const {
  if (grid_) return {{"kind", "grid"}, {"grid", bungee::to_json(*grid_)}, {"stride", stride_}, {"sample_count", sample_count()}};
  nlohmann::json seeds = nlohmann::json::array();
  for (Complex z : seeds_) seeds.push_back({z.real(), z.imag()});
  return {{"kind", "list"}, {"seeds", std::move(seeds)}, {"sample_count", sample_count()}};
}

namespace {

using R = RelationId;

const std::vector<RelationInfo> kRelations = {
    {R::AffineBungeeEqual, "AffineBungeeEqual", CheckKind::Equality, false, true, true, false,
     "BU(f) = BU(g) for g = a f + b"},
    {R::BuSwap, "BuSwap", CheckKind::Equivalence, true, false, false, false,
     "z in BU(f o g) iff g(z) in BU(g o f)"},
    {R::KIntersectionIntoComposite, "KIntersectionIntoComposite", CheckKind::Inclusion, true, false, true, false,
     "K(f) n K(g) c K(f o g)"},
    {R::EscapingInvariance, "EscapingInvariance", CheckKind::Inclusion, true, false, true, true,
     "f(I(g)) c I(g)"},
    {R::EscapingUnion, "EscapingUnion", CheckKind::Inclusion, true, false, true, true,
     "I(f) u I(g) c I(f o g)"},
    {R::BungeeComposite, "BungeeComposite", CheckKind::Inclusion, true, false, true, true,
     "BU(f o g) c BU(f) n BU(g)"},
    {R::KSwap, "KSwap", CheckKind::Equivalence, true, false, false, false,
     "z in K(f o g) iff g(z) in K(g o f)"},
    {R::ConjugacyTransport, "ConjugacyTransport", CheckKind::Equality, false, true, false, false,
     "class_f(z) = class_h(phi(z)) for h = phi o f o phi^-1"},
    {R::DisjointKandBU, "DisjointKandBU", CheckKind::Emptiness, true, false, false, false,
     "K(f) n K(g) = {} and BU(f) n BU(g) = {}"},
    {R::StripContainment, "StripContainment", CheckKind::Inclusion, false, false, false, false,
     "I(f) c half-plane strip family"},
};

using SeedMap = std::function<std::optional<Complex>(Complex)>;

struct Side {
  std::string name;
  FunctionExpr fn;
  SeedMap seed;  // empty: the sample itself
};

SeedMap image_under(FunctionExpr h) {
  return [h = std::move(h)](Complex z) -> std::optional<Complex> {
    const EvalResult r = evaluate(h, z);
    if (!r.finite()) return std::nullopt;
    return r.value();
  };
}

using C = Classification;
using Verdicts = std::vector<Classification>;

struct Plan {
  std::vector<Side> sides;
  std::function<bool(Complex, const Verdicts&)> violated;
};

Plan build_plan(RelationId rel, const RelationInputs& in) {
  const RelationInfo& info = relation_info(rel);
  if (info.needs_g && !in.g)
    throw std::invalid_argument(std::string(info.name) + " requires a second function g");
  if (info.needs_affine && !in.affine)
    throw std::invalid_argument(std::string(info.name) + " requires affine parameters a, b");
  if (in.affine && in.affine->a == Complex(0.0, 0.0))
    throw std::invalid_argument("affine coefficient a must be nonzero");

  const FunctionExpr& f = in.f;
  switch (rel) {
    case R::AffineBungeeEqual: {
      const FunctionExpr g = affine_post(f, in.affine->a, in.affine->b);
      return {{{"f@z", f, {}}, {"g@z", g, {}}},
              [](Complex, const Verdicts& v) { return (v[0] == C::Bungee) != (v[1] == C::Bungee); }};
    }
    case R::BuSwap:
      return {{{"fog@z", compose(f, *in.g), {}}, {"gof@g(z)", compose(*in.g, f), image_under(*in.g)}},
              [](Complex, const Verdicts& v) { return (v[0] == C::Bungee) != (v[1] == C::Bungee); }};
    case R::KSwap:
      return {{{"fog@z", compose(f, *in.g), {}}, {"gof@g(z)", compose(*in.g, f), image_under(*in.g)}},
              [](Complex, const Verdicts& v) { return (v[0] == C::Bounded) != (v[1] == C::Bounded); }};
    case R::KIntersectionIntoComposite:
      return {{{"f@z", f, {}}, {"g@z", *in.g, {}}, {"fog@z", compose(f, *in.g), {}}},
              [](Complex, const Verdicts& v) {
                return v[0] == C::Bounded && v[1] == C::Bounded && v[2] != C::Bounded;
              }};
    case R::EscapingInvariance:
      return {{{"g@z", *in.g, {}}, {"g@f(z)", *in.g, image_under(f)}},
              [](Complex, const Verdicts& v) { return v[0] == C::Escaping && v[1] != C::Escaping; }};
    case R::EscapingUnion: {
      const bool equality = in.equality_mode;
      return {{{"f@z", f, {}}, {"g@z", *in.g, {}}, {"fog@z", compose(f, *in.g), {}}},
              [equality](Complex, const Verdicts& v) {
                const bool in_union = v[0] == C::Escaping || v[1] == C::Escaping;
                const bool in_composite = v[2] == C::Escaping;
                return (in_union && !in_composite) || (equality && in_composite && !in_union);
              }};
    }
    case R::BungeeComposite:
      return {{{"f@z", f, {}}, {"g@z", *in.g, {}}, {"fog@z", compose(f, *in.g), {}}},
              [](Complex, const Verdicts& v) {
                return v[2] == C::Bungee && !(v[0] == C::Bungee && v[1] == C::Bungee);
              }};
    case R::ConjugacyTransport: {
      const AffineMap phi = *in.affine;
      const FunctionExpr h = conjugate(f, phi.a, phi.b);
      SeedMap to_phi = [phi](Complex z) -> std::optional<Complex> {
        const Complex w = phi(z);
        if (!std::isfinite(w.real()) || !std::isfinite(w.imag())) return std::nullopt;
        return w;
      };
      return {{{"f@z", f, {}}, {"h@phi(z)", h, to_phi}},
              [](Complex, const Verdicts& v) { return v[0] != v[1]; }};
    }
    case R::DisjointKandBU:
      return {{{"f@z", f, {}}, {"g@z", *in.g, {}}},
              [](Complex, const Verdicts& v) {
                return (v[0] == C::Bounded && v[1] == C::Bounded) || (v[0] == C::Bungee && v[1] == C::Bungee);
              }};
    case R::StripContainment: {
      const StripSide side = in.strip;
      return {{{"f@z", f, {}}}, [side](Complex z, const Verdicts& v) {
                return v[0] == C::Escaping && !in_strip(z, side);
              }};
    }
  }
  throw std::invalid_argument("unknown relation");
}

double nan() { return std::numeric_limits<double>::quiet_NaN(); }

nlohmann::json complex_json(Complex z) { return nlohmann::json::array({z.real(), z.imag()}); }

}  // namespace

const std::vector<RelationInfo>& all_relations() { return kRelations; }

const RelationInfo& relation_info(RelationId id) {
  for (const auto& r : kRelations)
    if (r.id == id) return r;
  throw std::invalid_argument("unknown relation id");
}

RelationId relation_from_string(std::string_view name) {
  for (const auto& r : kRelations)
    if (r.name == name) return r.id;
  throw std::invalid_argument("unknown relation '" + std::string(name) + "'");
}

bool in_strip(Complex z, StripSide side) {
  const double x = z.real();
  const double t = 2.0 * z.imag() / std::numbers::pi;
  // Strip k is the open interval (k, k + 1/2) in u.
  const double u = side == StripSide::Left ? (t + 3.0) / 4.0 : (t + 1.0) / 4.0;
  const double frac = u - std::floor(u);
  const bool in_band = frac > 0.0 && frac < 0.5;
  return in_band && (side == StripSide::Left ? x < 0.0 : x > 0.0);
}

PermutabilityResult check_permutable(const FunctionExpr& f, const FunctionExpr& g, const SamplePlan& plan,
                                     double tol, unsigned workers) {
  if (!(tol > 0.0)) throw std::invalid_argument("check_permutable: tolerance must be positive");
  const auto& seeds = plan.seeds();
  std::vector<double> dev(seeds.size(), nan());
  parallel_for(seeds.size(), workers, [&](std::size_t k) {
    const EvalResult gz = evaluate(g, seeds[k]);
    const EvalResult fz = evaluate(f, seeds[k]);
    if (!gz.finite() || !fz.finite()) return;
    const EvalResult fg = evaluate(f, gz.value());
    const EvalResult gf = evaluate(g, fz.value());
    if (!fg.finite() || !gf.finite()) return;
    dev[k] = std::abs(fg.value() - gf.value()) / (1.0 + std::abs(fg.value()));
  });
  PermutabilityResult out;
  for (double d : dev) {
    if (std::isnan(d)) {
      ++out.skipped;
      continue;
    }
    ++out.evaluated;
    out.max_dev = std::max(out.max_dev, d);
  }
  if (out.evaluated == 0) throw std::runtime_error("no evaluable samples");
  out.permutable = out.max_dev <= tol;
  return out;
}

RelationReport verify_relation(RelationId rel, const RelationInputs& in, const SamplePlan& plan,
                               const ClassifierConfig& cfg, const VerifyOptions& opts) {
  cfg.validate();
  const RelationInfo& info = relation_info(rel);
  const Plan p = build_plan(rel, in);
  const auto& seeds = plan.seeds();
  const std::size_t nsides = p.sides.size();

  RelationReport report;
  report.relation = rel;
  report.sample_count = seeds.size();
  report.config = cfg;
  report.plan = plan.to_json();
  for (const auto& s : p.sides) report.sides.push_back(s.name);
  report.tallies.assign(nsides, {0, 0, 0, 0});
  if (info.assumes_no_finite_asymptotic_values)
    report.no_finite_asymptotic_values =
        in.no_finite_asymptotic_values.value_or(HypothesisFlag{false, "not supplied"});

  if (info.assumes_permutable) {
    const FunctionExpr g = rel == R::AffineBungeeEqual ? affine_post(in.f, in.affine->a, in.affine->b) : *in.g;
    try {
      report.permutability = check_permutable(in.f, g, plan, opts.permutability_tol, opts.workers);
    } catch (const std::runtime_error&) {
      report.permutability = PermutabilityResult{nan(), false, 0, seeds.size()};
    }
  }

  std::vector<Verdicts> verdicts(seeds.size());
  parallel_for(seeds.size(), opts.workers, [&](std::size_t k) {
    Verdicts v(nsides, C::Unresolved);
    for (std::size_t s = 0; s < nsides; ++s) {
      const Side& side = p.sides[s];
      const std::optional<Complex> start = side.seed ? side.seed(seeds[k]) : std::optional<Complex>(seeds[k]);
      if (start) v[s] = classify_point(side.fn, *start, cfg);
    }
    verdicts[k] = std::move(v);
  });

  for (std::size_t k = 0; k < seeds.size(); ++k) {
    const Verdicts& v = verdicts[k];
    for (std::size_t s = 0; s < nsides; ++s) ++report.tallies[s][static_cast<std::size_t>(v[s])];
    if (std::any_of(v.begin(), v.end(), [](C c) { return c == C::Unresolved; })) {
      ++report.unresolved_count;
      continue;
    }
    ++report.evaluated_count;
    if (p.violated(seeds[k], v)) {
      Violation viol{seeds[k], {}};
      for (std::size_t s = 0; s < nsides; ++s) viol.verdicts.push_back({p.sides[s].name, v[s]});
      report.violations.push_back(std::move(viol));
    }
  }
  if (report.evaluated_count == 0)
    throw std::runtime_error(std::string(info.name) + ": no evaluable samples (every seed was unresolved)");
  report.violation_rate =
      static_cast<double>(report.violations.size()) / static_cast<double>(report.evaluated_count);
  return report;
}

nlohmann::json to_json(const PermutabilityResult& p) {
  nlohmann::json j = {{"checked", true}, {"permutable", p.permutable}, {"evaluated", p.evaluated},
                      {"skipped", p.skipped}};
  j["max_dev"] = std::isnan(p.max_dev) ? nlohmann::json(nullptr) : nlohmann::json(p.max_dev);
  return j;
}

nlohmann::json to_json(const HypothesisFlag& h) { return {{"value", h.value}, {"provenance", h.provenance}}; }

HypothesisFlag hypothesis_from_json(const nlohmann::json& j) {
  return {j.at("value").get<bool>(), j.at("provenance").get<std::string>()};
}

nlohmann::json to_json(const RelationReport& r) {
  const RelationInfo& info = relation_info(r.relation);
  nlohmann::json violations = nlohmann::json::array();
  for (const auto& v : r.violations) {
    nlohmann::json verdicts = nlohmann::json::object();
    for (const auto& sv : v.verdicts) verdicts[sv.side] = std::string(to_string(sv.verdict));
    violations.push_back({{"seed", complex_json(v.seed)}, {"verdicts", std::move(verdicts)}});
  }
  nlohmann::json tallies = nlohmann::json::object();
  for (std::size_t s = 0; s < r.sides.size(); ++s) {
    nlohmann::json t = nlohmann::json::object();
    for (std::size_t c = 0; c < 4; ++c) t[std::string(to_string(static_cast<C>(c)))] = r.tallies[s][c];
    tallies[r.sides[s]] = std::move(t);
  }
  nlohmann::json j = {
      {"relation", std::string(info.name)},
      {"statement", std::string(info.statement)},
      {"sample_count", r.sample_count},
      {"evaluated_count", r.evaluated_count},
      {"unresolved_count", r.unresolved_count},
      {"violation_rate", r.violation_rate},
      {"violations", std::move(violations)},
      {"tallies", std::move(tallies)},
      {"config", to_json(r.config)},
      {"plan", r.plan},
  };
  j["permutability"] = r.permutability ? to_json(*r.permutability) : nlohmann::json(nullptr);
  j["hypotheses"] = nlohmann::json::object();
  if (r.no_finite_asymptotic_values)
    j["hypotheses"]["no_finite_asymptotic_values"] = to_json(*r.no_finite_asymptotic_values);
  return j;
}

}  // namespace bungee
