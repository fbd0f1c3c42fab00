#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "bungee/orbit.hpp"

using namespace bungee;
using Kind = Termination::Kind;

namespace {

// Smaller real root of lambda e^x = x.
double bisect_fixed_point(double lambda) {
  double lo = 0.0, hi = 1.0;
  while (hi - lo > 1e-15) {
    const double mid = 0.5 * (lo + hi);
    if (lambda * std::exp(mid) > mid)
      lo = mid;
    else
      hi = mid;
  }
  return lo;
}

ClassifierConfig drift() {
  ClassifierConfig c;
  c.r_bound = 10.0;
  c.r_esc = 100.0;
  c.max_iter = 500;
  return c;
}

}  // namespace

TEST_CASE("defaults validate and reject bad combinations") {
  ClassifierConfig c;
  CHECK_NOTHROW(c.validate());
  CHECK(c.min_alternations == 2);
  auto bad = [](auto mutate) {
    ClassifierConfig x;
    mutate(x);
    return x;
  };
  CHECK_THROWS_AS(bad([](auto& x) { x.max_iter = 0; }).validate(), std::invalid_argument);
  CHECK_THROWS_AS(bad([](auto& x) { x.r_bound = -1; }).validate(), std::invalid_argument);
  CHECK_THROWS_AS(bad([](auto& x) { x.r_esc = x.r_bound; }).validate(), std::invalid_argument);
  CHECK_THROWS_AS(bad([](auto& x) { x.overflow_guard = x.r_esc; }).validate(), std::invalid_argument);
  CHECK_THROWS_AS(bad([](auto& x) { x.tail_window = x.max_iter; }).validate(), std::invalid_argument);
  CHECK_THROWS_AS(bad([](auto& x) { x.min_alternations = 1; }).validate(), std::invalid_argument);
  CHECK_THROWS_AS(bad([](auto& x) { x.peak_growth = 1.0; }).validate(), std::invalid_argument);
  CHECK_THROWS_AS(bad([](auto& x) { x.cycle_tol = 0.0; }).validate(), std::invalid_argument);
  CHECK_THROWS_AS(iterate_orbit(parse("z"), 0.0, bad([](auto& x) { x.max_iter = 0; })), std::invalid_argument);
}

TEST_CASE("config JSON round trip and merge") {
  ClassifierConfig c;
  c.max_iter = 2000;
  c.r_esc = 1e3;
  c.r_bound = 100;
  CHECK(config_from_json(to_json(c)) == c);
  const ClassifierConfig merged = config_from_json(nlohmann::json{{"max_iter", 300}}, c);
  CHECK(merged.max_iter == 300);
  CHECK(merged.r_esc == 1e3);
  CHECK_THROWS_AS(config_from_json(nlohmann::json{{"bogus", 1}}), std::invalid_argument);
  CHECK_THROWS_AS(config_from_json(nlohmann::json{{"max_iter", "many"}}), std::invalid_argument);
  CHECK_THROWS_AS(config_from_json(nlohmann::json{{"r_esc", 1.0}}), std::invalid_argument);
  CHECK_THROWS_AS(config_from_json(nlohmann::json::array()), std::invalid_argument);
}

TEST_CASE("detect_cycle on hand-built sequences") {
  auto seq = [](std::initializer_list<double> xs) {
    std::vector<Complex> v;
    for (double x : xs) v.emplace_back(x, 0.0);
    return v;
  };
  CHECK(detect_cycle(seq({5, 5}), 1e-12) == Cycle{1, 0});
  CHECK(detect_cycle(seq({1, 2, 1, 2, 1}), 1e-12) == Cycle{2, 0});
  CHECK(detect_cycle(seq({9, 1, 2, 3, 1, 2, 3, 1, 2, 3}), 1e-12) == Cycle{3, 1});
  CHECK_FALSE(detect_cycle(seq({1, 2, 3, 4, 5, 6, 7, 8}), 1e-12));
  CHECK_FALSE(detect_cycle(seq({}), 1e-12));
  // Relative tolerance: 1e6 and 1e6 + 1e-7 match, 1e-6 and 2e-6 do not.
  CHECK(detect_cycle(seq({3, 1e6, 1e6 + 1e-7}), 1e-12) == Cycle{1, 1});
  CHECK_FALSE(detect_cycle(seq({1e-6, 2e-6}), 1e-12));
  CHECK_THROWS_AS(detect_cycle(seq({1, 1}), 0.0), std::invalid_argument);
}

TEST_CASE("property: detect_cycle recovers (period, entry) of eventually periodic sequences") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t mu = rng() % 40, lam = 1 + rng() % 40;
    std::vector<Complex> v;
    for (std::size_t k = 0; k < mu; ++k) v.emplace_back(1000.0 + static_cast<double>(k), 0.0);
    while (v.size() < 4 * (mu + lam) + 4) v.emplace_back(static_cast<double>((v.size() - mu) % lam), 1.0);
    const auto c = detect_cycle(v, 1e-12);
    INFO("mu=" << mu << " lambda=" << lam);
    REQUIRE(c);
    CHECK(c->period == lam);
    CHECK(c->entry == mu);
  }
}

TEST_CASE("squaring: overflow step matches the hand-iterated recurrence") {
  const ClassifierConfig cfg;
  // |z_n| = 2^(2^n); first n with 2^(2^n) > guard.
  double m = 2.0;
  std::size_t n = 0;
  while (m <= cfg.overflow_guard) {
    m *= m;
    ++n;
  }
  const OrbitRecord rec = iterate_orbit(parse("pow(z,2)"), 2.0, cfg);
  CHECK(rec.termination.kind == Kind::Overflowed);
  CHECK(rec.termination.step == n);
  CHECK(rec.last_index() == n - 1);
  for (std::size_t k = 0; k < rec.moduli.size(); ++k) CHECK(rec.moduli[k] == std::exp2(std::exp2(static_cast<double>(k))));
  CHECK(classify(rec, cfg) == Classification::Escaping);

  const OrbitRecord inner = iterate_orbit(parse("pow(z,2)"), 0.5, cfg);
  CHECK(inner.termination.kind == Kind::CycleFound);
  CHECK(inner.termination.period == 1);
  CHECK(classify(inner, cfg) == Classification::Bounded);
}

TEST_CASE("1/z^2 alternates and is Bungee off the unit circle") {
  const ClassifierConfig cfg;
  const FunctionExpr f = parse("1/pow(z,2)");
  const OrbitRecord rec = iterate_orbit(f, 0.5, cfg);
  // |z_n| = 2^(-(-2)^n)
  for (std::size_t k = 0; k < rec.moduli.size(); ++k)
    CHECK(rec.moduli[k] == doctest::Approx(std::exp2(-std::pow(-2.0, static_cast<double>(k)))).epsilon(1e-12));
  CHECK(describe(rec.termination) == "Overflowed(step=9)");
  REQUIRE(rec.peaks.size() == 3);
  CHECK(rec.peaks[0].index == 5);
  CHECK(rec.peaks[1].index == 7);
  CHECK(std::isinf(rec.peaks[2].modulus));
  CHECK(rec.returns == 2);
  CHECK(classify(rec, cfg) == Classification::Bungee);
  CHECK(classify_point(f, 2.0, cfg) == Classification::Bungee);
  CHECK(classify_point(f, 1.0, cfg) == Classification::Bounded);
  CHECK(classify_point(f, Complex(0.0, 1.0), cfg) == Classification::Bounded);  // i -> -1 -> 1

  // With three required returns this orbit leaves the double range first.
  ClassifierConfig strict = cfg;
  strict.min_alternations = 3;
  CHECK(classify(rec, strict) == Classification::Escaping);
}

TEST_CASE("attracting fixed point of 0.3 e^z") {
  const ClassifierConfig cfg;
  const double q = bisect_fixed_point(0.3);
  CHECK(q == doctest::Approx(0.48940222).epsilon(1e-7));
  for (double x : {-2.0, -1.0, 0.0, 0.5, 1.0}) {
    const OrbitRecord rec = iterate_orbit(parse("0.3*exp(z)"), x, cfg);
    REQUIRE(rec.termination.kind == Kind::CycleFound);
    CHECK(rec.termination.period == 1);
    CHECK(std::abs(rec.values.back() - q) < 1e-9);
    CHECK(classify(rec, cfg) == Classification::Bounded);
  }
  CHECK(classify_point(parse("0.3*exp(z)"), 3.0, cfg) == Classification::Escaping);
}

TEST_CASE("period two, rotations, and large cycles") {
  const ClassifierConfig cfg;
  const OrbitRecord two = iterate_orbit(parse("1/z"), 2.0, cfg);
  CHECK(describe(two.termination) == "CycleFound(period=2,entry=0)");
  CHECK(classify(two, cfg) == Classification::Bounded);

  // Irrational rotation never repeats: Bounded through the Completed branch.
  const OrbitRecord rot = iterate_orbit(parse("z*(cos(1)+i*sin(1))"), 1.0, cfg);
  CHECK(rot.termination.kind == Kind::Completed);
  CHECK(rot.last_index() == static_cast<std::size_t>(cfg.max_iter));
  CHECK(classify(rot, cfg) == Classification::Bounded);

  // A cycle outside r_bound is neither Bounded nor anything else.
  const OrbitRecord big = iterate_orbit(parse("-z"), 5000.0, cfg);
  CHECK(big.termination.kind == Kind::CycleFound);
  CHECK(classify(big, cfg) == Classification::Unresolved);
}

TEST_CASE("linear drift: Escaping only when the tail clears r_esc") {
  const OrbitRecord rec = iterate_orbit(parse("z+1"), 0.0, drift());
  CHECK(rec.termination.kind == Kind::Completed);
  CHECK(rec.tail_min == 451.0);
  CHECK(rec.global_max == 500.0);
  CHECK(classify(rec, drift()) == Classification::Escaping);
  // Under the defaults 1000 steps end exactly at r_bound, which still counts
  // as Bounded; 1500 steps overshoot r_bound without clearing r_esc.
  ClassifierConfig longer;
  CHECK(classify_point(parse("z+1"), 0.0, longer) == Classification::Bounded);
  longer.max_iter = 1500;
  CHECK(classify_point(parse("z+1"), 0.0, longer) == Classification::Unresolved);
}

TEST_CASE("poles and seeds outside the guard") {
  const ClassifierConfig cfg;
  const OrbitRecord pole = iterate_orbit(parse("1/(z-1)"), 1.0, cfg);
  CHECK(describe(pole.termination) == "Pole(step=1)");
  CHECK(classify(pole, cfg) == Classification::Unresolved);

  const OrbitRecord huge = iterate_orbit(parse("z"), 1e200, cfg);
  CHECK(describe(huge.termination) == "Overflowed(step=0)");
  CHECK(huge.values.empty());
  CHECK(classify(huge, cfg) == Classification::Escaping);

  // exp guard counts as overflow.
  CHECK(iterate_orbit(parse("exp(z)"), 800.0, cfg).termination.kind == Kind::Overflowed);
}

TEST_CASE("property: verdicts are sound with respect to the record") {
  const ClassifierConfig cfg;
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  for (const char* text : {"exp(z)", "1/pow(z,2)", "z+sin(z)", "0.3*exp(z)", "z+1+exp(-z)", "sin(z)", "pow(z,2)-1"}) {
    const FunctionExpr f = parse(text);
    for (int k = 0; k < 60; ++k) {
      const OrbitRecord rec = iterate_orbit(f, Complex(u(rng), u(rng)), cfg);
      const Classification c = classify(rec, cfg);
      INFO(text << " seed " << rec.seed);
      CHECK(rec.values.size() == rec.moduli.size());
      CHECK(rec.values.size() <= static_cast<std::size_t>(cfg.max_iter) + 1);
      if (c == Classification::Bounded && rec.termination.kind == Kind::Completed)
        for (double m : rec.moduli) CHECK(m <= cfg.r_bound);
      if (c == Classification::Bungee) {
        CHECK(rec.returns >= static_cast<std::size_t>(cfg.min_alternations));
        for (std::size_t j = 1; j < rec.peaks.size(); ++j)
          CHECK(rec.peaks[j].modulus >= cfg.peak_growth * rec.peaks[j - 1].modulus);
      }
      if (c == Classification::Escaping && rec.termination.kind == Kind::Completed) {
        CHECK(rec.tail_min > cfg.r_esc);
        CHECK(rec.moduli.back() == rec.global_max);
      }
      CHECK(rec == iterate_orbit(f, rec.seed, cfg));
    }
  }
}

TEST_CASE("classification names") {
  for (auto c : {Classification::Escaping, Classification::Bounded, Classification::Bungee, Classification::Unresolved})
    CHECK(classification_from_string(to_string(c)) == c);
  CHECK_THROWS_AS(classification_from_string("Bouncy"), std::invalid_argument);
}

TEST_CASE("orbit CSV") {
  ClassifierConfig cfg;
  const std::string csv = orbit_csv(iterate_orbit(parse("1/z"), 2.0, cfg));
  CHECK(csv == "n,re,im,modulus\n0,2,0,2\n1,0.5,0,0.5\n2,2,0,2\n3,0.5,0,0.5\n# termination=CycleFound(period=2,entry=0)\n");
}

TEST_CASE("property: longer runs keep cycle verdicts") {
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  for (const char* text : {"0.3*exp(z)", "z+sin(z)", "1/pow(z,2)", "pow(z,2)-1"}) {
    const FunctionExpr f = parse(text);
    for (int k = 0; k < 40; ++k) {
      const Complex z0(u(rng), u(rng));
      ClassifierConfig cfg;
      cfg.max_iter = 200;
      const OrbitRecord rec = iterate_orbit(f, z0, cfg);
      if (rec.termination.kind != Kind::CycleFound || classify(rec, cfg) != Classification::Bounded) continue;
      for (int n : {400, 1000, 5000}) {
        cfg.max_iter = n;
        CHECK(classify_point(f, z0, cfg) == Classification::Bounded);
      }
    }
  }
}

TEST_CASE("slow drift is not Escaping at the defaults") {
  const FunctionExpr g = parse("z+sin(z)+2*pi");
  CHECK(classify_point(g, 0.0, ClassifierConfig{}) != Classification::Escaping);
  ClassifierConfig low;
  low.r_bound = 100;
  low.r_esc = 1e3;
  low.max_iter = 2000;
  CHECK(classify_point(g, 0.0, low) == Classification::Escaping);
}
