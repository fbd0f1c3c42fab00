#include "bungee/orbit.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace bungee {

void ClassifierConfig::validate() const {
  auto fail = [](const char* what) { throw std::invalid_argument(std::string("ClassifierConfig: ") + what); };
  if (max_iter < 1) fail("max_iter must be positive");
  if (!(r_bound > 0.0) || !std::isfinite(r_bound)) fail("r_bound must be a positive real");
  if (!(r_esc > r_bound) || !std::isfinite(r_esc)) fail("r_esc must exceed r_bound");
  if (!(overflow_guard > r_esc) || !std::isfinite(overflow_guard)) fail("overflow_guard must exceed r_esc");
  if (tail_window < 1 || tail_window >= max_iter) fail("tail_window must be in [1, max_iter)");
  if (min_alternations < 2) fail("min_alternations must be at least 2");
  if (!(peak_growth > 1.0) || !std::isfinite(peak_growth)) fail("peak_growth must exceed 1");
  if (!(cycle_tol > 0.0) || !std::isfinite(cycle_tol)) fail("cycle_tol must be positive");
}

std::string_view to_string(Classification c) {
  switch (c) {
    case Classification::Escaping: return "Escaping";
    case Classification::Bounded: return "Bounded";
    case Classification::Bungee: return "Bungee";
    case Classification::Unresolved: break;
  }
  return "Unresolved";
}

Classification classification_from_string(std::string_view name) {
  for (auto c : {Classification::Escaping, Classification::Bounded, Classification::Bungee,
                 Classification::Unresolved})
    if (to_string(c) == name) return c;
  throw std::invalid_argument("unknown classification '" + std::string(name) + "'");
}

std::string describe(const Termination& t) {
  switch (t.kind) {
    case Termination::Kind::Completed: return "Completed";
    case Termination::Kind::Overflowed: return "Overflowed(step=" + std::to_string(t.step) + ")";
    case Termination::Kind::Pole: return "Pole(step=" + std::to_string(t.step) + ")";
    case Termination::Kind::CycleFound: break;
  }
  return "CycleFound(period=" + std::to_string(t.period) + ",entry=" + std::to_string(t.entry) + ")";
}

bool relatively_close(Complex a, Complex b, double tol) {
  return std::abs(a - b) <= tol * std::max(std::abs(a), std::abs(b));
}

namespace {

// Given that values[n] matched values[n - lam], find the least period p <= lam
// that repeats over a full window ending at n, and the earliest index from
// which every later pair (j, j + p) matches.
Cycle settle_cycle(std::span<const Complex> values, std::size_t n, std::size_t lam, double tol) {
  std::size_t period = lam;
  for (std::size_t p = 1; p < lam; ++p) {
    if (n < 2 * p - 1) break;
    bool repeats = true;
    for (std::size_t k = 0; k < p && repeats; ++k)
      repeats = relatively_close(values[n - k], values[n - k - p], tol);
    if (repeats) {
      period = p;
      break;
    }
  }
  std::size_t entry = n - period;
  while (entry > 0 && relatively_close(values[entry - 1], values[entry - 1 + period], tol)) --entry;
  return {period, entry};
}

// Incremental form of Brent's search: the tortoise jumps to the hare whenever
// the distance between them reaches the current power of two. The previous
// value is also checked so fixed points are caught on the first repeat.
class CycleSearch {
 public:
  explicit CycleSearch(double tol) : tol_(tol) {}

  std::optional<Cycle> push(std::span<const Complex> values) {
    const std::size_t n = values.size() - 1;
    if (n == 0) return std::nullopt;
    if (relatively_close(values[n - 1], values[n], tol_)) return settle_cycle(values, n, 1, tol_);
    const std::size_t lam = n - tortoise_;
    if (relatively_close(values[tortoise_], values[n], tol_)) return settle_cycle(values, n, lam, tol_);
    if (lam == power_) {
      tortoise_ = n;
      power_ *= 2;
    }
    return std::nullopt;
  }

 private:
  double tol_;
  std::size_t tortoise_ = 0;
  std::size_t power_ = 1;
};

class PeakTracker {
 public:
  PeakTracker(const ClassifierConfig& cfg, double seed_modulus)
      : r_bound_(cfg.r_bound), r_esc_(cfg.r_esc), armed_(seed_modulus < cfg.r_bound) {}

  void observe(std::size_t index, double m, OrbitRecord& rec) {
    if (in_peak_) {
      if (m < r_bound_) {
        ++rec.returns;
        in_peak_ = false;
        armed_ = true;
      } else {
        rec.peaks.back().modulus = std::max(rec.peaks.back().modulus, m);
      }
      return;
    }
    if (m < r_bound_) armed_ = true;
    if (armed_ && m > r_esc_) {
      rec.peaks.push_back({index, m});
      in_peak_ = true;
      armed_ = false;
    }
  }

  // The orbit left the representable range at `index`.
  void overflow(std::size_t index, OrbitRecord& rec) {
    constexpr double inf = std::numeric_limits<double>::infinity();
    if (in_peak_)
      rec.peaks.back().modulus = inf;
    else if (armed_)
      rec.peaks.push_back({index, inf});
  }

 private:
  double r_bound_;
  double r_esc_;
  bool armed_;
  bool in_peak_ = false;
};

}  // namespace

std::optional<Cycle> detect_cycle(std::span<const Complex> values, double tol) {
  if (!(tol > 0.0)) throw std::invalid_argument("detect_cycle: tolerance must be positive");
  CycleSearch search(tol);
  for (std::size_t n = 1; n < values.size(); ++n)
    if (auto c = search.push(values.first(n + 1))) return c;
  return std::nullopt;
}

OrbitRecord iterate_orbit(const FunctionExpr& f, Complex z0, const ClassifierConfig& cfg) {
  cfg.validate();
  OrbitRecord rec;
  rec.seed = z0;
  rec.values.reserve(static_cast<std::size_t>(cfg.max_iter) + 1);
  rec.moduli.reserve(static_cast<std::size_t>(cfg.max_iter) + 1);

  const double m0 = std::abs(z0);
  PeakTracker peaks(cfg, m0);
  CycleSearch cycles(cfg.cycle_tol);

  if (!std::isfinite(m0) || m0 > cfg.overflow_guard) {
    rec.termination = {Termination::Kind::Overflowed, 0};
  } else {
    rec.values.push_back(z0);
    rec.moduli.push_back(m0);
    Complex z = z0;
    for (std::size_t n = 1; n <= static_cast<std::size_t>(cfg.max_iter); ++n) {
      const EvalResult r = evaluate(f, z);
      if (r.pole()) {
        rec.termination = {Termination::Kind::Pole, n};
        break;
      }
      const double m = r.finite() ? std::abs(r.value()) : std::numeric_limits<double>::infinity();
      if (!std::isfinite(m) || m > cfg.overflow_guard) {
        peaks.overflow(n, rec);
        rec.termination = {Termination::Kind::Overflowed, n};
        break;
      }
      z = r.value();
      rec.values.push_back(z);
      rec.moduli.push_back(m);
      peaks.observe(n, m, rec);
      if (auto c = cycles.push(rec.values)) {
        rec.termination = {Termination::Kind::CycleFound, n, c->period, c->entry};
        break;
      }
    }
  }

  if (!rec.moduli.empty()) {
    rec.global_max = *std::max_element(rec.moduli.begin(), rec.moduli.end());
    const std::size_t w = std::min<std::size_t>(static_cast<std::size_t>(cfg.tail_window), rec.moduli.size());
    const auto [lo, hi] = std::minmax_element(rec.moduli.end() - static_cast<std::ptrdiff_t>(w), rec.moduli.end());
    rec.tail_min = *lo;
    rec.tail_max = *hi;
  }
  return rec;
}

Classification classify(const OrbitRecord& rec, const ClassifierConfig& cfg) {
  using Kind = Termination::Kind;
  const Termination& t = rec.termination;
  const auto returns = rec.returns;
  const auto min_alt = static_cast<std::size_t>(cfg.min_alternations);

  if (t.kind == Kind::CycleFound) {
    const auto first = rec.moduli.begin() + static_cast<std::ptrdiff_t>(t.entry);
    const auto last = first + static_cast<std::ptrdiff_t>(t.period);
    if (std::all_of(first, last, [&](double m) { return m <= cfg.r_bound; })) return Classification::Bounded;
  }
  if (t.kind == Kind::Completed && rec.global_max <= cfg.r_bound) return Classification::Bounded;

  if (returns >= min_alt) {
    bool escalating = true;
    for (std::size_t j = 1; j < rec.peaks.size() && escalating; ++j)
      escalating = rec.peaks[j].modulus >= cfg.peak_growth * rec.peaks[j - 1].modulus;
    if (escalating) return Classification::Bungee;
  }

  if (t.kind == Kind::Overflowed && returns < min_alt) return Classification::Escaping;
  if (t.kind == Kind::Completed && rec.tail_min > cfg.r_esc && rec.moduli.back() == rec.global_max)
    return Classification::Escaping;

  return Classification::Unresolved;
}

Classification classify_point(const FunctionExpr& f, Complex z0, const ClassifierConfig& cfg) {
  return classify(iterate_orbit(f, z0, cfg), cfg);
}

}  // namespace bungee

namespace bungee {

nlohmann::json to_json(const ClassifierConfig& cfg) {
  return {{"max_iter", cfg.max_iter},
          {"r_bound", cfg.r_bound},
          {"r_esc", cfg.r_esc},
          {"tail_window", cfg.tail_window},
          {"min_alternations", cfg.min_alternations},
          {"peak_growth", cfg.peak_growth},
          {"cycle_tol", cfg.cycle_tol},
          {"overflow_guard", cfg.overflow_guard}};
}

ClassifierConfig config_from_json(const nlohmann::json& j, ClassifierConfig base) {
  if (!j.is_object()) throw std::invalid_argument("classifier config must be a JSON object");
  for (const auto& [key, value] : j.items()) {
    try {
      if (key == "max_iter") base.max_iter = value.get<int>();
      else if (key == "r_bound") base.r_bound = value.get<double>();
      else if (key == "r_esc") base.r_esc = value.get<double>();
      else if (key == "tail_window") base.tail_window = value.get<int>();
      else if (key == "min_alternations") base.min_alternations = value.get<int>();
      else if (key == "peak_growth") base.peak_growth = value.get<double>();
      else if (key == "cycle_tol") base.cycle_tol = value.get<double>();
      else if (key == "overflow_guard") base.overflow_guard = value.get<double>();
      else throw std::invalid_argument("unknown classifier config field '" + key + "'");
    } catch (const nlohmann::json::exception&) {
      throw std::invalid_argument("classifier config field '" + key + "' has the wrong type");
    }
  }
  base.validate();
  return base;
}

std::string orbit_csv(const OrbitRecord& rec) {
  std::string out = "n,re,im,modulus\n";
  for (std::size_t n = 0; n < rec.values.size(); ++n) {
    out += std::to_string(n);
    out += ',';
    out += format_number(rec.values[n].real());
    out += ',';
    out += format_number(rec.values[n].imag());
    out += ',';
    out += format_number(rec.moduli[n]);
    out += '\n';
  }
  out += "# termination=" + describe(rec.termination) + "\n";
  return out;
}

}  // namespace bungee
