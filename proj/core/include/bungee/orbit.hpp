#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "bungee/expr.hpp"

namespace bungee {

/// Thresholds that turn a finite orbit prefix into a verdict.
struct ClassifierConfig {
  int max_iter = 1000;
  double r_bound = 1e3;    // "bounded" radius
  double r_esc = 1e6;      // escape radius, > r_bound
  int tail_window = 50;    // W, < max_iter
  int min_alternations = 2;  // A, >= 2
  double peak_growth = 2.0;  // gamma, > 1
  double cycle_tol = 1e-12;  // relative
  double overflow_guard = 1e150;

  /// Throws std::invalid_argument naming the first violated constraint.
  void validate() const;

  friend bool operator==(const ClassifierConfig&, const ClassifierConfig&) = default;
};

enum class Classification { Escaping = 0, Bounded = 1, Bungee = 2, Unresolved = 3 };

std::string_view to_string(Classification c);
/// Accepts the names produced by to_string(); throws std::invalid_argument.
Classification classification_from_string(std::string_view name);

struct Peak {
  std::size_t index;  // step at which r_esc was first exceeded
  double modulus;     // largest modulus before the next return; +inf on overflow

  friend bool operator==(const Peak&, const Peak&) = default;
};

struct Termination {
  enum class Kind { Completed, Overflowed, CycleFound, Pole };
  Kind kind = Kind::Completed;
  std::size_t step = 0;    // Overflowed / Pole: index of the iterate that failed
  std::size_t period = 0;  // CycleFound
  std::size_t entry = 0;   // CycleFound

  friend bool operator==(const Termination&, const Termination&) = default;
};

/// e.g. "Completed", "Overflowed(step=9)", "CycleFound(period=1,entry=2)".
std::string describe(const Termination& t);

struct OrbitRecord {
  Complex seed;
  std::vector<Complex> values;  // z_0 .. z_T
  std::vector<double> moduli;   // |z_0| .. |z_T|
  std::vector<Peak> peaks;
  std::size_t returns = 0;
  Termination termination;
  double tail_min = 0.0;  // over the last tail_window moduli
  double tail_max = 0.0;
  double global_max = 0.0;

  /// T, the index of the last recorded iterate.
  std::size_t last_index() const { return moduli.empty() ? 0 : moduli.size() - 1; }

  friend bool operator==(const OrbitRecord&, const OrbitRecord&) = default;
};

struct Cycle {
  std::size_t period;
  std::size_t entry;

  friend bool operator==(const Cycle&, const Cycle&) = default;
};

/// |a - b| <= tol * max(|a|, |b|).
bool relatively_close(Complex a, Complex b, double tol);

/// Brent's cycle search over a recorded orbit prefix, comparing complex
/// values with relative tolerance. Returns the least period and the first
/// index at which the cycle is entered, or nothing if the prefix ends first.
std::optional<Cycle> detect_cycle(std::span<const Complex> values, double tol);

OrbitRecord iterate_orbit(const FunctionExpr& f, Complex z0, const ClassifierConfig& cfg);

/// First matching rule wins: Bounded, Bungee, Escaping, otherwise Unresolved.
Classification classify(const OrbitRecord& rec, const ClassifierConfig& cfg);

Classification classify_point(const FunctionExpr& f, Complex z0, const ClassifierConfig& cfg);

/// Field names mirror ClassifierConfig. Missing fields keep their defaults;
/// unknown fields and invalid combinations throw std::invalid_argument.
nlohmann::json to_json(const ClassifierConfig& cfg);
ClassifierConfig config_from_json(const nlohmann::json& j, ClassifierConfig base = {});

/// `n,re,im,modulus` rows followed by `# termination=...`.
std::string orbit_csv(const OrbitRecord& rec);

}  // namespace bungee
