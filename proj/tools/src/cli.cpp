#include "bungee/cli.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string_view>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "bungee/expr.hpp"
#include "bungee/grid.hpp"
#include "bungee/orbit.hpp"
#include "bungee/registry.hpp"
#include "bungee/relations.hpp"

namespace bungee::cli {
namespace {

using nlohmann::json;

// Bad user input: exit 1.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> parts;
  for (;;) {
    const auto pos = s.find(sep);
    parts.push_back(s.substr(0, pos));
    if (pos == std::string_view::npos) return parts;
    s.remove_prefix(pos + 1);
  }
}

double to_double(std::string_view s, std::string_view what) {
  double v = 0.0;
  const auto* end = s.data() + s.size();
  const auto [ptr, ec] = std::from_chars(s.data(), end, v);
  if (ec != std::errc{} || ptr != end || !std::isfinite(v))
    throw UsageError(std::string(what) + ": '" + std::string(s) + "' is not a finite number");
  return v;
}

std::size_t to_size(std::string_view s, std::string_view what) {
  std::size_t v = 0;
  const auto* end = s.data() + s.size();
  const auto [ptr, ec] = std::from_chars(s.data(), end, v);
  if (ec != std::errc{} || ptr != end || v == 0)
    throw UsageError(std::string(what) + ": '" + std::string(s) + "' is not a positive integer");
  return v;
}

std::vector<double> numbers(std::string_view s, std::size_t count, std::string_view what) {
  const auto parts = split(s, ',');
  if (parts.size() != count)
    throw UsageError(std::string(what) + ": expected " + std::to_string(count) + " comma-separated numbers");
  std::vector<double> out;
  for (auto p : parts) out.push_back(to_double(p, what));
  return out;
}

Complex point(std::string_view s, std::string_view what = "--point") {
  const auto v = numbers(s, 2, what);
  return {v[0], v[1]};
}

FunctionExpr expression(const std::string& text, std::string_view flag) {
  try {
    return parse(text);
  } catch (const ParseError& e) {
    throw UsageError(std::string(flag) + ": " + e.what());
  }
}

GridSpec grid_from(std::string_view bounds, std::string_view size, std::string_view what) {
  const auto b = numbers(bounds, 4, what);
  const auto n = split(size, size.find('x') != std::string_view::npos ? 'x' : ',');
  if (n.size() != 2) throw UsageError(std::string(what) + ": size must be NX,NY or NXxNY");
  GridSpec g{b[0], b[1], b[2], b[3], to_size(n[0], what), to_size(n[1], what)};
  try {
    g.validate();
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  return g;
}

// grid:REMIN,REMAX,IMMIN,IMMAX:NXxNY  or  list:RE,IM;RE,IM;...
SamplePlan samples(std::string_view spec) {
  if (spec.starts_with("grid:")) {
    const auto parts = split(spec.substr(5), ':');
    if (parts.size() != 2) throw UsageError("--samples: expected grid:REMIN,REMAX,IMMIN,IMMAX:NXxNY");
    return SamplePlan::grid(grid_from(parts[0], parts[1], "--samples"));
  }
  if (spec.starts_with("list:")) {
    std::vector<Complex> seeds;
    for (auto p : split(spec.substr(5), ';'))
      if (!p.empty()) seeds.push_back(point(p, "--samples"));
    if (seeds.empty()) throw UsageError("--samples: list is empty");
    return SamplePlan::list(std::move(seeds));
  }
  throw UsageError("--samples: expected grid:... or list:...");
}

// Writes through a sibling temporary so a failed run never leaves a
// truncated file behind.
void write_file(const std::string& path, std::string_view bytes) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  fs::path tmp = target;
  tmp += ".partial";
  {
    std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
    if (!os) throw std::runtime_error("cannot open '" + tmp.string() + "' for writing");
    os.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    if (!os) throw std::runtime_error("write to '" + tmp.string() + "' failed");
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) {
    fs::remove(tmp, ec);
    throw std::runtime_error("cannot write '" + path + "'");
  }
}

std::string bytes_of(const std::vector<std::uint8_t>& v) { return {v.begin(), v.end()}; }

struct Globals {
  std::string config_path;
  std::string preset;
  unsigned workers = 1;
  std::string out_path;
  std::string format;  // empty: the subcommand's default
};

class Session {
 public:
  Session(const Globals& g, std::ostream& out) : g_(g), out_(out) {}

  ClassifierConfig config(std::optional<ClassifierConfig> base = std::nullopt) const {
    ClassifierConfig cfg = base.value_or(ClassifierConfig{});
    if (!g_.preset.empty()) cfg = example(g_.preset).config();
    if (g_.config_path.empty()) return cfg;
    std::ifstream is(g_.config_path);
    if (!is) throw UsageError("--config: cannot read '" + g_.config_path + "'");
    json j;
    try {
      j = json::parse(is);
    } catch (const json::parse_error& e) {
      throw UsageError("--config: " + std::string(e.what()));
    }
    try {
      return config_from_json(j, cfg);
    } catch (const std::invalid_argument& e) {
      throw UsageError("--config: " + std::string(e.what()));
    }
  }

  static const ExampleEntry& example(const std::string& id) {
    try {
      return get_example(id);
    } catch (const std::out_of_range& e) {
      throw UsageError(e.what());
    }
  }

  bool json_format(bool default_json) const {
    if (g_.format.empty()) return default_json;
    return g_.format == "json";
  }

  // Sends the primary output to --out if given, else to stdout.
  void emit(const std::string& text) const {
    if (g_.out_path.empty())
      out_ << text;
    else
      write_file(g_.out_path, text);
  }

  unsigned workers() const { return g_.workers; }

 private:
  const Globals& g_;
  std::ostream& out_;
};

json orbit_summary(const OrbitRecord& rec, Classification c) {
  json peaks = json::array();
  for (const auto& p : rec.peaks) peaks.push_back({{"index", p.index}, {"modulus", std::isinf(p.modulus) ? json("inf") : json(p.modulus)}});
  return {{"seed", {rec.seed.real(), rec.seed.imag()}},
          {"classification", std::string(to_string(c))},
          {"termination", describe(rec.termination)},
          {"iterations", rec.last_index()},
          {"returns", rec.returns},
          {"peaks", std::move(peaks)},
          {"global_max", rec.global_max},
          {"tail_min", rec.tail_min},
          {"tail_max", rec.tail_max}};
}

std::string text_summary(const OrbitRecord& rec, Classification c) {
  std::ostringstream os;
  os << to_string(c) << '\n'
     << "termination " << describe(rec.termination) << '\n'
     << "iterations  " << rec.last_index() << '\n'
     << "peaks       " << rec.peaks.size() << '\n'
     << "returns     " << rec.returns << '\n'
     << "global_max  " << format_number(rec.global_max) << '\n'
     << "tail_min    " << format_number(rec.tail_min) << '\n'
     << "tail_max    " << format_number(rec.tail_max) << '\n';
  return os.str();
}

std::string text_report(const RelationReport& r) {
  std::ostringstream os;
  os << relation_info(r.relation).name << '\n'
     << "samples     " << r.sample_count << '\n'
     << "evaluated   " << r.evaluated_count << '\n'
     << "unresolved  " << r.unresolved_count << '\n'
     << "violations  " << r.violations.size() << '\n'
     << "rate        " << format_number(r.violation_rate) << '\n';
  if (r.permutability)
    os << "permutable  " << (r.permutability->permutable ? "yes" : "no") << " (max_dev "
       << format_number(r.permutability->max_dev) << ")\n";
  return os.str();
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Classify orbits of entire functions as Escaping, Bounded, Bungee or Unresolved", "bungee"};
  app.require_subcommand(1);
  app.fallthrough();

  Globals g;
  app.add_option("--config", g.config_path, "JSON file with ClassifierConfig fields")->check(CLI::ExistingFile);
  app.add_option("--preset", g.preset, "Start from a registry example's classifier config");
  app.add_option("--workers", g.workers, "Worker threads")->check(CLI::Range(1u, 1024u));
  app.add_option("--out", g.out_path, "Write the primary output here instead of stdout");
  app.add_option("--format", g.format, "Output format")->check(CLI::IsMember({"json", "text"}));

  std::string function, pt;
  auto* classify_cmd = app.add_subcommand("classify", "Classify one seed");
  classify_cmd->add_option("--function", function, "Expression in z")->required();
  classify_cmd->add_option("--point", pt, "Seed as RE,IM")->required();

  std::string csv_path;
  auto* orbit_cmd = app.add_subcommand("orbit", "Dump an orbit as CSV");
  orbit_cmd->add_option("--function", function, "Expression in z")->required();
  orbit_cmd->add_option("--point", pt, "Seed as RE,IM")->required();
  orbit_cmd->add_option("--csv", csv_path, "CSV destination (default: stdout or --out)");

  std::string grid_bounds, grid_size, ppm_path, boundary_path, raster_path;
  auto* render_cmd = app.add_subcommand("render", "Classify a grid and write images");
  render_cmd->add_option("--function", function, "Expression in z")->required();
  render_cmd->add_option("--grid", grid_bounds, "REMIN,REMAX,IMMIN,IMMAX")->required();
  render_cmd->add_option("--size", grid_size, "NX,NY")->required();
  render_cmd->add_option("--ppm", ppm_path, "Binary PPM of the classification")->required();
  render_cmd->add_option("--boundary", boundary_path, "Binary PGM mask of class boundaries");
  render_cmd->add_option("--json", raster_path, "Raster as JSON");

  std::string relation, f_text, g_text, phi_text, samples_text, strip_text = "left";
  std::optional<bool> nfav;
  double tol = kDefaultPermutabilityTol;
  bool equality = false;
  auto* verify_cmd = app.add_subcommand("verify", "Check a relation between classified sets on a sample plan");
  verify_cmd->add_option("--relation", relation, "Relation name")->required();
  verify_cmd->add_option("--f", f_text, "Expression for f")->required();
  verify_cmd->add_option("--g", g_text, "Expression for g");
  verify_cmd->add_option("--phi", phi_text, "Affine map as A_RE,A_IM,B_RE,B_IM");
  verify_cmd->add_option("--samples", samples_text, "grid:REMIN,REMAX,IMMIN,IMMAX:NXxNY or list:RE,IM;...")
      ->required();
  verify_cmd->add_option("--tol", tol, "Permutability tolerance")->check(CLI::PositiveNumber);
  verify_cmd->add_flag("--equality", equality, "EscapingUnion: test both inclusions");
  verify_cmd->add_option("--strip", strip_text, "StripContainment side")->check(CLI::IsMember({"left", "right"}));
  verify_cmd->add_option("--no-finite-asymptotic-values", nfav, "Supply the hypothesis flag (true|false)");

  std::string example_id;
  auto* examples_cmd = app.add_subcommand("examples", "The example registry");
  examples_cmd->require_subcommand(1);
  auto* list_cmd = examples_cmd->add_subcommand("list", "List example ids");
  auto* export_cmd = examples_cmd->add_subcommand("export", "Registry as JSON");
  auto* run_cmd = examples_cmd->add_subcommand("run", "Recompute an example's expectations");
  run_cmd->add_option("id", example_id, "Example id")->required();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }

  const Session s(g, out);
  try {
    if (*classify_cmd) {
      const FunctionExpr f = expression(function, "--function");
      const Complex z0 = point(pt);
      const ClassifierConfig cfg = s.config();
      const OrbitRecord rec = iterate_orbit(f, z0, cfg);
      const Classification c = classify(rec, cfg);
      s.emit(s.json_format(false) ? orbit_summary(rec, c).dump(2) + "\n" : text_summary(rec, c));
      return kOk;
    }

    if (*orbit_cmd) {
      const FunctionExpr f = expression(function, "--function");
      const Complex z0 = point(pt);
      const ClassifierConfig cfg = s.config();
      const std::string csv = orbit_csv(iterate_orbit(f, z0, cfg));
      if (csv_path.empty())
        s.emit(csv);
      else
        write_file(csv_path, csv);
      return kOk;
    }

    if (*render_cmd) {
      const FunctionExpr f = expression(function, "--function");
      const GridSpec spec = grid_from(grid_bounds, grid_size, "--grid/--size");
      const ClassifierConfig cfg = s.config();
      const Raster r = classify_grid(f, spec, cfg, s.workers());
      write_file(ppm_path, bytes_of(render_ppm(r)));
      if (!boundary_path.empty()) write_file(boundary_path, bytes_of(render_mask_pgm(spec, extract_boundary(r))));
      if (!raster_path.empty()) write_file(raster_path, to_json(r).dump() + "\n");
      std::array<std::size_t, 4> counts{};
      for (auto c : r.cells) ++counts[static_cast<std::size_t>(c)];
      json summary = {{"cells", r.cells.size()}};
      for (auto c : {Classification::Escaping, Classification::Bounded, Classification::Bungee,
                     Classification::Unresolved})
        summary[std::string(to_string(c))] = counts[static_cast<std::size_t>(c)];
      if (s.json_format(false)) {
        s.emit(summary.dump(2) + "\n");
      } else {
        std::string text;
        for (const auto& [k, v] : summary.items()) text += k + " " + v.dump() + "\n";
        s.emit(text);
      }
      return kOk;
    }

    if (*verify_cmd) {
      RelationId rel;
      try {
        rel = relation_from_string(relation);
      } catch (const std::invalid_argument& e) {
        throw UsageError(std::string("--relation: ") + e.what());
      }
      RelationInputs in;
      in.f = expression(f_text, "--f");
      if (!g_text.empty()) in.g = expression(g_text, "--g");
      if (!phi_text.empty()) {
        const auto v = numbers(phi_text, 4, "--phi");
        in.affine = AffineMap{{v[0], v[1]}, {v[2], v[3]}};
        if (in.affine->a == Complex{}) throw UsageError("--phi: a must be nonzero");
      }
      if (nfav) in.no_finite_asymptotic_values = HypothesisFlag{*nfav, "supplied on the command line"};
      in.equality_mode = equality;
      in.strip = strip_text == "right" ? StripSide::Right : StripSide::Left;
      const SamplePlan plan = samples(samples_text);
      const ClassifierConfig cfg = s.config();

      RelationReport report;
      try {
        report = verify_relation(rel, in, plan, cfg, {s.workers(), tol});
      } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
      }
      s.emit(s.json_format(true) ? to_json(report).dump(2) + "\n" : text_report(report));
      return report.violation_rate > 0.0 ? kViolations : kOk;
    }

    if (*list_cmd) {
      if (s.json_format(false)) {
        json j = json::array();
        for (const auto& [id, summary] : list_examples()) j.push_back({{"id", id}, {"summary", summary}});
        s.emit(j.dump(2) + "\n");
      } else {
        std::string text;
        for (const auto& [id, summary] : list_examples()) text += id + "  " + summary + "\n";
        s.emit(text);
      }
      return kOk;
    }

    if (*export_cmd) {
      s.emit(export_registry().dump(2) + "\n");
      return kOk;
    }

    if (*run_cmd) {
      const ExampleEntry& e = Session::example(example_id);
      RunOverrides overrides;
      overrides.workers = s.workers();
      overrides.cfg = s.config(e.config());
      const ExampleReport report = run_example(e.id, overrides);
      if (s.json_format(false)) {
        s.emit(to_json(report).dump(2) + "\n");
      } else {
        std::string text = report.id + "\n";
        for (const auto& o : report.outcomes)
          text += std::string(o.passed ? "PASS " : "FAIL ") + o.description + " | expected " + o.expected +
                  " | measured " + o.measured + " [" + std::string(to_string(o.provenance)) + "]\n";
        s.emit(text);
      }
      return report.all_passed() ? kOk : kViolations;
    }
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kRuntime;
  }
  return kUsage;
}

}  // namespace bungee::cli
