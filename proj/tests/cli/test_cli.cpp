#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "bungee/cli.hpp"

namespace fs = std::filesystem;
using bungee::cli::run;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result invoke(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

class TempDir {
 public:
  TempDir() {
    path_ = fs::temp_directory_path() / ("bungee_cli_" + std::to_string(counter_++) + "_" +
                                         std::to_string(reinterpret_cast<std::uintptr_t>(this)));
    fs::remove_all(path_);
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }
  std::string file(const std::string& name) const { return (path_ / name).string(); }
  std::size_t entries() const { return static_cast<std::size_t>(std::distance(fs::directory_iterator(path_), {})); }

 private:
  static inline int counter_ = 0;
  fs::path path_;
};

std::string slurp(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  return {std::istreambuf_iterator<char>(is), {}};
}

}  // namespace

TEST_CASE("classify prints the verdict first") {
  auto r = invoke({"classify", "--function", "z+sin(z)", "--point", "0,0"});
  CHECK(r.code == 0);
  CHECK(r.out.starts_with("Bounded\n"));
  CHECK(r.err.empty());

  r = invoke({"--preset", "ex_sine_pair", "classify", "--function", "z+sin(z)+2*pi", "--point", "0,0"});
  CHECK(r.code == 0);
  CHECK(r.out.starts_with("Escaping\n"));

  r = invoke({"classify", "--function", "1/pow(z,2)", "--point", "0.5,0", "--format", "json"});
  CHECK(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j.at("classification") == "Bungee");
  CHECK(j.at("termination") == "Overflowed(step=9)");
  CHECK(j.at("returns") == 2);
}

TEST_CASE("global flags may follow the subcommand") {
  const auto r = invoke({"classify", "--function", "z+sin(z)+2*pi", "--point", "0,0", "--preset", "ex_sine_pair"});
  CHECK(r.code == 0);
  CHECK(r.out.starts_with("Escaping\n"));
}

TEST_CASE("--config merges onto the defaults") {
  TempDir dir;
  const std::string cfg = dir.file("cfg.json");
  std::ofstream(cfg) << R"({"r_bound": 100, "r_esc": 1000, "max_iter": 2000})";
  auto r = invoke({"--config", cfg, "classify", "--function", "z+sin(z)+2*pi", "--point", "0,0"});
  CHECK(r.code == 0);
  CHECK(r.out.starts_with("Escaping\n"));

  std::ofstream(cfg) << R"({"r_bound": 100, "colour": 3})";
  r = invoke({"--config", cfg, "classify", "--function", "z", "--point", "0,0"});
  CHECK(r.code == 1);
  CHECK(r.err.find("colour") != std::string::npos);
}

TEST_CASE("usage errors exit 1 with a diagnostic") {
  CHECK(invoke({}).code == 1);
  CHECK(invoke({"frobnicate"}).code == 1);
  CHECK(invoke({"classify", "--function", "z"}).code == 1);
  CHECK(invoke({"classify", "--function", "z", "--point", "0,0", "--bogus"}).code == 1);
  CHECK(invoke({"classify", "--function", "z", "--point", "0"}).code == 1);
  CHECK(invoke({"classify", "--function", "z", "--point", "a,b"}).code == 1);
  CHECK(invoke({"--workers", "0", "classify", "--function", "z", "--point", "0,0"}).code == 1);
  CHECK(invoke({"--format", "xml", "examples", "list"}).code == 1);
  CHECK(invoke({"examples", "run", "ex_nope"}).code == 1);
  CHECK(invoke({"verify", "--relation", "Nope", "--f", "z", "--samples", "list:0,0"}).code == 1);
  CHECK(invoke({"verify", "--relation", "KSwap", "--f", "z", "--samples", "list:0,0"}).code == 1);  // needs --g
  CHECK(invoke({"verify", "--relation", "KSwap", "--f", "z", "--g", "z", "--samples", "grid:0,1:3x3"}).code == 1);

  const auto r = invoke({"classify", "--function", "exp(z", "--point", "0,0"});
  CHECK(r.code == 1);
  CHECK(r.out.empty());
  CHECK(r.err.find("offset 6") != std::string::npos);
}

TEST_CASE("verify writes a RelationReport and signals violations with exit 3") {
  auto r = invoke({"verify", "--relation", "KSwap", "--f", "z+sin(z)", "--g", "z+sin(z)+2*pi", "--samples",
                   "grid:-1,1,-1,1:10x10"});
  CHECK(r.code == 0);
  auto j = nlohmann::json::parse(r.out);
  CHECK(j.at("relation") == "KSwap");
  CHECK(j.at("sample_count") == 100);
  CHECK(j.at("violation_rate") == 0.0);

  r = invoke({"verify", "--relation", "DisjointKandBU", "--f", "0.5*z", "--g", "0.25*z", "--samples",
              "list:0.1,0;0.2,0.3"});
  CHECK(r.code == 3);
  j = nlohmann::json::parse(r.out);
  CHECK(j.at("violation_rate") == 1.0);

  r = invoke({"verify", "--relation", "ConjugacyTransport", "--f", "0.3*exp(z)", "--phi", "2,0,1,0", "--samples",
              "grid:-2,2,-2,2:5x4", "--format", "text"});
  CHECK(r.code == 0);
  CHECK(r.out.starts_with("ConjugacyTransport\n"));

  r = invoke({"verify", "--relation", "EscapingInvariance", "--f", "z+1+exp(-z)", "--g", "z+1+exp(-z)+2*pi*i",
              "--samples", "list:0,0", "--no-finite-asymptotic-values", "true", "--preset", "ex_exp_translate"});
  CHECK(r.code == 0);
  j = nlohmann::json::parse(r.out);
  CHECK(j.at("hypotheses").at("no_finite_asymptotic_values").at("value") == true);
  CHECK(j.at("permutability").at("permutable") == true);

  // Nothing evaluable is a runtime failure.
  r = invoke({"verify", "--relation", "StripContainment", "--f", "z+2", "--samples", "list:0,0"});
  CHECK(r.code == 2);
}

TEST_CASE("orbit CSV goes to --csv") {
  TempDir dir;
  const std::string path = dir.file("orbit.csv");
  const auto r = invoke({"orbit", "--function", "1/z", "--point", "2,0", "--csv", path});
  CHECK(r.code == 0);
  CHECK(slurp(path) == "n,re,im,modulus\n0,2,0,2\n1,0.5,0,0.5\n2,2,0,2\n3,0.5,0,0.5\n# termination=CycleFound(period=2,entry=0)\n");
  CHECK(dir.entries() == 1);
}

TEST_CASE("render outputs are byte-identical across worker counts") {
  TempDir dir;
  auto render = [&](const std::string& tag, const std::string& workers) {
    return invoke({"--workers", workers, "render", "--function", "z+1+exp(-z)", "--grid", "-3,3,-3,3", "--size",
                   "40,30", "--ppm", dir.file(tag + ".ppm"), "--boundary", dir.file(tag + ".pgm"), "--json",
                   dir.file(tag + ".json")});
  };
  REQUIRE(render("a", "1").code == 0);
  REQUIRE(render("b", "4").code == 0);
  for (const char* ext : {".ppm", ".pgm", ".json"}) CHECK(slurp(dir.file(std::string("a") + ext)) == slurp(dir.file(std::string("b") + ext)));
  CHECK(slurp(dir.file("a.ppm")).starts_with("P6\n40 30\n255\n"));
  CHECK(slurp(dir.file("a.pgm")).starts_with("P5\n40 30\n255\n"));
  CHECK(nlohmann::json::parse(slurp(dir.file("a.json"))).at("codes").size() == 1200);
}

TEST_CASE("usage errors leave no files behind") {
  TempDir dir;
  const std::string ppm = dir.file("x.ppm");
  CHECK(invoke({"render", "--function", "exp(z", "--grid", "-1,1,-1,1", "--size", "4,4", "--ppm", ppm}).code == 1);
  CHECK(invoke({"render", "--function", "exp(z)", "--grid", "1,-1,-1,1", "--size", "4,4", "--ppm", ppm}).code == 1);
  CHECK(invoke({"render", "--function", "exp(z)", "--grid", "-1,1,-1,1", "--size", "0,4", "--ppm", ppm}).code == 1);
  CHECK(invoke({"--out", dir.file("o.json"), "verify", "--relation", "KSwap", "--f", "z", "--samples", "list:0,0"})
            .code == 1);
  CHECK(invoke({"orbit", "--function", "z", "--point", "nope", "--csv", dir.file("o.csv")}).code == 1);
  CHECK(dir.entries() == 0);
}

TEST_CASE("unwritable output is a runtime error") {
  const auto r = invoke({"orbit", "--function", "z", "--point", "0,0", "--csv", "/nonexistent-dir/o.csv"});
  CHECK(r.code == 2);
}

TEST_CASE("examples subcommands") {
  auto r = invoke({"examples", "list"});
  CHECK(r.code == 0);
  CHECK(r.out.find("ex_sine_pair") != std::string::npos);
  CHECK(r.out.find("ex_rational_bungee") != std::string::npos);
  CHECK(r.out.find("ex_exp_translate") != std::string::npos);

  r = invoke({"examples", "list", "--format", "json"});
  CHECK(nlohmann::json::parse(r.out).size() == 6);

  r = invoke({"examples", "export"});
  CHECK(nlohmann::json::parse(r.out).at(1).at("id") == "ex_sine_pair");

  r = invoke({"examples", "run", "ex_rational_bungee"});
  CHECK(r.code == 0);
  CHECK(r.out.find("FAIL") == std::string::npos);

  // A config that cannot resolve the drift makes expectations fail: exit 3.
  TempDir dir;
  const std::string cfg = dir.file("cfg.json");
  std::ofstream(cfg) << R"({"r_bound": 1000, "r_esc": 1000000, "max_iter": 1000})";
  r = invoke({"--config", cfg, "examples", "run", "ex_sine_pair", "--format", "json"});
  CHECK(r.code == 3);
  CHECK(nlohmann::json::parse(r.out).at("all_passed") == false);
}

TEST_CASE("--out captures the primary output") {
  TempDir dir;
  const std::string path = dir.file("list.txt");
  const auto r = invoke({"--out", path, "examples", "list"});
  CHECK(r.code == 0);
  CHECK(r.out.empty());
  CHECK(slurp(path).find("ex_periodic_translate") != std::string::npos);
}

TEST_CASE("help exits 0") {
  const auto r = invoke({"--help"});
  CHECK(r.code == 0);
  CHECK(r.out.find("classify") != std::string::npos);
}
