#include <filesystem>
#include <fstream>
#include <sstream>

#include <unistd.h>

#include "doctest.h"
#include "grforge/cli.hpp"
#include "grforge/io.hpp"
#include "grforge/module.hpp"

using namespace grforge;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out, err;
};

class Workdir {
 public:
  Workdir() {
    static int counter = 0;
    dir_ = fs::temp_directory_path() / ("grforge_cli_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  ~Workdir() { fs::remove_all(dir_); }
  std::string path(const std::string& rel) const { return (dir_ / rel).string(); }

  Run run(std::vector<std::string> args) const {
    args.insert(args.begin(), {"grforge", "--report-dir", path("reports"), "--quiet"});
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
  }

  std::string slurp(const std::string& rel) const {
    std::ifstream f(path(rel), std::ios::binary);
    std::stringstream ss;
    ss << f.rdbuf();
    return ss.str();
  }
  void put(const std::string& rel, const std::string& text) const { std::ofstream(path(rel), std::ios::binary) << text; }

 private:
  fs::path dir_;
};

}  // namespace

TEST_CASE("gen writes the fixtures with the expected ranks") {
  Workdir w;
  REQUIRE(w.run({"gen", "z5", "-o", w.path("fx")}).code == 0);
  REQUIRE(w.run({"gen", "qschur", "--d", "3", "--p", "3", "-o", w.path("fx")}).code == 0);
  REQUIRE(w.run({"gen", "usl2", "--p", "3", "-o", w.path("fx")}).code == 0);
  const auto z5 = load_algebra(read_json_file(w.path("fx/z5.json")));
  CHECK(z5.alg.n() == 5);
  REQUIRE(z5.alg.weights);
  CHECK(z5.alg.weights->Lambda == std::vector<std::string>{"1", "2"});
  CHECK(load_algebra(read_json_file(w.path("fx/qschur_2_3_p3.json"))).alg.n() == 20);
  const auto u = load_algebra(read_json_file(w.path("fx/usl2_p3.json")));
  CHECK(u.alg.n() == 27);
  CHECK(u.metadata["regular_weights"] == json::array({"0", "1"}));
  CHECK(fs::exists(w.path("fx/usl2_p3_block0.json")));

  CHECK(w.run({"gen", "qschur", "--d", "7", "-o", w.path("fx")}).code == 2);
  CHECK(w.run({"gen", "usl2", "--p", "7", "-o", w.path("fx")}).code == 2);
  CHECK(w.run({"gen", "z5", "--p", "9", "-o", w.path("fx")}).code == 2);
  CHECK(w.run({"gen", "inflate", "-o", w.path("fx")}).code == 2);
}

TEST_CASE("documents survive load and serialize byte for byte") {
  Workdir w;
  REQUIRE(w.run({"gen", "z5", "-o", w.path("fx")}).code == 0);
  REQUIRE(w.run({"gen", "qschur", "--d", "2", "--p", "5", "-o", w.path("fx")}).code == 0);
  REQUIRE(w.run({"gen", "z5", "--ring", "cyclotomic", "-o", w.path("fx")}).code == 0);
  for (const std::string base : {"z5", "qschur_2_2_p5", "z5_c3"}) {
    CAPTURE(base);
    const std::string text = w.slurp("fx/" + base + ".json");
    const auto L = load_algebra(parse_json(text));
    CHECK(serialize(algebra_to_json(L.alg, L.metadata)) == text);
    const std::string mtext = w.slurp("fx/" + base + ".regular.json");
    std::string name;
    const ModO M = load_module(parse_json(mtext), L, &name);
    CHECK(serialize(module_to_json(M, name, L)) == mtext);
  }
  for (const std::string sub : {"z5.path_grading", "qschur_2_2_p5.trivial_grading"}) {
    CAPTURE(sub);
    const std::string text = w.slurp("fx/" + sub + ".json");
    const auto L = load_algebra(read_json_file(w.path("fx/" + sub.substr(0, sub.find('.')) + ".json")));
    const json doc = parse_json(text);
    CHECK(serialize(subalgebra_to_json(load_subalgebra(doc, L), doc["name"], L)) == text);
  }
}

TEST_CASE("certify exit codes and the failing step of the scaled zigzag") {
  Workdir w;
  REQUIRE(w.run({"gen", "z5", "-o", w.path("fx")}).code == 0);
  REQUIRE(w.run({"gen", "z5s", "-o", w.path("fx")}).code == 0);
  CHECK(w.run({"certify", w.path("fx/z5.json")}).code == 0);
  CHECK(w.run({"certify", w.path("fx/z5s.json")}).code == 1);
  const auto R = SuiteReport::from_json(read_json_file(w.path("reports/certify-z5s.report.json")));
  REQUIRE_FALSE(R.checks.empty());
  CHECK(R.checks[0].detail.rfind("failing condition (i) at step {2}", 0) == 0);
  const auto ok = SuiteReport::from_json(read_json_file(w.path("reports/certify-z5.report.json")));
  CHECK(ok.checks[0].detail == "chain length 2, Delta ranks {1: 1, 2: 2}");
}

TEST_CASE("certificates embedded in reports re-verify independently") {
  Workdir w;
  REQUIRE(w.run({"gen", "z5", "-o", w.path("fx")}).code == 0);
  REQUIRE(w.run({"gen", "z5s", "-o", w.path("fx")}).code == 0);
  REQUIRE(w.run({"gen", "qschur", "--d", "3", "--p", "3", "-o", w.path("fx")}).code == 0);
  w.run({"certify", w.path("fx/z5.json")});
  w.run({"certify", w.path("fx/z5s.json")});
  w.run({"certify", w.path("fx/qschur_2_3_p3.json")});
  for (const std::string f : {"z5", "z5s", "qschur_2_3_p3"}) {
    CAPTURE(f);
    const auto L = load_algebra(read_json_file(w.path("fx/" + f + ".json")));
    const json report = read_json_file(w.path("reports/certify-" + f + ".report.json"));
    REQUIRE(report["certificates"].size() == 1);
    const json& emb = report["certificates"][0];
    CHECK(emb["algebra_hash"] == L.hash);
    auto C = certificate_from_json(emb["certificate"], L.alg.rs, L.alg.n());
    const auto W = at_O(L.alg);
    const auto chk = check_certificate(W, C);
    CHECK(chk.agrees);
    CHECK(chk.valid_chain == (f != "z5s"));
    if (f == "z5") {
      // a tampered idempotent no longer matches
      C.steps[0].e = C.steps[1].e;
      CHECK_FALSE(check_certificate(W, C).agrees);
    }
  }
}

TEST_CASE("reports are byte-stable apart from the wall clock") {
  Workdir w;
  REQUIRE(w.run({"gen", "z5", "-o", w.path("fx")}).code == 0);
  auto stable = [&](const std::string& rel) {
    json j = read_json_file(w.path(rel));
    j.erase("wall_clock_ms");
    return serialize(j);
  };
  for (const std::vector<std::string>& args :
       {std::vector<std::string>{"verify", "thm417", w.path("fx/z5.json")},
        std::vector<std::string>{"verify", "prop52", w.path("fx/z5.json"), w.path("fx/z5.path_grading.json"), "--trials", "20"},
        std::vector<std::string>{"verify", "primitivity", w.path("fx/z5.json"), "--trials", "100", "--seed", "5"}}) {
    CAPTURE(args[1]);
    REQUIRE(w.run(args).code == 0);
    const std::string rel = "reports/" + args[1] + "-z5" + (args[1] == "primitivity" ? ".regular" : "") + ".report.json";
    const std::string first = stable(rel);
    REQUIRE(w.run(args).code == 0);
    CHECK(stable(rel) == first);
  }
}

TEST_CASE("malformed input exits 2 with a line or field diagnostic") {
  Workdir w;
  REQUIRE(w.run({"gen", "z5", "-o", w.path("fx")}).code == 0);
  REQUIRE(w.run({"gen", "z5s", "-o", w.path("fx")}).code == 0);

  w.put("broken.json", "{\n  \"format\": \"grforge.algebra\",\n  \"rank\": ,\n}\n");
  auto r = w.run({"certify", w.path("broken.json")});
  CHECK(r.code == 2);
  CHECK(r.err.find("line 3") != std::string::npos);

  json doc = read_json_file(w.path("fx/z5.json"));
  doc["structure_constants"][2][3] = "x";
  w.put("bad_scalar.json", serialize(doc));
  r = w.run({"certify", w.path("bad_scalar.json")});
  CHECK(r.code == 2);
  CHECK(r.err.find("/structure_constants/2/3") != std::string::npos);

  doc = read_json_file(w.path("fx/z5.json"));
  doc.erase("unit");
  w.put("no_unit.json", serialize(doc));
  r = w.run({"certify", w.path("no_unit.json")});
  CHECK(r.code == 2);
  CHECK(r.err.find("/unit") != std::string::npos);

  // the module belongs to z5, not to z5s
  r = w.run({"filtration", w.path("fx/z5s.json"), w.path("fx/z5.regular.json")});
  CHECK(r.code == 2);
  CHECK(r.err.find("/algebra/hash") != std::string::npos);

  CHECK(w.run({"verify", "nosuch", w.path("fx/z5.json")}).code == 2);
  CHECK(w.run({"verify", "cor416", w.path("fx/z5.json"), w.path("fx/z5.regular.json"), "--gamma", "2"}).code == 2);
  CHECK(w.run({"certify", w.path("missing.json")}).code == 2);
  CHECK(w.run({}).code == 2);
  CHECK(w.run({"--help"}).code == 0);
}
