#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <unistd.h>

#include "doctest.h"
#include "json.hpp"
#include "orthograph/cli.hpp"
#include "orthograph/element_io.hpp"
#include "orthograph/graph.hpp"
#include "test_support.hpp"

using namespace orthograph;
using namespace testing_support;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code = -1;
  std::string out;
  std::string err;
};

Run cli(std::vector<std::string> args) {
  args.insert(args.begin(), "orthograph");
  std::vector<const char*> argv;
  for (const std::string& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  Run r;
  r.code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

class Scratch {
 public:
  Scratch() : dir_(fs::temp_directory_path() / ("orthograph_cli_" + std::to_string(::getpid()))) {
    fs::create_directories(dir_);
  }
  ~Scratch() { fs::remove_all(dir_); }

  std::string file(const std::string& name, const std::string& text) const {
    const fs::path p = dir_ / name;
    std::ofstream(p) << text;
    return p.string();
  }
  std::string element(const std::string& name, const Element& a) const { return file(name, to_json(a).dump()); }
  fs::path path(const std::string& name) const { return dir_ / name; }

 private:
  fs::path dir_;
};

}  // namespace

TEST_CASE("check exit codes") {
  Scratch s;
  const std::string e11 = s.element("e11.json", Element::from_matrix(unit_matrix(2, 0, 0)));
  const std::string e22 = s.element("e22.json", Element::from_matrix(unit_matrix(2, 1, 1)));
  const std::string one = s.element("one.json", Element::identity(AlgebraShape{2}));

  CHECK(cli({"check", e11, e22}).code == 0);
  const Run asym = cli({"check", one, e11, "--json"});
  CHECK(asym.code == 1);
  const auto j = nlohmann::json::parse(asym.out);
  CHECK(j["forward"]["verdict"] == true);
  CHECK(j["backward"]["verdict"] == false);
  CHECK(j["adjacent"] == false);

  CHECK(cli({"check", one, e11, "--mode", "strong"}).code == 0);
  CHECK(cli({"check", e11, one, "--mode", "strong"}).code == 1);
  CHECK(cli({"check", e11, e22, "--mode", "bj"}).code == 0);

  const std::string bad = s.file("bad.json", "{\"shape\": [2], \"blocks\": ");
  const Run r = cli({"check", bad, e11});
  CHECK(r.code == 3);
  CHECK(r.err.find("ParseError") != std::string::npos);

  const std::string m3 = s.element("m3.json", Element::identity(AlgebraShape{3}));
  CHECK(cli({"check", m3, e11}).code == 3);
  CHECK(cli({"check", e11}).code == 3);
  CHECK(cli({"check", e11, e22, "--mode", "sideways"}).code == 3);
}

TEST_CASE("witness command") {
  Scratch s;
  const Run r = cli({"witness", s.element("a.json", Element::from_matrix(unit_matrix(2, 0, 0))), "--json"});
  CHECK(r.code == 0);
  const Element w = element_from_json(nlohmann::json::parse(r.out)["witness"]);
  CHECK(norm(w - Element::from_matrix(unit_matrix(2, 1, 1))) < 1e-12);

  const Run iso = cli({"witness", s.element("i.json", Element::identity(AlgebraShape{3}))});
  CHECK(iso.code == 1);
  CHECK(iso.out.find("isolated") != std::string::npos);
  CHECK(cli({"witness", s.element("z.json", Element::zero(AlgebraShape{2}))}).code == 3);
}

TEST_CASE("path command") {
  Scratch s;
  Rng rng(12);
  const AlgebraShape m4{4};
  const std::string a = s.element("a.json", sample_element(m4, RankProfile::deficient(1), rng));
  const std::string b = s.element("b.json", sample_element(m4, RankProfile::deficient(2), rng));
  const Run ok = cli({"path", a, b, "--json"});
  REQUIRE(ok.code == 0);
  const auto j = nlohmann::json::parse(ok.out);
  CHECK(j["length"].get<int>() <= 4);
  CHECK(j["vertices"].size() == j["length"].get<std::size_t>() + 1);

  const std::string r1 = s.element("r1.json", sample_element(AlgebraShape{2}, RankProfile::deficient(1), rng));
  const std::string r2 = s.element("r2.json", sample_element(AlgebraShape{2}, RankProfile::deficient(1), rng));
  CHECK(cli({"path", r1, r2}).code == 1);
  const std::string full = s.element("f.json", sample_element(m4, RankProfile::full(), rng));
  CHECK(cli({"path", full, a}).code == 2);

  const std::string x = s.element("x.json", pair(unit_matrix(2, 0, 0), eye(2)));
  const std::string y = s.element("y.json", pair(eye(2), unit_matrix(2, 0, 0)));
  const Run ds = cli({"path", x, y, "--direct-sum", "--json"});
  REQUIRE(ds.code == 0);
  CHECK(nlohmann::json::parse(ds.out)["length"] == 3);
}

TEST_CASE("gen and graph are deterministic") {
  const Run g1 = cli({"gen", "--shape", "[2,3]", "--profile", "deficient:2", "--seed", "9"});
  const Run g2 = cli({"gen", "--shape", "2,3", "--profile", "deficient:2", "--seed", "9"});
  REQUIRE(g1.code == 0);
  CHECK(g1.out == g2.out);
  const Element e = parse_element(g1.out);
  CHECK(e.shape() == AlgebraShape{2, 3});
  CHECK(cli({"gen", "--shape", "2,x"}).code == 3);
  CHECK(cli({"gen", "--shape", "3", "--profile", "weird"}).code == 3);

  const Run a = cli({"graph", "--shape", "3", "--samples", "12", "--seed", "5", "--format", "json"});
  const Run b = cli({"graph", "--shape", "3", "--samples", "12", "--seed", "5", "--format", "json"});
  REQUIRE(a.code == 0);
  CHECK(a.out == b.out);
  CHECK(cli({"graph", "--shape", "3", "--samples", "12", "--format", "dot"}).out.rfind("graph orthograph {", 0) == 0);
  CHECK(cli({"graph", "--samples", "5"}).code == 3);
}

TEST_CASE("graph writes artifacts") {
  Scratch s;
  const fs::path dir = s.path("out");
  const Run r = cli({"graph", "--shape", "3", "--samples", "10", "--augment", "--out", dir.string()});
  REQUIRE(r.code == 0);
  CHECK(fs::exists(dir / "orthograph.dot"));
  CHECK(fs::exists(dir / "report.txt"));
  std::ifstream in(dir / "orthograph.json");
  std::stringstream text;
  text << in.rdbuf();
  const Orthograph g = import_json(text.str());
  const ComponentReport rep = components_and_distances(g);
  CHECK(rep.max_distance_non_isolated(g.sampled) <= 4);
  CHECK(rep.max_distance_non_isolated(g.sampled) >= 0);
}

TEST_CASE("config file precedence") {
  Scratch s;
  const std::string e11 = s.element("e11.json", Element::from_matrix(unit_matrix(2, 0, 0)));
  // Nearly orthogonal pair: decided differently under a coarse and a fine threshold.
  Matrix m = unit_matrix(2, 1, 1);
  m(0, 0) = 1e-3;
  const std::string near = s.element("near.json", Element::from_matrix(m));
  const std::string coarse = s.file("coarse.json", R"({"tolerances": {"orth": 0.1}})");

  CHECK(cli({"check", e11, near, "--mode", "bj"}).code == 1);
  CHECK(cli({"check", e11, near, "--mode", "bj", "--config", coarse}).code == 0);
  CHECK(cli({"check", e11, near, "--mode", "bj", "--config", coarse, "--tol-orth", "1e-7"}).code == 1);

  ::setenv("ORTHOGRAPH_CONFIG", coarse.c_str(), 1);
  CHECK(cli({"check", e11, near, "--mode", "bj"}).code == 0);
  ::unsetenv("ORTHOGRAPH_CONFIG");

  CHECK(cli({"check", e11, near, "--config", s.file("broken.json", "[1,")}).code == 3);
  CHECK(cli({"check", e11, near, "--tol-orth", "-1"}).code == 3);
}

TEST_CASE("verify with small samples") {
  const Run r = cli({"verify", "--samples", "10", "--seed", "3", "--json"});
  CHECK(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["ok"] == true);
  CHECK(j["suites"].size() > 10);
}
