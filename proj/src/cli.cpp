#include "orthograph/cli.hpp"

#include <CLI11.hpp>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <optional>
#include <sstream>

#include "json.hpp"
#include "orthograph/element_io.hpp"
#include "orthograph/graph.hpp"
#include "orthograph/orthogonality.hpp"
#include "orthograph/pathfinder.hpp"
#include "orthograph/sampling.hpp"
#include "orthograph/verify.hpp"

namespace orthograph {
namespace {

using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitNo = 1;
constexpr int kExitBand = 2;
constexpr int kExitError = 3;

// Settings that may come from the config file; flags override them.
struct RunConfig {
  Tolerances tol;
  std::uint64_t seed = 1;
  std::optional<std::size_t> samples;
  std::optional<std::vector<std::size_t>> shape;
  std::string format = "table";
  std::size_t split = 1;
  bool augment = false;
};

AlgebraShape parse_shape(std::string text) {
  std::string cleaned;
  for (char c : text) {
    if (c != '[' && c != ']' && c != ' ') cleaned.push_back(c);
  }
  std::vector<std::size_t> dims;
  std::stringstream ss(cleaned);
  std::string part;
  while (std::getline(ss, part, ',')) {
    std::size_t used = 0;
    unsigned long v = 0;
    try {
      v = std::stoul(part, &used);
    } catch (const std::exception&) {
      throw Error(ErrorKind::ParseError, "bad shape '" + text + "'");
    }
    if (used != part.size() || v == 0) throw Error(ErrorKind::ParseError, "bad shape '" + text + "'");
    dims.push_back(v);
  }
  if (dims.empty()) throw Error(ErrorKind::ParseError, "empty shape");
  return AlgebraShape(std::move(dims));
}

RankProfile parse_profile(const std::string& text) {
  if (text == "full") return RankProfile::full();
  const auto colon = text.find(':');
  if (colon != std::string::npos) {
    const std::string kind = text.substr(0, colon);
    std::size_t k = 0;
    try {
      k = std::stoul(text.substr(colon + 1));
    } catch (const std::exception&) {
      throw Error(ErrorKind::ParseError, "bad profile '" + text + "'");
    }
    if (kind == "deficient") return RankProfile::deficient(k);
    if (kind == "projection") return RankProfile::projection(k);
  }
  throw Error(ErrorKind::ParseError, "profile must be full, deficient:k or projection:k");
}

void apply_config_file(const std::filesystem::path& path, RunConfig& cfg) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::ConfigError, "cannot read config " + path.string());
  json j;
  try {
    j = json::parse(in);
  } catch (const json::exception& e) {
    throw Error(ErrorKind::ConfigError, std::string("config is not JSON: ") + e.what());
  }
  if (!j.is_object()) throw Error(ErrorKind::ConfigError, "config must be a JSON object");
  try {
    if (j.contains("tolerances")) {
      const json& t = j.at("tolerances");
      if (t.contains("orth")) cfg.tol.orth = t.at("orth").get<double>();
      if (t.contains("ker")) cfg.tol.ker = t.at("ker").get<double>();
      if (t.contains("eig")) cfg.tol.eig = t.at("eig").get<double>();
      if (t.contains("proj")) cfg.tol.proj = t.at("proj").get<double>();
      if (t.contains("vec")) cfg.tol.vec = t.at("vec").get<double>();
    }
    if (j.contains("seed")) cfg.seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("samples")) cfg.samples = j.at("samples").get<std::size_t>();
    if (j.contains("shape")) cfg.shape = j.at("shape").get<std::vector<std::size_t>>();
    if (j.contains("format")) cfg.format = j.at("format").get<std::string>();
    if (j.contains("split")) cfg.split = j.at("split").get<std::size_t>();
    if (j.contains("augment")) cfg.augment = j.at("augment").get<bool>();
  } catch (const json::exception& e) {
    throw Error(ErrorKind::ConfigError, std::string("bad config value: ") + e.what());
  }
}

json complex_json(Complex z) { return json::array({z.real(), z.imag()}); }

std::string outcome_name(Outcome o) {
  switch (o) {
    case Outcome::Orthogonal:
      return "orthogonal";
    case Outcome::NotOrthogonal:
      return "not_orthogonal";
    default:
      return "indeterminate";
  }
}

json decision_json(const OrthDecision& d, const Tolerances& tol) {
  json j{{"verdict", d.verdict}, {"margin", d.margin}, {"outcome", outcome_name(d.outcome(tol))}};
  if (const auto* w = std::get_if<WitnessVector>(&d.certificate)) {
    json v = json::array();
    for (Eigen::Index i = 0; i < w->vector.size(); ++i) v.push_back(complex_json(w->vector(i)));
    j["certificate"] = {{"type", "witness_vector"}, {"vector", v}, {"attained_norm", w->attained_norm},
                        {"inner", complex_json(w->inner)}};
  } else if (const auto* m = std::get_if<MinimizingScalar>(&d.certificate)) {
    j["certificate"] = {{"type", "minimizing_scalar"}, {"lambda", complex_json(m->lambda)}, {"achieved", m->achieved}};
  } else {
    j["certificate"] = {{"type", "vacuous"}};
  }
  return j;
}

std::string decision_line(const std::string& label, const OrthDecision& d, const Tolerances& tol) {
  std::ostringstream os;
  os << label << ": " << (d.verdict ? "true" : "false") << "  margin " << std::setprecision(6) << d.margin;
  if (d.indeterminate(tol)) os << "  (tie band)";
  if (const auto* m = std::get_if<MinimizingScalar>(&d.certificate)) {
    os << "  lambda " << m->lambda << " gives " << m->achieved;
  } else if (std::holds_alternative<WitnessVector>(d.certificate)) {
    os << "  witness vector";
  }
  return os.str();
}

int exit_for(Outcome o) {
  switch (o) {
    case Outcome::Orthogonal:
      return kExitOk;
    case Outcome::NotOrthogonal:
      return kExitNo;
    default:
      return kExitBand;
  }
}

json tolerances_json(const Tolerances& t) {
  return {{"orth", t.orth}, {"ker", t.ker}, {"eig", t.eig}, {"proj", t.proj}, {"vec", t.vec}};
}

json suite_json(const SuiteResult& r) {
  return {{"name", r.name},           {"description", r.description}, {"passed", r.passed},
          {"failed", r.failed},       {"indeterminate", r.indeterminate}, {"ok", r.ok()},
          {"seconds", r.seconds},     {"notes", r.notes}};
}

class Cli {
 public:
  Cli(std::ostream& out, std::ostream& err) : out_(out), err_(err) {}

  int run(int argc, const char* const* argv) {
    CLI::App app{"Strong Birkhoff-James orthogonality in direct sums of matrix algebras", "orthograph"};
    app.require_subcommand(1);
    app.fallthrough();
    app.add_option("--config", config_path_, "JSON config file (default: $ORTHOGRAPH_CONFIG)");
    auto* tol_orth = app.add_option("--tol-orth", tol_orth_, "orthogonality threshold");
    auto* tol_ker = app.add_option("--tol-ker", tol_ker_, "kernel threshold");
    auto* tol_eig = app.add_option("--tol-eig", tol_eig_, "top eigenvalue clustering threshold");
    app.add_flag("--json", json_, "machine-readable output");

    auto* check = app.add_subcommand("check", "decide orthogonality of two elements");
    check->add_option("a", a_file_, "element JSON file")->required();
    check->add_option("b", b_file_, "element JSON file")->required();
    check->add_option("--mode", mode_, "bj, strong or mutual")
        ->check(CLI::IsMember({"bj", "strong", "mutual"}))
        ->capture_default_str();

    auto* witness = app.add_subcommand("witness", "find a neighbour of a non-isolated element");
    witness->add_option("a", a_file_, "element JSON file")->required();

    auto* path = app.add_subcommand("path", "construct a verified path between two elements");
    path->add_option("a", a_file_, "element JSON file")->required();
    path->add_option("b", b_file_, "element JSON file")->required();
    auto* split = path->add_option("--split", split_, "use the direct-sum construction, splitting after this many blocks");
    path->add_flag("--direct-sum", direct_sum_, "direct-sum construction with the split after the first block");

    auto* graph = app.add_subcommand("graph", "sample, build and analyse an orthograph");
    auto* g_shape = graph->add_option("--shape", shape_text_, "block sizes, e.g. 2,3 or [2,3]");
    auto* g_samples = graph->add_option("--samples", samples_, "number of sampled vertices");
    auto* g_seed = graph->add_option("--seed", seed_, "random seed");
    auto* g_augment = graph->add_flag("--augment", augment_, "connect distant pairs with constructed paths");
    auto* g_format = graph->add_option("--format", format_, "dot, json or table")
                         ->check(CLI::IsMember({"dot", "json", "table"}));
    graph->add_option("--out", out_dir_, "directory for orthograph.dot, orthograph.json and report.txt");

    auto* verify = app.add_subcommand("verify", "run the property suites");
    auto* v_samples = verify->add_option("--samples", samples_, "samples per suite (path suites use a fifth)");
    auto* v_seed = verify->add_option("--seed", seed_, "random seed");

    auto* gen = app.add_subcommand("gen", "generate a random element as JSON");
    gen->add_option("--shape", shape_text_, "block sizes")->required();
    gen->add_option("--profile", profile_, "full, deficient:k or projection:k")->capture_default_str();
    auto* gen_seed = gen->add_option("--seed", seed_, "random seed");

    try {
      app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
      const int code = app.exit(e, out_, err_);
      return code == 0 ? kExitOk : kExitError;
    }

    try {
      if (config_path_.empty()) {
        if (const char* env = std::getenv("ORTHOGRAPH_CONFIG"); env && *env) config_path_ = env;
      }
      if (!config_path_.empty()) apply_config_file(config_path_, cfg_);
      if (tol_orth->count()) cfg_.tol.orth = tol_orth_;
      if (tol_ker->count()) cfg_.tol.ker = tol_ker_;
      if (tol_eig->count()) cfg_.tol.eig = tol_eig_;
      if (split->count()) cfg_.split = split_;
      if (g_samples->count() || v_samples->count()) cfg_.samples = samples_;
      if (g_seed->count() || v_seed->count() || gen_seed->count()) cfg_.seed = seed_;
      if (g_augment->count()) cfg_.augment = augment_;
      if (g_format->count()) cfg_.format = format_;
      if (g_shape->count()) {
        const AlgebraShape s = parse_shape(shape_text_);
        cfg_.shape = std::vector<std::size_t>(s.blocks().begin(), s.blocks().end());
      }
      cfg_.tol.validate();

      if (*check) return cmd_check();
      if (*witness) return cmd_witness();
      if (*path) return cmd_path(split->count() > 0 || direct_sum_);
      if (*graph) return cmd_graph();
      if (*verify) return cmd_verify();
      if (*gen) return cmd_gen();
    } catch (const Error& e) {
      return report_error(e.what(), std::string(to_string(e.kind())));
    } catch (const std::exception& e) {
      return report_error(e.what(), "Error");
    }
    return kExitError;
  }

 private:
  int report_error(const std::string& what, const std::string& kind) {
    if (json_) {
      out_ << json{{"error", kind}, {"message", what}}.dump(2) << "\n";
    }
    err_ << "error: " << what << "\n";
    return kExitError;
  }

  int cmd_check() {
    const Element a = read_element_file(a_file_);
    const Element b = read_element_file(b_file_);
    require_same_shape(a, b);
    const Tolerances& tol = cfg_.tol;
    if (mode_ == "mutual") {
      const MutualDecision d = mutual_strong(a, b, tol);
      const Outcome o = d.outcome(tol);
      if (json_) {
        out_ << json{{"command", "check"},
                     {"mode", mode_},
                     {"outcome", outcome_name(o)},
                     {"adjacent", d.adjacent()},
                     {"forward", decision_json(d.forward, tol)},
                     {"backward", decision_json(d.backward, tol)}}
                    .dump(2)
             << "\n";
      } else {
        out_ << decision_line("a ⊥s b", d.forward, tol) << "\n"
             << decision_line("b ⊥s a", d.backward, tol) << "\n"
             << "mutual: " << outcome_name(o) << " (" << (d.forward.verdict ? "true" : "false") << ", "
             << (d.backward.verdict ? "true" : "false") << ")\n";
      }
      return exit_for(o);
    }
    const OrthDecision d = mode_ == "bj" ? bj_orthogonal(a, b, tol) : strong_bj(a, b, tol);
    const Outcome o = d.outcome(tol);
    if (json_) {
      json j = decision_json(d, tol);
      j["command"] = "check";
      j["mode"] = mode_;
      out_ << j.dump(2) << "\n";
    } else {
      out_ << decision_line(mode_ == "bj" ? "a ⊥ b" : "a ⊥s b", d, tol) << "\n";
    }
    return exit_for(o);
  }

  int cmd_witness() {
    const Element a = read_element_file(a_file_);
    const Tolerances& tol = cfg_.tol;
    try {
      const Element b = non_isolated_witness(a, tol);
      const MutualDecision d = mutual_strong(a, b, tol);
      if (json_) {
        out_ << json{{"command", "witness"},
                     {"isolated", false},
                     {"witness", to_json(b)},
                     {"forward", decision_json(d.forward, tol)},
                     {"backward", decision_json(d.backward, tol)}}
                    .dump(2)
             << "\n";
      } else {
        out_ << to_json(b).dump() << "\n"
             << decision_line("a ⊥s b", d.forward, tol) << "\n"
             << decision_line("b ⊥s a", d.backward, tol) << "\n";
      }
      return kExitOk;
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::Isolated) throw;
      if (json_) {
        out_ << json{{"command", "witness"}, {"isolated", true}}.dump(2) << "\n";
      } else {
        out_ << "isolated (right invertible)\n";
      }
      return kExitNo;
    }
  }

  int cmd_path(bool direct_sum) {
    const Element a = read_element_file(a_file_);
    const Element b = read_element_file(b_file_);
    const Tolerances& tol = cfg_.tol;
    OrthPath p;
    try {
      p = direct_sum ? connect_direct_sum(a, b, cfg_.split, tol) : connect(a, b, tol);
    } catch (const Error& e) {
      if (e.kind() == ErrorKind::SmallAlgebra) {
        report_error(e.what(), std::string(to_string(e.kind())));
        return kExitNo;
      }
      if (e.kind() == ErrorKind::RightInvertibleEndpoint) {
        report_error(e.what(), std::string(to_string(e.kind())));
        return kExitBand;
      }
      throw;
    }
    if (!path_is_valid(p, tol)) throw Error(ErrorKind::VerificationFailed, "constructed path failed re-verification");
    if (json_) {
      json vertices = json::array(), edges = json::array();
      for (const Element& v : p.vertices) vertices.push_back(to_json(v));
      for (const MutualDecision& d : p.edges) {
        edges.push_back({{"forward", decision_json(d.forward, tol)}, {"backward", decision_json(d.backward, tol)}});
      }
      out_ << json{{"command", "path"}, {"length", p.length()}, {"vertices", vertices}, {"edges", edges}}.dump(2)
           << "\n";
    } else {
      for (std::size_t i = 0; i < p.vertices.size(); ++i) {
        out_ << "vertex " << i << ": " << to_json(p.vertices[i]).dump() << "\n";
        if (i < p.edges.size()) {
          out_ << "  edge " << i << "-" << i + 1 << ": margins " << p.edges[i].forward.margin << ", "
               << p.edges[i].backward.margin << "\n";
        }
      }
      out_ << "length " << p.length() << "\n";
    }
    return kExitOk;
  }

  int cmd_graph() {
    if (!cfg_.shape) throw Error(ErrorKind::ConfigError, "graph needs --shape");
    const AlgebraShape shape(*cfg_.shape);
    if (cfg_.format != "dot" && cfg_.format != "json" && cfg_.format != "table") {
      throw Error(ErrorKind::ConfigError, "format must be dot, json or table");
    }
    Orthograph g = build_graph(sample_vertices(shape, cfg_.samples.value_or(40), cfg_.seed), cfg_.tol);
    g.seed = cfg_.seed;
    if (cfg_.augment) g = augment_with_paths(g, cfg_.tol);
    const ComponentReport report = components_and_distances(g);
    const std::string table = format_report(g, report);
    if (!out_dir_.empty()) {
      std::filesystem::create_directories(out_dir_);
      write_text_atomic(std::filesystem::path(out_dir_) / "orthograph.dot", export_dot(g));
      write_text_atomic(std::filesystem::path(out_dir_) / "orthograph.json", export_json(g));
      write_text_atomic(std::filesystem::path(out_dir_) / "report.txt", table);
    }
    if (cfg_.format == "dot") {
      out_ << export_dot(g);
    } else if (cfg_.format == "json" || json_) {
      out_ << export_json(g) << "\n";
    } else {
      out_ << table;
    }
    return kExitOk;
  }

  int cmd_verify() {
    VerifyOptions o;
    o.seed = cfg_.seed;
    o.tol = cfg_.tol;
    o.samples = cfg_.samples.value_or(o.samples);
    json suites = json::array();
    bool all = true;
    run_all_suites(o, [&](const SuiteResult& r) {
      all = all && r.ok();
      if (json_) {
        suites.push_back(suite_json(r));
      } else {
        out_ << format_suite(r) << std::endl;
      }
    });
    if (json_) {
      out_ << json{{"command", "verify"}, {"seed", o.seed}, {"samples", o.samples}, {"tolerances", tolerances_json(o.tol)},
                   {"ok", all}, {"suites", suites}}
                  .dump(2)
           << "\n";
    } else {
      out_ << (all ? "all suites passed" : "some suites FAILED") << "\n";
    }
    return all ? kExitOk : kExitNo;
  }

  int cmd_gen() {
    const Element a = sample_element(parse_shape(shape_text_), parse_profile(profile_), cfg_.seed);
    out_ << to_json(a).dump(json_ ? 2 : -1) << "\n";
    return kExitOk;
  }

  std::ostream& out_;
  std::ostream& err_;
  RunConfig cfg_;
  std::string config_path_;
  double tol_orth_ = 0.0, tol_ker_ = 0.0, tol_eig_ = 0.0;
  bool json_ = false;
  std::string a_file_, b_file_;
  std::string mode_ = "mutual";
  std::size_t split_ = 1;
  bool direct_sum_ = false;
  std::string shape_text_;
  std::size_t samples_ = 40;
  std::uint64_t seed_ = 1;
  bool augment_ = false;
  std::string format_ = "table";
  std::string out_dir_;
  std::string profile_ = "full";
};

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  Cli cli(out, err);
  return cli.run(argc, argv);
}

}  // namespace orthograph
