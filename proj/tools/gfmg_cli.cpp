#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "gfmg/study.hpp"
#include "json.hpp"

namespace {

using gfmg::ConfigError;

constexpr int kExitConfig = 2;
constexpr int kExitNoConvergence = 3;

struct RunConfig {
  std::string example;
  std::optional<double> alpha;
  std::optional<std::string> uL, uR, gammaL, gammaR;
  std::vector<int> n;
  std::vector<int> nc;
  std::vector<int> p;
  int nu1 = 1;
  int nu2 = 1;
  std::string cycle = "v";
  double omega1 = 0.5;
  double tol = 1e-6;
  int max_cycles = 200;
  long max_sweeps = 1000000;
  int max_ddm_iters = 200;
  std::uint64_t seed = 1;
  std::string out;
  std::string format = "csv";
  std::string config;
  bool timing = false;
};

struct NonConvergence : std::runtime_error {
  using std::runtime_error::runtime_error;
};

class Command {
 public:
  Command(CLI::App& parent, const std::string& name, const std::string& help, RunConfig& cfg)
      : app_(parent.add_subcommand(name, help)), cfg_(cfg) {
    add("--example", cfg.example, "preset name (example1..example4, jump_study)");
    add("--alpha", cfg.alpha, "interface position in (0,1)");
    add("--uL", cfg.uL, "left exact solution u^L(x)");
    add("--uR", cfg.uR, "right exact solution u^R(x)");
    add("--gammaL", cfg.gammaL, "left coefficient gamma^L(x)");
    add("--gammaR", cfg.gammaR, "right coefficient gamma^R(x)");
    add("--n", cfg.n, "N+1 values, comma separated")->delimiter(',');
    add("--nc", cfg.nc, "coarsest N_c+1 values, comma separated")->delimiter(',');
    add("--nu1", cfg.nu1, "pre-smoothing sweeps");
    add("--nu2", cfg.nu2, "post-smoothing sweeps");
    add("--cycle", cfg.cycle, "v, w or tgcs")->check(CLI::IsMember({"v", "w", "tgcs"}));
    add("--omega1", cfg.omega1, "weight of the reduced left restriction");
    add("--tol", cfg.tol, "relative successive-change tolerance");
    add("--max-cycles", cfg.max_cycles, "cycle cap (also the rho estimator cap)");
    add("--seed", cfg.seed, "seed of the random initial guess");
    add("--out", cfg.out, "output directory; stdout when omitted");
    add("--format", cfg.format, "csv, json or both")->check(CLI::IsMember({"csv", "json", "both"}));
    add("--config", cfg.config, "JSON file of defaults; flags override it");
    app_->add_flag("--timing", cfg.timing, "include wall time in JSON reports");
    flags_["timing"] = app_->get_option("--timing");
  }

  CLI::App* app() { return app_; }

  template <class T>
  CLI::Option* add(const std::string& flag, T& target, const std::string& help) {
    CLI::Option* o = app_->add_option(flag, target, help);
    std::string key = flag.substr(2);
    for (char& c : key) {
      if (c == '-') c = '_';
    }
    flags_[key] = o;
    return o;
  }

  bool given(const std::string& key) const {
    auto it = flags_.find(key);
    return it != flags_.end() && it->second->count() > 0;
  }

 private:
  CLI::App* app_;
  RunConfig& cfg_;
  std::map<std::string, CLI::Option*> flags_;
};

template <class T>
void take(const nlohmann::json& j, const Command& cmd, const std::string& key, T& target) {
  if (!j.contains(key) || cmd.given(key)) return;
  try {
    target = j.at(key).get<T>();
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("config key '" + key + "': " + e.what());
  }
}

template <class T>
void take(const nlohmann::json& j, const Command& cmd, const std::string& key, std::optional<T>& target) {
  if (!j.contains(key) || cmd.given(key)) return;
  T v{};
  take(j, cmd, key, v);
  target = v;
}

void merge_config_file(RunConfig& cfg, const Command& cmd) {
  if (cfg.config.empty()) return;
  std::ifstream in(cfg.config);
  if (!in) throw ConfigError("cannot read config file '" + cfg.config + "'");
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError("config file '" + cfg.config + "' is not valid JSON: " + e.what());
  }
  if (!j.is_object()) throw ConfigError("config file must hold a JSON object");
  static const std::vector<std::string> known{"example", "alpha", "uL",         "uR",        "gammaL",
                                              "gammaR",  "n",     "nc",         "p",         "nu1",
                                              "nu2",     "cycle", "omega1",     "tol",       "max_cycles",
                                              "seed",    "out",   "format",     "timing",    "max_sweeps",
                                              "max_ddm_iters"};
  for (const auto& [key, value] : j.items()) {
    if (std::find(known.begin(), known.end(), key) == known.end()) {
      throw ConfigError("unknown config key '" + key + "'");
    }
  }
  take(j, cmd, "example", cfg.example);
  take(j, cmd, "alpha", cfg.alpha);
  take(j, cmd, "uL", cfg.uL);
  take(j, cmd, "uR", cfg.uR);
  take(j, cmd, "gammaL", cfg.gammaL);
  take(j, cmd, "gammaR", cfg.gammaR);
  take(j, cmd, "n", cfg.n);
  take(j, cmd, "nc", cfg.nc);
  take(j, cmd, "p", cfg.p);
  take(j, cmd, "nu1", cfg.nu1);
  take(j, cmd, "nu2", cfg.nu2);
  take(j, cmd, "cycle", cfg.cycle);
  take(j, cmd, "omega1", cfg.omega1);
  take(j, cmd, "tol", cfg.tol);
  take(j, cmd, "max_cycles", cfg.max_cycles);
  take(j, cmd, "seed", cfg.seed);
  take(j, cmd, "out", cfg.out);
  take(j, cmd, "format", cfg.format);
  take(j, cmd, "timing", cfg.timing);
  take(j, cmd, "max_sweeps", cfg.max_sweeps);
  take(j, cmd, "max_ddm_iters", cfg.max_ddm_iters);
  if (cfg.format != "csv" && cfg.format != "json" && cfg.format != "both") {
    throw ConfigError("format must be csv, json or both");
  }
}

gfmg::ExampleSpec resolve_example(const RunConfig& cfg) {
  if (cfg.example.empty()) {
    if (!cfg.alpha || !cfg.uL || !cfg.uR || !cfg.gammaL || !cfg.gammaR) {
      throw ConfigError("give --example or all of --alpha, --uL, --uR, --gammaL, --gammaR");
    }
    return gfmg::make_example("custom", *cfg.alpha, *cfg.uL, *cfg.uR, *cfg.gammaL, *cfg.gammaR);
  }
  const gfmg::ExampleSpec base = gfmg::preset(cfg.example);
  if (!cfg.alpha && !cfg.uL && !cfg.uR && !cfg.gammaL && !cfg.gammaR) return base;
  return gfmg::make_example(base.name, cfg.alpha.value_or(base.alpha), cfg.uL.value_or(base.uL.source()),
                            cfg.uR.value_or(base.uR.source()), cfg.gammaL.value_or(base.gammaL.source()),
                            cfg.gammaR.value_or(base.gammaR.source()));
}

gfmg::MgParams mg_params(const RunConfig& cfg, int nc) {
  gfmg::MgParams m;
  m.nu1 = cfg.nu1;
  m.nu2 = cfg.nu2;
  m.cycle = gfmg::parse_cycle_type(cfg.cycle);
  m.omega1 = cfg.omega1;
  m.coarsest_intervals = nc;
  m.tol = cfg.tol;
  m.max_cycles = cfg.max_cycles;
  if (!(m.tol > 0.0)) throw ConfigError("tol must be positive");
  if (m.max_cycles < 1) throw ConfigError("max-cycles must be at least 1");
  return m;
}

int single(const std::vector<int>& v, const std::string& flag) {
  if (v.size() != 1) throw ConfigError(flag + " takes a single value for this command");
  return v.front();
}

std::vector<int> or_default(const std::vector<int>& v, std::vector<int> fallback) { return v.empty() ? fallback : v; }

/// Checks that every multigrid level exists for this interface before any solve.
void check_grid(const gfmg::ExampleSpec& spec, int intervals, const gfmg::MgParams& mgp) {
  for (int size : gfmg::level_intervals(intervals, mgp)) gfmg::GridSpec(size - 1, spec.alpha);
}

class Output {
 public:
  explicit Output(const RunConfig& cfg) : cfg_(cfg) {
    if (!cfg.out.empty()) std::filesystem::create_directories(cfg.out);
  }
  bool csv() const { return cfg_.format != "json"; }
  bool json() const { return cfg_.format != "csv"; }

  void write(const std::string& file, const std::string& content) const {
    if (cfg_.out.empty()) {
      std::cout << content;
      return;
    }
    const std::filesystem::path path = std::filesystem::path(cfg_.out) / file;
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot write " + path.string());
    f << content;
  }

 private:
  const RunConfig& cfg_;
};

int cmd_solve(const RunConfig& cfg) {
  const gfmg::ExampleSpec spec = resolve_example(cfg);
  const int n = single(or_default(cfg.n, {64}), "--n");
  const gfmg::MgParams mgp = mg_params(cfg, single(or_default(cfg.nc, {16}), "--nc"));
  check_grid(spec, n, mgp);
  const gfmg::SolveReport r = gfmg::run_solve(spec, n, mgp);
  const Output out(cfg);
  if (out.csv()) out.write("solution.csv", gfmg::solution_csv(r));
  if (out.json()) out.write("report.json", gfmg::solve_json(r, mgp, cfg.timing));
  if (!r.result.report.converged) {
    throw NonConvergence("multigrid did not reach tol=" + gfmg::format_sci(mgp.tol) + " in " +
                         std::to_string(mgp.max_cycles) + " cycles");
  }
  return 0;
}

int cmd_convergence(const RunConfig& cfg) {
  const gfmg::ExampleSpec spec = resolve_example(cfg);
  const std::vector<int> n = or_default(cfg.n, {64, 128, 256, 512, 1024});
  const gfmg::MgParams mgp = mg_params(cfg, single(or_default(cfg.nc, {16}), "--nc"));
  for (int size : n) check_grid(spec, size, mgp);
  const gfmg::ConvergenceStudy s = gfmg::run_convergence_study(spec, n, mgp);
  const Output out(cfg);
  if (out.csv()) out.write("convergence.csv", gfmg::convergence_csv(s));
  if (out.json()) out.write("convergence.json", gfmg::convergence_json(spec, s, mgp));
  if (!s.all_converged()) throw NonConvergence("multigrid did not converge on every grid");
  return 0;
}

int cmd_mgfactor(const RunConfig& cfg) {
  const gfmg::ExampleSpec spec = resolve_example(cfg);
  const std::vector<int> n = or_default(cfg.n, {32, 64, 128, 256, 512, 1024, 2048, 4096});
  const std::vector<int> nc = or_default(cfg.nc, {16, 32, 64, 128});
  const gfmg::MgParams mgp = mg_params(cfg, nc.front());
  const gfmg::MgFactorStudy s = gfmg::run_mgfactor_study(spec, n, nc, mgp, cfg.seed);
  const Output out(cfg);
  if (out.csv()) out.write("mg_factor.csv", gfmg::mgfactor_csv(s));
  if (out.json()) out.write("mg_factor.json", gfmg::mgfactor_json(spec, s, mgp, cfg.seed));
  return 0;
}

int cmd_jump(const RunConfig& cfg) {
  const int n = single(or_default(cfg.n, {256}), "--n");
  const std::vector<int> p = or_default(cfg.p, {0, 1, 2, 3, 4, 5});
  const gfmg::MgParams mgp = mg_params(cfg, single(or_default(cfg.nc, {16}), "--nc"));
  check_grid(gfmg::preset("jump_study"), n, mgp);
  const gfmg::JumpStudy s = gfmg::run_jump_study(p, n, mgp, cfg.seed);
  const Output out(cfg);
  if (out.csv()) out.write("jump.csv", gfmg::jump_csv(s));
  if (out.json()) out.write("jump.json", gfmg::jump_json(s, n, mgp, cfg.seed));
  return 0;
}

int cmd_compare_ddm(const RunConfig& cfg) {
  const gfmg::ExampleSpec spec = resolve_example(cfg);
  const int n = single(or_default(cfg.n, {64}), "--n");
  const gfmg::MgParams mgp = mg_params(cfg, single(or_default(cfg.nc, {16}), "--nc"));
  check_grid(spec, n, mgp);
  if (cfg.max_sweeps < 1 || cfg.max_ddm_iters < 1) throw ConfigError("iteration caps must be positive");
  const gfmg::DdmComparison c = gfmg::run_ddm_comparison(spec, n, mgp, cfg.max_sweeps, cfg.max_ddm_iters);
  const Output out(cfg);
  if (out.csv()) out.write("ddm_compare.csv", gfmg::ddm_csv(c));
  if (out.json()) out.write("ddm_compare.json", gfmg::ddm_json(spec, n, c, mgp));
  if (!c.rows.front().converged) throw NonConvergence("multigrid did not converge");
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Ghost-fluid multigrid solver for 1D elliptic interface problems"};
  app.require_subcommand(1);
  RunConfig cfg;

  Command solve(app, "solve", "solve one problem and write the solution and a report", cfg);
  CLI::App* study = app.add_subcommand("study", "tables of errors and convergence factors");
  study->require_subcommand(1);
  Command convergence(*study, "convergence", "errors and orders over a doubling N+1 list", cfg);
  Command mgfactor(*study, "mg-factor", "convergence factor matrix over N+1 and N_c+1", cfg);
  Command jump(*study, "jump", "convergence factor for gamma^L = 10^p, gamma^R = 1", cfg);
  jump.add("--p", cfg.p, "jump exponents, comma separated")->delimiter(',');
  CLI::App* compare = app.add_subcommand("compare", "method comparisons");
  compare->require_subcommand(1);
  Command ddm(*compare, "ddm", "multigrid vs Gauss-Seidel vs Dirichlet-Neumann", cfg);
  ddm.add("--max-sweeps", cfg.max_sweeps, "Gauss-Seidel sweep cap");
  ddm.add("--max-ddm-iters", cfg.max_ddm_iters, "Dirichlet-Neumann iteration cap");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  }

  const std::vector<std::pair<Command*, int (*)(const RunConfig&)>> commands{
      {&solve, cmd_solve}, {&convergence, cmd_convergence}, {&mgfactor, cmd_mgfactor},
      {&jump, cmd_jump},   {&ddm, cmd_compare_ddm}};
  try {
    for (const auto& [cmd, run] : commands) {
      if (!cmd->app()->parsed()) continue;
      merge_config_file(cfg, *cmd);
      return run(cfg);
    }
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const NonConvergence& e) {
    std::cerr << "not converged: " << e.what() << "\n";
    return kExitNoConvergence;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return kExitConfig;
}
