#include "cones/cli.hpp"

#include <CLI11.hpp>
#include <cstdlib>
#include <filesystem>
#include <map>
#include <sstream>

#include "cones/errors.hpp"
#include "cones/harness.hpp"
#include "cones/reproduce.hpp"
#include "cones/serialize.hpp"
#include "cones/verify.hpp"

namespace cones {

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string join_names(const std::vector<std::string>& v) {
  std::string s;
  for (const auto& x : v) s += (s.empty() ? "" : ", ") + x;
  return s;
}

std::map<std::string, double> parse_params(const std::vector<std::string>& kvs) {
  std::map<std::string, double> m;
  for (const std::string& kv : kvs) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos || eq == 0) throw UsageError("--param expects key=value, got '" + kv + "'");
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(kv.substr(eq + 1), &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != kv.size() - eq - 1) throw UsageError("--param value is not a number in '" + kv + "'");
    m[kv.substr(0, eq)] = v;
  }
  return m;
}

// "16,32,64" or "2..200" or a mix such as "1..4,8".
std::vector<int> parse_T_list(const std::string& s) {
  std::vector<int> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto dots = item.find("..");
    try {
      if (dots == std::string::npos) {
        out.push_back(std::stoi(item));
      } else {
        const int a = std::stoi(item.substr(0, dots)), b = std::stoi(item.substr(dots + 2));
        for (int t = a; t <= b; ++t) out.push_back(t);
      }
    } catch (const std::exception&) {
      throw UsageError("bad --T-list entry '" + item + "'");
    }
  }
  if (out.empty()) throw UsageError("--T-list is empty");
  return out;
}

std::string out_dir(const std::string& flag) {
  if (const char* env = std::getenv("CONES_OUT"); env && *env) return env;
  return flag;
}

struct Common {
  std::string policy = "frugal";
  std::string family = "sc_lb";
  std::vector<std::string> params;
  double eps = 0.0;
  double eps_power = -1.0;
  long seed = -1;
  std::string out = "out";
  std::string format = "csv";
};

void add_common(CLI::App* sub, Common& c) {
  sub->add_option("--policy", c.policy, "greedy | frugal | lsp | gap_frugal | ab")->capture_default_str();
  sub->add_option("--family", c.family, "instance family: " + join_names(family_names()))->capture_default_str();
  sub->add_option("--param", c.params, "family parameter key=value (repeatable), e.g. r0=1, D=4, T_freeze=7");
  sub->add_option("--eps", c.eps, "LSP tolerance (overrides --eps-power)");
  sub->add_option("--eps-power", c.eps_power, "LSP tolerance as T^p")->capture_default_str();
  sub->add_option("--seed", c.seed, "seed for random_1d_lin (same as --param seed=...)");
  sub->add_option("--out", c.out, "output directory (CONES_OUT takes precedence)")->capture_default_str();
  sub->add_option("--format", c.format, "csv | json")->check(CLI::IsMember({"csv", "json"}))->capture_default_str();
}

PolicyParams policy_params(const Common& c) {
  PolicyParams p;
  p.eps = c.eps;
  p.eps_power = c.eps_power;
  return p;
}

std::map<std::string, double> family_params(const Common& c) {
  auto m = parse_params(c.params);
  if (c.seed >= 0) m["seed"] = static_cast<double>(c.seed);
  return m;
}

void check_names(const Common& c) {
  const auto& pn = policy_names();
  if (std::find(pn.begin(), pn.end(), c.policy) == pn.end())
    throw ParameterError("unknown policy '" + c.policy + "'; expected one of: " + join_names(pn));
  const auto& fn = family_names();
  if (std::find(fn.begin(), fn.end(), c.family) == fn.end() && c.family != "sharp_adv" && c.family != "sc_adv")
    throw ParameterError("unknown family '" + c.family + "'; expected one of: " + join_names(fn));
}

int cmd_run(const Common& c, int T, std::ostream& out) {
  check_names(c);
  const Instance inst = make_instance(c.family, T, family_params(c));
  const Trace tr = run(c.policy, policy_params(c), inst);
  const std::string path = (std::filesystem::path(out_dir(c.out)) /
                            (c.policy + "_" + c.family + "_" + std::to_string(T) + "." + c.format)).string();
  if (c.format == "csv") emit_csv(tr, path);
  else write_text(path, to_json(tr).dump(1) + "\n");
  const StepRecord& last = tr.records.back();
  out << "policy=" << c.policy << " family=" << c.family << " T=" << T << " regret_final=" << fmt_num(last.regret_cum)
      << " move_final=" << fmt_num(last.move_cum) << " jumps=" << tr.jump_times.size();
  if (!tr.jump_times.empty()) {
    out << " jump_times=";
    for (std::size_t i = 0; i < tr.jump_times.size(); ++i) out << (i ? "," : "") << tr.jump_times[i];
  }
  if (inst.adaptive()) out << " completed_periods=" << tr.completed_periods;
  out << " out=" << path << "\n";
  return 0;
}

int cmd_sweep(const Common& c, const std::string& T_list, std::ostream& out) {
  check_names(c);
  const std::vector<int> Ts = parse_T_list(T_list);
  const auto table = sweep_T(c.policy, policy_params(c), c.family, Ts, family_params(c));
  const std::string range = Ts.size() == 1 ? std::to_string(Ts[0]) : std::to_string(Ts.front()) + "-" + std::to_string(Ts.back());
  const std::string path =
      (std::filesystem::path(out_dir(c.out)) / (c.policy + "_" + c.family + "_" + range + "." + c.format)).string();
  if (c.format == "csv") emit_csv(table, path);
  else write_text(path, to_json(table).dump(1) + "\n");
  for (const SweepRow& r : table)
    out << "T=" << r.T << " regret_final=" << fmt_num(r.regret_final) << " move_final=" << fmt_num(r.move_final)
        << " jumps=" << r.jumps << "\n";
  try {
    out << "loglog_slope(move_final)=" << fmt_num(fit_loglog_slope(table, "move_final")) << "\n";
  } catch (const DegenerateFit& e) {
    out << "loglog_slope(move_final)=n/a (" << e.what() << ")\n";
  }
  out << "out=" << path << "\n";
  return 0;
}

int cmd_reproduce(const std::string& name, const std::string& dir, std::ostream& out) {
  for (const std::string& p : reproduce(name, out_dir(dir))) out << p << "\n";
  return 0;
}

int cmd_verify(const std::string& suite, bool inject_fault, std::ostream& out) {
  VerifyOptions opt;
  opt.disable_jump = inject_fault;
  int failed = 0;
  const auto results = run_verify(suite, opt);
  for (const CheckResult& r : results) {
    out << (r.pass ? "[PASS] " : "[FAIL] ") << r.suite << ": " << r.name;
    if (!r.pass) out << " -- " << r.detail;
    out << "\n";
    failed += r.pass ? 0 : 1;
  }
  out << results.size() - failed << "/" << results.size() << " checks passed\n";
  return failed == 0 ? 0 : 1;
}

}  // namespace

int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Benchmark harness for online convex optimization with nested feasible sets"};
  app.require_subcommand(1);

  Common run_c, sweep_c;
  int run_T = 200;
  std::string T_list = "16,32,64,128,256";
  CLI::App* run_cmd = app.add_subcommand("run", "play one policy on one instance and write its trace");
  add_common(run_cmd, run_c);
  run_cmd->add_option("--T", run_T, "horizon")->capture_default_str();
  CLI::App* sweep_cmd = app.add_subcommand("sweep", "run one policy over several horizons");
  add_common(sweep_cmd, sweep_c);
  sweep_cmd->add_option("--T-list", T_list, "horizons, e.g. 16,32,64 or 2..200")->capture_default_str();

  std::string fig;
  std::string rep_out = "out";
  CLI::App* rep_cmd = app.add_subcommand("reproduce", "write the data bundle of a simulation figure");
  rep_cmd->add_option("name", fig, "fig3 | fig4 | fig5")->required()->check(CLI::IsMember(figure_names()));
  rep_cmd->add_option("--out", rep_out, "output directory (CONES_OUT takes precedence)")->capture_default_str();

  std::string suite = "all";
  bool inject = false;
  CLI::App* ver_cmd = app.add_subcommand("verify", "run invariant suites");
  ver_cmd->add_option("suite", suite, "geometry | solvers | algorithms | instances | oracle | all")
      ->check(CLI::IsMember(verify_suites()))
      ->capture_default_str();
  ver_cmd->add_flag("--inject-fault", inject, "disable the Frugal jump branch (the regret check must fail)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }
  try {
    if (run_cmd->parsed()) return cmd_run(run_c, run_T, out);
    if (sweep_cmd->parsed()) return cmd_sweep(sweep_c, T_list, out);
    if (rep_cmd->parsed()) return cmd_reproduce(fig, rep_out, out);
    if (ver_cmd->parsed()) return cmd_verify(suite, inject, out);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}

}  // namespace cones
