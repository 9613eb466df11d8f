#include "cones/reproduce.hpp"

#include <cmath>
#include <filesystem>
#include <sstream>

#include "cones/errors.hpp"
#include "cones/harness.hpp"
#include "cones/serialize.hpp"
#include "cones/solvers.hpp"

namespace cones {

namespace {

const double kR0 = 1.0;
const double kD = 4.0;

struct Variant {
  std::string label;
  std::string policy;
  PolicyParams params;
};

PolicyParams lsp_power(double power) {
  PolicyParams p;
  p.eps_power = power;
  return p;
}

std::string join(const std::string& dir, const std::string& file) {
  return (std::filesystem::path(dir) / file).string();
}

void emit_trace(const Trace& tr, const std::string& dir, const std::string& stem, std::vector<std::string>& out) {
  out.push_back(join(dir, stem + ".csv"));
  emit_csv(tr, out.back());
  out.push_back(join(dir, stem + ".json"));
  write_text(out.back(), to_json(tr).dump(1) + "\n");
}

// Polygon vertices of every set plus the constrained minimizers.
std::string geometry_csv(const Instance& inst) {
  std::ostringstream os;
  os << "t,kind,index,x0,x1\n";
  for (std::size_t t = 0; t < inst.sets.size(); ++t) {
    const auto* poly = inst.sets[t].polygon();
    if (!poly) throw ParameterError("geometry export needs planar polygon sets");
    for (std::size_t i = 0; i < poly->size(); ++i)
      os << t + 1 << ",vertex," << i << ',' << fmt_num((*poly)[i].x()) << ',' << fmt_num((*poly)[i].y()) << '\n';
  }
  return os.str();
}

std::string minimizers_csv(const Instance& inst) {
  std::ostringstream os;
  os << "t,kind,index,x0,x1\n";
  for (std::size_t t = 0; t < inst.sets.size(); ++t) {
    const Point x = minimize_over(inst.objective(static_cast<int>(t) + 1), inst.sets[t]).argmin;
    os << t + 1 << ",minimizer,0," << fmt_num(x(0)) << ',' << fmt_num(x(1)) << '\n';
  }
  return os.str();
}

std::vector<std::string> fig3(const std::string& dir) {
  const int T = 7;
  // Round one presents X itself, then the T tangent cuts (same convention as the frozen instance).
  const Instance inst = gen_sc_lower_bound(T + 1, kR0, kD, true);
  const std::string tag = "_sc_lb_" + std::to_string(T);
  std::vector<std::string> out;
  std::string geo = geometry_csv(inst);
  const std::string mins = minimizers_csv(inst);
  geo += mins.substr(mins.find('\n') + 1);
  out.push_back(join(dir, "fig3_geometry" + tag + ".csv"));
  write_text(out.back(), geo);
  out.push_back(join(dir, "fig3_instance" + tag + ".json"));
  write_text(out.back(), to_json(inst).dump(1) + "\n");
  for (const Variant& v : {Variant{"greedy", "greedy", {}}, Variant{"frugal", "frugal", {}},
                           Variant{"lsp", "lsp", lsp_power(-1.0)}})
    emit_trace(run(v.policy, v.params, inst), dir, "fig3_" + v.label + tag, out);
  return out;
}

std::vector<std::string> fig4(const std::string& dir) {
  std::vector<int> Ts;
  for (int T = 2; T <= 200; ++T) Ts.push_back(T);
  std::vector<std::string> out;
  for (const Variant& v : {Variant{"greedy", "greedy", {}}, Variant{"frugal", "frugal", {}},
                           Variant{"lsp_sqrtT", "lsp", lsp_power(-0.5)}, Variant{"lsp_invT", "lsp", lsp_power(-1.0)}}) {
    const auto table = sweep_T(v.policy, v.params, "sc_lb", Ts, {{"r0", kR0}, {"D", kD}});
    const std::string stem = "fig4_" + v.label + "_sc_lb_200";
    out.push_back(join(dir, stem + ".csv"));
    emit_csv(table, out.back());
    out.push_back(join(dir, stem + ".json"));
    write_text(out.back(), to_json(table).dump(1) + "\n");
  }
  return out;
}

std::vector<std::string> fig5(const std::string& dir) {
  const Instance inst = gen_frozen(7, 200, kR0, kD);
  std::vector<std::string> out;
  for (const Variant& v : {Variant{"greedy", "greedy", {}}, Variant{"frugal", "frugal", {}},
                           Variant{"lsp_sqrtT", "lsp", lsp_power(-0.5)}, Variant{"lsp_invT", "lsp", lsp_power(-1.0)},
                           Variant{"gap_frugal", "gap_frugal", {}}})
    emit_trace(run(v.policy, v.params, inst), dir, "fig5_" + v.label + "_frozen_200", out);
  return out;
}

}  // namespace

const std::vector<std::string>& figure_names() {
  static const std::vector<std::string> names = {"fig3", "fig4", "fig5"};
  return names;
}

std::vector<std::string> reproduce(const std::string& name, const std::string& out_dir) {
  if (name == "fig3") return fig3(out_dir);
  if (name == "fig4") return fig4(out_dir);
  if (name == "fig5") return fig5(out_dir);
  throw ParameterError("unknown figure '" + name + "' (expected fig3, fig4 or fig5)");
}

}  // namespace cones
