#include "cones/serialize.hpp"

#include "cones/errors.hpp"

namespace cones {

using nlohmann::json;

namespace {

Point point_from_json(const json& j) {
  Point x(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) x(static_cast<Eigen::Index>(i)) = j[i].get<double>();
  return x;
}

ObjKind kind_from_name(const std::string& s) {
  for (ObjKind k : {ObjKind::Quadratic, ObjKind::SquaredNorm, ObjKind::ScaledNorm, ObjKind::MaxAbs,
                    ObjKind::LinearPlusQuad, ObjKind::AbsShift, ObjKind::Constant})
    if (kind_name(k) == s) return k;
  throw ParameterError("unknown objective kind '" + s + "'");
}

}  // namespace

json to_json(const Point& x) {
  json j = json::array();
  for (Eigen::Index i = 0; i < x.size(); ++i) j.push_back(x(i));
  return j;
}

json to_json(const Halfspace& h) { return {{"a", to_json(h.a)}, {"b", h.b}}; }

json to_json(const ConvexSet& S) {
  json j;
  if (S.base_kind() == ConvexSet::Kind::Box) {
    j["base"] = {{"type", "box"}, {"lo", to_json(S.lo())}, {"hi", to_json(S.hi())}};
  } else {
    j["base"] = {{"type", "ball"}, {"center", to_json(S.center())}, {"radius", S.radius()}};
  }
  j["cuts"] = json::array();
  for (const Halfspace& h : S.cuts()) j["cuts"].push_back(to_json(h));
  if (const auto* poly = S.polygon()) {
    j["polygon"] = json::array();
    for (const Vec2& v : *poly) j["polygon"].push_back({v.x(), v.y()});
  }
  return j;
}

ConvexSet convex_set_from_json(const json& j) {
  const json& b = j.at("base");
  const std::string type = b.at("type").get<std::string>();
  ConvexSet base = type == "box"    ? ConvexSet::box(point_from_json(b.at("lo")), point_from_json(b.at("hi")))
                   : type == "ball" ? ConvexSet::ball(point_from_json(b.at("center")), b.at("radius").get<double>())
                                    : throw ParameterError("unknown set base '" + type + "'");
  std::vector<Halfspace> cuts;
  for (const json& h : j.value("cuts", json::array()))
    cuts.push_back(make_halfspace(point_from_json(h.at("a")), h.at("b").get<double>()));
  return cuts.empty() ? base : ConvexSet::cut(base, cuts);
}

json to_json(const Objective& f) {
  json j = {{"kind", kind_name(f.kind)}, {"dim", f.dim}, {"value_shift", f.value_shift}};
  switch (f.kind) {
    case ObjKind::Quadratic: j["center"] = to_json(f.center); break;
    case ObjKind::ScaledNorm: j["c"] = f.c; j["center"] = to_json(f.center); break;
    case ObjKind::LinearPlusQuad: j["eps"] = f.eps; break;
    case ObjKind::AbsShift: j["m"] = f.m; break;
    case ObjKind::Constant: j["value"] = f.c; break;
    default: break;
  }
  json reg = json::object();
  if (f.reg.G) reg["G"] = *f.reg.G;
  if (f.reg.mu) reg["mu"] = *f.reg.mu;
  if (f.reg.L) reg["L"] = *f.reg.L;
  if (f.reg.alpha) reg["alpha"] = *f.reg.alpha;
  j["regularity"] = reg;
  return j;
}

Objective objective_from_json(const json& j) {
  Objective f;
  switch (kind_from_name(j.at("kind").get<std::string>())) {
    case ObjKind::Quadratic: f = Objective::quadratic(point_from_json(j.at("center"))); break;
    case ObjKind::SquaredNorm: f = Objective::squared_norm(j.at("dim").get<int>()); break;
    case ObjKind::ScaledNorm: f = Objective::scaled_norm(j.at("c").get<double>(), point_from_json(j.at("center"))); break;
    case ObjKind::MaxAbs: f = Objective::max_abs(); break;
    case ObjKind::LinearPlusQuad: f = Objective::linear_plus_quad(j.at("eps").get<double>()); break;
    case ObjKind::AbsShift: f = Objective::abs_shift(j.at("m").get<double>()); break;
    case ObjKind::Constant: f = Objective::constant(j.at("dim").get<int>(), j.at("value").get<double>()); break;
  }
  f.value_shift = j.value("value_shift", 0.0);
  if (j.contains("regularity")) {
    const json& r = j["regularity"];
    if (r.contains("G")) f.reg.G = r["G"].get<double>();
    if (r.contains("mu")) f.reg.mu = r["mu"].get<double>();
    if (r.contains("L")) f.reg.L = r["L"].get<double>();
    if (r.contains("alpha")) f.reg.alpha = r["alpha"].get<double>();
  }
  return f;
}

json to_json(const Instance& inst) {
  json j = {{"family", inst.family}, {"T", inst.T}, {"x0", to_json(inst.x0)}, {"meta", inst.meta},
            {"adaptive", inst.adaptive()}};
  j["objectives"] = json::array();
  for (const Objective& f : inst.objectives) j["objectives"].push_back(to_json(f));
  j["sets"] = json::array();
  for (const ConvexSet& S : inst.sets) j["sets"].push_back(to_json(S));
  return j;
}

json to_json(const Trace& trace) {
  json j = {{"policy_name", trace.policy_name}, {"family", trace.family}, {"x0", to_json(trace.x0)},
            {"instance_meta", trace.instance_meta}, {"jump_times", trace.jump_times}};
  if (!trace.period_starts.empty()) {
    j["period_starts"] = trace.period_starts;
    j["completed_periods"] = trace.completed_periods;
  }
  j["records"] = json::array();
  for (const StepRecord& r : trace.records) {
    json row = {{"t", r.t}};
    for (Eigen::Index i = 0; i < r.x.size(); ++i) row["x" + std::to_string(i)] = r.x(i);
    row["f_x"] = r.f_x;
    row["v_t"] = r.v_t;
    row["move_inc"] = r.move_inc;
    row["move_cum"] = r.move_cum;
    row["F_t"] = r.F_t;
    row["regret_cum"] = r.regret_cum;
    row["kind"] = step_kind_name(r.kind);
    row["phase"] = r.phase;
    j["records"].push_back(row);
  }
  return j;
}

json to_json(const std::vector<SweepRow>& table) {
  json j = json::array();
  for (const SweepRow& r : table)
    j.push_back({{"T", r.T}, {"regret_final", r.regret_final}, {"move_final", r.move_final}, {"jumps", r.jumps},
                 {"runtime_ms", r.runtime_ms}});
  return j;
}

}  // namespace cones
