#include "renorm/json_io.hpp"

#include <stdexcept>

namespace renorm::io {

json to_json(const Rational& r) { return {{"num", r.get_num().get_str()}, {"den", r.get_den().get_str()}}; }
json to_json(const Angle& a) { return to_json(a.value()); }

json to_json(const Arc& a) { return {{"start", to_json(a.start())}, {"len", to_json(a.length())}}; }

json to_json(const ArcSet& s) {
  json out = json::array();
  for (std::size_t i = 0; i < s.size(); ++i) {
    json arc = to_json(s[i]);
    if (s.is_labeled()) arc["label"] = s.labels()[i];
    out.push_back(std::move(arc));
  }
  return out;
}

json to_json(const RayPair& p) { return {{"period", p.period}, {"lo", to_json(p.lo)}, {"hi", to_json(p.hi)}}; }

json to_json(const RenormCombinatorics& comb) {
  json levels = json::array();
  for (const auto& p : comb.levels) levels.push_back(to_json(p));
  return {{"levels", levels}};
}

json to_json(const Complex& z) { return json::array({z.real(), z.imag()}); }

json to_json(const Chord& c) { return {{"a", to_json(c.a())}, {"b", to_json(c.b())}}; }

json to_json(const CheckResult& c) {
  json out = {{"check", c.check}, {"pass", c.pass}, {"witness", c.witness}};
  if (c.level > 0) out["level"] = c.level;
  return out;
}

json to_json(const RayPath& path) {
  json points = json::array();
  for (const auto& z : path.points) points.push_back(to_json(z));
  json out = {{"angle", to_json(path.angle)}, {"points", points}, {"levels", path.levels},
              {"aborted", path.aborted},    {"status", path.status}};
  if (path.landing) {
    out["landing"] = {{"point", to_json(path.landing->point)},
                      {"residual", path.landing->residual},
                      {"method", path.landing->method}};
  } else {
    out["landing"] = nullptr;
  }
  return out;
}

json to_json(const PeriodicPoint& p) {
  return {{"point", to_json(p.point)},
          {"multiplier", to_json(p.multiplier)},
          {"residual", p.residual},
          {"converged", p.converged}};
}

namespace {

json summary(const ExpansionSummary& s) {
  return {{"used", s.used}, {"excluded", s.excluded}, {"min", s.min}, {"max", s.max}, {"geometric_mean", s.geometric_mean}};
}

}  // namespace

json to_json(const ExpansionReport& r) {
  json samples = json::array();
  for (const auto& s : r.samples) {
    json item = {{"point", to_json(s.point)}, {"escaped", s.escaped}};
    if (!s.escaped) {
      item["euclidean"] = s.euclidean;
      item["spherical"] = s.spherical;
    }
    samples.push_back(std::move(item));
  }
  return {{"m", r.m}, {"euclidean", summary(r.euclidean)}, {"spherical", summary(r.spherical)}, {"samples", samples}};
}

json to_json(const TelescopeReport& r) {
  json stages = json::array();
  for (const auto& s : r.stages) {
    json item = {{"l", s.l}, {"n", s.n}, {"branch_ok", s.branch_ok}, {"univalent", s.univalent}, {"pass", s.pass}};
    item["ratio"] = s.ratio ? json(*s.ratio) : json(nullptr);
    item["cond_i"] = s.cond_i ? json(*s.cond_i) : json(nullptr);
    item["margin"] = s.margin ? json(*s.margin) : json(nullptr);
    item["cond_ii"] = s.cond_ii ? json(*s.cond_ii) : json(nullptr);
    if (!s.failure.empty()) item["failure"] = s.failure;
    stages.push_back(std::move(item));
  }
  return {{"r", r.r},
          {"kappa", r.kappa},
          {"delta", r.delta},
          {"k", r.k},
          {"times", r.times},
          {"stages", stages},
          {"aborted_at", r.aborted_at ? json(*r.aborted_at) : json(nullptr)},
          {"pass", r.pass},
          {"certification", r.certification}};
}

json to_json(const RotationSet& s) {
  json points = json::array();
  for (const auto& p : s.points) points.push_back(to_json(p));
  return {{"points", points}, {"rho", to_string(s.rho)}};
}

Rational rational_from_json(const json& j) {
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_object() && j.contains("num") && j.contains("den")) {
    auto text = [](const json& v) { return v.is_string() ? v.get<std::string>() : v.dump(); };
    return parse_rational(text(j["num"]) + "/" + text(j["den"]));
  }
  throw std::invalid_argument("expected a rational as {\"num\", \"den\"} or \"p/q\": " + j.dump());
}

Angle angle_from_json(const json& j) { return Angle(rational_from_json(j)); }

RayPair pair_from_json(const json& j) {
  if (!j.is_object() || !j.contains("lo") || !j.contains("hi")) {
    throw std::invalid_argument("ray pair needs \"lo\" and \"hi\": " + j.dump());
  }
  const Angle lo = angle_from_json(j["lo"]), hi = angle_from_json(j["hi"]);
  if (!j.contains("period")) return make_pair(lo, hi);
  const long period = j["period"].get<long>();
  if (period < 1) throw std::invalid_argument("ray pair period must be positive");
  return {static_cast<std::size_t>(period), lo, hi};
}

RenormCombinatorics tower_from_json(const json& j) {
  const json& levels = j.is_object() ? j.at("levels") : j;
  if (!levels.is_array() || levels.empty()) throw std::invalid_argument("tower needs a non-empty level list");
  RenormCombinatorics comb;
  for (const auto& level : levels) comb.levels.push_back(pair_from_json(level));
  return comb;
}

}  // namespace renorm::io
