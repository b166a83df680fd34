#include "renorm/cli.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "renorm/error.hpp"
#include "renorm/json_io.hpp"
#include "renorm/lamination.hpp"
#include "renorm/render.hpp"
#include "renorm/rotation.hpp"
#include "renorm/selftest.hpp"

namespace renorm::cli {

using io::json;
using io::to_json;

namespace {

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::string item;
  std::istringstream in(text);
  while (std::getline(in, item, sep)) parts.push_back(item);
  return parts;
}

double parse_double(const std::string& text) {
  std::size_t used = 0;
  double v = 0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    throw std::invalid_argument("not a number: '" + text + "'");
  }
  if (used != text.size()) throw std::invalid_argument("not a number: '" + text + "'");
  return v;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::invalid_argument("cannot read " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void emit(std::ostream& out, const json& j) { out << j.dump(2) << "\n"; }

std::pair<Angle, Angle> parse_angle_pair(const std::string& text) {
  auto parts = split(text, ',');
  if (parts.size() != 2) throw std::invalid_argument("expected two angles 'a/b,c/d', got '" + text + "'");
  return {Angle(parse_rational(parts[0])), Angle(parse_rational(parts[1]))};
}

}  // namespace

Complex parse_complex(const std::string& raw) {
  std::string text;
  std::copy_if(raw.begin(), raw.end(), std::back_inserter(text), [](char ch) { return ch != ' '; });
  if (text.rfind("feigenbaum:", 0) == 0) {
    const std::string depth = text.substr(11);
    if (depth.empty() || !std::all_of(depth.begin(), depth.end(), ::isdigit)) {
      throw std::invalid_argument("feigenbaum:<depth> needs a positive integer");
    }
    return {feigenbaum_parameter(std::stoul(depth)), 0.0};
  }
  if (text.empty()) throw std::invalid_argument("empty complex number");
  if (text.back() != 'i') return {parse_double(text), 0.0};
  text.pop_back();
  std::size_t cut = std::string::npos;
  for (std::size_t i = text.size(); i-- > 1;) {
    if ((text[i] == '+' || text[i] == '-') && text[i - 1] != 'e' && text[i - 1] != 'E') {
      cut = i;
      break;
    }
  }
  auto imag_part = [](const std::string& s) {
    if (s.empty() || s == "+") return 1.0;
    if (s == "-") return -1.0;
    return parse_double(s);
  };
  if (cut == std::string::npos) return {0.0, imag_part(text)};
  return {parse_double(text.substr(0, cut)), imag_part(text.substr(cut))};
}

RenormCombinatorics parse_tower(const std::string& desc, std::size_t depth) {
  if (desc == "feigenbaum") return feigenbaum_tower(depth);
  if (desc == "rabbit") return tuned_tower(rabbit_base(), depth);
  if (desc.rfind("tune:", 0) == 0) {
    auto [lo, hi] = parse_angle_pair(desc.substr(5));
    return tuned_tower(make_pair(lo, hi), depth);
  }
  if (desc.size() > 5 && desc.substr(desc.size() - 5) == ".json") {
    json j;
    try {
      j = json::parse(read_file(desc));
    } catch (const json::exception& e) {
      throw std::invalid_argument(desc + ": " + e.what());
    }
    try {
      return io::tower_from_json(j);
    } catch (const json::exception& e) {
      throw std::invalid_argument(desc + ": " + e.what());
    }
  }
  RenormCombinatorics comb;
  for (const auto& level : split(desc, ';')) {
    auto parts = split(level, ':');
    if (parts.size() != 3) {
      throw std::invalid_argument("unknown tower '" + desc + "' (feigenbaum, rabbit, tune:a/b,c/d, file.json, p:a/b:c/d;...)");
    }
    const long period = static_cast<long>(parse_double(parts[0]));
    if (period < 1 || std::to_string(period) != parts[0]) throw std::invalid_argument("bad period '" + parts[0] + "'");
    comb.levels.push_back({static_cast<std::size_t>(period), Angle(parse_rational(parts[1])), Angle(parse_rational(parts[2]))});
  }
  if (comb.levels.empty()) throw std::invalid_argument("empty tower");
  return comb;
}

namespace {

struct TowerArgs {
  std::string desc = "feigenbaum";
  std::size_t depth = 0;

  void attach(CLI::App* app) {
    app->add_option("--tower", desc, "feigenbaum | rabbit | tune:a/b,c/d | file.json | p:a/b:c/d;...");
    app->add_option("--depth", depth, "number of levels for generated towers")->check(CLI::PositiveNumber);
  }
  RenormCombinatorics build(std::size_t at_least) const { return parse_tower(desc, std::max(depth, at_least)); }
};

struct PlaneArgs {
  std::string c = "0";
  void attach(CLI::App* app) { app->add_option("--c", c, "parameter a+bi or feigenbaum:d"); }
  Params params() const { return Params(parse_complex(c)); }
};

json check_report(const std::vector<CheckResult>& report) {
  json checks = json::array();
  for (const auto& c : report) checks.push_back(to_json(c));
  return {{"checks", checks}, {"pass", all_pass(report)}};
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Renormalization combinatorics and quadratic dynamics toolkit", "renorm"};
  app.require_subcommand(1);
  std::function<int()> action;

  // tower
  auto* tower = app.add_subcommand("tower", "build a tuned tower of ray pairs");
  std::string tower_kind;
  std::string tower_base;
  std::size_t tower_depth = 3;
  tower->add_option("kind", tower_kind, "feigenbaum | rabbit | tune")->required()->check(CLI::IsMember({"feigenbaum", "rabbit", "tune"}));
  tower->add_option("--base", tower_base, "base pair a/b,c/d for tune");
  tower->add_option("--depth", tower_depth, "number of levels")->check(CLI::PositiveNumber);
  tower->callback([&] {
    action = [&] {
      RenormCombinatorics comb;
      if (tower_kind == "tune") {
        if (tower_base.empty()) throw std::invalid_argument("tower tune needs --base a/b,c/d");
        auto [lo, hi] = parse_angle_pair(tower_base);
        comb = tuned_tower(make_pair(lo, hi), tower_depth);
      } else {
        comb = parse_tower(tower_kind, tower_depth);
      }
      emit(out, to_json(comb));
      return 0;
    };
  });

  // window
  auto* win = app.add_subcommand("window", "windows s_{n,j} and sub-windows");
  TowerArgs win_tower;
  std::size_t win_level = 1, win_j = 1;
  win_tower.attach(win);
  win->add_option("--level", win_level, "level n")->check(CLI::PositiveNumber);
  win->add_option("--j", win_j, "window index 1..p_n")->check(CLI::PositiveNumber);
  win->callback([&] {
    action = [&] {
      auto comb = win_tower.build(win_level);
      const RayPair& pair = comb.level(win_level);
      const Window w = window(pair);
      Subwindow sub = subwindow(pair, win_j);
      json j = {{"level", win_level},
                {"j", win_j},
                {"pair", to_json(pair)},
                {"s", to_json(window_at(pair, win_j))},
                {"subwindows", to_json(sub.windows)},
                {"extra_components", sub.extra_components.get_str()}};
      json witnesses = json::array();
      for (const auto& a : sub.extra_witnesses) witnesses.push_back(to_json(a));
      j["extra_witnesses"] = witnesses;
      if (win_j == 1) {
        j["lo1"] = to_json(w.lo1);
        j["hi1"] = to_json(w.hi1);
      }
      emit(out, j);
      return 0;
    };
  });

  // shadow
  auto* shadow = app.add_subcommand("shadow", "angle shadows of small Julia sets");
  TowerArgs shadow_tower;
  std::string shadow_t, shadow_address;
  std::size_t shadow_level = 1, shadow_j = 1, shadow_bits = 32;
  bool shadow_kc = false;
  shadow_tower.attach(shadow);
  shadow->add_option("--t", shadow_t, "angle p/q");
  shadow->add_option("--level", shadow_level, "level n")->check(CLI::PositiveNumber);
  shadow->add_option("--j", shadow_j, "window index 1..p_n")->check(CLI::PositiveNumber);
  shadow->add_flag("--kc", shadow_kc, "report the shadow of K_c at --level with tau1, tau2");
  shadow->add_option("--address", shadow_address, "component address j_1,j_2,... (depth = its length)");
  shadow->add_option("--bits", shadow_bits, "precision of tau1, tau2")->check(CLI::PositiveNumber);
  shadow->callback([&] {
    action = [&] {
      if (!shadow_address.empty()) {
        ComponentAddress addr;
        for (const auto& part : split(shadow_address, ',')) addr.js.push_back(static_cast<std::size_t>(parse_double(part)));
        auto comb = shadow_tower.build(addr.js.size());
        ComponentShadow cs = shadow_component(comb, addr, addr.js.size());
        json j = {{"address", addr.js}, {"windows", to_json(cs.windows)}};
        j["classification"] = cs.critical_offset ? "case2(" + std::to_string(*cs.critical_offset) + ")" : "undetermined";
        emit(out, j);
        return 0;
      }
      if (shadow_kc) {
        auto comb = shadow_tower.build(shadow_level);
        KcShadow kc = shadow_Kc(comb, shadow_level);
        const KcShadow deep = shadow_Kc(comb, comb.size());
        auto tau = [&](const LimitAngle& l) {
          Angle a = refine(l, shadow_bits);
          return json{{"approx", to_json(a)}, {"binary", binary_prefix(a, shadow_bits)}};
        };
        json j = {{"depth", shadow_level}, {"windows", to_json(kc.windows)}};
        try {
          j["tau1"] = tau(deep.tau1);
          j["tau2"] = tau(deep.tau2);
        } catch (const DomainError& e) {
          j["tau1"] = j["tau2"] = std::string(e.what());
        }
        emit(out, j);
        return 0;
      }
      if (shadow_t.empty()) throw std::invalid_argument("shadow needs --t, --kc or --address");
      auto comb = shadow_tower.build(shadow_level);
      Angle t(parse_rational(shadow_t));
      emit(out, {{"t", to_json(t)}, {"level", shadow_level}, {"j", shadow_j}, {"in_shadow", in_shadow(t, comb, shadow_level, shadow_j)}});
      return 0;
    };
  });

  // theta
  auto* th = app.add_subcommand("theta", "itinerary semiconjugacy theta");
  TowerArgs theta_tower;
  std::string theta_t;
  std::size_t theta_level = 1;
  theta_tower.attach(th);
  th->add_option("--t", theta_t, "angle p/q")->required();
  th->add_option("--level", theta_level, "level n")->check(CLI::PositiveNumber);
  th->callback([&] {
    action = [&] {
      auto comb = theta_tower.build(theta_level);
      Angle t(parse_rational(theta_t));
      ThetaResult r = theta(comb, theta_level, t);
      emit(out, {{"t", to_json(t)},
                 {"level", theta_level},
                 {"theta", to_json(r.value)},
                 {"boundary_collapse", r.boundary_collapse},
                 {"itinerary", r.itinerary}});
      return 0;
    };
  });

  // omega
  auto* om = app.add_subcommand("omega", "omega-limit probe from tau1 of a tuned tower");
  std::string omega_tower = "feigenbaum";
  std::size_t omega_bits = 8, omega_horizon = 1 << 16;
  om->add_option("--tower", omega_tower, "feigenbaum | rabbit | tune:a/b,c/d");
  om->add_option("--bits", omega_bits, "B")->check(CLI::Range(2, 4096));
  om->add_option("--horizon", omega_horizon, "K")->check(CLI::Range(1, 1 << 24));
  om->callback([&] {
    action = [&] {
      RayPair base;
      if (omega_tower == "feigenbaum") {
        base = feigenbaum_base();
      } else if (omega_tower == "rabbit") {
        base = rabbit_base();
      } else if (omega_tower.rfind("tune:", 0) == 0) {
        auto [lo, hi] = parse_angle_pair(omega_tower.substr(5));
        base = make_pair(lo, hi);
      } else {
        throw std::invalid_argument("omega needs a tuned tower (feigenbaum, rabbit, tune:a/b,c/d)");
      }
      const std::size_t needed = omega_horizon + omega_bits;
      std::size_t budget = 1;
      for (std::size_t period = base.period; period <= needed; period *= base.period) ++budget;
      auto [tau1, tau2] = tuned_limit_angles(base, budget + 1);
      const auto [left, right] = preimages(refine(tau1, omega_bits + 1));
      auto hits = omega_probe(tau1,
                              {{"tau1/2", left}, {"tau1/2+1/2", right}, {"tau1", tau1}, {"tau2", tau2}},
                              omega_horizon, omega_bits);
      json list = json::array();
      for (const auto& h : hits) list.push_back({{"target", h.label}, {"first_hit", h.first_hit ? json(*h.first_hit) : json(nullptr)}});
      emit(out, {{"bits", omega_bits}, {"horizon", omega_horizon}, {"hits", list}});
      return 0;
    };
  });

  // validate
  auto* val = app.add_subcommand("validate", "check every tower invariant");
  TowerArgs val_tower;
  val_tower.attach(val);
  val->callback([&] {
    action = [&] {
      auto comb = val_tower.build(3);
      auto report = validate(comb);
      emit(out, check_report(report));
      return all_pass(report) ? 0 : 1;
    };
  });

  // rotset
  auto* rot = app.add_subcommand("rotset", "minimal rotation set of sigma");
  std::string rot_nu;
  bool rot_oracle = false;
  rot->add_option("--nu", rot_nu, "rotation number p/q in [0, 1)")->required();
  rot->add_flag("--oracle", rot_oracle, "cross-check against brute force");
  rot->callback([&] {
    action = [&] {
      Rational nu = parse_rational(rot_nu);
      RotationSet set = minimal_rotation_set(nu);
      EnclosingArc enclosing = minimal_enclosing_arc(set.points);
      json j = to_json(set);
      j["enclosing"] = to_json(enclosing.arc);
      j["fits_semicircle"] = enclosing.fits_semicircle;
      if (rot_oracle) {
        auto oracle = rotation_oracle(nu);
        bool agrees = oracle.size() == 1 && oracle[0].points == set.points;
        j["oracle_agrees"] = agrees;
        emit(out, j);
        return agrees ? 0 : 1;
      }
      emit(out, j);
      return 0;
    };
  });

  // lamination
  auto* lam = app.add_subcommand("lamination", "finite invariant lamination of a tower");
  TowerArgs lam_tower;
  std::size_t lam_preimages = 0;
  std::string lam_svg;
  bool lam_arcs = false;
  lam_tower.attach(lam);
  lam->add_option("--preimage-depth", lam_preimages, "rounds of preimage chords");
  lam->add_option("--svg", lam_svg, "write an SVG drawing");
  lam->add_flag("--arcs", lam_arcs, "draw chords as arcs orthogonal to the circle");
  lam->callback([&] {
    action = [&] {
      auto comb = lam_tower.build(3);
      const std::size_t depth = lam_tower.depth ? std::min(lam_tower.depth, comb.size()) : comb.size();
      auto family = build(comb, depth, lam_preimages);
      auto report = verify_unlinked(family);
      json chords = json::array();
      for (const auto& c : family) chords.push_back(to_json(c));
      json j = {{"depth", depth}, {"count", family.size()}, {"orbit_chords", orbit_chords(comb, depth).size()},
                {"chords", chords}, {"unlinked", report.pass}};
      if (!lam_svg.empty()) {
        std::ofstream file(lam_svg);
        if (!file) throw std::invalid_argument("cannot write " + lam_svg);
        file << export_svg(family, {lam_arcs, 6});
        j["svg"] = lam_svg;
      }
      emit(out, j);
      return report.pass ? 0 : 1;
    };
  });

  // ray
  auto* ray = app.add_subcommand("ray", "trace an external ray");
  PlaneArgs ray_plane;
  std::string ray_t;
  double ray_level = 1e-8;
  ray_plane.attach(ray);
  ray->add_option("--t", ray_t, "angle p/q")->required();
  ray->add_option("--level-min", ray_level, "lowest Green level")->check(CLI::PositiveNumber);
  ray->callback([&] {
    action = [&] {
      emit(out, to_json(trace_ray(ray_plane.params(), Angle(parse_rational(ray_t)), ray_level)));
      return 0;
    };
  });

  // green
  auto* gr = app.add_subcommand("green", "Green function of the basin of infinity");
  PlaneArgs green_plane;
  std::string green_z;
  green_plane.attach(gr);
  gr->add_option("--z", green_z, "point a+bi")->required();
  gr->callback([&] {
    action = [&] {
      Complex z = parse_complex(green_z);
      emit(out, {{"z", to_json(z)}, {"green", green(green_plane.params(), z)}});
      return 0;
    };
  });

  // periodic
  auto* per = app.add_subcommand("periodic", "roots of f^m(z) = z with multipliers");
  PlaneArgs per_plane;
  std::size_t per_m = 1;
  per_plane.attach(per);
  per->add_option("--m", per_m, "period 1..12")->required();
  per->callback([&] {
    action = [&] {
      json list = json::array();
      for (const auto& p : periodic_points(per_plane.params(), per_m)) list.push_back(to_json(p));
      emit(out, {{"m", per_m}, {"points", list}});
      return 0;
    };
  });

  // beta
  auto* be = app.add_subcommand("beta", "landing point of a level's ray pair");
  PlaneArgs beta_plane;
  TowerArgs beta_tower;
  std::size_t beta_level = 1;
  double beta_tol = 1e-4;
  beta_plane.attach(be);
  beta_tower.attach(be);
  be->add_option("--level", beta_level, "level n")->check(CLI::PositiveNumber);
  be->add_option("--tolerance", beta_tol, "matching tolerance")->check(CLI::PositiveNumber);
  be->callback([&] {
    action = [&] {
      auto comb = beta_tower.build(beta_level);
      BetaResult r = beta_point(beta_plane.params(), comb, beta_level, beta_tol);
      emit(out, {{"beta", to_json(r.beta)},
                 {"matched", r.matched},
                 {"residual", r.residual},
                 {"landing_lo", to_json(r.landing_lo)},
                 {"landing_hi", to_json(r.landing_hi)},
                 {"distance_lo", r.distance_lo},
                 {"distance_hi", r.distance_hi}});
      return 0;
    };
  });

  // telescope
  auto* tel = app.add_subcommand("telescope", "check the telescope conditions along an orbit");
  PlaneArgs tel_plane;
  std::string tel_x, tel_times;
  double tel_r = 0.3, tel_kappa = 0.5, tel_delta = 0.01;
  std::size_t tel_k = 10;
  tel_plane.attach(tel);
  tel->add_option("--x", tel_x, "base point a+bi")->required();
  tel->add_option("--r", tel_r, "disk radius")->check(CLI::PositiveNumber);
  tel->add_option("--kappa", tel_kappa, "time density");
  tel->add_option("--delta", tel_delta, "boundary margin");
  tel->add_option("--times", tel_times, "n_0,n_1,...,n_k (default 0..k)");
  tel->add_option("--k", tel_k, "number of stages when --times is absent");
  tel->callback([&] {
    action = [&] {
      std::vector<std::size_t> times;
      if (tel_times.empty()) {
        for (std::size_t i = 0; i <= tel_k; ++i) times.push_back(i);
      } else {
        for (const auto& part : split(tel_times, ',')) {
          double v = parse_double(part);
          if (v < 0 || v != std::floor(v)) throw std::invalid_argument("times must be non-negative integers");
          times.push_back(static_cast<std::size_t>(v));
        }
      }
      emit(out, to_json(telescope_check(tel_plane.params(), parse_complex(tel_x), tel_r, tel_kappa, tel_delta, times)));
      return 0;
    };
  });

  // render
  auto* ren = app.add_subcommand("render", "render a scene to a binary PPM");
  std::string ren_scene, ren_out, ren_c;
  ren->add_option("--scene", ren_scene, "scene JSON file")->required();
  ren->add_option("--out", ren_out, "output PPM file")->required();
  ren->add_option("--c", ren_c, "parameter (overrides the scene)");
  ren->callback([&] {
    action = [&] {
      Scene scene = parse_scene(read_file(ren_scene));
      Complex c = !ren_c.empty() ? parse_complex(ren_c) : scene.c.value_or(Complex{});
      Image image = render(Params(c), scene);
      std::ofstream file(ren_out, std::ios::binary);
      if (!file) throw std::invalid_argument("cannot write " + ren_out);
      write_ppm(image, file);
      emit(out, {{"out", ren_out}, {"width", image.width}, {"height", image.height}});
      return 0;
    };
  });

  // selftest
  auto* st = app.add_subcommand("selftest", "run the exact-arithmetic suite");
  st->callback([&] {
    action = [&] {
      auto items = run_selftest();
      json list = json::array();
      bool ok = true;
      for (const auto& item : items) {
        ok = ok && item.pass;
        list.push_back({{"id", item.id}, {"name", item.name}, {"pass", item.pass}, {"detail", item.detail}, {"seconds", item.seconds}});
      }
      emit(out, {{"items", list}, {"pass", ok}});
      return ok ? 0 : 1;
    };
  });

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e, out, err);
    err << "renorm: " << e.what() << "\n";
    return 2;
  }
  if (!action) return 2;
  try {
    return action();
  } catch (const DomainError& e) {
    err << "renorm: " << e.what() << "\n";
    return 1;
  } catch (const std::invalid_argument& e) {
    err << "renorm: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "renorm: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace renorm::cli
