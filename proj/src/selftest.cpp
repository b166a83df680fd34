#include "renorm/selftest.hpp"

#include <chrono>
#include <functional>
#include <numeric>
#include <random>

#include "renorm/combinatorics.hpp"
#include "renorm/lamination.hpp"
#include "renorm/rotation.hpp"

namespace renorm {

namespace {

using Check = std::function<std::string()>;  // empty string = pass

std::string rotation_sets() {
  std::size_t cases = 0;
  for (unsigned long q = 1; q <= 12; ++q) {
    for (unsigned long p = 0; p < q; ++p) {
      if (std::gcd(p, q) != 1) continue;
      ++cases;
      Rational nu(p, q);
      RotationSet built = minimal_rotation_set(nu);
      auto oracle = rotation_oracle(nu);
      if (oracle.size() != 1) return "oracle found " + std::to_string(oracle.size()) + " orbits for " + to_string(nu);
      if (oracle[0].points != built.points) return "construction differs from oracle at " + to_string(nu);
      auto rho = rotation_number(built.points);
      if (!rho || *rho != nu) return "rotation number does not round-trip at " + to_string(nu);
      if (!minimal_enclosing_arc(built.points).fits_semicircle) return "enclosing arc longer than 1/2 at " + to_string(nu);
    }
  }
  return cases == 46 ? "" : "unexpected case count " + std::to_string(cases);
}

std::string window_algebra() {
  const auto comb = feigenbaum_tower(6);
  for (std::size_t n = 1; n <= comb.size(); ++n) {
    const RayPair& pair = comb.level(n);
    const Rational width = pair.hi.value() - pair.lo.value();
    const std::string tag = "level " + std::to_string(n) + ": ";
    Window w = window(pair);
    for (const auto& arc : w.s.arcs()) {
      if (arc.length() != width * pow2_inverse(pair.period)) return tag + "window length";
    }
    if (n > 1) {
      const RayPair& prev = comb.level(n - 1);
      if (!Arc(prev.lo, prev.hi.value() - prev.lo.value()).contains(Arc(pair.lo, width))) return tag + "S nesting";
      if (!is_subset(w.s, window(prev).s)) return tag + "s nesting";
    }
    for (std::size_t j = 1; j <= pair.period; ++j) {
      const Rational delta = width * pow2_inverse(pair.period - j + 1);
      ArcSet s = window_at(pair, j);
      if (s.size() != 2 || s[0].length() != delta || s[1].length() != delta) {
        return tag + "window_at length, j=" + std::to_string(j);
      }
      Subwindow sub = subwindow(pair, j);
      if (sub.windows.size() != 4) return tag + "sub-window count, j=" + std::to_string(j);
      for (const auto& arc : sub.windows.arcs()) {
        if (arc.length() != delta * pow2_inverse(pair.period)) return tag + "sub-window length, j=" + std::to_string(j);
        const Arc image(sigma_pow(arc.start(), pair.period), arc.length() * Rational(pow2(pair.period)));
        if (image != s[0] && image != s[1]) return tag + "sub-window image, j=" + std::to_string(j);
      }
    }
  }
  return "";
}

std::string theta_semiconjugacy() {
  const auto comb = feigenbaum_tower(3);
  for (std::size_t n = 1; n <= 3; ++n) {
    const std::size_t p = comb.level(n).period;
    auto sample = sample_shadow_angles(comb, n, p, 100, 20240601 + n, 8);
    if (sample.size() < 100) return "only " + std::to_string(sample.size()) + " shadow angles at level " + std::to_string(n);
    for (const Angle& t : sample) {
      if (!in_shadow(t, comb, n, p)) return "sampled angle " + t.str() + " outside the shadow";
      if (theta(comb, n, sigma_pow(t, p)).value != sigma(theta(comb, n, t).value)) {
        return "semiconjugacy fails at t=" + t.str() + ", level " + std::to_string(n);
      }
    }
  }
  return "";
}

std::string unlinking() {
  auto report = verify_unlinked(build(feigenbaum_tower(4), 4, 0));
  if (!report.pass) return "Feigenbaum depth 4: " + report.witnesses[0].first.str() + " links " + report.witnesses[0].second.str();
  report = verify_unlinked(build(tuned_tower(rabbit_base(), 3), 3, 0));
  if (!report.pass) return "rabbit depth 3: " + report.witnesses[0].first.str() + " links " + report.witnesses[0].second.str();
  return "";
}

bool orbit_in(const Angle& t, std::size_t step, const ArcSet& set) {
  OrbitInfo info = orbit_info(t);
  Angle x = t;
  for (std::size_t k = 0; k <= info.preperiod + info.period; ++k) {
    if (!set.contains(x)) return false;
    x = sigma_pow(x, step);
  }
  return true;
}

std::string shadow_consistency() {
  const auto comb = feigenbaum_tower(4);
  std::mt19937_64 rng(77);
  std::vector<Angle> sample;
  for (std::size_t n = 1; n <= 4 && sample.size() < 25; ++n) {
    for (const auto& t : sample_shadow_angles(comb, n, 1, 7, 900 + n)) sample.push_back(t);
  }
  sample.resize(std::min<std::size_t>(sample.size(), 25));
  while (sample.size() < 50) {
    unsigned long den = 1 + rng() % 4096;
    sample.emplace_back(static_cast<long>(rng() % den), den);
  }
  std::size_t positives = 0;
  for (const Angle& t : sample) {
    for (std::size_t n = 1; n <= 4; ++n) {
      const RayPair& pair = comb.level(n);
      bool via_sub = orbit_in(t, pair.period, subwindow(pair, 1).windows);
      bool via_window = orbit_in(t, pair.period, window(pair).s);
      if (via_sub != via_window) return "criteria disagree at t=" + t.str() + ", level " + std::to_string(n);
      positives += via_sub;
    }
  }
  return positives > 0 ? "" : "no sampled angle lies in a shadow";
}

std::string omega_limit() {
  const LimitAngle tau1 = tuned_limit_angles(feigenbaum_base(), 17).first;
  const auto [left, right] = preimages(refine(tau1, 9));
  auto hits = omega_probe(tau1, {{"tau1/2", left}, {"tau1/2+1/2", right}}, std::size_t{1} << 16, 8);
  for (const auto& h : hits) {
    if (!h.first_hit) return "no hit for " + h.label;
  }
  return "";
}

}  // namespace

std::vector<SelfTestItem> run_selftest() {
  const std::vector<std::pair<std::string, Check>> checks = {
      {"rotation sets match the brute-force oracle (q <= 12)", rotation_sets},
      {"window algebra, Feigenbaum depth 6", window_algebra},
      {"theta semiconjugacy, levels 1..3", theta_semiconjugacy},
      {"orbit chords unlinked (Feigenbaum 4, rabbit 3)", unlinking},
      {"shadow criteria agree for j = 1, levels 1..4", shadow_consistency},
      {"omega-limit probe hits both preimages of tau1", omega_limit},
  };
  std::vector<SelfTestItem> out;
  int id = 0;
  for (const auto& [name, check] : checks) {
    SelfTestItem item;
    item.id = ++id;
    item.name = name;
    auto start = std::chrono::steady_clock::now();
    try {
      item.detail = check();
      item.pass = item.detail.empty();
    } catch (const std::exception& e) {
      item.pass = false;
      item.detail = std::string("exception: ") + e.what();
    }
    item.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    out.push_back(std::move(item));
  }
  return out;
}

}  // namespace renorm
