#include "renorm/combinatorics.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <set>
#include <stdexcept>

#include "renorm/error.hpp"

namespace renorm {

const RayPair& RenormCombinatorics::level(std::size_t n) const {
  if (n < 1 || n > levels.size()) {
    throw std::invalid_argument("level " + std::to_string(n) + " outside tower of depth " +
                                std::to_string(levels.size()));
  }
  return levels[n - 1];
}

RayPair make_pair(const Angle& lo, const Angle& hi) {
  if (!(Angle() < lo && lo < hi)) throw std::invalid_argument("ray pair requires 0 < lo < hi < 1");
  OrbitInfo a = orbit_info(lo);
  OrbitInfo b = orbit_info(hi);
  if (a.preperiod != 0 || b.preperiod != 0) throw std::invalid_argument("ray pair angles must be periodic");
  if (a.period != b.period) throw std::invalid_argument("ray pair angles have different periods");
  return {a.period, lo, hi};
}

RayPair feigenbaum_base() { return {2, Angle(1, 3), Angle(2, 3)}; }
RayPair rabbit_base() { return {3, Angle(1, 7), Angle(2, 7)}; }

Angle periodic_angle(const std::string& word) {
  if (word.empty()) throw std::invalid_argument("periodic_angle: empty word");
  Rational r(Integer(word, 2), pow2(word.size()) - 1);
  r.canonicalize();
  return Angle(r);
}

namespace {

std::string substitute(const std::string& digits, const std::string& w0, const std::string& w1) {
  std::string out;
  out.reserve(digits.size() * w0.size());
  for (char d : digits) out += (d == '1') ? w1 : w0;
  return out;
}

std::pair<std::string, std::string> base_words(const RayPair& base) {
  std::string w0 = binary_prefix(base.lo, base.period);
  std::string w1 = binary_prefix(base.hi, base.period);
  if (w0 == w1) throw DomainError("degenerate pair");
  return {w0, w1};
}

Rational window_length(const RayPair& pair) { return (pair.hi.value() - pair.lo.value()) * pow2_inverse(pair.period); }

void check_j(const RayPair& pair, std::size_t j) {
  if (j < 1 || j > pair.period) {
    throw std::invalid_argument("window index j=" + std::to_string(j) + " outside 1.." + std::to_string(pair.period));
  }
}

// Chords {sigma^k(lo), sigma^k(hi)}, 0 <= k < p.
std::vector<std::pair<Angle, Angle>> orbit_pairs(const RayPair& pair) {
  std::vector<std::pair<Angle, Angle>> out;
  Angle a = pair.lo, b = pair.hi;
  for (std::size_t k = 0; k < pair.period; ++k) {
    out.emplace_back(a, b);
    a = sigma(a);
    b = sigma(b);
  }
  return out;
}

// Endpoints of {c, d} lie in different open arcs cut by {a, b}; shared
// endpoints never link.
bool crosses(const std::pair<Angle, Angle>& x, const std::pair<Angle, Angle>& y) {
  const auto& [a, b] = x;
  const auto& [c, d] = y;
  if (a == b || c == d) return false;
  if (c == a || c == b || d == a || d == b) return false;
  Arc side = Arc::between(a, b);
  return side.contains_interior(c) != side.contains_interior(d);
}

std::string chord_text(const std::pair<Angle, Angle>& c) { return "(" + c.first.str() + ", " + c.second.str() + ")"; }

}  // namespace

Angle tune(const RayPair& base, const Angle& t) {
  auto [w0, w1] = base_words(base);
  OrbitInfo info = orbit_info(t);
  std::string digits = binary_prefix(t, info.preperiod + info.period);
  std::string pre = substitute(digits.substr(0, info.preperiod), w0, w1);
  std::string cyc = substitute(digits.substr(info.preperiod), w0, w1);
  Rational value(pre.empty() ? Integer(0) : Integer(pre, 2));
  Rational tail(Integer(cyc, 2), pow2(cyc.size()) - 1);
  tail.canonicalize();
  value = (value + tail) * pow2_inverse(pre.size());
  return Angle(value);
}

RenormCombinatorics tuned_tower(const RayPair& base, std::size_t depth) {
  if (depth < 1) throw std::invalid_argument("tower depth must be at least 1");
  auto [w0, w1] = base_words(base);
  RenormCombinatorics comb;
  std::string lo = w0, hi = w1;
  for (std::size_t n = 1; n <= depth; ++n) {
    comb.levels.push_back({lo.size(), periodic_angle(lo), periodic_angle(hi)});
    if (n < depth) {
      lo = substitute(lo, w0, w1);
      hi = substitute(hi, w0, w1);
    }
  }
  return comb;
}

RenormCombinatorics feigenbaum_tower(std::size_t depth) { return tuned_tower(feigenbaum_base(), depth); }

Window window(const RayPair& pair) {
  const Rational len = window_length(pair);
  Window w{ArcSet(), Angle(pair.lo.value() + len), Angle(pair.hi.value() - len)};
  if (sigma_pow(w.lo1, pair.period) != pair.hi || sigma_pow(w.hi1, pair.period) != pair.lo) {
    throw DomainError("pair is not a valid renormalization pair");
  }
  w.s = ArcSet::labeled({Arc(pair.lo, len), Arc(w.hi1, len)}, {"left", "right"});
  return w;
}

ArcSet window_at(const RayPair& pair, std::size_t j) {
  check_j(pair, j);
  const Rational len = window_length(pair);
  Arc left(pair.lo, len);
  Arc right(Angle(pair.hi.value() - len), len);
  for (std::size_t k = 1; k < j; ++k) {
    left = sigma_image(left);
    right = sigma_image(right);
  }
  const Rational expected = (pair.hi.value() - pair.lo.value()) * pow2_inverse(pair.period - j + 1);
  if (left.length() != expected || right.length() != expected || expected >= Rational(1, 2)) {
    throw DomainError("window length postcondition failed at j=" + std::to_string(j));
  }
  return ArcSet::labeled({left, right}, {"left", "right"});
}

Subwindow subwindow(const RayPair& pair, std::size_t j) {
  ArcSet windows = window_at(pair, j);
  const ArcSet target = windows.canonical();
  const Rational expected = windows[0].length() * pow2_inverse(pair.period);
  const Rational scale(pow2(pair.period));

  Subwindow out;
  out.extra_components = 0;
  std::vector<Arc> arcs;
  std::vector<std::string> labels;
  for (std::size_t w = 0; w < windows.size(); ++w) {
    const Arc& window_arc = windows[w];
    PreimageScan scan = sigma_preimage_within(window_arc, target, pair.period, 2);
    std::optional<std::size_t> at_start, at_end;
    for (std::size_t i = 0; i < scan.components.size(); ++i) {
      const Arc& c = scan.components[i];
      if (c.is_point()) continue;
      if (!at_start && c.contains(window_arc.start())) at_start = i;
      if (c.contains(window_arc.end())) at_end = i;
    }
    if (!at_start || !at_end || *at_start == *at_end) throw DomainError("inconsistent pair");
    for (auto [idx, suffix] : {std::pair{*at_start, ".lo"}, std::pair{*at_end, ".hi"}}) {
      const Arc& c = scan.components[idx];
      if (c.length() != expected) throw DomainError("inconsistent pair: sub-window length mismatch");
      Arc image(sigma_pow(c.start(), pair.period), c.length() * scale);
      if (image != windows[0] && image != windows[1]) {
        throw DomainError("inconsistent pair: sub-window does not cover a window");
      }
      arcs.push_back(c);
      labels.push_back(windows.labels()[w] + suffix);
    }
    out.extra_components += scan.total - 2;
    for (std::size_t i = 0; i < scan.components.size(); ++i) {
      if (i != *at_start && i != *at_end) out.extra_witnesses.push_back(scan.components[i]);
    }
  }
  out.windows = ArcSet::labeled(std::move(arcs), std::move(labels));
  return out;
}

namespace {

bool orbit_stays_in(const Angle& t, std::size_t step, const ArcSet& set) {
  OrbitInfo info = orbit_info(t);
  Angle x = t;
  for (std::size_t k = 0; k <= info.preperiod + info.period; ++k) {
    if (!set.contains(x)) return false;
    x = sigma_pow(x, step);
  }
  return true;
}

}  // namespace

bool in_shadow(const Angle& t, const RenormCombinatorics& comb, std::size_t n, std::size_t j) {
  const RayPair& pair = comb.level(n);
  check_j(pair, j);
  bool result = orbit_stays_in(t, pair.period, subwindow(pair, j).windows);
  if (j == 1) {
    bool direct = orbit_stays_in(t, pair.period, window(pair).s);
    if (direct != result) {
      throw std::logic_error("shadow criteria disagree for t=" + t.str() + " at level " + std::to_string(n));
    }
  }
  return result;
}

KcShadow shadow_Kc(const RenormCombinatorics& comb, std::size_t depth) {
  if (depth < 1 || depth > comb.size()) throw std::invalid_argument("shadow_Kc: depth outside tower");
  std::vector<RayPair> levels(comb.levels.begin(), comb.levels.begin() + static_cast<std::ptrdiff_t>(depth));
  for (const auto& pair : levels) {
    Window w = window(pair);
    if (w.s[0].length() != window_length(pair) || w.s[1].length() != window_length(pair)) {
      throw std::logic_error("window length postcondition failed");
    }
  }
  LimitAngle tau1([levels](std::size_t m) { return Arc(levels[m].lo, window_length(levels[m])); }, depth);
  LimitAngle tau2(
      [levels](std::size_t m) {
        Rational len = window_length(levels[m]);
        return Arc(Angle(levels[m].hi.value() - len), len);
      },
      depth);
  return {window(comb.level(depth)).s, tau1, tau2};
}

std::pair<LimitAngle, LimitAngle> tuned_limit_angles(const RayPair& base, std::size_t depth_budget) {
  auto words = base_words(base);
  auto level_words = [words](std::size_t m) {
    std::string lo = words.first, hi = words.second;
    for (std::size_t k = 0; k < m; ++k) {
      lo = substitute(lo, words.first, words.second);
      hi = substitute(hi, words.first, words.second);
    }
    return RayPair{lo.size(), periodic_angle(lo), periodic_angle(hi)};
  };
  LimitAngle tau1([level_words](std::size_t m) {
    RayPair p = level_words(m);
    return Arc(p.lo, window_length(p));
  }, depth_budget);
  LimitAngle tau2([level_words](std::size_t m) {
    RayPair p = level_words(m);
    Rational len = window_length(p);
    return Arc(Angle(p.hi.value() - len), len);
  }, depth_budget);
  return {tau1, tau2};
}

ComponentShadow shadow_component(const RenormCombinatorics& comb, const ComponentAddress& addr, std::size_t depth) {
  if (depth < 1 || depth > comb.size() || addr.js.size() < depth) {
    throw std::invalid_argument("incompatible address: depth exceeds tower or address length");
  }
  for (std::size_t n = 1; n <= depth; ++n) {
    const RayPair& pair = comb.level(n);
    std::size_t j = addr.js[n - 1];
    if (j < 1 || j > pair.period) throw std::invalid_argument("incompatible address: j out of range at level " + std::to_string(n));
    if (n > 1) {
      std::size_t prev_p = comb.level(n - 1).period;
      if (j % prev_p != addr.js[n - 2] % prev_p) {
        throw std::invalid_argument("incompatible address: j_" + std::to_string(n) + " != j_" + std::to_string(n - 1) +
                                    " mod p_" + std::to_string(n - 1));
      }
    }
  }
  ComponentShadow out;
  out.windows = subwindow(comb.level(1), addr.js[0]).windows.canonical();
  std::optional<std::size_t> offset = comb.level(1).period - addr.js[0];
  for (std::size_t n = 2; n <= depth; ++n) {
    out.windows = intersect(out.windows, subwindow(comb.level(n), addr.js[n - 1]).windows);
    if (offset && comb.level(n).period - addr.js[n - 1] != *offset) offset.reset();
  }
  out.critical_offset = offset;
  if (out.windows.size() > 4) throw DomainError("component shadow has more than four windows");
  return out;
}

namespace {

ThetaResult theta_unchecked(const RayPair& pair, const Angle& t) {
  const Rational half_len = (pair.hi.value() - pair.lo.value()) / 2;
  Arc a(Angle(pair.lo.value() / 2), half_len);
  Arc b(Angle(pair.lo.value() / 2 + Rational(1, 2)), half_len);
  const Angle marker = sigma_pow(pair.lo, pair.period - 1);
  const Arc& s0 = a.has_endpoint(marker) ? a : b;
  const Arc& s0_prime = a.has_endpoint(marker) ? b : a;

  ThetaResult out;
  std::map<Angle, std::size_t> seen;
  std::vector<int> eps;
  Angle x = t;
  std::size_t loop_start = 0;
  for (std::size_t k = 0;; ++k) {
    auto it = seen.find(x);
    if (it != seen.end()) {
      loop_start = it->second;
      break;
    }
    seen.emplace(x, k);
    if (s0.contains(x)) {
      eps.push_back(0);
    } else if (s0_prime.contains(x)) {
      eps.push_back(1);
    } else {
      throw DomainError("theta: orbit of " + t.str() + " leaves S_{n,0} U S'_{n,0}");
    }
    if (s0.has_endpoint(x) || s0_prime.has_endpoint(x)) out.boundary_collapse = true;
    x = sigma_pow(x, pair.period);
  }
  // theta = sum_{k<a} eps_k 2^{-k-1} + 2^{-a} * P / (2^q - 1)
  const std::size_t q = eps.size() - loop_start;
  Integer pre = 0, cyc = 0;
  for (std::size_t k = 0; k < loop_start; ++k) pre = pre * 2 + eps[k];
  for (std::size_t k = loop_start; k < eps.size(); ++k) cyc = cyc * 2 + eps[k];
  Rational tail(cyc, pow2(q) - 1);
  tail.canonicalize();
  Rational value = (Rational(pre) + tail) * pow2_inverse(loop_start);
  out.value = Angle(value);
  out.itinerary = std::move(eps);
  return out;
}

}  // namespace

ThetaResult theta(const RenormCombinatorics& comb, std::size_t n, const Angle& t) {
  const RayPair& pair = comb.level(n);
  if (!in_shadow(t, comb, n, pair.period)) {
    throw std::invalid_argument("theta: " + t.str() + " is not in the shadow of J_" + std::to_string(n));
  }
  ThetaResult r = theta_unchecked(pair, t);
  ThetaResult image = theta_unchecked(pair, sigma_pow(t, pair.period));
  if (image.value != sigma(r.value)) {
    throw std::logic_error("theta semiconjugacy failed at t=" + t.str());
  }
  return r;
}

std::vector<OmegaHit> omega_probe(const LimitAngle& source, const std::vector<OmegaTarget>& targets,
                                  std::size_t horizon, std::size_t bits) {
  if (horizon < 1) throw std::invalid_argument("omega_probe: horizon must be at least 1");
  if (bits < 2) throw std::invalid_argument("omega_probe: bits must be at least 2");
  const std::size_t needed = horizon + bits;
  const std::string src = binary_prefix(refine(source, needed), needed);
  std::vector<OmegaHit> out;
  for (const auto& target : targets) {
    std::string word;
    if (const Angle* a = std::get_if<Angle>(&target.point)) {
      word = binary_prefix(*a, bits);
    } else {
      word = binary_prefix(refine(std::get<LimitAngle>(target.point), bits), bits);
    }
    OmegaHit hit{target.label, std::nullopt};
    std::size_t pos = src.find(word, 1);
    if (pos != std::string::npos && pos <= horizon) hit.first_hit = pos;
    out.push_back(hit);
  }
  return out;
}

std::vector<CheckResult> validate(const RenormCombinatorics& comb) {
  std::vector<CheckResult> report;
  auto add = [&](std::string check, std::size_t level, bool pass, std::string witness) {
    report.push_back({std::move(check), level, pass, pass ? std::string() : std::move(witness)});
  };
  std::vector<std::pair<Angle, Angle>> all_chords;
  std::vector<std::size_t> chord_level;
  for (std::size_t n = 1; n <= comb.size(); ++n) {
    const RayPair& pair = comb.level(n);
    const std::size_t p = pair.period;
    const std::string tag = "level " + std::to_string(n) + ": ";
    const bool ordered = Angle() < pair.lo && pair.lo < pair.hi && p >= 1;
    add("order", n, ordered, tag + "need 0 < " + pair.lo.str() + " < " + pair.hi.str() + " < 1");
    if (!ordered) continue;
    add("periodicity", n, sigma_pow(pair.lo, p) == pair.lo && sigma_pow(pair.hi, p) == pair.hi,
        tag + "sigma^" + std::to_string(p) + " maps " + pair.lo.str() + " -> " + sigma_pow(pair.lo, p).str() + ", " +
            pair.hi.str() + " -> " + sigma_pow(pair.hi, p).str());
    const Arc big(pair.lo, pair.hi.value() - pair.lo.value());
    const Rational len = window_length(pair);
    const Angle lo1(pair.lo.value() + len), hi1(pair.hi.value() - len);
    add("window_endpoints", n, sigma_pow(lo1, p) == pair.hi && sigma_pow(hi1, p) == pair.lo,
        tag + "sigma^p(" + lo1.str() + ") = " + sigma_pow(lo1, p).str() + ", sigma^p(" + hi1.str() +
            ") = " + sigma_pow(hi1, p).str());
    if (n > 1) {
      const RayPair& prev = comb.level(n - 1);
      add("period_ratio", n, p % prev.period == 0 && p >= 2 * prev.period,
          tag + "p=" + std::to_string(p) + " vs previous " + std::to_string(prev.period));
      const Arc prev_big(prev.lo, prev.hi.value() - prev.lo.value());
      add("nesting_S", n, prev_big.contains(big), tag + to_string(big) + " not inside " + to_string(prev_big));
      const Rational prev_len = window_length(prev);
      ArcSet small({Arc(pair.lo, len), Arc(hi1, len)});
      ArcSet prev_small({Arc(prev.lo, prev_len), Arc(Angle(prev.hi.value() - prev_len), prev_len)});
      add("nesting_s", n, is_subset(small, prev_small), tag + to_string(small) + " not inside " + to_string(prev_small));
    }
    std::string exclusion_witness;
    Angle a = pair.lo, b = pair.hi;
    for (std::size_t k = 1; k <= p && exclusion_witness.empty(); ++k) {
      a = sigma(a);
      b = sigma(b);
      if (big.contains_interior(a)) exclusion_witness = tag + "sigma^" + std::to_string(k) + "(t) = " + a.str();
      if (big.contains_interior(b)) exclusion_witness = tag + "sigma^" + std::to_string(k) + "(t~) = " + b.str();
    }
    add("orbit_exclusion", n, exclusion_witness.empty(), exclusion_witness);

    auto chords = orbit_pairs(pair);
    std::string link_witness;
    for (std::size_t i = 0; i < chords.size() && link_witness.empty(); ++i) {
      for (std::size_t k = i + 1; k < chords.size(); ++k) {
        if (crosses(chords[i], chords[k])) {
          link_witness = tag + chord_text(chords[i]) + " links " + chord_text(chords[k]);
          break;
        }
      }
    }
    add("unlinking", n, link_witness.empty(), link_witness);

    std::string length_witness;
    const Angle mid(pair.lo.value() + (pair.hi.value() - pair.lo.value()) / 2);
    for (std::size_t k = 1; k < p && length_witness.empty(); ++k) {
      const auto& [x, y] = chords[k];
      Arc first = Arc::between(x, y);
      Arc outside = first.contains(mid) ? Arc::between(y, x) : first;
      if (outside.contains(mid) || outside.length() < big.length()) {
        length_witness = tag + "k=" + std::to_string(k) + " arc " + to_string(outside) + " shorter than " + to_string(big);
      }
    }
    add("length_minimality", n, length_witness.empty(), length_witness);

    for (const auto& c : chords) {
      all_chords.push_back(c);
      chord_level.push_back(n);
    }
  }
  std::string cross_witness;
  for (std::size_t i = 0; i < all_chords.size() && cross_witness.empty(); ++i) {
    for (std::size_t k = i + 1; k < all_chords.size(); ++k) {
      if (chord_level[i] != chord_level[k] && crosses(all_chords[i], all_chords[k])) {
        cross_witness = chord_text(all_chords[i]) + " (level " + std::to_string(chord_level[i]) + ") links " +
                        chord_text(all_chords[k]) + " (level " + std::to_string(chord_level[k]) + ")";
        break;
      }
    }
  }
  add("unlinking_across_levels", 0, cross_witness.empty(), cross_witness);
  return report;
}

bool all_pass(const std::vector<CheckResult>& report) {
  return std::all_of(report.begin(), report.end(), [](const CheckResult& c) { return c.pass; });
}

std::vector<Angle> sample_shadow_angles(const RenormCombinatorics& comb, std::size_t n, std::size_t j,
                                        std::size_t count, std::uint64_t seed, std::size_t max_cycle) {
  const RayPair& pair = comb.level(n);
  const std::size_t p = pair.period;
  const ArcSet windows = window_at(pair, j);
  const ArcSet subs = subwindow(pair, j).windows;
  const Rational scale(pow2(p));
  const Rational inv = pow2_inverse(p);

  // image[i]: the window of s_{n,j} that sigma^p maps sub-window i onto.
  std::vector<std::size_t> image(subs.size());
  std::vector<std::vector<std::size_t>> next(subs.size());
  for (std::size_t i = 0; i < subs.size(); ++i) {
    Arc im(sigma_pow(subs[i].start(), p), subs[i].length() * scale);
    image[i] = (im == windows[0]) ? 0 : 1;
    for (std::size_t k = 0; k < subs.size(); ++k) {
      if (windows[image[i]].contains(subs[k])) next[i].push_back(k);
    }
    if (next[i].empty()) throw std::logic_error("sub-window graph has a dead end");
  }

  std::mt19937_64 rng(seed);
  std::set<Angle> found;
  std::vector<Angle> out;
  const std::size_t max_attempts = 64 * count + 256;
  for (std::size_t attempt = 0; attempt < max_attempts && out.size() < count; ++attempt) {
    std::vector<std::size_t> chain{static_cast<std::size_t>(rng() % subs.size())};
    const std::size_t length = 1 + static_cast<std::size_t>(rng() % std::max<std::size_t>(max_cycle, 1));
    while (chain.size() < length) {
      const auto& options = next[chain.back()];
      chain.push_back(options[rng() % options.size()]);
    }
    const auto& closing = next[chain.back()];
    if (std::find(closing.begin(), closing.end(), chain.front()) == closing.end()) continue;

    // x_k = (x_{k+1} + shift_{k+1} + carry_k) / 2^p with x_L = x_0; the lifted
    // composition is affine, x_0 = slope * x_0 + offset.
    Rational slope(1), offset(0);
    for (std::size_t idx = chain.size(); idx-- > 0;) {
      const std::size_t c = chain[idx];
      const std::size_t c_next = chain[(idx + 1) % chain.size()];
      const Rational& w_start = windows[image[c]].start().value();
      const Integer shift = -floor_of(subs[c_next].start().value() - w_start);
      const Integer carry = floor_of(subs[c].start().value() * scale);
      offset = (offset + Rational(shift + carry)) * inv;
      slope *= inv;
    }
    Angle x(offset / (1 - slope));
    if (found.insert(x).second) out.push_back(x);
  }
  return out;
}

}  // namespace renorm
