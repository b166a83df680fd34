#pragma once

// Renormalization combinatorics: towers of periodic ray pairs, their angle
// windows and sub-windows, angle shadows of small Julia sets, the itinerary
// semiconjugacy theta and omega-limit probes.
//
// Levels are numbered from 1. For level n with pair (t, t~) of period p:
//   S_n        = [t, t~]
//   s_{n,1}    = [t, t'] U [t~', t~],  t' = t + (t~ - t)/2^p, t~' = t~ - (t~ - t)/2^p
//   s_{n,j}    = sigma^{j-1}(s_{n,1}),  windows of length (t~ - t)/2^{p-j+1}
//   s^1_{n,j}  = four sub-windows of s_{n,j} of length |window|/2^p

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "renorm/circle.hpp"

namespace renorm {

struct RayPair {
  std::size_t period = 0;
  Angle lo;
  Angle hi;

  friend bool operator==(const RayPair&, const RayPair&) = default;
};

struct RenormCombinatorics {
  std::vector<RayPair> levels;

  std::size_t size() const { return levels.size(); }
  // 1-based; throws std::invalid_argument when out of range.
  const RayPair& level(std::size_t n) const;
};

// Nested small Julia sets f^{j_n}(J_n), 1 <= j_n <= p_n, j_{n+1} = j_n mod p_n.
struct ComponentAddress {
  std::vector<std::size_t> js;
};

// Base pair from two periodic angles; the period is their common exact
// period. Throws std::invalid_argument if they differ or the order is wrong.
RayPair make_pair(const Angle& lo, const Angle& hi);
RayPair feigenbaum_base();  // (2, 1/3, 2/3)
RayPair rabbit_base();      // (3, 1/7, 2/7)

// Angle 0.(word)(word)... for a non-empty binary word.
Angle periodic_angle(const std::string& word);

// Tuning: substitute the period-p words of base.lo / base.hi for the
// binary digits 0 / 1 of t.
Angle tune(const RayPair& base, const Angle& t);

// Level 1 is `base`; level k+1 tunes level k's pair by `base`.
RenormCombinatorics tuned_tower(const RayPair& base, std::size_t depth);
RenormCombinatorics feigenbaum_tower(std::size_t depth);

struct Window {
  ArcSet s;  // labeled "left" = [t, t'], "right" = [t~', t~]
  Angle lo1;
  Angle hi1;
};
// Throws DomainError("pair is not a valid renormalization pair") unless
// sigma^p(t') = t~ and sigma^p(t~') = t.
Window window(const RayPair& pair);

// s_{n,j}, two labeled windows "left" and "right" (images of those of s_{n,1}).
ArcSet window_at(const RayPair& pair, std::size_t j);

struct Subwindow {
  // Labeled "left.lo", "left.hi", "right.lo", "right.hi": the component
  // adjacent to each endpoint of each window of s_{n,j}.
  ArcSet windows;
  // Components of s_{n,j} ∩ sigma^{-p}(s_{n,j}) not adjacent to an endpoint.
  Integer extra_components;
  std::vector<Arc> extra_witnesses;
};
Subwindow subwindow(const RayPair& pair, std::size_t j);

// Whether t lies in the angle shadow of f^j(J_n): sigma^{kp}(t) in s^1_{n,j}
// for every k.
bool in_shadow(const Angle& t, const RenormCombinatorics& comb, std::size_t n, std::size_t j);

struct KcShadow {
  ArcSet windows;  // s_{depth,1}
  LimitAngle tau1;
  LimitAngle tau2;
};
KcShadow shadow_Kc(const RenormCombinatorics& comb, std::size_t depth);

// Limit angles lim t_n and lim t~_n of the tower tuned from `base`, with
// levels generated on demand up to `depth_budget`.
std::pair<LimitAngle, LimitAngle> tuned_limit_angles(const RayPair& base, std::size_t depth_budget);

struct ComponentShadow {
  ArcSet windows;  // intersection of s^1_{n,j_n} for n <= depth
  // Some offset p_n - j_n is constant N over the queried levels: the
  // component is mapped onto the critical component by f^N.
  std::optional<std::size_t> critical_offset;
};
ComponentShadow shadow_component(const RenormCombinatorics& comb, const ComponentAddress& addr, std::size_t depth);

struct ThetaResult {
  Angle value;
  // Some sigma^{kp}(t) hit an endpoint of S_{n,0} or S'_{n,0}.
  bool boundary_collapse = false;
  std::vector<int> itinerary;  // epsilon over one preperiod + period of the sigma^p orbit
};
ThetaResult theta(const RenormCombinatorics& comb, std::size_t n, const Angle& t);

struct OmegaTarget {
  std::string label;
  std::variant<Angle, LimitAngle> point;
};
struct OmegaHit {
  std::string label;
  std::optional<std::size_t> first_hit;
};
// Smallest 1 <= k <= horizon at which sigma^k(source) and the target share
// their first `bits` binary digits (which places them within 2^-bits).
std::vector<OmegaHit> omega_probe(const LimitAngle& source, const std::vector<OmegaTarget>& targets,
                                  std::size_t horizon, std::size_t bits);

struct CheckResult {
  std::string check;
  std::size_t level = 0;
  bool pass = true;
  std::string witness;
};
std::vector<CheckResult> validate(const RenormCombinatorics& comb);
bool all_pass(const std::vector<CheckResult>& report);

// Distinct periodic angles in the shadow of f^j(J_n), built as fixed points
// of random closed chains of inverse branches of sigma^p through the four
// sub-windows. Chains have length at most max_cycle.
std::vector<Angle> sample_shadow_angles(const RenormCombinatorics& comb, std::size_t n, std::size_t j,
                                        std::size_t count, std::uint64_t seed, std::size_t max_cycle = 4);

}  // namespace renorm
