#include "renorm/circle.hpp"

#include <algorithm>
#include <cctype>
#include <stdexcept>

#include "renorm/error.hpp"

namespace renorm {

Integer pow2(std::size_t exponent) {
  Integer r;
  mpz_ui_pow_ui(r.get_mpz_t(), 2, exponent);
  return r;
}

Rational pow2_inverse(std::size_t exponent) {
  Rational r(Integer(1), pow2(exponent));
  return r;
}

Integer floor_of(const Rational& value) {
  Integer r;
  mpz_fdiv_q(r.get_mpz_t(), value.get_num_mpz_t(), value.get_den_mpz_t());
  return r;
}

Integer ceil_of(const Rational& value) {
  Integer r;
  mpz_cdiv_q(r.get_mpz_t(), value.get_num_mpz_t(), value.get_den_mpz_t());
  return r;
}

namespace {

bool is_integer_text(std::string_view s) {
  if (s.empty()) return false;
  std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  }
  return true;
}

Integer parse_integer(std::string_view s) {
  if (!is_integer_text(s)) throw std::invalid_argument("not an integer: '" + std::string(s) + "'");
  std::string text(s[0] == '+' ? s.substr(1) : s);
  return Integer(text, 10);
}

Rational frac(const Rational& v) { return v - Rational(floor_of(v)); }

}  // namespace

Rational parse_rational(std::string_view text) {
  auto slash = text.find('/');
  if (slash == std::string_view::npos) return Rational(parse_integer(text));
  Integer num = parse_integer(text.substr(0, slash));
  std::string_view den_text = text.substr(slash + 1);
  if (!den_text.empty() && (den_text[0] == '-' || den_text[0] == '+')) {
    throw std::invalid_argument("denominator must be an unsigned integer: '" + std::string(text) + "'");
  }
  Integer den = parse_integer(den_text);
  if (den == 0) throw std::invalid_argument("zero denominator: '" + std::string(text) + "'");
  Rational r(num, den);
  r.canonicalize();
  return r;
}

std::string to_string(const Rational& value) {
  if (value.get_den() == 1) return value.get_num().get_str();
  return value.get_num().get_str() + "/" + value.get_den().get_str();
}

Angle::Angle(const Rational& value) : value_(frac(value)) {}

Angle::Angle(long numerator, unsigned long denominator) {
  if (denominator == 0) throw std::invalid_argument("zero denominator");
  Rational r(numerator, denominator);
  r.canonicalize();
  value_ = frac(r);
}

Angle Angle::parse(std::string_view text) { return Angle(parse_rational(text)); }

Angle sigma(const Angle& t) { return Angle(t.value() * 2); }

Angle sigma_pow(const Angle& t, std::size_t k) {
  Rational scaled(t.value().get_num() * pow2(k), t.value().get_den());
  scaled.canonicalize();
  return Angle(scaled);
}

std::pair<Angle, Angle> preimages(const Angle& t) {
  Rational half = t.value() / 2;
  return {Angle(half), Angle(half + Rational(1, 2))};
}

OrbitInfo orbit_info(const Angle& t, std::size_t max_period) {
  const Integer den = t.denominator();
  OrbitInfo info;
  info.preperiod = mpz_scan1(den.get_mpz_t(), 0);
  Integer odd = den >> static_cast<mp_bitcnt_t>(info.preperiod);
  if (odd == 1) {
    info.period = 1;
    return info;
  }
  Integer x = 2 % odd;
  std::size_t k = 1;
  while (x != 1) {
    x = (x * 2) % odd;
    if (++k > max_period) throw DomainError("orbit period exceeds " + std::to_string(max_period));
  }
  info.period = k;
  return info;
}

Rational ccw_distance(const Angle& from, const Angle& to) { return frac(to.value() - from.value()); }

std::string binary_prefix(const Angle& t, std::size_t bits) {
  Integer scaled = floor_of(t.value() * Rational(pow2(bits)));
  std::string s(bits, '0');
  for (std::size_t i = 0; i < bits; ++i) {
    if (mpz_tstbit(scaled.get_mpz_t(), bits - 1 - i)) s[i] = '1';
  }
  return s;
}

// --- Arc ---

Arc::Arc(const Angle& start, const Rational& length) : start_(start), length_(length) {
  if (length_ < 0 || length_ > 1) {
    throw std::invalid_argument("arc length must lie in [0, 1], got " + to_string(length_));
  }
  if (length_ == 1) start_ = Angle();
}

bool Arc::contains(const Angle& t) const {
  if (is_full()) return true;
  return ccw_distance(start_, t) <= length_;
}

bool Arc::contains_interior(const Angle& t) const {
  if (is_full()) return true;
  Rational d = ccw_distance(start_, t);
  return d > 0 && d < length_;
}

bool Arc::contains(const Arc& inner) const {
  if (is_full()) return true;
  if (inner.is_full()) return false;
  return ccw_distance(start_, inner.start_) + inner.length_ <= length_;
}

std::string to_string(const Arc& arc) {
  if (arc.is_full()) return "S1";
  return "[" + arc.start().str() + ", " + arc.end().str() + "]";
}

// --- interval machinery ---
//
// Arcs are cut into closed intervals of [0, 1]. An arc reaching or passing 1
// also contributes [0, end - 1], so the identification 1 == 0 is visible to
// interval intersection.

namespace {

struct Interval {
  Rational lo;
  Rational hi;
};

void append_intervals(const Arc& arc, std::vector<Interval>& out) {
  if (arc.is_full()) {
    out.push_back({Rational(0), Rational(1)});
    return;
  }
  Rational lo = arc.start().value();
  Rational hi = lo + arc.length();
  if (hi < 1) {
    out.push_back({lo, hi});
  } else {
    out.push_back({lo, Rational(1)});
    out.push_back({Rational(0), hi - 1});
  }
}

std::vector<Interval> to_intervals(const std::vector<Arc>& arcs) {
  std::vector<Interval> out;
  for (const auto& a : arcs) append_intervals(a, out);
  return out;
}

std::vector<Interval> merge(std::vector<Interval> v) {
  std::sort(v.begin(), v.end(), [](const Interval& a, const Interval& b) {
    if (a.lo != b.lo) return a.lo < b.lo;
    return a.hi < b.hi;
  });
  std::vector<Interval> out;
  for (auto& iv : v) {
    if (!out.empty() && iv.lo <= out.back().hi) {
      if (iv.hi > out.back().hi) out.back().hi = iv.hi;
    } else {
      out.push_back(iv);
    }
  }
  return out;
}

std::vector<Arc> intervals_to_arcs(std::vector<Interval> v) {
  v = merge(std::move(v));
  std::vector<Arc> arcs;
  if (v.empty()) return arcs;
  if (v.size() == 1 && v[0].lo == 0 && v[0].hi == 1) return {Arc::full()};
  bool wrap = v.size() >= 2 && v.front().lo == 0 && v.back().hi == 1;
  std::size_t first = wrap ? 1 : 0;
  std::size_t last = wrap ? v.size() - 1 : v.size();
  for (std::size_t i = first; i < last; ++i) {
    arcs.emplace_back(Angle(v[i].lo), v[i].hi - v[i].lo);
  }
  if (wrap) {
    Rational len = (1 - v.back().lo) + v.front().hi;
    if (len >= 1) return {Arc::full()};
    arcs.emplace_back(Angle(v.back().lo), len);
  }
  std::sort(arcs.begin(), arcs.end(), [](const Arc& a, const Arc& b) { return a.start() < b.start(); });
  return arcs;
}

}  // namespace

// --- ArcSet ---

ArcSet::ArcSet(std::vector<Arc> arcs) : arcs_(intervals_to_arcs(to_intervals(arcs))) {}

ArcSet ArcSet::labeled(std::vector<Arc> arcs, std::vector<std::string> labels) {
  if (arcs.size() != labels.size()) throw std::invalid_argument("one label per arc required");
  std::vector<std::size_t> order(arcs.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return arcs[a].start() < arcs[b].start(); });
  ArcSet out;
  for (auto i : order) {
    out.arcs_.push_back(arcs[i]);
    out.labels_.push_back(labels[i]);
  }
  // Components may touch but must not overlap: pairwise intersections are
  // empty or single shared endpoints.
  for (std::size_t i = 0; i < out.arcs_.size(); ++i) {
    for (std::size_t j = i + 1; j < out.arcs_.size(); ++j) {
      ArcSet common = intersect(ArcSet({out.arcs_[i]}), ArcSet({out.arcs_[j]}));
      for (const auto& a : common.arcs()) {
        if (!a.is_point()) {
          throw std::invalid_argument("labeled components overlap: " + to_string(out.arcs_[i]) + " and " +
                                      to_string(out.arcs_[j]));
        }
      }
    }
  }
  return out;
}

Rational ArcSet::total_length() const {
  Rational sum(0);
  for (const auto& a : arcs_) sum += a.length();
  return sum;
}

bool ArcSet::contains(const Angle& t) const { return component_of(t).has_value(); }

std::optional<std::size_t> ArcSet::component_of(const Angle& t) const {
  for (std::size_t i = 0; i < arcs_.size(); ++i) {
    if (arcs_[i].contains(t)) return i;
  }
  return std::nullopt;
}

std::string to_string(const ArcSet& set) {
  if (set.empty()) return "{}";
  std::string s;
  for (std::size_t i = 0; i < set.size(); ++i) {
    if (i) s += " U ";
    s += to_string(set[i]);
  }
  return s;
}

ArcSet intersect(const ArcSet& a, const ArcSet& b) {
  auto ia = merge(to_intervals(a.arcs()));
  auto ib = merge(to_intervals(b.arcs()));
  std::vector<Interval> out;
  for (const auto& x : ia) {
    for (const auto& y : ib) {
      Rational lo = x.lo > y.lo ? x.lo : y.lo;
      Rational hi = x.hi < y.hi ? x.hi : y.hi;
      if (lo <= hi) out.push_back({lo, hi});
    }
  }
  return ArcSet(intervals_to_arcs(std::move(out)));
}

ArcSet unite(const ArcSet& a, const ArcSet& b) {
  std::vector<Arc> all = a.arcs();
  all.insert(all.end(), b.arcs().begin(), b.arcs().end());
  return ArcSet(std::move(all));
}

bool is_subset(const ArcSet& inner, const ArcSet& outer) {
  ArcSet merged = outer.canonical();
  for (const auto& arc : inner.arcs()) {
    bool inside = std::any_of(merged.arcs().begin(), merged.arcs().end(),
                              [&](const Arc& o) { return o.contains(arc); });
    if (!inside) return false;
  }
  return true;
}

Arc sigma_image(const Arc& arc) {
  if (arc.length() >= Rational(1, 2)) throw DomainError("component too long, image not an arc: " + to_string(arc));
  return Arc(sigma(arc.start()), arc.length() * 2);
}

ArcSet sigma_image(const ArcSet& set) {
  std::vector<Arc> out;
  for (const auto& a : set.arcs()) out.push_back(sigma_image(a));
  return ArcSet(std::move(out));
}

ArcSet sigma_preimage_pow(const ArcSet& set, std::size_t m, std::size_t max_arcs) {
  if (m >= 63 || (set.size() << m) > max_arcs) {
    throw std::invalid_argument("sigma_preimage_pow: too many preimage arcs requested");
  }
  std::vector<Arc> out;
  const std::size_t copies = std::size_t{1} << m;
  const Rational scale = pow2_inverse(m);
  for (const auto& a : set.arcs()) {
    if (a.is_full()) return ArcSet({Arc::full()});
    for (std::size_t i = 0; i < copies; ++i) {
      out.emplace_back(Angle((a.start().value() + Rational(static_cast<unsigned long>(i))) * scale), a.length() * scale);
    }
  }
  return ArcSet(std::move(out));
}

PreimageScan sigma_preimage_within(const Arc& domain, const ArcSet& target, std::size_t m, std::size_t edge_limit) {
  PreimageScan scan;
  scan.total = 0;
  if (domain.is_full()) throw std::invalid_argument("sigma_preimage_within: domain must be a proper arc");
  const Rational scale(pow2(m));
  const Rational x0 = domain.start().value() * scale;
  const Rational x1 = (domain.start().value() + domain.length()) * scale;
  const Rational inv = pow2_inverse(m);

  struct Lifted {
    Rational lo;
    Rational hi;
  };
  std::vector<Lifted> found;
  const ArcSet merged = target.canonical();
  for (const auto& t : merged.arcs()) {
    if (t.is_full()) {
      scan.total = 1;
      scan.components = {domain};
      return scan;
    }
    const Rational& y = t.start().value();
    const Rational& len = t.length();
    Integer i_min = ceil_of(x0 - y - len);
    Integer i_max = floor_of(x1 - y);
    if (i_max < i_min) continue;
    Integer count = i_max - i_min + 1;
    scan.total += count;
    auto emit = [&](const Integer& i) {
      Rational lo = y + Rational(i);
      Rational hi = lo + len;
      if (lo < x0) lo = x0;
      if (hi > x1) hi = x1;
      found.push_back({lo, hi});
    };
    const Integer limit(static_cast<unsigned long>(edge_limit));
    if (count <= 2 * limit) {
      for (Integer i = i_min; i <= i_max; ++i) emit(i);
    } else {
      for (Integer i = i_min; i < i_min + limit; ++i) emit(i);
      for (Integer i = i_max - limit + 1; i <= i_max; ++i) emit(i);
    }
  }
  std::sort(found.begin(), found.end(), [](const Lifted& a, const Lifted& b) { return a.lo < b.lo; });
  for (const auto& f : found) scan.components.emplace_back(Angle(f.lo * inv), (f.hi - f.lo) * inv);
  return scan;
}

// --- LimitAngle ---

LimitAngle::LimitAngle(Refiner refiner, std::size_t depth_budget)
    : refiner_(std::move(refiner)), budget_(depth_budget) {
  if (!refiner_) throw std::invalid_argument("LimitAngle needs a refiner");
}

LimitAngle LimitAngle::constant(const Angle& t) {
  return LimitAngle([t](std::size_t) { return Arc::point(t); }, 64);
}

Arc LimitAngle::at_depth(std::size_t m) const {
  if (m >= budget_) throw DomainError("insufficient depth");
  return refiner_(m);
}

Angle refine(const LimitAngle& limit, std::size_t bits) {
  if (bits < 1) throw std::invalid_argument("refine: bits must be at least 1");
  const Rational cell = pow2_inverse(bits);
  const Rational scale(pow2(bits));
  std::optional<Arc> previous;
  for (std::size_t m = 0; m < limit.depth_budget(); ++m) {
    Arc arc = limit.at_depth(m);
    if (previous && !previous->contains(arc)) {
      throw DomainError("limit arcs not nested at depth " + std::to_string(m));
    }
    if (arc.length() < cell) {
      const Rational& s = arc.start().value();
      Integer ks = floor_of(s * scale);
      Integer ke = floor_of((s + arc.length()) * scale);
      // ke == ks: inside one dyadic cell; otherwise the arc straddles ke/2^bits.
      return Angle(Rational(ke == ks ? ks : ke) * cell);
    }
    previous = arc;
  }
  throw DomainError("insufficient depth");
}

}  // namespace renorm
