#pragma once

// Exact arithmetic on the circle R/Z.
//
// Every angle is a reduced fraction in [0, 1). Arcs are closed and are
// traversed counterclockwise from their start. All types are immutable
// values; every free function is pure.

#include <gmpxx.h>

#include <compare>
#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace renorm {

using Integer = mpz_class;
using Rational = mpq_class;

Integer pow2(std::size_t exponent);
Rational pow2_inverse(std::size_t exponent);
Integer floor_of(const Rational& value);
Integer ceil_of(const Rational& value);

// Parses "p/q" or "p" into a canonical rational. Decimal points are rejected.
Rational parse_rational(std::string_view text);
std::string to_string(const Rational& value);

class Angle {
 public:
  Angle() = default;
  // Reduces mod 1.
  explicit Angle(const Rational& value);
  Angle(long numerator, unsigned long denominator);

  static Angle parse(std::string_view text);

  const Rational& value() const { return value_; }
  Integer numerator() const { return value_.get_num(); }
  Integer denominator() const { return value_.get_den(); }
  double to_double() const { return value_.get_d(); }
  std::string str() const { return to_string(value_); }

  friend bool operator==(const Angle& a, const Angle& b) { return a.value_ == b.value_; }
  friend std::strong_ordering operator<=>(const Angle& a, const Angle& b) {
    int c = cmp(a.value_, b.value_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

 private:
  Rational value_{0};
};

// The doubling map t -> 2t mod 1.
Angle sigma(const Angle& t);
// sigma applied k times, computed as 2^k t mod 1.
Angle sigma_pow(const Angle& t, std::size_t k);
// The two preimages t/2 and t/2 + 1/2, in increasing order.
std::pair<Angle, Angle> preimages(const Angle& t);

struct OrbitInfo {
  std::size_t preperiod = 0;
  std::size_t period = 1;
};

// Preperiod is the 2-adic valuation of the denominator; period is the
// multiplicative order of 2 modulo its odd part. Throws DomainError if the
// order exceeds max_period.
OrbitInfo orbit_info(const Angle& t, std::size_t max_period = std::size_t{1} << 24);

// Counterclockwise distance from `from` to `to`, in [0, 1).
Rational ccw_distance(const Angle& from, const Angle& to);

// First `bits` binary digits of t, i.e. floor(t * 2^bits) written in base 2
// with leading zeros.
std::string binary_prefix(const Angle& t, std::size_t bits);

class Arc {
 public:
  // 0 <= length <= 1; length 1 is the full circle (canonical start 0).
  Arc(const Angle& start, const Rational& length);

  static Arc full() { return Arc(Angle(), Rational(1)); }
  static Arc point(const Angle& a) { return Arc(a, Rational(0)); }
  // Counterclockwise arc from a to b (degenerate when a == b).
  static Arc between(const Angle& a, const Angle& b) { return Arc(a, ccw_distance(a, b)); }

  const Angle& start() const { return start_; }
  const Rational& length() const { return length_; }
  Angle end() const { return Angle(start_.value() + length_); }
  bool is_full() const { return length_ == 1; }
  bool is_point() const { return length_ == 0; }

  bool contains(const Angle& t) const;
  // Membership in the arc minus its endpoints.
  bool contains_interior(const Angle& t) const;
  bool contains(const Arc& inner) const;
  bool has_endpoint(const Angle& t) const { return t == start_ || t == end(); }

  friend bool operator==(const Arc& a, const Arc& b) {
    return a.start_ == b.start_ && a.length_ == b.length_;
  }

 private:
  Angle start_;
  Rational length_;
};

std::string to_string(const Arc& arc);

// Finite union of disjoint closed arcs, sorted by start.
//
// The plain constructor canonicalizes: overlapping or touching arcs merge.
// ArcSet::labeled keeps each component separate (touching allowed, overlap
// rejected) so that structured sets such as the four sub-windows never lose
// their component identity.
class ArcSet {
 public:
  ArcSet() = default;
  explicit ArcSet(std::vector<Arc> arcs);

  static ArcSet labeled(std::vector<Arc> arcs, std::vector<std::string> labels);

  const std::vector<Arc>& arcs() const { return arcs_; }
  const std::vector<std::string>& labels() const { return labels_; }
  std::size_t size() const { return arcs_.size(); }
  bool empty() const { return arcs_.empty(); }
  bool is_labeled() const { return !labels_.empty(); }
  const Arc& operator[](std::size_t i) const { return arcs_[i]; }

  Rational total_length() const;
  bool contains(const Angle& t) const;
  // Index of the component containing t, if any.
  std::optional<std::size_t> component_of(const Angle& t) const;
  // Merged, unlabeled form.
  ArcSet canonical() const { return ArcSet(arcs_); }

  friend bool operator==(const ArcSet& a, const ArcSet& b) { return a.arcs_ == b.arcs_; }

 private:
  std::vector<Arc> arcs_;
  std::vector<std::string> labels_;
};

std::string to_string(const ArcSet& set);

ArcSet intersect(const ArcSet& a, const ArcSet& b);
ArcSet unite(const ArcSet& a, const ArcSet& b);
bool is_subset(const ArcSet& inner, const ArcSet& outer);

// Image under sigma; every component must be shorter than 1/2.
Arc sigma_image(const Arc& arc);
ArcSet sigma_image(const ArcSet& set);
// Full preimage under sigma^m: 2^m arcs per component. Throws
// std::invalid_argument when more than max_arcs arcs would be produced.
ArcSet sigma_preimage_pow(const ArcSet& set, std::size_t m, std::size_t max_arcs = std::size_t{1} << 20);

// Components of {x in domain : sigma^m(x) in target}, without materializing
// the full preimage. Enumerates at most `edge_limit` components from each
// end of every target lift range; `total` is the exact component count.
struct PreimageScan {
  std::vector<Arc> components;  // sorted along the domain, counterclockwise
  Integer total;
};
PreimageScan sigma_preimage_within(const Arc& domain, const ArcSet& target, std::size_t m,
                                   std::size_t edge_limit = 4);

// An angle known only through nested closed arcs of shrinking length.
class LimitAngle {
 public:
  using Refiner = std::function<Arc(std::size_t depth)>;

  LimitAngle(Refiner refiner, std::size_t depth_budget);
  static LimitAngle constant(const Angle& t);

  std::size_t depth_budget() const { return budget_; }
  // Arc at depth m < depth_budget().
  Arc at_depth(std::size_t m) const;

 private:
  Refiner refiner_;
  std::size_t budget_;
};

// Dyadic angle within 2^-bits of the limit: the binary truncation when the
// first arc shorter than 2^-bits lies inside one dyadic cell, otherwise the
// dyadic boundary it straddles. Successive precisions stay within 2^-bits of
// each other. Throws DomainError("insufficient depth") when the budget runs
// out or nesting is violated.
Angle refine(const LimitAngle& limit, std::size_t bits);

}  // namespace renorm
