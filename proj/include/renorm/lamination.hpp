#pragma once

// Finite invariant laminations: chords on the unit circle, linkage tests,
// families generated by a renormalization tower and SVG export.

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "renorm/circle.hpp"
#include "renorm/combinatorics.hpp"

namespace renorm {

class Chord {
 public:
  // Stored with a < b; throws std::invalid_argument when the endpoints agree.
  Chord(const Angle& x, const Angle& y);

  const Angle& a() const { return a_; }
  const Angle& b() const { return b_; }
  std::string str() const { return "(" + a_.str() + ", " + b_.str() + ")"; }

  friend bool operator==(const Chord&, const Chord&) = default;
  friend auto operator<=>(const Chord&, const Chord&) = default;

 private:
  Angle a_;
  Angle b_;
};

// Endpoints of c2 in different open arcs of the circle minus c1; shared
// endpoints never link.
bool linked(const Chord& c1, const Chord& c2);

// The image chord, or nothing when both endpoints map to the same angle.
std::optional<Chord> sigma_image(const Chord& c);

// {sigma^k(t_n), sigma^k(t~_n)} for n <= depth, 0 <= k < p_n, with repetition.
std::vector<Chord> orbit_chords(const RenormCombinatorics& comb, std::size_t depth);

// Sorted, duplicate-free family: orbit chords up to `depth` plus
// `preimage_depth` rounds of sigma-preimage chords. Each preimage pair is
// placed on the side of the major chords of the deepest level so that the
// family stays unlinked; throws DomainError naming the chord otherwise.
std::vector<Chord> build(const RenormCombinatorics& comb, std::size_t depth, std::size_t preimage_depth);

struct LinkageReport {
  bool pass = true;
  std::size_t linked_pairs = 0;
  std::vector<std::pair<Chord, Chord>> witnesses;  // first few linked pairs
};
LinkageReport verify_unlinked(const std::vector<Chord>& family, std::size_t max_witnesses = 16);

struct SvgOptions {
  bool circular_arcs = false;  // arcs orthogonal to the unit circle instead of segments
  int precision = 6;
};
std::string export_svg(const std::vector<Chord>& family, const SvgOptions& options = {});

}  // namespace renorm
