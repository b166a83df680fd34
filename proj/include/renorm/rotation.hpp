#pragma once

// Rotation sets of the doubling map.

#include <optional>
#include <vector>

#include "renorm/circle.hpp"

namespace renorm {

struct RotationSet {
  std::vector<Angle> points;  // increasing, i.e. cyclic order from 0
  Rational rho;
};

// The unique period-q orbit of sigma on which sigma advances cyclic position
// by p. Built from its Sturmian itinerary: the i-th smallest point has
// binary digit j equal to 1 iff (i + (j-1)p) mod q >= q - p.
RotationSet minimal_rotation_set(const Rational& nu);

// k/|S| when sigma maps S into itself advancing every point by the same
// number k of cyclic positions; nullopt otherwise.
std::optional<Rational> rotation_number(std::vector<Angle> points);

struct EnclosingArc {
  Arc arc;
  bool fits_semicircle;
};

// Complement of the largest gap between consecutive points; ties go to the
// arc with the smallest start.
EnclosingArc minimal_enclosing_arc(std::vector<Angle> points);

// Brute force: every cycle of sigma among k/(2^q - 1) with exact period q
// whose rotation number is p/q. Used as an independent check of
// minimal_rotation_set; q is limited to 20.
std::vector<RotationSet> rotation_oracle(const Rational& nu);

}  // namespace renorm
