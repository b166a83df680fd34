#pragma once

// JSON forms of the exact and numerical types.
//
//   Angle     {"num": "<decimal>", "den": "<decimal>"}
//   Rational  same shape as Angle
//   Arc       {"start": Angle, "len": Rational}   (+ "label" for labeled sets)
//   ArcSet    [Arc, ...] in cyclic order
//   RayPair   {"period": p, "lo": Angle, "hi": Angle}
//   tower     {"levels": [RayPair, ...]}
//   complex   [re, im]

#include "json.hpp"
#include "renorm/combinatorics.hpp"
#include "renorm/lamination.hpp"
#include "renorm/plane.hpp"
#include "renorm/rotation.hpp"

namespace renorm::io {

using nlohmann::json;

json to_json(const Rational& r);
json to_json(const Angle& a);
json to_json(const Arc& a);
json to_json(const ArcSet& s);
json to_json(const RayPair& p);
json to_json(const RenormCombinatorics& comb);
json to_json(const Complex& z);
json to_json(const Chord& c);
json to_json(const CheckResult& c);
json to_json(const RayPath& path);
json to_json(const PeriodicPoint& p);
json to_json(const ExpansionReport& r);
json to_json(const TelescopeReport& r);
json to_json(const RotationSet& s);

// Accept {"num","den"} objects or "p/q" strings. Throw std::invalid_argument.
Rational rational_from_json(const json& j);
Angle angle_from_json(const json& j);
RayPair pair_from_json(const json& j);
// {"levels": [...]} or a bare array of pairs. A declared "period" is taken
// as given (validate() judges it); without one the exact common period of
// lo and hi is used.
RenormCombinatorics tower_from_json(const json& j);

}  // namespace renorm::io
