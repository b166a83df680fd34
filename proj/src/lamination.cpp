#include "renorm/lamination.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <numbers>
#include <set>
#include <sstream>
#include <stdexcept>

#include "renorm/error.hpp"

namespace renorm {

Chord::Chord(const Angle& x, const Angle& y) : a_(std::min(x, y)), b_(std::max(x, y)) {
  if (x == y) throw std::invalid_argument("chord endpoints must differ: " + x.str());
}

bool linked(const Chord& c1, const Chord& c2) {
  if (c2.a() == c1.a() || c2.a() == c1.b() || c2.b() == c1.a() || c2.b() == c1.b()) return false;
  auto inside = [&](const Angle& t) { return c1.a() < t && t < c1.b(); };
  return inside(c2.a()) != inside(c2.b());
}

std::optional<Chord> sigma_image(const Chord& c) {
  Angle x = sigma(c.a()), y = sigma(c.b());
  if (x == y) return std::nullopt;
  return Chord(x, y);
}

std::vector<Chord> orbit_chords(const RenormCombinatorics& comb, std::size_t depth) {
  if (depth > comb.size()) throw std::invalid_argument("lamination depth exceeds tower size");
  std::vector<Chord> out;
  for (std::size_t n = 1; n <= depth; ++n) {
    const RayPair& pair = comb.level(n);
    Angle x = pair.lo, y = pair.hi;
    for (std::size_t k = 0; k < pair.period; ++k) {
      out.emplace_back(x, y);
      x = sigma(x);
      y = sigma(y);
    }
  }
  return out;
}

namespace {

bool unlinked_with(const Chord& c, const std::set<Chord>& family) {
  return std::none_of(family.begin(), family.end(), [&](const Chord& f) { return linked(c, f); });
}

}  // namespace

std::vector<Chord> build(const RenormCombinatorics& comb, std::size_t depth, std::size_t preimage_depth) {
  std::vector<Chord> orbit = orbit_chords(comb, depth);
  std::set<Chord> family(orbit.begin(), orbit.end());
  if (depth == 0 || preimage_depth == 0) return {family.begin(), family.end()};

  const RayPair& deepest = comb.level(depth);
  const auto [lo0, lo1] = preimages(deepest.lo);
  const auto [hi0, hi1] = preimages(deepest.hi);
  const Chord majors[2] = {Chord(lo0, hi1), Chord(lo1, hi0)};

  std::vector<Chord> frontier(family.begin(), family.end());
  for (std::size_t round = 0; round < preimage_depth; ++round) {
    std::vector<Chord> next;
    for (const Chord& c : frontier) {
      const auto [a0, a1] = preimages(c.a());
      const auto [b0, b1] = preimages(c.b());
      // a0 < b0 < a1 < b1: side-by-side pairing or nested pairing.
      const std::pair<Chord, Chord> options[2] = {{Chord(a0, b1), Chord(b0, a1)}, {Chord(a0, b0), Chord(a1, b1)}};
      std::optional<std::pair<Chord, Chord>> chosen;
      for (const auto& option : options) {
        bool fits = true;
        for (const Chord& m : majors) {
          if (linked(option.first, m) || linked(option.second, m)) fits = false;
        }
        if (fits && unlinked_with(option.first, family) && unlinked_with(option.second, family)) {
          chosen = option;
          break;
        }
      }
      if (!chosen) throw DomainError("no unlinked preimage placement for chord " + c.str());
      for (const Chord& d : {chosen->first, chosen->second}) {
        if (family.insert(d).second) next.push_back(d);
      }
    }
    frontier = std::move(next);
  }
  return {family.begin(), family.end()};
}

LinkageReport verify_unlinked(const std::vector<Chord>& family, std::size_t max_witnesses) {
  LinkageReport report;
  for (std::size_t i = 0; i < family.size(); ++i) {
    for (std::size_t k = i + 1; k < family.size(); ++k) {
      if (!linked(family[i], family[k])) continue;
      report.pass = false;
      ++report.linked_pairs;
      if (report.witnesses.size() < max_witnesses) report.witnesses.emplace_back(family[i], family[k]);
    }
  }
  return report;
}

std::string export_svg(const std::vector<Chord>& family, const SvgOptions& options) {
  std::ostringstream out;
  out << std::fixed << std::setprecision(options.precision);
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" viewBox=\"-1.05 -1.05 2.1 2.1\">\n"
      << "<circle cx=\"0\" cy=\"0\" r=\"1\" fill=\"none\" stroke=\"black\" stroke-width=\"0.004\"/>\n"
      << "<g fill=\"none\" stroke=\"black\" stroke-width=\"0.004\">\n";
  const double tau = 2 * std::numbers::pi;
  for (const Chord& c : family) {
    const double ta = c.a().to_double(), tb = c.b().to_double();
    const double px = std::cos(tau * ta), py = -std::sin(tau * ta);
    const double qx = std::cos(tau * tb), qy = -std::sin(tau * tb);
    double gap = tb - ta;
    if (gap > 0.5) gap = 1 - gap;
    const double half = std::numbers::pi * gap;
    if (!options.circular_arcs || std::abs(gap - 0.5) < 1e-12) {
      out << "<line x1=\"" << px << "\" y1=\"" << py << "\" x2=\"" << qx << "\" y2=\"" << qy << "\"/>\n";
      continue;
    }
    // Circle orthogonal to the unit circle through both endpoints.
    const double mx = (px + qx) / 2, my = (py + qy) / 2;
    const double mlen = std::hypot(mx, my);
    const double dist = 1 / std::cos(half);
    const double cx = mx / mlen * dist, cy = my / mlen * dist;
    const double radius = std::tan(half);
    const double cross = (px - cx) * (qy - cy) - (py - cy) * (qx - cx);
    out << "<path d=\"M " << px << " " << py << " A " << radius << " " << radius << " 0 0 " << (cross > 0 ? 1 : 0)
        << " " << qx << " " << qy << "\"/>\n";
  }
  out << "</g>\n</svg>\n";
  return out.str();
}

}  // namespace renorm
