#include "renorm/rotation.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace renorm {

namespace {

void check_nu(const Rational& nu) {
  if (nu < 0 || nu >= 1) throw std::invalid_argument("rotation number must lie in [0, 1), got " + to_string(nu));
}

void sort_unique(std::vector<Angle>& v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
}

}  // namespace

RotationSet minimal_rotation_set(const Rational& nu) {
  check_nu(nu);
  const unsigned long p = nu.get_num().get_ui();
  const unsigned long q = nu.get_den().get_ui();
  const Integer cycle_den = pow2(q) - 1;
  RotationSet out;
  out.rho = nu;
  for (unsigned long i = 0; i < q; ++i) {
    Integer word = 0;
    for (unsigned long j = 0; j < q; ++j) {
      word <<= 1;
      if ((i + j * p) % q >= q - p) word += 1;
    }
    Rational value(word, cycle_den);
    value.canonicalize();
    out.points.emplace_back(value);
  }
  sort_unique(out.points);
  return out;
}

std::optional<Rational> rotation_number(std::vector<Angle> points) {
  if (points.empty()) throw std::invalid_argument("rotation_number: empty set");
  sort_unique(points);
  const std::size_t n = points.size();
  auto index_of = [&](const Angle& a) -> std::optional<std::size_t> {
    auto it = std::lower_bound(points.begin(), points.end(), a);
    if (it == points.end() || *it != a) return std::nullopt;
    return static_cast<std::size_t>(it - points.begin());
  };
  auto first = index_of(sigma(points[0]));
  if (!first) return std::nullopt;
  const std::size_t step = *first;
  for (std::size_t i = 1; i < n; ++i) {
    auto idx = index_of(sigma(points[i]));
    if (!idx || *idx != (i + step) % n) return std::nullopt;
  }
  Rational rho(static_cast<unsigned long>(step), static_cast<unsigned long>(n));
  rho.canonicalize();
  return rho;
}

EnclosingArc minimal_enclosing_arc(std::vector<Angle> points) {
  if (points.empty()) throw std::invalid_argument("minimal_enclosing_arc: empty set");
  sort_unique(points);
  const std::size_t n = points.size();
  if (n == 1) return {Arc::point(points[0]), true};
  std::size_t best = 0;
  Rational best_gap(-1);
  for (std::size_t i = 0; i < n; ++i) {
    const Angle& next = points[(i + 1) % n];
    Rational gap = ccw_distance(points[i], next);
    if (gap > best_gap || (gap == best_gap && next < points[(best + 1) % n])) {
      best_gap = gap;
      best = i;
    }
  }
  Arc arc(points[(best + 1) % n], 1 - best_gap);
  return {arc, arc.length() <= Rational(1, 2)};
}

std::vector<RotationSet> rotation_oracle(const Rational& nu) {
  check_nu(nu);
  const unsigned long q = nu.get_den().get_ui();
  if (q > 20) throw std::invalid_argument("rotation_oracle: period too large for enumeration");
  const unsigned long den = (1UL << q) - 1;
  std::vector<bool> seen(den, false);
  std::vector<RotationSet> out;
  for (unsigned long k = 0; k < den; ++k) {
    if (seen[k]) continue;
    std::vector<Angle> cycle;
    unsigned long x = k;
    do {
      seen[x] = true;
      cycle.push_back(Angle(static_cast<long>(x), den));
      x = (2 * x) % den;
    } while (x != k);
    if (cycle.size() != q) continue;
    auto rho = rotation_number(cycle);
    if (rho && *rho == nu) {
      sort_unique(cycle);
      out.push_back({cycle, nu});
    }
  }
  return out;
}

}  // namespace renorm
