#include <cmath>
#include <numbers>

#include "doctest.h"
#include "renorm/error.hpp"
#include "renorm/plane.hpp"

using namespace renorm;

namespace {

constexpr double kPi = std::numbers::pi;
const double kGolden = (1.0 - std::sqrt(5.0)) / 2.0;

// Chebyshev coordinate for c = -2: z = w + 1/w with |w| >= 1.
Complex chebyshev_w(Complex z) {
  Complex root = std::sqrt(z * z - 4.0);
  Complex w = (z + root) / 2.0;
  if (std::abs(w) < 1.0) w = (z - root) / 2.0;
  return w;
}

double circle_distance(double a, double b) {
  double d = std::fmod(std::abs(a - b), 1.0);
  return std::min(d, 1.0 - d);
}

std::vector<std::size_t> range_times(std::size_t n) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i <= n; ++i) out.push_back(i);
  return out;
}

}  // namespace

TEST_CASE("params") {
  Params p(Complex(-1.0, 0.0));
  CHECK(p.escape_radius == doctest::Approx(3.0));
  CHECK_NOTHROW(p.check());
  p.escape_radius = 1.0;
  CHECK_THROWS_AS(p.check(), std::invalid_argument);
  Params q;
  q.max_iter = 0;
  CHECK_THROWS_AS(q.check(), std::invalid_argument);
}

TEST_CASE("green function") {
  Params zero;
  CHECK(green(zero, 2.0) == doctest::Approx(std::log(2.0)).epsilon(1e-12));
  CHECK(green(zero, std::polar(1.0, 0.7)) < 1e-12);
  CHECK(green(zero, 0.5) == 0.0);
  Params cheb(Complex(-2.0, 0.0));
  CHECK(green(cheb, 3.0) == doctest::Approx(std::log((3.0 + std::sqrt(5.0)) / 2.0)).epsilon(1e-10));
  for (Complex z : {Complex(0.3, 2.1), Complex(-3.0, 0.5), Complex(1.5, -1.5)})
    CHECK(green(cheb, z) == doctest::Approx(std::log(std::abs(chebyshev_w(z)))).epsilon(1e-10));

  Params p(Complex(-0.12, 0.75));
  for (Complex z : {Complex(1.0, 1.0), Complex(-0.9, 0.4), Complex(2.5, 0.0), Complex(0.1, -1.3)}) {
    double g = green(p, z);
    if (g > 1e-6) CHECK(green(p, z * z + p.c) == doctest::Approx(2.0 * g).epsilon(1e-9));
  }
}

TEST_CASE("rays for c = 0 are radial") {
  Params zero;
  RayPath path = trace_ray(zero, Angle(1, 3), 1e-8);
  REQUIRE(path.points.size() > 10);
  for (std::size_t i = 0; i < path.points.size(); ++i) {
    Complex expected = std::polar(std::exp(path.levels[i]), 2.0 * kPi / 3.0);
    CHECK(std::abs(path.points[i] - expected) <= 1e-9 * std::abs(expected));
  }
  for (std::size_t i = 1; i < path.levels.size(); ++i) CHECK(path.levels[i] < path.levels[i - 1]);
  REQUIRE(path.landing.has_value());
  CHECK(std::abs(path.landing->point - std::polar(1.0, 2.0 * kPi / 3.0)) < 1e-6);
}

TEST_CASE("rays for c = -2 follow the Chebyshev coordinate") {
  Params cheb(Complex(-2.0, 0.0));
  for (const char* text : {"0", "1/3", "1/5", "3/7", "5/12"}) {
    Angle t = Angle::parse(text);
    RayPath path = trace_ray(cheb, t, 1e-7);
    REQUIRE(path.points.size() > 10);
    for (std::size_t i = 0; i < path.points.size(); ++i) {
      Complex w = std::exp(Complex(path.levels[i], 2.0 * kPi * t.to_double()));
      Complex expected = w + 1.0 / w;
      CHECK(std::abs(path.points[i] - expected) < 1e-9 * std::abs(expected));
      if (path.levels[i] > 1e-3) {
        Complex back = chebyshev_w(path.points[i]);
        CHECK(circle_distance(std::arg(back) / (2.0 * kPi), t.to_double()) < 1e-9);
      }
    }
    REQUIRE(path.landing.has_value());
    double expected = 2.0 * std::cos(2.0 * kPi * t.to_double());
    CHECK(std::abs(path.landing->point - Complex(expected, 0.0)) < 1e-5);
  }
  RayPath zero = trace_ray(cheb, Angle(), 1e-10);
  REQUIRE(zero.landing.has_value());
  CHECK(std::abs(zero.landing->point - 2.0) < 1e-6);
}

TEST_CASE("rays for the basilica land at the alpha fixed point") {
  Params basilica(Complex(-1.0, 0.0));
  for (const char* text : {"1/3", "2/3"}) {
    RayPath path = trace_ray(basilica, Angle::parse(text), 1e-10);
    REQUIRE(path.landing.has_value());
    CHECK(std::abs(path.landing->point - kGolden) < 1e-6);
  }
  RayPath path = trace_ray(basilica, Angle(1, 3), 1e-6);
  for (std::size_t i = 0; i + 1 < path.points.size(); ++i)
    CHECK(green(basilica, path.points[i]) == doctest::Approx(path.levels[i]).epsilon(1e-6));
  CHECK_THROWS_AS(trace_ray(basilica, Angle(1, 3), 0.0), std::invalid_argument);
}

TEST_CASE("slowly landing rays near the Feigenbaum parameter") {
  Params feig(Complex(feigenbaum_parameter(8), 0.0));
  auto comb = feigenbaum_tower(4);
  for (const Angle& t : sample_shadow_angles(comb, 4, 16, 6, 11, 8)) {
    const std::size_t q = orbit_info(t).period;
    RayPath path = trace_ray(feig, t, 1e-8);
    REQUIRE(path.landing.has_value());
    CHECK(path.landing->method == "periodic");
    CHECK(std::abs(iterate(feig, path.landing->point, q) - path.landing->point) < 1e-6);
    CHECK(std::abs(path.landing->point - path.points.back()) < 0.1);
    CHECK(path.landing->residual < 1e-12);
  }
}

TEST_CASE("periodic points") {
  Params zero;
  auto fixed = periodic_points(zero, 1);
  REQUIRE(fixed.size() == 2);
  CHECK(std::abs(fixed[0].point) < 1e-12);
  CHECK(std::abs(fixed[0].multiplier) < 1e-12);
  CHECK(std::abs(fixed[1].point - 1.0) < 1e-12);
  CHECK(std::abs(fixed[1].multiplier - 2.0) < 1e-12);

  Params basilica(Complex(-1.0, 0.0));
  fixed = periodic_points(basilica, 1);
  REQUIRE(fixed.size() == 2);
  CHECK(std::abs(fixed[0].point - kGolden) < 1e-12);
  CHECK(std::abs(fixed[0].multiplier - (1.0 - std::sqrt(5.0))) < 1e-11);
  CHECK(std::abs(fixed[1].point - (1.0 + std::sqrt(5.0)) / 2.0) < 1e-12);

  auto two = periodic_points(basilica, 2);
  REQUIRE(two.size() == 4);
  auto has = [&](Complex z, double mult) {
    for (const auto& p : two)
      if (std::abs(p.point - z) < 1e-9) return std::abs(std::abs(p.multiplier) - mult) < 1e-9;
    return false;
  };
  CHECK(has(0.0, 0.0));
  CHECK(has(-1.0, 0.0));

  Params p(Complex(-0.12, 0.75));
  for (std::size_t m = 1; m <= 8; ++m) {
    auto pts = periodic_points(p, m);
    REQUIRE(pts.size() == (std::size_t{1} << m));
    for (const auto& q : pts) {
      CHECK(q.converged);
      CHECK(std::abs(iterate(p, q.point, m) - q.point) < 1e-8 * std::max(1.0, std::abs(q.multiplier)));
      Complex image = iterate(p, q.point, 1);
      double nearest = 1e300;
      for (const auto& r : pts) nearest = std::min(nearest, std::abs(r.point - image));
      CHECK(nearest < 1e-8);
    }
  }
  CHECK_THROWS_AS(periodic_points(p, 0), std::invalid_argument);
  CHECK_THROWS_AS(periodic_points(p, 13), std::invalid_argument);

  auto polished = refine_periodic(basilica, Complex(-0.6, 0.01), 1);
  REQUIRE(polished.has_value());
  CHECK(std::abs(polished->point - kGolden) < 1e-12);
}

TEST_CASE("superstable parameters") {
  CHECK(feigenbaum_parameter(1) == -1.0);
  CHECK(feigenbaum_parameter(2) == doctest::Approx(-1.3107026).epsilon(1e-7));
  double previous = 0.0;
  for (std::size_t d = 1; d <= 8; ++d) {
    double c = feigenbaum_parameter(d);
    CHECK(c < previous);
    CHECK(c > -1.4012);
    CHECK(std::abs(iterate(Params(Complex(c, 0.0)), 0.0, std::size_t{1} << d)) < 1e-9);
    previous = c;
  }
  CHECK_THROWS_AS(feigenbaum_parameter(0), std::invalid_argument);
}

TEST_CASE("beta points") {
  Params basilica(Complex(-1.0, 0.0));
  auto comb = feigenbaum_tower(3);
  BetaResult b = beta_point(basilica, comb, 1);
  CHECK(b.matched);
  CHECK(std::abs(b.beta - kGolden) < 1e-6);

  Params zero;
  RenormCombinatorics artificial{{{2, Angle(1, 3), Angle(2, 3)}}};
  CHECK_FALSE(beta_point(zero, artificial, 1).matched);

  Params feig(Complex(feigenbaum_parameter(8), 0.0));
  b = beta_point(feig, comb, 1);
  CHECK(b.matched);
  CHECK(b.residual < 1e-4);
  CHECK(std::abs(b.landing_lo - b.landing_hi) < 1e-4);
}

TEST_CASE("expansion") {
  ExpansionReport r = expansion_report(Params(Complex(-2.0, 0.0)), {2.0}, 5);
  CHECK(r.euclidean.used == 1);
  CHECK(r.euclidean.min == doctest::Approx(1024.0));
  CHECK(r.euclidean.max == doctest::Approx(1024.0));
  CHECK(r.spherical.min == doctest::Approx(1024.0));

  std::vector<Complex> circle;
  for (int k = 0; k < 12; ++k) circle.push_back(std::polar(1.0, 2.0 * kPi * k / 12.0 + 0.1));
  r = expansion_report(Params(), circle, 3);
  CHECK(r.euclidean.used == 12);
  CHECK(r.euclidean.min == doctest::Approx(8.0));
  CHECK(r.euclidean.max == doctest::Approx(8.0));
  CHECK(r.euclidean.geometric_mean == doctest::Approx(8.0));

  r = expansion_report(Params(), {3.0, 1.0}, 4);
  CHECK(r.samples[0].escaped);
  CHECK(r.euclidean.excluded == 1);
  CHECK(r.euclidean.used == 1);
  CHECK(r.euclidean.min == doctest::Approx(16.0));
}

TEST_CASE("telescopes") {
  TelescopeReport r = telescope_check(Params(Complex(-2.0, 0.0)), 2.0, 0.3, 0.5, 0.01, range_times(10));
  CHECK(r.pass);
  CHECK(r.certification == "heuristic");
  REQUIRE(r.stages.size() == 11);
  CHECK_FALSE(r.stages[0].cond_i.has_value());
  double oracle = 1e9;
  for (int k = 0; k < 4096; ++k) {
    Complex w = 4.0 + 0.3 * std::polar(1.0, 2.0 * kPi * k / 4096.0);
    oracle = std::min(oracle, 0.3 - std::abs(std::sqrt(w) - 2.0));
  }
  for (std::size_t l = 1; l < r.stages.size(); ++l) {
    REQUIRE(r.stages[l].margin.has_value());
    CHECK(*r.stages[l].margin == doctest::Approx(oracle).epsilon(1e-3));
    CHECK(*r.stages[l].ratio == doctest::Approx(1.0));
  }

  r = telescope_check(Params(), 1.0, 0.3, 0.5, 0.01, range_times(10));
  CHECK(r.pass);

  r = telescope_check(Params(Complex(-2.0, 0.0)), 2.0, 0.3, 1.5, 0.01, range_times(10));
  CHECK_FALSE(r.pass);
  for (std::size_t l = 1; l < r.stages.size(); ++l) CHECK(r.stages[l].cond_i == std::optional<bool>(false));

  CHECK_THROWS_AS(telescope_check(Params(), 1.0, 0.3, 0.5, 0.01, {0, 2, 1}), std::invalid_argument);
  CHECK_THROWS_AS(telescope_check(Params(), 1.0, -0.3, 0.5, 0.01, range_times(3)), std::invalid_argument);
}
