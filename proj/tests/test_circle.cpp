#include <map>
#include <random>

#include "doctest.h"
#include "renorm/circle.hpp"
#include "renorm/error.hpp"

using namespace renorm;

namespace {

Angle A(const char* text) { return Angle::parse(text); }
Arc arc(const char* a, const char* b) { return Arc::between(A(a), A(b)); }

// Plain cycle detection on numerators modulo den.
std::pair<std::size_t, std::size_t> brute_orbit(unsigned long num, unsigned long den) {
  std::map<unsigned long, std::size_t> seen;
  unsigned long x = num % den;
  for (std::size_t k = 0;; ++k) {
    auto [it, fresh] = seen.emplace(x, k);
    if (!fresh) return {it->second, k - it->second};
    x = (2 * x) % den;
  }
}

}  // namespace

TEST_CASE("angles are reduced fractions in [0, 1)") {
  CHECK(A("2/6") == A("1/3"));
  CHECK(A("4/3") == A("1/3"));
  CHECK(A("-1/3") == A("2/3"));
  CHECK(A("1") == Angle());
  CHECK(A("6/8").str() == "3/4");
  CHECK(A("3/9").denominator() == 3);
  CHECK_THROWS_AS(A("1/0"), std::invalid_argument);
  CHECK_THROWS_AS(A("0.5"), std::invalid_argument);
  CHECK_THROWS_AS(A("1/-2"), std::invalid_argument);
  CHECK_THROWS_AS(A(""), std::invalid_argument);
}

TEST_CASE("doubling map") {
  CHECK(sigma(A("1/3")) == A("2/3"));
  CHECK(sigma(A("2/3")) == A("1/3"));
  CHECK(sigma(A("5/12")) == A("5/6"));
  CHECK(sigma(Angle()) == Angle());
  CHECK(sigma_pow(A("1/7"), 3) == A("1/7"));
  CHECK(sigma_pow(A("1/3"), 0) == A("1/3"));
  CHECK(sigma_pow(A("5/12"), 4) == sigma(sigma(sigma(sigma(A("5/12"))))));
}

TEST_CASE("preimages") {
  CHECK(preimages(Angle()) == std::pair{Angle(), A("1/2")});
  CHECK(preimages(A("2/3")) == std::pair{A("1/3"), A("5/6")});
  CHECK(preimages(A("1/7")) == std::pair{A("1/14"), A("4/7")});
  std::mt19937_64 rng(5);
  for (int i = 0; i < 200; ++i) {
    unsigned long den = 1 + rng() % 5000;
    Angle t(static_cast<long>(rng() % den), den);
    auto [a, b] = preimages(t);
    CHECK(sigma(a) == t);
    CHECK(sigma(b) == t);
    CHECK(a < b);
  }
}

TEST_CASE("orbit_info") {
  CHECK(orbit_info(A("1/3")).preperiod == 0);
  CHECK(orbit_info(A("1/3")).period == 2);
  CHECK(orbit_info(A("5/12")).preperiod == 2);
  CHECK(orbit_info(A("5/12")).period == 2);
  CHECK(orbit_info(Angle()).preperiod == 0);
  CHECK(orbit_info(Angle()).period == 1);
  CHECK(orbit_info(A("1/8")).preperiod == 3);
  CHECK(orbit_info(A("1/8")).period == 1);
  CHECK_THROWS_AS(orbit_info(A("1/1000003"), 10), DomainError);
}

TEST_CASE("orbit_info agrees with cycle detection") {
  auto check = [](unsigned long num, unsigned long den) {
    Angle t(static_cast<long>(num), den);
    auto [pre, per] = brute_orbit(t.numerator().get_ui(), t.denominator().get_ui());
    OrbitInfo info = orbit_info(t);
    REQUIRE(info.preperiod == pre);
    REQUIRE(info.period == per);
    REQUIRE(sigma_pow(t, pre + per) == sigma_pow(t, pre));
  };
  for (unsigned long den = 1; den <= 200; ++den) {
    for (unsigned long num = 0; num < den; ++num) check(num, den);
  }
  std::mt19937_64 rng(11);
  for (unsigned long den = 201; den <= 10000; ++den) check(rng() % den, den);
}

TEST_CASE("binary prefixes") {
  CHECK(binary_prefix(A("1/3"), 6) == "010101");
  CHECK(binary_prefix(A("7/17"), 8) == "01101001");
  CHECK(binary_prefix(A("1/2"), 3) == "100");
  CHECK(binary_prefix(Angle(), 4) == "0000");
}

TEST_CASE("arcs") {
  Arc a = arc("1/3", "5/12");
  CHECK(a.length() == Rational(1, 12));
  CHECK(a.contains(A("2/5")));
  CHECK(a.contains(A("1/3")));
  CHECK(a.contains(A("5/12")));
  CHECK_FALSE(a.contains(A("1/2")));
  CHECK_FALSE(a.contains_interior(A("1/3")));
  Arc wrap = arc("5/6", "1/6");
  CHECK(wrap.length() == Rational(1, 3));
  CHECK(wrap.contains(Angle()));
  CHECK_FALSE(wrap.contains(A("1/2")));
  CHECK(wrap.contains(arc("11/12", "1/12")));
  CHECK(Arc::full().contains(A("3/7")));
  CHECK(Arc(A("1/5"), Rational(1)) == Arc::full());
  CHECK(Arc::point(A("1/3")).is_point());
  CHECK_THROWS_AS(Arc(A("1/3"), Rational(3, 2)), std::invalid_argument);
  CHECK_THROWS_AS(Arc(A("1/3"), Rational(-1, 2)), std::invalid_argument);
}

TEST_CASE("arc set canonicalization") {
  ArcSet s({arc("7/12", "2/3"), arc("1/3", "5/12")});
  REQUIRE(s.size() == 2);
  CHECK(s[0] == arc("1/3", "5/12"));
  CHECK(ArcSet({arc("1/4", "1/2"), arc("1/2", "3/4")}) == ArcSet({arc("1/4", "3/4")}));
  CHECK(ArcSet({arc("1/4", "1/2"), arc("1/3", "2/3")}) == ArcSet({arc("1/4", "2/3")}));
  CHECK(ArcSet({arc("3/4", "1/4"), arc("1/8", "1/2")}) == ArcSet({arc("3/4", "1/2")}));
  CHECK(ArcSet({arc("0", "1/2"), arc("1/2", "0")}) == ArcSet({Arc::full()}));
  ArcSet messy({arc("1/8", "1/4"), arc("7/8", "1/16"), arc("1/5", "1/3"), arc("1/2", "5/8")});
  CHECK(messy.canonical() == messy);
  CHECK(ArcSet({arc("1/2", "5/8"), arc("1/5", "1/3"), arc("7/8", "1/16"), arc("1/8", "1/4")}) == messy);
  CHECK(messy.total_length() <= 1);
  CHECK(messy.contains(Angle()));
  CHECK_FALSE(messy.contains(A("3/4")));
}

TEST_CASE("labeled arc sets keep touching components") {
  ArcSet s = ArcSet::labeled({arc("1/2", "3/4"), arc("1/4", "1/2")}, {"b", "a"});
  REQUIRE(s.size() == 2);
  CHECK(s.labels()[0] == "a");
  CHECK(s.canonical().size() == 1);
  CHECK_THROWS_AS(ArcSet::labeled({arc("1/4", "1/2"), arc("1/3", "2/3")}, {"a", "b"}), std::invalid_argument);
  CHECK_THROWS_AS(ArcSet::labeled({arc("1/4", "1/2")}, {}), std::invalid_argument);
}

TEST_CASE("membership, intersection and union") {
  ArcSet s({arc("1/3", "5/12"), arc("7/12", "2/3")});
  CHECK(s.contains(A("2/5")));
  CHECK_FALSE(s.contains(A("1/2")));
  CHECK(intersect(s, ArcSet({arc("2/5", "5/8")})) == ArcSet({arc("2/5", "5/12"), arc("7/12", "5/8")}));
  CHECK(intersect(ArcSet({arc("0", "1/2")}), ArcSet({arc("1/2", "1")})).arcs() ==
        std::vector<Arc>{Arc::point(Angle()), Arc::point(A("1/2"))});
  CHECK(intersect(ArcSet({arc("3/4", "1/4")}), ArcSet({arc("7/8", "1/8")})) == ArcSet({arc("7/8", "1/8")}));
  CHECK(intersect(s, ArcSet()).empty());
  CHECK(unite(s, ArcSet({arc("5/12", "7/12")})) == ArcSet({arc("1/3", "2/3")}));
  CHECK(is_subset(ArcSet({arc("3/8", "2/5")}), s));
  CHECK_FALSE(is_subset(ArcSet({arc("3/8", "1/2")}), s));
}

TEST_CASE("sigma images and preimages of arc sets") {
  CHECK(sigma_image(arc("1/3", "5/12")) == arc("2/3", "5/6"));
  CHECK(sigma_image(arc("7/8", "1/8")) == arc("3/4", "1/4"));
  CHECK_THROWS_AS(sigma_image(arc("0", "1/2")), DomainError);
  CHECK(sigma_preimage_pow(ArcSet({arc("1/3", "2/3")}), 1) == ArcSet({arc("1/6", "1/3"), arc("2/3", "5/6")}));
  CHECK(sigma_preimage_pow(ArcSet({arc("1/3", "2/3")}), 3).size() == 8);
  CHECK_THROWS_AS(sigma_preimage_pow(ArcSet({arc("1/3", "2/3")}), 30), std::invalid_argument);

  std::mt19937_64 rng(3);
  for (int i = 0; i < 100; ++i) {
    unsigned long den = 2 + rng() % 200;
    Angle start(static_cast<long>(rng() % den), den);
    Rational len(static_cast<long>(rng() % (den / 2)), den);
    if (len >= Rational(1, 2)) continue;
    ArcSet a({Arc(start, len)});
    CHECK(is_subset(a, sigma_preimage_pow(sigma_image(a), 1)));
  }
}

TEST_CASE("preimage scan matches the full preimage") {
  ArcSet target({arc("1/3", "5/12"), arc("7/12", "2/3")});
  Arc domain = arc("1/6", "1/3");
  for (std::size_t m = 1; m <= 6; ++m) {
    PreimageScan scan = sigma_preimage_within(domain, target, m, 64);
    ArcSet full = intersect(ArcSet({domain}), sigma_preimage_pow(target, m));
    CHECK(ArcSet(scan.components) == full);
    CHECK(scan.total == static_cast<unsigned long>(scan.components.size()));
  }
  PreimageScan big = sigma_preimage_within(arc("0", "1/2"), ArcSet({arc("0", "1/4")}), 40, 2);
  CHECK(big.total == pow2(39) + 1);
  CHECK(big.components.size() == 4);
}

TEST_CASE("limit angles and refinement") {
  LimitAngle third = LimitAngle::constant(A("1/3"));
  Angle r = refine(third, 4);
  CHECK((r == A("5/16") || r == A("6/16")));
  CHECK_THROWS_AS(refine(third, 0), std::invalid_argument);

  LimitAngle shrinking([](std::size_t m) { return Arc(A("1/3"), pow2_inverse(m + 1)); }, 20);
  for (std::size_t b = 1; b < 12; ++b) {
    Angle coarse = refine(shrinking, b), fine = refine(shrinking, b + 1);
    Rational gap = fine.value() - coarse.value();
    CHECK(abs(gap) <= pow2_inverse(b));
    CHECK(abs(coarse.value() - Rational(1, 3)) <= pow2_inverse(b));
  }
  CHECK_THROWS_WITH_AS(refine(shrinking, 40), "insufficient depth", DomainError);

  LimitAngle broken([](std::size_t m) { return Arc(Angle(Rational(static_cast<unsigned long>(m), 10)), Rational(1, 20)); }, 8);
  CHECK_THROWS_AS(refine(broken, 6), DomainError);
}
