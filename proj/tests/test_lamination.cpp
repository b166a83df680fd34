#include <algorithm>
#include <set>

#include "doctest.h"
#include "renorm/error.hpp"
#include "renorm/lamination.hpp"

using namespace renorm;

namespace {

Angle A(const char* text) { return Angle::parse(text); }
Chord C(const char* x, const char* y) { return Chord(A(x), A(y)); }

// Brute force: chords cross iff exactly one endpoint of d lies strictly
// between the endpoints of c, with no shared endpoints.
bool crosses(const Chord& c, const Chord& d) {
  auto inside = [&](const Angle& t) { return c.a() < t && t < c.b(); };
  if (c.a() == d.a() || c.a() == d.b() || c.b() == d.a() || c.b() == d.b()) return false;
  return inside(d.a()) != inside(d.b());
}

}  // namespace

TEST_CASE("chords") {
  Chord c = C("2/3", "1/3");
  CHECK(c.a() == A("1/3"));
  CHECK(c.b() == A("2/3"));
  CHECK(c == C("1/3", "2/3"));
  CHECK_THROWS_AS(C("1/3", "1/3"), std::invalid_argument);
  CHECK(sigma_image(C("1/3", "2/3")) == C("2/3", "1/3"));
  CHECK_FALSE(sigma_image(C("1/6", "2/3")).has_value());
}

TEST_CASE("linkage") {
  CHECK_FALSE(linked(C("1/3", "2/3"), C("1/7", "2/7")));
  CHECK(linked(C("1/3", "2/3"), C("1/7", "4/7")));
  CHECK_FALSE(linked(C("1/3", "2/3"), C("1/3", "5/6")));
  CHECK(linked(C("1/7", "4/7"), C("1/3", "2/3")));

  std::vector<Angle> pts;
  for (int k = 0; k < 13; ++k) pts.emplace_back(k, 13);
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = i + 1; j < pts.size(); ++j)
      for (std::size_t k = 0; k < pts.size(); ++k)
        for (std::size_t l = k + 1; l < pts.size(); ++l) {
          Chord c(pts[i], pts[j]), d(pts[k], pts[l]);
          CHECK(linked(c, d) == crosses(c, d));
          CHECK(linked(c, d) == linked(d, c));
        }
}

TEST_CASE("orbit chords") {
  auto comb = feigenbaum_tower(3);
  CHECK(orbit_chords(comb, 1) == std::vector<Chord>{C("1/3", "2/3"), C("1/3", "2/3")});
  CHECK(orbit_chords(comb, 3).size() == 14);
  CHECK_THROWS_AS(orbit_chords(comb, 4), std::invalid_argument);
}

TEST_CASE("build") {
  auto comb = feigenbaum_tower(4);
  CHECK(build(comb, 1, 0) == std::vector<Chord>{C("1/3", "2/3")});

  auto two = build(comb, 2, 0);
  std::set<Chord> expected{C("1/3", "2/3")};
  Angle lo = A("2/5"), hi = A("3/5");
  for (int k = 0; k < 4; ++k) {
    expected.insert(Chord(lo, hi));
    lo = sigma(lo);
    hi = sigma(hi);
  }
  CHECK(std::set<Chord>(two.begin(), two.end()) == expected);
  CHECK(std::find(two.begin(), two.end(), C("4/5", "1/5")) != two.end());
  for (const auto& c : two) CHECK_FALSE(linked(c, C("1/3", "2/3")));

  auto rabbit = build(tuned_tower(rabbit_base(), 1), 1, 0);
  CHECK(rabbit == std::vector<Chord>{C("1/7", "2/7"), C("1/7", "4/7"), C("2/7", "4/7")});
  CHECK(verify_unlinked(rabbit).pass);

  CHECK(build(comb, 3, 0).size() == 7);
  CHECK(build(comb, 4, 0).size() == 15);
  CHECK(std::is_sorted(two.begin(), two.end()));
}

TEST_CASE("families stay unlinked and forward invariant") {
  std::vector<RenormCombinatorics> towers{feigenbaum_tower(4), tuned_tower(rabbit_base(), 2),
                                          tuned_tower(make_pair(A("3/7"), A("4/7")), 2)};
  for (const auto& comb : towers) {
    REQUIRE(all_pass(validate(comb)));
    for (std::size_t d = 1; d <= comb.size(); ++d) {
      auto family = build(comb, d, 0);
      CHECK(verify_unlinked(family).pass);
      std::set<Chord> set(family.begin(), family.end());
      for (const auto& c : family) {
        auto image = sigma_image(c);
        REQUIRE(image.has_value());
        CHECK(set.count(*image) == 1);
      }
      for (std::size_t i = 0; i < family.size(); ++i)
        for (std::size_t j = i + 1; j < family.size(); ++j) CHECK_FALSE(crosses(family[i], family[j]));
    }
  }

  auto comb = feigenbaum_tower(3);
  for (std::size_t rounds = 1; rounds <= 3; ++rounds) {
    auto family = build(comb, 3, rounds);
    CHECK(verify_unlinked(family).pass);
    std::set<Chord> set(family.begin(), family.end());
    for (const auto& c : family) {
      auto image = sigma_image(c);
      if (image) CHECK(set.count(*image) == 1);
    }
  }
  CHECK(build(comb, 3, 3).size() == 56);
}

TEST_CASE("verify_unlinked") {
  CHECK(verify_unlinked({}).pass);
  CHECK(verify_unlinked(build(feigenbaum_tower(3), 3, 0)).pass);
  auto report = verify_unlinked({C("1/3", "2/3"), C("1/7", "4/7")});
  CHECK_FALSE(report.pass);
  CHECK(report.linked_pairs == 1);
  REQUIRE(report.witnesses.size() == 1);
  CHECK(report.witnesses[0] == std::make_pair(C("1/3", "2/3"), C("1/7", "4/7")));

  std::vector<Chord> many;
  for (int k = 1; k < 20; ++k) many.emplace_back(Angle(0, 1), Angle(k, 40));
  many.emplace_back(Angle(1, 80), Angle(41, 80));
  report = verify_unlinked(many, 3);
  CHECK(report.linked_pairs == 19);
  CHECK(report.witnesses.size() == 3);
}

TEST_CASE("svg export") {
  std::string empty = export_svg({});
  CHECK(empty.find("<circle") != std::string::npos);
  CHECK(empty.find("<line") == std::string::npos);

  std::string one = export_svg({C("1/3", "2/3")});
  CHECK(one == export_svg({C("1/3", "2/3")}));
  CHECK(one.find("x1=\"-0.500000\"") != std::string::npos);
  CHECK(one.find("x2=\"-0.500000\"") != std::string::npos);

  auto family = orbit_chords(feigenbaum_tower(3), 3);
  std::string svg = export_svg(family);
  std::size_t lines = 0;
  for (std::size_t pos = svg.find("<line"); pos != std::string::npos; pos = svg.find("<line", pos + 1)) ++lines;
  CHECK(lines == 14);

  std::string arcs = export_svg(family, SvgOptions{true, 6});
  std::size_t paths = 0;
  for (std::size_t pos = arcs.find("<path"); pos != std::string::npos; pos = arcs.find("<path", pos + 1)) ++paths;
  CHECK(paths == 14);
  CHECK(arcs.find("<line") == std::string::npos);
}
