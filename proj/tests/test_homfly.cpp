#include <doctest.h>

#include <random>

#include "support.hpp"
#include "trackforge/braid.hpp"
#include "trackforge/error.hpp"
#include "trackforge/homfly.hpp"

using namespace trackforge;

namespace {

const char* kTrefoil = "PD[X(1,5,2,4), X(3,1,4,6), X(5,3,6,2)]";

LaurentPoly2 P(const char* text) { return LaurentPoly2::parse(text); }

}  // namespace

TEST_SUITE("homfly") {
  TEST_CASE("unknot and unlinks") {
    CHECK(homfly(PlanarDiagram::unknot()) == LaurentPoly2(1));
    CHECK(homfly(PlanarDiagram::unlink(2)) == LaurentPoly2::delta());
    CHECK(homfly(PlanarDiagram::unlink(3)) == LaurentPoly2::delta() * LaurentPoly2::delta());
    // One-crossing kinks of either sign.
    CHECK(homfly(closure(parse_braid("a"))) == LaurentPoly2(1));
    CHECK(homfly(closure(parse_braid("A"))) == LaurentPoly2(1));
    CHECK(homfly(closure(parse_braid("aA"))) == LaurentPoly2::delta());
  }

  TEST_CASE("trefoil from the skein relation by hand") {
    // P(+) = v^2 P(-) + v z P(0): switching one crossing of the right-handed
    // trefoil gives the unknot, smoothing it gives the positive Hopf link,
    // whose own switch is the 2-unlink and smoothing the unknot.
    const auto v = LaurentPoly2::v();
    const auto z = LaurentPoly2::z();
    const auto hopf = v * v * LaurentPoly2::delta() + v * z;
    const auto trefoil = v * v + v * z * hopf;
    CHECK(trefoil == P("2*v^2*z^0 + 1*v^2*z^2 + -1*v^4*z^0"));
    CHECK(homfly(parse_pd(kTrefoil)) == trefoil);
    CHECK(homfly(closure(parse_braid("aa"))) == hopf);
  }

  TEST_CASE("skein relation holds at every crossing of random diagrams") {
    std::mt19937 rng(101);
    const auto vinv = LaurentPoly2::v(-1);
    const auto v = LaurentPoly2::v();
    const auto z = LaurentPoly2::z();
    for (const auto& d : testing::random_knot_diagrams(rng, 25, 11)) {
      for (int id = 0; id < d.crossing_count(); ++id) {
        const auto self = homfly(d);
        const auto other = homfly(switch_crossing(d, id));
        const auto zero = homfly(smooth_crossing(d, id));
        const auto& plus = d.crossing(id).sign > 0 ? self : other;
        const auto& minus = d.crossing(id).sign > 0 ? other : self;
        CHECK(vinv * plus - v * minus == z * zero);
      }
    }
  }

  TEST_CASE("strategies agree") {
    std::mt19937 rng(103);
    for (const auto& d : testing::random_knot_diagrams(rng, 25, 12)) {
      const auto a = homfly(d, {16, SkeinStrategy::kFirstBad, nullptr});
      CHECK(homfly(d, {16, SkeinStrategy::kLastBad, nullptr}) == a);
      CHECK(homfly(d, {16, SkeinStrategy::kReversedBase, nullptr}) == a);
    }
  }

  TEST_CASE("skein and Hecke routes agree on random braids") {
    std::mt19937 rng(107);
    for (int k = 0; k < 40; ++k) {
      const int strands = std::uniform_int_distribution<int>(2, 4)(rng);
      BraidWord b{strands, {}};
      const int len = std::uniform_int_distribution<int>(1, 10)(rng);
      for (int i = 0; i < len; ++i) {
        b.letters.push_back({std::uniform_int_distribution<int>(1, strands - 1)(rng),
                             std::bernoulli_distribution(0.5)(rng) ? 1 : -1});
      }
      CHECK(homfly(closure(b)) == closure_homfly(b));
    }
  }

  TEST_CASE("mirror, reversal and connected sum") {
    std::mt19937 rng(109);
    const auto ds = testing::random_knot_diagrams(rng, 20, 8);
    for (std::size_t k = 0; k + 1 < ds.size(); k += 2) {
      const auto a = homfly(ds[k]);
      const auto b = homfly(ds[k + 1]);
      CHECK(homfly(mirror(ds[k])) == a.mirror_transform());
      CHECK(homfly(reverse(ds[k])) == a);
      CHECK(homfly(connected_sum(ds[k], ds[k + 1])) == a * b);
    }
  }

  TEST_CASE("a shared cache gives the same answers") {
    std::mt19937 rng(113);
    HomflyCache cache;
    for (const auto& d : testing::random_knot_diagrams(rng, 15, 10)) {
      CHECK(homfly(d, {16, SkeinStrategy::kFirstBad, &cache}) == homfly(d));
    }
    CHECK(cache.size() > 0);
  }

  TEST_CASE("crossing cap") {
    const auto d = parse_pd(kTrefoil);
    CHECK_THROWS_AS(homfly(d, {2, SkeinStrategy::kFirstBad, nullptr}), ResourceError);
  }

  TEST_CASE("Morton bounds") {
    const auto t = morton_check(parse_pd(kTrefoil));
    CHECK(t.pass);
    CHECK(t.lower == 2);
    CHECK(t.upper == 4);
    CHECK(t.e == 2);
    CHECK(t.E == 4);
    std::mt19937 rng(127);
    for (const auto& d : testing::random_knot_diagrams(rng, 30, 12)) CHECK(morton_check(d).pass);
    // A polynomial outside the window is reported.
    CHECK_FALSE(morton_check(parse_pd(kTrefoil), LaurentPoly2::v(8)).pass);
  }
}
