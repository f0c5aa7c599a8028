#include <doctest.h>

#include <random>

#include "support.hpp"
#include "trackforge/braid.hpp"
#include "trackforge/error.hpp"
#include "trackforge/homfly.hpp"
#include "trackforge/quasipos.hpp"

using namespace trackforge;

TEST_SUITE("braid") {
  TEST_CASE("word text") {
    const auto b = parse_braid("aBc");
    CHECK(b.strands == 4);
    CHECK(b.letters == std::vector<BraidLetter>{{1, 1}, {2, -1}, {3, 1}});
    CHECK(b.to_string() == "aBc");
    CHECK(b.exponent_sum() == 1);
    CHECK(parse_braid("a", 3).strands == 3);
    CHECK_THROWS_AS(parse_braid("a1"), ParseError);
    CHECK_THROWS_AS(parse_braid("c", 2), DomainError);
    CHECK(inverse(b).to_string() == "CbA");
    CHECK(free_reduce(parse_braid("abBAc")).to_string() == "c");
  }

  TEST_CASE("closure has writhe = exponent sum and strands Seifert circles") {
    std::mt19937 rng(201);
    for (int k = 0; k < 60; ++k) {
      const int strands = std::uniform_int_distribution<int>(2, 5)(rng);
      BraidWord b{strands, {}};
      for (int g = 1; g < strands; ++g) b.letters.push_back({g, 1});  // connected closure
      const int extra = std::uniform_int_distribution<int>(0, 8)(rng);
      for (int i = 0; i < extra; ++i) {
        b.letters.push_back({std::uniform_int_distribution<int>(1, strands - 1)(rng),
                             std::bernoulli_distribution(0.5)(rng) ? 1 : -1});
      }
      std::shuffle(b.letters.begin(), b.letters.end(), rng);
      const auto d = closure(b);
      CHECK(writhe(d) == b.exponent_sum());
      CHECK(seifert_decompose(d).circle_count() == strands);
      CHECK(is_planar(d));
    }
  }

  TEST_CASE("embedded band generators are single bands") {
    for (int i = 1; i <= 3; ++i) {
      for (int j = i + 1; j <= 5; ++j) {
        BraidWord u{5, {}};
        for (int g = i; g <= j - 2; ++g) u.letters.push_back({g, 1});
        const Band band{u, j - 1};
        CHECK(band.is_embedded());
        const auto q = parse_qp("(" + band.expanded().to_string() + ")", 5);
        CHECK(q.bands.size() == 1);
        CHECK(q.strongly_quasipositive());
      }
    }
    CHECK_FALSE(Band{parse_braid("B", 3), 1}.is_embedded());
  }

  TEST_CASE("quasipositive words") {
    const auto q = parse_qp("(abA)cd(abA)(bcB)(bcdCB)(cdC)b");
    CHECK(q.bands.size() == 8);
    CHECK(q.word.strands == 5);
    CHECK(qp_genus(q) == 2);
    CHECK(bands_valid(q.word, q.bands));
    const auto r = parse_qp("a(Bcb)b(bacB)");
    CHECK(r.bands.size() == 5);
    CHECK(r.word.strands == 4);
    CHECK(qp_genus(r) == 1);
    CHECK(qp_genus(parse_qp("a")) == 0);
    CHECK_THROWS_AS(parse_qp("(ab"), ParseError);
    CHECK_THROWS_AS(parse_qp("ab)"), ParseError);
    CHECK_THROWS_AS(parse_qp("A"), DomainError);
    // Hopf link closure is not a knot.
    CHECK_THROWS_AS(qp_genus(parse_qp("aa")), DomainError);
  }

  TEST_CASE("band validity catches a wrong product") {
    const auto q = parse_qp("(abA)b");
    CHECK(bands_valid(q.word, q.bands));
    CHECK_FALSE(bands_valid(parse_braid("ab"), q.bands));
  }

  TEST_CASE("braiding a closed braid changes nothing") {
    const auto r = braid_reading(closure(parse_braid("aaa")));
    CHECK(r.moves == 0);
    CHECK(r.braid.strands == 2);
    CHECK(r.braid.to_string() == "aaa");
  }

  TEST_CASE("figure-eight becomes a three-strand braid") {
    const auto d = parse_pd("PD[X(4,2,5,1), X(8,6,1,5), X(6,3,7,4), X(2,7,3,8)]");
    const auto b = yamada_braid(d);
    CHECK(b.strands == 3);
    CHECK(b.exponent_sum() == 0);
    CHECK(closure_homfly(b) == homfly(d));
  }

  TEST_CASE("braiding preserves writhe, circles and HOMFLY on random diagrams") {
    std::mt19937 rng(211);
    for (const auto& d : testing::random_knot_diagrams(rng, 50, 12)) {
      const auto r = braid_reading(d);
      CHECK(r.braid.strands == seifert_decompose(d).circle_count());
      CHECK(r.braid.exponent_sum() == writhe(d));
      CHECK(r.diagram.crossing_count() == d.crossing_count() + 2 * r.moves);
      CHECK(closure_homfly(r.braid) == homfly(d));
    }
  }

  TEST_CASE("braiding rejects split diagrams and oversized input") {
    CHECK_THROWS_AS(yamada_braid(PlanarDiagram::unlink(2)), DomainError);
    CHECK(yamada_braid(closure(parse_braid("aa"))).strands == 2);
    CHECK_THROWS_AS(yamada_braid(closure(parse_braid("aaa")), 2), ResourceError);
    CHECK(yamada_braid(PlanarDiagram::unknot()).strands == 1);
  }

  TEST_CASE("certified diagrams become quasipositive words") {
    const auto trefoil = closure(parse_braid("aaa"));
    const auto cert = find_certificate(trefoil);
    REQUIRE(cert);
    const auto q = qp_diagram_to_braid(trefoil, *cert);
    CHECK(q.bands.size() == 3);
    CHECK(q.word.to_string() == "aaa");

    // A lone positive-negative pair needs no band.
    const auto pair = closure(parse_braid("aA"));
    const auto none = qp_diagram_to_braid(pair, Pairing{{}, {{0, 1}}});
    CHECK(none.bands.empty());
    CHECK(none.word.letters.empty());

    // Conjugate to b on three strands: a two-component unlink.
    const auto unlink = closure(parse_braid("abA"));
    const auto c = find_certificate(unlink);
    REQUIRE(c);
    const auto u = qp_diagram_to_braid(unlink, *c);
    CHECK(u.bands.size() == 1);
    CHECK(bands_valid(u.word, u.bands));
    CHECK(closure_homfly(u.word) == homfly(unlink));

    const auto bad = Pairing{{0, 1, 2}, {}};
    CHECK_THROWS_AS(qp_diagram_to_braid(closure(parse_braid("aaA")), bad), DomainError);
  }
}
