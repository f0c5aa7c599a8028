#include <doctest.h>

#include "support.hpp"
#include "trackforge/braid.hpp"
#include "trackforge/error.hpp"
#include "trackforge/quasipos.hpp"

using namespace trackforge;

namespace {

LabelledInterval fig17(const char* x, const char* y) {
  auto c = load_track_file(testing::fixture_path("fig17.track"));
  c.labels = {DoublePointLabel::parse(x), DoublePointLabel::parse(y)};
  return c;
}

bool mentions(const std::vector<std::string>& errors, const std::string& what) {
  for (const auto& e : errors) {
    if (e.find(what) != std::string::npos) return true;
  }
  return false;
}

}  // namespace

TEST_SUITE("quasipos") {
  TEST_CASE("positive diagrams need no pairs") {
    const auto d = closure(parse_braid("aaa"));
    const auto cert = find_certificate(d);
    REQUIRE(cert);
    CHECK(cert->pairs.empty());
    CHECK(cert->singles == std::vector<int>{0, 1, 2});
    CHECK(check_pairing(d, *cert).empty());
  }

  TEST_CASE("the figure-eight closed braid has no certificate") {
    // Every negative crossing joins circles 2 and 3 and every positive one
    // circles 1 and 2, so no pair can form.
    CHECK_FALSE(find_certificate(closure(parse_braid("aBaB"))).has_value());
  }

  TEST_CASE("the checker rejects each broken condition") {
    const auto d = closure(parse_braid("aaAA"));  // crossings + + - -
    CHECK(mentions(check_pairing(d, {{0, 1, 2, 3}, {}}), "is negative"));
    CHECK(mentions(check_pairing(d, {{}, {{0, 1}, {2, 3}}}), "not one positive and one negative"));
    CHECK(mentions(check_pairing(d, {{}, {{0, 2}}}), "used 0 times"));
    CHECK(mentions(check_pairing(d, {{0}, {{0, 2}, {1, 3}}}), "used 2 times"));
    CHECK(mentions(check_pairing(d, {{}, {{0, 2}, {1, 3}}}), "interleave"));
    CHECK(check_pairing(d, {{}, {{0, 3}, {1, 2}}}).empty());
    CHECK(mentions(check_pairing(d, {{7}, {}}), "does not exist"));

    const auto e = closure(parse_braid("abB"));  // a joins circles 1-2, B joins 2-3
    CHECK(mentions(check_pairing(e, {{1}, {{0, 2}}}), "same two Seifert circles"));
  }

  TEST_CASE("search returns the lexicographically least certificate") {
    const auto d = closure(parse_braid("aaAA"));
    const auto cert = find_certificate(d);
    REQUIRE(cert);
    // (0,2) with (1,3) interleaves, so the first partner of crossing 2 is 1.
    CHECK(*cert == Pairing{{}, {{0, 3}, {1, 2}}});
  }

  TEST_CASE("search cap") {
    CHECK_THROWS_AS(find_certificate(closure(parse_braid("aaaaa")), 4), ResourceError);
  }

  TEST_CASE("track certificates") {
    auto pairs_of = [](const char* x, const char* y) {
      const auto c = fig17(x, y);
      const auto t = build_diagram(c);
      const auto cert = track_certificate(c, t);
      CHECK(check_pairing(t.diagram, cert).empty());
      return cert.pairs.size();
    };
    CHECK(pairs_of("d", "d") == 0);
    CHECK(pairs_of("c1", "c1") == 2);
    CHECK(pairs_of("b1", "c1") == 3);
    CHECK(pairs_of("a", "b3") == 4);
  }

  TEST_CASE("every labelling of the calibration interval is certified both ways") {
    const auto shape = load_track_file(testing::fixture_path("fig17.track"));
    for_each_labelling(shape.path, shape.marks, [](const LabelledInterval& c) {
      const auto t = build_diagram(c);
      const auto cert = track_certificate(c, t);
      CHECK(check_pairing(t.diagram, cert).empty());
      const auto found = find_certificate(t.diagram);
      REQUIRE(found);
      CHECK(check_pairing(t.diagram, *found).empty());
      CHECK(found->pairs.size() == cert.pairs.size());
    });
  }

  TEST_CASE("certificate text") {
    const Pairing p{{0, 4}, {{1, 2}, {5, 3}}};
    CHECK(to_string(p) == "singles: [1, 5]; pairs: [(2,3), (6,4)]");
    CHECK(parse_pairing(to_string(p)) == p);
    CHECK(parse_pairing("singles: []; pairs: []") == Pairing{});
    CHECK(parse_pairing("  singles:[3,1] ;pairs:[ (2 , 4) ]") == Pairing{{0, 2}, {{1, 3}}});
    CHECK_THROWS_AS(parse_pairing("singles: [0]; pairs: []"), ParseError);
    CHECK_THROWS_AS(parse_pairing("singles: [1]"), ParseError);
    CHECK_THROWS_AS(parse_pairing("singles: [1]; pairs: [(1,2]"), ParseError);
    CHECK_THROWS_AS(parse_pairing("singles: []; pairs: [] extra"), ParseError);
  }

  TEST_CASE("track diagrams become quasipositive braids") {
    const auto c = fig17("b1", "c1");
    const auto t = build_diagram(c);
    const auto q = qp_diagram_to_braid(t.diagram, track_certificate(c, t));
    CHECK(bands_valid(q.word, q.bands));
    CHECK(q.word.strands == 5);
    const auto* trefoil = testing::small_catalog().find("3_1");
    REQUIRE(trefoil);
    const auto p = closure_homfly(q.word);
    CHECK((p == trefoil->homfly || p == trefoil->homfly.mirror_transform()));
  }
}
