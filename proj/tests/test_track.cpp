#include <doctest.h>

#include <algorithm>
#include <optional>
#include <random>
#include <set>

#include "support.hpp"
#include "trackforge/error.hpp"
#include "trackforge/homfly.hpp"
#include "trackforge/track.hpp"

using namespace trackforge;

namespace {

LabelledInterval fig17(const char* x, const char* y) {
  auto c = load_track_file(testing::fixture_path("fig17.track"));
  c.labels = {DoublePointLabel::parse(x), DoublePointLabel::parse(y)};
  return c;
}

int count(const std::array<int, 4>& s, int v) { return static_cast<int>(std::count(s.begin(), s.end(), v)); }

std::optional<LabelledInterval> try_glue(const LabelledInterval& a, const LabelledInterval& b) {
  try {
    return glue(a, b);
  } catch (const DomainError&) {
    return std::nullopt;  // an end point is enclosed by its own interval
  }
}

}  // namespace

TEST_SUITE("track") {
  TEST_CASE("labels") {
    const auto& all = DoublePointLabel::all();
    std::vector<std::string> symbols;
    for (const auto& l : all) symbols.push_back(l.symbol());
    CHECK(symbols == std::vector<std::string>{"a", "a1", "b", "b1", "b2", "b3", "c", "c1", "c2", "c3", "d"});
    CHECK(std::is_sorted(symbols.begin(), symbols.end()));
    CHECK(DoublePointLabel::parse("a2") == DoublePointLabel::parse("a"));
    CHECK(DoublePointLabel::parse("d3") == DoublePointLabel::parse("d"));
    CHECK(DoublePointLabel::parse("c3").rotation() == 3);
    CHECK_THROWS_AS(DoublePointLabel::parse("e"), ParseError);
    CHECK_THROWS_AS(DoublePointLabel::parse("b4"), ParseError);
    CHECK_THROWS_AS(DoublePointLabel::parse(""), ParseError);
  }

  TEST_CASE("sign patterns") {
    std::set<std::array<int, 4>> distinct;
    for (const auto& l : DoublePointLabel::all()) {
      const auto s = quadrant_signs(l);
      distinct.insert(s);
      switch (l.type()) {
        case LabelType::kA:
          CHECK(count(s, -1) == 2);
          CHECK(s[0] == s[2]);  // alternating
          break;
        case LabelType::kB:
          CHECK(count(s, -1) == 2);
          CHECK(s[0] != s[2]);  // adjacent negatives
          break;
        case LabelType::kC: CHECK(count(s, -1) == 1); break;
        case LabelType::kD: CHECK(count(s, -1) == 0); break;
      }
    }
    CHECK(distinct.size() == 11);
    // Rotating a label turns its pattern by one quadrant.
    const auto c = quadrant_signs(DoublePointLabel::parse("c"));
    const auto c1 = quadrant_signs(DoublePointLabel::parse("c1"));
    for (int q = 0; q < 4; ++q) CHECK(c1[static_cast<std::size_t>((q + 1) % 4)] == c[static_cast<std::size_t>(q)]);
  }

  TEST_CASE("validation messages") {
    LabelledInterval loop;
    loop.path.moves = "RRRUULLDDDD";
    loop.labels = {DoublePointLabel::parse("c")};
    const auto d = validate(loop);
    REQUIRE_FALSE(d.ok());
    CHECK(d.to_string().find("cycle not broken") != std::string::npos);
    CHECK(validate_generic(loop).ok());
    loop.marks = {{0, 0}};  // step 0 leads into the loop and does not cut it
    CHECK_FALSE(validate(loop).ok());
    loop.marks = {{3, 0}};
    CHECK(validate(loop).ok());
    loop.marks = {{3, 0}, {3, 0}};
    CHECK(validate(loop).to_string().find("given twice") != std::string::npos);
    loop.marks = {{11, 0}};
    CHECK(validate(loop).to_string().find("outside the path") != std::string::npos);
    loop.marks = {{3, 0}};
    loop.labels.clear();
    CHECK(validate(loop).to_string().find("label count") != std::string::npos);

    LabelledInterval retrace;
    retrace.path.moves = "RL";
    CHECK(validate(retrace).to_string().find("retraces") != std::string::npos);
    LabelledInterval corner;
    corner.path.moves = "RURDLD";  // turns at (1,0) on both visits
    CHECK(validate(corner).to_string().find("not a transverse crossing") != std::string::npos);
    LabelledInterval closed;
    closed.path.moves = "RULD";
    CHECK(validate(closed).to_string().find("end point") != std::string::npos);
    CHECK_THROWS_AS(build_diagram(closed), ValidationError);
  }

  TEST_CASE("construction counts on the calibration interval") {
    const auto c = fig17("b1", "c1");
    const auto t = build_diagram(c);
    CHECK(t.diagram.crossing_count() == 4 * 2 + 2 * 2);
    CHECK(writhe(t.diagram) == 2 * 1 + 4 * 0 + 2 * 2);
    CHECK(seifert_decompose(t.diagram).circle_count() == 5);
    CHECK(is_planar(t.diagram));
    CHECK(t.origins.size() == 12);
    int twists = 0;
    for (const auto& o : t.origins) twists += o.kind == FeatureKind::kTwist;
    CHECK(twists == 4);
  }

  TEST_CASE("double point crossings follow the quadrant signs") {
    const auto c = fig17("b1", "c3");
    const auto t = build_diagram(c);
    for (int id = 0; id < t.diagram.crossing_count(); ++id) {
      const auto& o = t.origins[static_cast<std::size_t>(id)];
      if (o.kind != FeatureKind::kDoublePoint) continue;
      const auto signs = quadrant_signs(c.labels[static_cast<std::size_t>(o.feature)]);
      CHECK(t.diagram.crossing(id).sign == signs[static_cast<std::size_t>(o.quadrant)]);
    }
  }

  TEST_CASE("writhe and Seifert formulas on random intervals") {
    std::mt19937 rng(301);
    for (int k = 0; k < 200; ++k) {
      const auto c = testing::random_valid_interval(rng, 3, 18);
      const auto t = build_diagram(c);
      const auto b = bounds(c);
      CHECK(writhe(t.diagram) == 2 * b.C + 4 * b.D + 2 * b.r);
      CHECK(seifert_decompose(t.diagram).circle_count() == 2 * b.r + 1);
      CHECK(is_planar(t.diagram));
      // The slice-Bennequin bound of the diagram is the clasp bound.
      CHECK(b.slice_bennequin_bound == b.four_genus);
    }
  }

  TEST_CASE("bounds") {
    const auto bd = bounds(fig17("b", "d"));
    CHECK(bd.four_genus == 2);
    CHECK_FALSE(bd.gordian.has_value());
    const auto cd = bounds(fig17("c1", "d"));
    CHECK(cd.four_genus == 3);
    CHECK(cd.gordian == 3);
    CHECK(cd.ordinary_genus == 3);
    CHECK(bounds(fig17("d", "d")).four_genus == 4);
    CHECK(bounds(fig17("b1", "b1")).four_genus == 0);
  }

  TEST_CASE("gluing multiplies HOMFLY and adds the four-genus") {
    std::mt19937 rng(307);
    for (int k = 0; k < 6;) {
      const auto a = testing::random_valid_interval(rng, 3, 8);
      const auto b = testing::random_valid_interval(rng, 3, 8);
      const auto g = try_glue(a, b);
      if (!g) continue;
      ++k;
      CHECK(validate(*g).ok());
      CHECK(bounds(*g).four_genus == bounds(a).four_genus + bounds(b).four_genus);
      CHECK(homfly(build_diagram(*g).diagram, {40, SkeinStrategy::kFirstBad, nullptr}) ==
            homfly(build_diagram(a).diagram) * homfly(build_diagram(b).diagram));
    }
  }

  TEST_CASE("gluing is associative up to the knot") {
    std::mt19937 rng(311);
    const HomflyOptions big{60, SkeinStrategy::kFirstBad, nullptr};
    for (int k = 0; k < 3;) {
      const auto a = testing::random_valid_interval(rng, 3, 6);
      const auto b = testing::random_valid_interval(rng, 3, 6);
      const auto c = testing::random_valid_interval(rng, 3, 6);
      const auto ab = try_glue(a, b);
      const auto bc = try_glue(b, c);
      if (!ab || !bc) continue;
      const auto left = try_glue(*ab, c);
      const auto right = try_glue(a, *bc);
      if (!left || !right) continue;
      ++k;
      CHECK(homfly(build_diagram(*left).diagram, big) == homfly(build_diagram(*right).diagram, big));
      CHECK(bounds(*left).four_genus == bounds(*right).four_genus);
    }
  }

  TEST_CASE("gluing with an empty interval") {
    const auto c = fig17("c1", "d");
    LabelledInterval empty;
    CHECK(glue(c, empty) == c);
    CHECK(glue(empty, c) == c);
  }

  TEST_CASE("track text round trip") {
    std::mt19937 rng(313);
    for (int k = 0; k < 50; ++k) {
      auto c = testing::random_valid_interval(rng, 2, 16);
      c.path.start = {std::uniform_int_distribution<int>(-3, 3)(rng), std::uniform_int_distribution<int>(-3, 3)(rng)};
      CHECK(parse_track(emit_track(c)) == c);
    }
    const auto c = parse_track("# comment\npath = RRUULLDDDRUU\nlabels = b1, c1\nmarks = 2, 9:1\n");
    CHECK(c.marks == std::vector<MarkedPoint>{{2, 0}, {9, 1}});
  }

  TEST_CASE("track text errors carry positions") {
    CHECK_THROWS_AS(parse_track("labels = b\n"), ParseError);
    CHECK_THROWS_AS(parse_track("path = RRX\n"), ParseError);
    CHECK_THROWS_AS(parse_track("path = RR\nlabels = e7\n"), ParseError);
    CHECK_THROWS_AS(parse_track("path = RR\ncolour = red\n"), ParseError);
    try {
      parse_track("path = RR\nmarks = 1, x\n");
      FAIL("expected a parse error");
    } catch (const ParseError& e) {
      CHECK(e.line() == 2);
    }
  }

  TEST_CASE("enumeration order and size") {
    const auto c = load_track_file(testing::fixture_path("fig17.track"));
    const auto all = enumerate_labellings(c.path, c.marks);
    REQUIRE(all.size() == 121);
    std::vector<std::pair<std::string, std::string>> keys;
    for (const auto& l : all) keys.emplace_back(l.labels[0].symbol(), l.labels[1].symbol());
    CHECK(std::is_sorted(keys.begin(), keys.end()));
    CHECK(keys.front() == std::make_pair(std::string("a"), std::string("a")));
    CHECK(keys.back() == std::make_pair(std::string("d"), std::string("d")));
  }

  TEST_CASE("relaxed build skips only the cycle check") {
    LabelledInterval loop;
    loop.path.moves = "RRRUULLDDD";
    loop.labels = {DoublePointLabel::parse("c1")};
    CHECK_THROWS_AS(build_diagram(loop), ValidationError);
    const auto r = relaxed_build(loop);
    CHECK(r.upper_bound == 1);
    CHECK(homfly(r.track.diagram) == LaurentPoly2(1));
    loop.path.moves = "RL";
    CHECK_THROWS_AS(relaxed_build(loop), ValidationError);
  }
}
