// Searches small grid intervals with two double points and two marks, and
// quadrant conventions, for a combination whose 121 labellings reproduce the
// track-knot table. Prints every combination that passes.
//
//   calibrate <knots_10.catalog> [max_length]

#include <algorithm>
#include <cstdlib>
#include <iostream>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "trackforge/catalog.hpp"
#include "trackforge/homfly.hpp"
#include "trackforge/track.hpp"

using namespace trackforge;

namespace {

struct Row {
  const char* x;
  const char* y;
  const char* knot;  // empty: more than 10 crossings
  int four_genus;
};

const std::vector<Row> kTable = {
    {"b", "c", "7_2", 1},    {"b", "c1", "5_2", 1},    {"b", "d", "7_3", 2},      {"b1", "b1", "9_46", 0},
    {"b1", "b3", "10_140", 0}, {"b1", "c", "", 1},     {"b1", "c1", "3_1", 1},    {"b1", "d", "10_145", 2},
    {"b3", "b3", "", 0},     {"b3", "c3", "10_133", 1}, {"c", "c3", "8_15", 2},    {"c", "d", "10_142", 3},
    {"c1", "b1", "8_21", 1}, {"c1", "b3", "9_45", 1},   {"c1", "c1", "5_1", 2},    {"c1", "c3", "7_5", 2},
    {"c1", "d", "10_161", 3}, {"c3", "b3", "10_131", 1}, {"c3", "d", "10_128", 3}, {"d", "b1", "", 2},
    {"d", "b3", "", 2},      {"d", "c1", "7_1", 3},     {"d", "c3", "10_134", 3},  {"d", "d", "", 4},
};

std::vector<std::string> paths;

void dfs(std::string& moves, std::vector<GridPoint>& pts, std::map<GridPoint, int>& count, int doubles, int max_len) {
  if (doubles == 2 && count[pts.back()] == 1) {
    GridPath gp{moves, {0, 0}};
    const auto dps = double_points(gp);
    // Gauss word 1-2-1-2; the word 1-1-2-2 would give connected sums.
    if (dps[1].first < dps[0].second && dps[0].second < dps[1].second) paths.push_back(moves);
  }
  if (static_cast<int>(moves.size()) == max_len) return;
  for (char m : {'R', 'U', 'L', 'D'}) {
    if (moves.empty() && m != 'R') continue;
    if (moves.size() == 1 && m == 'D') continue;  // reflection symmetry
    const auto s = step_vector(m);
    const GridPoint q{pts.back().x + s.x, pts.back().y + s.y};
    const int seen = count[q];
    if (seen >= 2) continue;
    int nd = doubles;
    if (seen == 1) {
      if (doubles == 2) continue;
      ++nd;
    }
    // Leaving a double point must continue straight.
    if (pts.size() >= 2 && count[pts.back()] == 2 && moves.back() != m) continue;
    moves.push_back(m);
    pts.push_back(q);
    ++count[q];
    dfs(moves, pts, count, nd, max_len);
    --count[q];
    pts.pop_back();
    moves.pop_back();
  }
}

}  // namespace

int run(int argc, char** argv) {
  if (argc < 2 || argv[1][0] == '-') {
    std::cerr << "usage: calibrate <knots_10.catalog> [max_length]\n";
    return 2;
  }
  const int max_len = argc > 2 ? std::stoi(argv[2]) : 12;
  auto store = CatalogStore::ingest(parse_catalog_file(argv[1]));

  std::string moves;
  std::vector<GridPoint> pts{{0, 0}};
  std::map<GridPoint, int> count{{{0, 0}, 1}};
  dfs(moves, pts, count, 0, max_len);
  std::cerr << paths.size() << " raw paths\n";

  // One representative per curve class, keyed by the diagram of (d, d).
  std::map<std::string, std::string> classes;
  for (const auto& p : paths) {
    LabelledInterval c;
    c.path.moves = p;
    c.labels = {DoublePointLabel::parse("d"), DoublePointLabel::parse("d")};
    if (!validate_generic(c).ok()) continue;
    const auto key = to_pd(relaxed_build(c).track.diagram);
    auto [it, fresh] = classes.emplace(key, p);
    if (!fresh && p.size() < it->second.size()) it->second = p;
  }
  std::cerr << classes.size() << " curve classes\n";

  auto has = [](const std::vector<std::string>& v, const std::string& n) {
    return std::find(v.begin(), v.end(), n) != v.end();
  };

  // The eleven distinct quadrant sign vectors.
  std::vector<std::array<int, 4>> vectors;
  for (const auto& l : DoublePointLabel::all()) vectors.push_back(quadrant_signs(l, QuadrantConvention{}));
  auto vector_index = [&](const std::array<int, 4>& v) {
    return static_cast<int>(std::find(vectors.begin(), vectors.end(), v) - vectors.begin());
  };
  static constexpr std::array<std::array<int, 4>, 4> kBase{{
      {1, -1, 1, -1}, {1, 1, -1, -1}, {1, 1, 1, -1}, {1, 1, 1, 1}}};

  for (const auto& [key, p] : classes) {
    LabelledInterval c;
    c.path.moves = p;
    c.labels = {DoublePointLabel::parse("d"), DoublePointLabel::parse("d")};
    const int m = static_cast<int>(p.size());
    std::map<std::string, std::vector<MarkedPoint>> placements;
    for (int i = 0; i < m; ++i) {
      for (int j = i + 1; j < m; ++j) {
        LabelledInterval t = c;
        t.marks = {{i, 0}, {j, 0}};
        if (!validate(t).ok()) continue;
        placements.emplace(to_pd(canonicalize(build_diagram(t).diagram)), t.marks);
      }
    }
    for (const auto& [pk, ms] : placements) {
      LabelledInterval t = c;
      t.marks = ms;
      // Identification of all 121 sign configurations.
      std::vector<std::vector<std::string>> names(121);
      for (int u = 0; u < 11; ++u) {
        for (int v = 0; v < 11; ++v) {
          names[static_cast<std::size_t>(11 * u + v)] =
              store.identify(homfly(build_from_signs(t, {vectors[static_cast<std::size_t>(u)], vectors[static_cast<std::size_t>(v)]}).diagram));
        }
      }
      for (int ccw = 0; ccw < 2; ++ccw) {
        for (int ab = 0; ab < 4; ++ab) {
          for (int ac = 0; ac < 4; ++ac) {
            for (int o1 = 0; o1 < 4; ++o1) {
              for (int o2 = 0; o2 < 4; ++o2) {
                auto sv = [&](const char* sym, int offset) {
                  const auto l = DoublePointLabel::parse(sym);
                  const int t_idx = static_cast<int>(l.type());
                  const int anchor = t_idx == 1 ? ab : t_idx == 2 ? ac : 0;
                  const int turn = ccw ? l.rotation() : -l.rotation();
                  std::array<int, 4> out{};
                  for (int q = 0; q < 4; ++q) {
                    out[static_cast<std::size_t>(q)] =
                        kBase[static_cast<std::size_t>(t_idx)][static_cast<std::size_t>(((q - anchor - turn - offset) % 4 + 8) % 4)];
                  }
                  return vector_index(out);
                };
                int good = 0;
                std::string misses;
                for (const auto& row : kTable) {
                  if (!*row.knot) continue;
                  const auto& n = names[static_cast<std::size_t>(11 * sv(row.x, o1) + sv(row.y, o2))];
                  if (has(n, row.knot)) {
                    ++good;
                  } else {
                    misses += std::string(" (") + row.x + "," + row.y + ")";
                  }
                }
                if (good >= 12) {
                  std::cout << "path=" << p << " marks=" << ms[0].step << "," << ms[1].step << " ccw=" << ccw
                            << " anchor b=" << ab << " c=" << ac << " offsets=" << o1 << "," << o2 << " rows=" << good
                            << "/19" << misses << "\n";
                }
              }
            }
          }
        }
      }
    }
  }
  return 0;
}

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const std::exception& e) {
    std::cerr << "calibrate: " << e.what() << "\n";
    return 1;
  }
}
