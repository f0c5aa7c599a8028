#include "support.hpp"

#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

namespace trackforge::testing {

std::string data_path(const std::string& name) { return std::string(TRACKFORGE_SOURCE_DIR) + "/data/" + name; }
std::string fixture_path(const std::string& name) { return std::string(TRACKFORGE_SOURCE_DIR) + "/fixtures/" + name; }

const CatalogStore& small_catalog() {
  static const CatalogStore store = CatalogStore::ingest(parse_catalog_file(data_path("knots_10.catalog")));
  return store;
}

const CatalogStore& full_catalog() {
  static const CatalogStore store = [] {
    CatalogStore s = small_catalog();
    s.merge(CatalogStore::ingest(parse_catalog_file(data_path("knots_11_12.catalog"))));
    return s;
  }();
  return store;
}

std::vector<std::vector<std::string>> read_rows(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::vector<std::vector<std::string>> rows;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::vector<std::string> fields;
    std::stringstream s(line);
    std::string f;
    while (std::getline(s, f, '|')) {
      const auto b = f.find_first_not_of(' ');
      const auto e = f.find_last_not_of(' ');
      fields.push_back(b == std::string::npos ? "" : f.substr(b, e - b + 1));
    }
    rows.push_back(std::move(fields));
  }
  return rows;
}

std::vector<Table1Row> table1() {
  std::vector<Table1Row> out;
  for (const auto& f : read_rows(fixture_path("table1.txt"))) {
    out.push_back({f.at(0), f.at(1), f.at(2), std::stoi(f.at(3)), std::stoi(f.at(4))});
  }
  return out;
}

std::vector<Table2Row> table2() {
  std::vector<Table2Row> out;
  for (const auto& f : read_rows(fixture_path("table2.txt"))) {
    out.push_back({f.at(0), f.at(1), f.at(2), f.at(3), f.at(4), std::stoi(f.at(5))});
  }
  return out;
}

std::optional<LabelledInterval> random_interval(std::mt19937& rng, int length) {
  static const std::string kMoves = "RULD";
  GridPoint at{0, 0};
  std::map<GridPoint, int> visits{{at, 1}};
  std::map<GridPoint, char> straight;  // points passed straight through once
  std::string moves;
  char forced = 0;
  while (static_cast<int>(moves.size()) < length) {
    std::vector<char> options;
    for (char m : kMoves) {
      if (forced && m != forced) continue;
      const auto s = step_vector(m);
      const GridPoint q{at.x + s.x, at.y + s.y};
      const int seen = visits.count(q) ? visits[q] : 0;
      if (seen >= 2) continue;
      if (seen == 1) {
        // Only a transverse crossing of an earlier straight pass, and not
        // as the last step.
        const auto it = straight.find(q);
        if (it == straight.end()) continue;
        const auto t = step_vector(it->second);
        if (t.x * s.x + t.y * s.y != 0) continue;
        if (static_cast<int>(moves.size()) + 1 == length) continue;
      }
      options.push_back(m);
    }
    if (options.empty()) return std::nullopt;
    const char m = options[std::uniform_int_distribution<std::size_t>(0, options.size() - 1)(rng)];
    if (!moves.empty() && moves.back() == m && visits[at] == 1) straight[at] = m;
    const auto s = step_vector(m);
    const GridPoint q{at.x + s.x, at.y + s.y};
    forced = visits.count(q) ? m : 0;
    moves.push_back(m);
    ++visits[q];
    at = q;
  }

  LabelledInterval c;
  c.path.moves = moves;
  const auto dps = double_points(c.path);
  const auto& labels = DoublePointLabel::all();
  for (std::size_t k = 0; k < dps.size(); ++k) {
    c.labels.push_back(labels[std::uniform_int_distribution<std::size_t>(0, labels.size() - 1)(rng)]);
  }
  // Marks: at least one per double point, at most two extra.
  const int extra = std::uniform_int_distribution<int>(0, 2)(rng);
  const int r = static_cast<int>(dps.size()) + extra;
  if (r > length) return std::nullopt;
  for (int attempt = 0; attempt < 40; ++attempt) {
    std::vector<int> steps(static_cast<std::size_t>(length));
    for (int k = 0; k < length; ++k) steps[static_cast<std::size_t>(k)] = k;
    std::shuffle(steps.begin(), steps.end(), rng);
    c.marks.clear();
    for (int k = 0; k < r; ++k) c.marks.push_back({steps[static_cast<std::size_t>(k)], 0});
    std::sort(c.marks.begin(), c.marks.end());
    if (validate(c).ok()) return c;
  }
  return std::nullopt;
}

LabelledInterval random_valid_interval(std::mt19937& rng, int min_length, int max_length) {
  while (true) {
    const int length = std::uniform_int_distribution<int>(min_length, max_length)(rng);
    if (auto c = random_interval(rng, length)) return *c;
  }
}

std::vector<PlanarDiagram> random_knot_diagrams(std::mt19937& rng, int count, int max_crossings) {
  std::vector<PlanarDiagram> pool;
  for (const auto& e : small_catalog().entries()) {
    const auto d = e.diagram();
    if (d.crossing_count() >= 3) pool.push_back(d);
  }
  std::vector<PlanarDiagram> out;
  while (static_cast<int>(out.size()) < count) {
    auto d = pool[std::uniform_int_distribution<std::size_t>(0, pool.size() - 1)(rng)];
    if (std::bernoulli_distribution(0.3)(rng)) {
      const auto& e = pool[std::uniform_int_distribution<std::size_t>(0, pool.size() - 1)(rng)];
      if (d.crossing_count() + e.crossing_count() <= max_crossings) d = connected_sum(d, e);
    }
    if (d.crossing_count() > max_crossings) continue;
    for (int id = 0; id < d.crossing_count(); ++id) {
      if (std::bernoulli_distribution(0.3)(rng)) d = switch_crossing(d, id);
    }
    out.push_back(d);
  }
  return out;
}

}  // namespace trackforge::testing
