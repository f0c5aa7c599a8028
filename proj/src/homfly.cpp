#include "trackforge/homfly.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <stdexcept>

#include "trackforge/error.hpp"

namespace trackforge {

bool HomflyCache::lookup(const std::string& key, LaurentPoly2& out) const {
  std::lock_guard lock(mutex_);
  auto it = table_.find(key);
  if (it == table_.end()) return false;
  out = it->second;
  return true;
}

void HomflyCache::store(const std::string& key, const LaurentPoly2& value) {
  std::lock_guard lock(mutex_);
  table_.try_emplace(key, value);
}

std::size_t HomflyCache::size() const {
  std::lock_guard lock(mutex_);
  return table_.size();
}

namespace {

// Crossings grouped into pieces that share arcs; each piece is returned as
// its own canonical diagram.
std::vector<PlanarDiagram> split_pieces(const PlanarDiagram& d) {
  const int n = d.crossing_count();
  std::vector<int> piece(static_cast<std::size_t>(n), -1);
  int pieces = 0;
  for (int start = 0; start < n; ++start) {
    if (piece[static_cast<std::size_t>(start)] >= 0) continue;
    std::vector<int> stack{start};
    piece[static_cast<std::size_t>(start)] = pieces;
    while (!stack.empty()) {
      const int c = stack.back();
      stack.pop_back();
      for (int k = 0; k < 4; ++k) {
        const int other = d.opposite_end(c, k).crossing;
        if (piece[static_cast<std::size_t>(other)] < 0) {
          piece[static_cast<std::size_t>(other)] = pieces;
          stack.push_back(other);
        }
      }
    }
    ++pieces;
  }
  std::vector<PlanarDiagram> out;
  if (pieces == 1) {
    out.push_back(PlanarDiagram(d.crossings(), 0));
    return out;
  }
  for (int p = 0; p < pieces; ++p) {
    std::vector<Crossing> xs;
    std::map<int, int> relabel;
    for (int c = 0; c < n; ++c) {
      if (piece[static_cast<std::size_t>(c)] != p) continue;
      Crossing x = d.crossing(c);
      for (auto& a : x.arcs) a = relabel.try_emplace(a, static_cast<int>(relabel.size())).first->second;
      xs.push_back(x);
    }
    out.push_back(canonicalize(PlanarDiagram(std::move(xs), 0)));
  }
  return out;
}

// Crossing ids first met from below, in traversal order.
std::vector<int> offending_crossings(const PlanarDiagram& d, SkeinStrategy strategy) {
  auto comps = d.components();
  if (strategy == SkeinStrategy::kReversedBase) {
    std::reverse(comps.begin(), comps.end());
    for (auto& comp : comps) {
      // Start each component at its highest arc.
      auto top = std::max_element(comp.begin(), comp.end());
      std::rotate(comp.begin(), top, comp.end());
    }
  }
  std::vector<bool> seen(static_cast<std::size_t>(d.crossing_count()), false);
  std::vector<int> bad;
  for (const auto& comp : comps) {
    for (int arc : comp) {
      const auto h = d.head(arc);
      if (seen[static_cast<std::size_t>(h.crossing)]) continue;
      seen[static_cast<std::size_t>(h.crossing)] = true;
      if (h.slot == 0) bad.push_back(h.crossing);
    }
  }
  return bad;
}

// A crossing with two adjacent slots on the same arc, or -1.
int kink(const PlanarDiagram& d) {
  for (int c = 0; c < d.crossing_count(); ++c) {
    const auto& a = d.crossing(c).arcs;
    for (int k = 0; k < 4; ++k) {
      if (a[static_cast<std::size_t>(k)] == a[static_cast<std::size_t>((k + 1) % 4)]) return c;
    }
  }
  return -1;
}

class SkeinEvaluator {
 public:
  explicit SkeinEvaluator(const HomflyOptions& options) : options_(options) {}

  LaurentPoly2 eval(const PlanarDiagram& d) {
    if (d.crossing_count() == 0) return LaurentPoly2::delta().pow(static_cast<unsigned>(d.free_loops() - 1));
    const std::string key = to_pd(canonicalize(d));
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    LaurentPoly2 cached;
    if (options_.cache && options_.cache->lookup(key, cached)) return cached;

    LaurentPoly2 result = evaluate(d);
    memo_.emplace(key, result);
    if (options_.cache) options_.cache->store(key, result);
    return result;
  }

 private:
  LaurentPoly2 evaluate(const PlanarDiagram& d) {
    auto pieces = split_pieces(d);
    if (pieces.size() > 1 || d.free_loops() > 0) {
      const auto split = static_cast<unsigned>(pieces.size()) + static_cast<unsigned>(d.free_loops()) - 1;
      LaurentPoly2 result = LaurentPoly2::delta().pow(split);
      for (const auto& p : pieces) result *= eval(p);
      return result;
    }
    if (const int k = kink(d); k >= 0) {
      // A Reidemeister I loop: smoothing it splits off a free circle and
      // otherwise leaves the same link.
      const auto sm = smooth_crossing(d, k);
      return eval(PlanarDiagram(sm.crossings(), sm.free_loops() - 1));
    }
    const auto bad = offending_crossings(d, options_.strategy);
    if (bad.empty()) {
      return LaurentPoly2::delta().pow(static_cast<unsigned>(d.component_count() - 1));
    }
    const int c = options_.strategy == SkeinStrategy::kLastBad ? bad.back() : bad.front();
    const auto switched = eval(switch_crossing(d, c));
    const auto smoothed = eval(smooth_crossing(d, c));
    LaurentPoly2 result;
    if (d.crossing(c).sign > 0) {
      // P+ = v^2 P- + v z P0
      result.add_scaled(switched, 1, 2, 0);
      result.add_scaled(smoothed, 1, 1, 1);
    } else {
      // P- = v^-2 P+ - v^-1 z P0
      result.add_scaled(switched, 1, -2, 0);
      result.add_scaled(smoothed, -1, -1, 1);
    }
    return result;
  }

  HomflyOptions options_;
  std::unordered_map<std::string, LaurentPoly2> memo_;
};

}  // namespace

LaurentPoly2 homfly(const PlanarDiagram& d, const HomflyOptions& options) {
  if (d.crossing_count() > options.crossing_cap) {
    throw ResourceError("HOMFLY: diagram has " + std::to_string(d.crossing_count()) +
                        " crossings, cap is " + std::to_string(options.crossing_cap));
  }
  SkeinEvaluator evaluator(options);
  auto p = evaluator.eval(d);
  if (d.component_count() == 1) {
    for (const auto& t : p.terms()) {
      if (t.v_exp % 2 != 0 || t.z_exp % 2 != 0 || t.z_exp < 0) {
        throw std::logic_error("HOMFLY of a knot has a term outside even v and even non-negative z: " +
                               p.to_string());
      }
    }
  }
  return p;
}

MortonReport morton_check(const PlanarDiagram& d, const LaurentPoly2& p) {
  MortonReport r;
  r.writhe = writhe(d);
  r.seifert_circles = seifert_decompose(d).circle_count();
  const auto [e, E] = p.v_range();
  r.e = e;
  r.E = E;
  r.lower = r.writhe - (r.seifert_circles - 1);
  r.upper = r.writhe + (r.seifert_circles - 1);
  r.pass = r.lower <= r.e && r.e <= r.E && r.E <= r.upper;
  return r;
}

MortonReport morton_check(const PlanarDiagram& d, const HomflyOptions& options) {
  return morton_check(d, homfly(d, options));
}

}  // namespace trackforge
