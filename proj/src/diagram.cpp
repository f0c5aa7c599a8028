#include "trackforge/diagram.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <numeric>
#include <optional>
#include <queue>

#include "trackforge/error.hpp"

namespace trackforge {

namespace {

class DisjointSets {
 public:
  explicit DisjointSets(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }
  int find(int x) {
    while (parent_[static_cast<std::size_t>(x)] != x) {
      auto& p = parent_[static_cast<std::size_t>(x)];
      p = parent_[static_cast<std::size_t>(p)];
      x = p;
    }
    return x;
  }
  bool unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent_[static_cast<std::size_t>(std::max(a, b))] = std::min(a, b);
    return true;
  }

 private:
  std::vector<int> parent_;
};

}  // namespace

PlanarDiagram::PlanarDiagram(std::vector<Crossing> crossings, int free_loops)
    : crossings_(std::move(crossings)), free_loops_(free_loops) {
  if (free_loops_ < 0) throw ValidationError("negative number of crossing-free loops");
  if (crossings_.empty() && free_loops_ == 0) throw ValidationError("diagram has no components");
  const auto arcs = static_cast<std::size_t>(arc_count());
  heads_.assign(arcs, ArcEnd{});
  tails_.assign(arcs, ArcEnd{});
  for (int c = 0; c < crossing_count(); ++c) {
    const auto& x = crossings_[static_cast<std::size_t>(c)];
    if (x.sign != 1 && x.sign != -1) {
      throw ValidationError("crossing " + std::to_string(c + 1) + ": sign must be +1 or -1");
    }
    for (int k = 0; k < 4; ++k) {
      const int a = x.arcs[static_cast<std::size_t>(k)];
      if (a < 0 || a >= arc_count()) {
        throw ValidationError("crossing " + std::to_string(c + 1) + ": arc label " + std::to_string(a + 1) +
                              " outside 1.." + std::to_string(arc_count()));
      }
      auto& end = x.is_incoming(k) ? heads_[static_cast<std::size_t>(a)] : tails_[static_cast<std::size_t>(a)];
      if (end.crossing >= 0) {
        throw ValidationError("arc " + std::to_string(a + 1) + " is " + (x.is_incoming(k) ? "entered" : "left") +
                              " twice (orientation-inconsistent)");
      }
      end = ArcEnd{c, k};
    }
  }
}

PlanarDiagram PlanarDiagram::unlink(int components) {
  if (components < 1) throw ValidationError("unlink needs at least one component");
  return PlanarDiagram({}, components);
}

int PlanarDiagram::component_count() const { return static_cast<int>(components().size()) + free_loops_; }

ArcEnd PlanarDiagram::opposite_end(int crossing, int slot) const {
  const auto& x = crossings_.at(static_cast<std::size_t>(crossing));
  const int a = x.arcs[static_cast<std::size_t>(slot)];
  return x.is_incoming(slot) ? tail(a) : head(a);
}

int PlanarDiagram::next_along_strand(int arc) const {
  const auto h = head(arc);
  return crossings_[static_cast<std::size_t>(h.crossing)].arcs[static_cast<std::size_t>((h.slot + 2) % 4)];
}

std::vector<std::vector<int>> PlanarDiagram::components() const {
  std::vector<std::vector<int>> out;
  std::vector<bool> seen(static_cast<std::size_t>(arc_count()), false);
  for (int a = 0; a < arc_count(); ++a) {
    if (seen[static_cast<std::size_t>(a)]) continue;
    std::vector<int> comp;
    for (int b = a; !seen[static_cast<std::size_t>(b)]; b = next_along_strand(b)) {
      seen[static_cast<std::size_t>(b)] = true;
      comp.push_back(b);
    }
    out.push_back(std::move(comp));
  }
  return out;
}

int writhe(const PlanarDiagram& d) {
  int w = 0;
  for (const auto& x : d.crossings()) w += x.sign;
  return w;
}

SeifertDecomposition seifert_decompose(const PlanarDiagram& d) {
  SeifertDecomposition out;
  const int n_arcs = d.arc_count();
  out.circle_of_arc.assign(static_cast<std::size_t>(n_arcs), -1);
  auto next_smoothed = [&](int arc) {
    const auto h = d.head(arc);
    const auto& x = d.crossing(h.crossing);
    const int slot = h.slot == 0 ? x.over_out_slot() : 2;
    return x.arcs[static_cast<std::size_t>(slot)];
  };
  for (int a = 0; a < n_arcs; ++a) {
    if (out.circle_of_arc[static_cast<std::size_t>(a)] >= 0) continue;
    const int id = out.circle_count();
    std::vector<int> circle;
    std::vector<int> along;
    for (int b = a; out.circle_of_arc[static_cast<std::size_t>(b)] < 0; b = next_smoothed(b)) {
      out.circle_of_arc[static_cast<std::size_t>(b)] = id;
      circle.push_back(b);
      along.push_back(d.head(b).crossing);
    }
    out.circles.push_back(std::move(circle));
    out.crossings_along.push_back(std::move(along));
  }
  for (int i = 0; i < d.free_loops(); ++i) {
    out.circles.emplace_back();
    out.crossings_along.emplace_back();
  }
  for (int c = 0; c < d.crossing_count(); ++c) {
    const auto& x = d.crossing(c);
    out.graph.push_back(SeifertArc{c, out.circle_of_arc[static_cast<std::size_t>(x.arcs[0])],
                                   out.circle_of_arc[static_cast<std::size_t>(x.arcs[static_cast<std::size_t>(x.over_in_slot())])],
                                   x.sign});
  }
  return out;
}

namespace {

Crossing switched(const Crossing& x) {
  const auto& s = x.arcs;
  if (x.sign > 0) return Crossing{{s[3], s[0], s[1], s[2]}, -1};
  return Crossing{{s[1], s[2], s[3], s[0]}, 1};
}

}  // namespace

PlanarDiagram mirror(const PlanarDiagram& d) {
  std::vector<Crossing> out;
  out.reserve(d.crossings().size());
  for (const auto& x : d.crossings()) out.push_back(switched(x));
  return PlanarDiagram(std::move(out), d.free_loops());
}

PlanarDiagram switch_crossing(const PlanarDiagram& d, int id) {
  auto xs = d.crossings();
  auto& x = xs.at(static_cast<std::size_t>(id));
  x = switched(x);
  return PlanarDiagram(std::move(xs), d.free_loops());
}

PlanarDiagram reverse(const PlanarDiagram& d) {
  std::vector<Crossing> out;
  for (const auto& x : d.crossings()) {
    const auto& s = x.arcs;
    out.push_back(Crossing{{s[2], s[3], s[0], s[1]}, x.sign});
  }
  return PlanarDiagram(std::move(out), d.free_loops());
}

PlanarDiagram canonicalize(const PlanarDiagram& d) {
  std::vector<int> relabel(static_cast<std::size_t>(d.arc_count()), -1);
  int next = 0;
  for (const auto& comp : d.components()) {
    for (int a : comp) relabel[static_cast<std::size_t>(a)] = next++;
  }
  std::vector<Crossing> out;
  out.reserve(d.crossings().size());
  for (const auto& x : d.crossings()) {
    Crossing y = x;
    for (auto& a : y.arcs) a = relabel[static_cast<std::size_t>(a)];
    out.push_back(y);
  }
  return PlanarDiagram(std::move(out), d.free_loops());
}

PlanarDiagram smooth_crossing(const PlanarDiagram& d, int id) {
  const auto& x = d.crossing(id);
  DisjointSets sets(static_cast<std::size_t>(d.arc_count()));
  sets.unite(x.arcs[0], x.arcs[static_cast<std::size_t>(x.over_out_slot())]);
  sets.unite(x.arcs[static_cast<std::size_t>(x.over_in_slot())], x.arcs[2]);
  std::vector<int> occurrences(static_cast<std::size_t>(d.arc_count()), 0);
  std::vector<Crossing> rest;
  for (int c = 0; c < d.crossing_count(); ++c) {
    if (c == id) continue;
    Crossing y = d.crossing(c);
    for (auto& a : y.arcs) {
      a = sets.find(a);
      ++occurrences[static_cast<std::size_t>(a)];
    }
    rest.push_back(y);
  }
  int loops = d.free_loops();
  std::vector<bool> counted(static_cast<std::size_t>(d.arc_count()), false);
  for (int a : x.arcs) {
    const int r = sets.find(a);
    if (occurrences[static_cast<std::size_t>(r)] == 0 && !counted[static_cast<std::size_t>(r)]) {
      counted[static_cast<std::size_t>(r)] = true;
      ++loops;
    }
  }
  // Compact the surviving labels; canonicalize then fixes the order.
  std::map<int, int> compact;
  for (auto& y : rest) {
    for (auto& a : y.arcs) a = compact.try_emplace(a, static_cast<int>(compact.size())).first->second;
  }
  return canonicalize(PlanarDiagram(std::move(rest), loops));
}

PlanarDiagram connected_sum(const PlanarDiagram& d1, const PlanarDiagram& d2) {
  if (d1.component_count() != 1 || d2.component_count() != 1) {
    throw DomainError("connected sum needs two knot diagrams");
  }
  if (d1.crossing_count() == 0) return d2;
  if (d2.crossing_count() == 0) return d1;
  const int offset = d1.arc_count();
  std::vector<Crossing> xs = d1.crossings();
  for (auto x : d2.crossings()) {
    for (auto& a : x.arcs) a += offset;
    xs.push_back(x);
  }
  const int a = 0;
  const int b = offset;
  const auto h1 = d1.head(a);
  const auto h2 = d2.head(0);
  xs[static_cast<std::size_t>(h1.crossing)].arcs[static_cast<std::size_t>(h1.slot)] = b;
  xs[static_cast<std::size_t>(h2.crossing + d1.crossing_count())].arcs[static_cast<std::size_t>(h2.slot)] = a;
  return canonicalize(PlanarDiagram(std::move(xs), 0));
}

std::vector<std::vector<Dart>> faces(const PlanarDiagram& d) {
  std::vector<std::vector<Dart>> out;
  const int n = d.crossing_count();
  std::vector<bool> used(static_cast<std::size_t>(4 * n), false);
  for (int c0 = 0; c0 < n; ++c0) {
    for (int k0 = 0; k0 < 4; ++k0) {
      if (used[static_cast<std::size_t>(4 * c0 + k0)]) continue;
      std::vector<Dart> face;
      int c = c0;
      int k = k0;
      while (!used[static_cast<std::size_t>(4 * c + k)]) {
        used[static_cast<std::size_t>(4 * c + k)] = true;
        const auto& x = d.crossing(c);
        face.push_back(Dart{x.arcs[static_cast<std::size_t>(k)], !x.is_incoming(k)});
        const auto far = d.opposite_end(c, k);
        c = far.crossing;
        k = (far.slot + 3) % 4;
      }
      out.push_back(std::move(face));
    }
  }
  return out;
}

bool is_planar(const PlanarDiagram& d) {
  const int n = d.crossing_count();
  if (n == 0) return true;
  DisjointSets pieces(static_cast<std::size_t>(n));
  for (int a = 0; a < d.arc_count(); ++a) pieces.unite(d.head(a).crossing, d.tail(a).crossing);
  std::map<int, int> face_count;
  std::map<int, int> vertex_count;
  for (int c = 0; c < n; ++c) ++vertex_count[pieces.find(c)];
  for (const auto& f : faces(d)) ++face_count[pieces.find(d.head(f.front().arc).crossing)];
  for (const auto& [piece, v] : vertex_count) {
    if (v - 2 * v + face_count[piece] != 2) return false;
  }
  return true;
}

std::string to_pd(const PlanarDiagram& d) {
  std::vector<std::string> items;
  for (const auto& x : d.crossings()) {
    items.push_back("X(" + std::to_string(x.arcs[0] + 1) + "," + std::to_string(x.arcs[1] + 1) + "," +
                    std::to_string(x.arcs[2] + 1) + "," + std::to_string(x.arcs[3] + 1) + ")");
  }
  // A crossing-free diagram is at least one loop; `O` marks each extra one.
  const int extra = d.crossing_count() == 0 ? d.free_loops() - 1 : d.free_loops();
  for (int i = 0; i < extra; ++i) items.emplace_back("O");
  std::string out = "PD[";
  for (std::size_t i = 0; i < items.size(); ++i) out += (i ? ", " : "") + items[i];
  return out + "]";
}

namespace {

class PdReader {
 public:
  explicit PdReader(std::string_view text) : text_(text) {}

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) advance();
  }
  bool at_end() {
    skip_space();
    return pos_ >= text_.size();
  }
  char peek() {
    skip_space();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }
  bool accept(char ch) {
    if (peek() == ch) {
      advance();
      return true;
    }
    return false;
  }
  void expect(char ch) {
    if (!accept(ch)) fail(std::string("expected '") + ch + "'");
  }
  int integer() {
    skip_space();
    if (pos_ >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_]))) fail("expected arc label");
    long value = 0;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      value = value * 10 + (text_[pos_] - '0');
      if (value > 1'000'000) fail("arc label too large");
      advance();
    }
    return static_cast<int>(value);
  }
  [[noreturn]] void fail(const std::string& what) const { throw ParseError(what, line_, column_); }
  int line() const { return line_; }
  int column() const { return column_; }

 private:
  void advance() {
    if (text_[pos_] == '\n') {
      ++line_;
      column_ = 1;
    } else {
      ++column_;
    }
    ++pos_;
  }
  std::string_view text_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int column_ = 1;
};

// Solves for the over-strand direction at each crossing. x_c = 1 means the
// over-strand enters at slot 3.
std::vector<int> infer_over_directions(const std::vector<std::array<int, 4>>& raw, int n_arcs) {
  const int n = static_cast<int>(raw.size());
  std::vector<std::vector<std::pair<int, int>>> occ(static_cast<std::size_t>(n_arcs));
  for (int c = 0; c < n; ++c) {
    for (int k = 0; k < 4; ++k) occ[static_cast<std::size_t>(raw[static_cast<std::size_t>(c)][static_cast<std::size_t>(k)])].push_back({c, k});
  }
  // in(c,k) = a ^ (b ? x_c : 0)
  auto affine = [](int k) -> std::pair<int, int> {
    switch (k) {
      case 0: return {1, 0};
      case 2: return {0, 0};
      case 1: return {1, 1};
      default: return {0, 1};
    }
  };
  std::vector<int> value(static_cast<std::size_t>(n), -1);
  std::vector<std::vector<std::pair<int, int>>> parity(static_cast<std::size_t>(n));
  std::vector<std::pair<int, int>> fixed;
  for (int a = 0; a < n_arcs; ++a) {
    const auto [c1, k1] = occ[static_cast<std::size_t>(a)][0];
    const auto [c2, k2] = occ[static_cast<std::size_t>(a)][1];
    const auto [a1, b1] = affine(k1);
    const auto [a2, b2] = affine(k2);
    const int rhs = 1 ^ a1 ^ a2;
    const std::string where = "arc " + std::to_string(a + 1) + ": orientation-inconsistent";
    if (!b1 && !b2) {
      if (rhs != 0) throw ValidationError(where);
    } else if (b1 && b2 && c1 == c2) {
      if (rhs != 0) throw ValidationError(where);
    } else if (b1 && b2) {
      parity[static_cast<std::size_t>(c1)].push_back({c2, rhs});
      parity[static_cast<std::size_t>(c2)].push_back({c1, rhs});
    } else {
      fixed.push_back({b1 ? c1 : c2, rhs});
    }
  }
  std::queue<int> work;
  auto assign = [&](int c, int v) {
    auto& slot = value[static_cast<std::size_t>(c)];
    if (slot == -1) {
      slot = v;
      work.push(c);
    } else if (slot != v) {
      throw ValidationError("crossing " + std::to_string(c + 1) + ": orientation-inconsistent");
    }
  };
  auto propagate = [&] {
    while (!work.empty()) {
      const int c = work.front();
      work.pop();
      for (auto [other, rhs] : parity[static_cast<std::size_t>(c)]) assign(other, value[static_cast<std::size_t>(c)] ^ rhs);
    }
  };
  for (auto [c, v] : fixed) assign(c, v);
  propagate();
  for (int c = 0; c < n; ++c) {
    if (value[static_cast<std::size_t>(c)] != -1) continue;
    // Over-only strand: labels increase along the orientation.
    const int j = raw[static_cast<std::size_t>(c)][1];
    const int l = raw[static_cast<std::size_t>(c)][3];
    const bool consecutive = std::abs(j - l) == 1;
    const bool enters_at_1 = consecutive ? j < l : j > l;
    assign(c, enters_at_1 ? 0 : 1);
    propagate();
  }
  return value;
}

}  // namespace

PlanarDiagram parse_pd(std::string_view text, bool strict) {
  PdReader in(text);
  in.expect('P');
  in.expect('D');
  in.expect('[');
  std::vector<std::array<int, 4>> raw;
  int loops = 0;
  if (!in.accept(']')) {
    do {
      if (in.accept('O')) {
        ++loops;
        continue;
      }
      const int line = in.line();
      const int column = in.column();
      in.expect('X');
      const char open = in.peek();
      if (open != '(' && open != '[') in.fail("expected '(' after X");
      in.accept(open);
      std::vector<int> labels;
      do {
        labels.push_back(in.integer());
      } while (in.accept(','));
      in.expect(open == '(' ? ')' : ']');
      if (labels.size() != 4) {
        throw ParseError("crossing " + std::to_string(raw.size() + 1) + ": expected 4 arc labels, found " +
                             std::to_string(labels.size()),
                         line, column);
      }
      raw.push_back({labels[0] - 1, labels[1] - 1, labels[2] - 1, labels[3] - 1});
    } while (in.accept(','));
    in.expect(']');
  }
  if (!in.at_end()) in.fail("trailing characters after PD[...]");
  if (raw.empty()) return PlanarDiagram({}, loops + 1);

  const int n_arcs = 2 * static_cast<int>(raw.size());
  std::vector<int> count(static_cast<std::size_t>(n_arcs), 0);
  for (std::size_t c = 0; c < raw.size(); ++c) {
    for (int a : raw[c]) {
      if (a < 0 || a >= n_arcs) {
        throw ValidationError("crossing " + std::to_string(c + 1) + ": arc label " + std::to_string(a + 1) +
                              " outside 1.." + std::to_string(n_arcs));
      }
      ++count[static_cast<std::size_t>(a)];
    }
  }
  for (int a = 0; a < n_arcs; ++a) {
    if (count[static_cast<std::size_t>(a)] != 2) {
      throw ValidationError("arc label " + std::to_string(a + 1) + " appears " +
                            std::to_string(count[static_cast<std::size_t>(a)]) + " times (expected 2)");
    }
  }
  const auto over = infer_over_directions(raw, n_arcs);
  std::vector<Crossing> xs;
  for (std::size_t c = 0; c < raw.size(); ++c) xs.push_back(Crossing{raw[c], over[c] ? 1 : -1});
  PlanarDiagram d(std::move(xs), loops);
  if (strict && !is_planar(d)) throw ValidationError("incidence data admits no planar embedding");
  return d;
}

}  // namespace trackforge
