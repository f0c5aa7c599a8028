#include "trackforge/track.hpp"

#include <algorithm>
#include <deque>
#include <fstream>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>

#include "trackforge/error.hpp"

namespace trackforge {

namespace {

struct Vec {
  int x;
  int y;
};

Vec operator+(Vec a, Vec b) { return {a.x + b.x, a.y + b.y}; }
Vec operator-(Vec a, Vec b) { return {a.x - b.x, a.y - b.y}; }
Vec operator*(int k, Vec a) { return {k * a.x, k * a.y}; }
int dot(Vec a, Vec b) { return a.x * b.x + a.y * b.y; }
int cross(Vec a, Vec b) { return a.x * b.y - a.y * b.x; }
Vec left_normal(Vec d) { return {-d.y, d.x}; }

Vec dir_of(char move) {
  const auto p = step_vector(move);
  return {p.x, p.y};
}

bool is_move(char m) { return m == 'U' || m == 'D' || m == 'L' || m == 'R'; }

int mod4(int k) { return ((k % 4) + 4) % 4; }

// Counterclockwise position of a diagonal offset (+-1, +-1), from (1, 1).
int diagonal_index(Vec v) {
  if (v.x > 0) return v.y > 0 ? 0 : 3;
  return v.y > 0 ? 1 : 2;
}

}  // namespace

GridPoint step_vector(char move) {
  switch (move) {
    case 'U': return {0, 1};
    case 'D': return {0, -1};
    case 'L': return {-1, 0};
    case 'R': return {1, 0};
    default: throw ValidationError(std::string("unknown move '") + move + "'");
  }
}

std::vector<GridPoint> GridPath::points() const {
  std::vector<GridPoint> out{start};
  out.reserve(moves.size() + 1);
  for (char m : moves) {
    const auto s = step_vector(m);
    out.push_back({out.back().x + s.x, out.back().y + s.y});
  }
  return out;
}

std::vector<DoublePoint> double_points(const GridPath& path) {
  const auto pts = path.points();
  std::map<GridPoint, int> first_visit;
  std::vector<DoublePoint> out;
  for (int i = 0; i < static_cast<int>(pts.size()); ++i) {
    auto [it, fresh] = first_visit.emplace(pts[static_cast<std::size_t>(i)], i);
    if (!fresh) out.push_back({pts[static_cast<std::size_t>(i)], it->second, i});
  }
  std::sort(out.begin(), out.end(), [](const DoublePoint& a, const DoublePoint& b) { return a.first < b.first; });
  return out;
}

// ---------------------------------------------------------------- labels

DoublePointLabel::DoublePointLabel(LabelType type, int rotation) : type_(type) {
  const int period = type == LabelType::kA ? 2 : type == LabelType::kD ? 1 : 4;
  rotation_ = ((rotation % period) + period) % period;
}

DoublePointLabel DoublePointLabel::parse(std::string_view symbol) {
  if (symbol.empty() || symbol.size() > 2) throw ParseError("bad label '" + std::string(symbol) + "'");
  LabelType t;
  switch (symbol[0]) {
    case 'a': t = LabelType::kA; break;
    case 'b': t = LabelType::kB; break;
    case 'c': t = LabelType::kC; break;
    case 'd': t = LabelType::kD; break;
    default: throw ParseError("bad label '" + std::string(symbol) + "'");
  }
  int rot = 0;
  if (symbol.size() == 2) {
    if (symbol[1] < '0' || symbol[1] > '3') throw ParseError("bad label '" + std::string(symbol) + "'");
    rot = symbol[1] - '0';
  }
  return DoublePointLabel(t, rot);
}

const std::array<DoublePointLabel, 11>& DoublePointLabel::all() {
  static const std::array<DoublePointLabel, 11> labels{
      DoublePointLabel(LabelType::kA, 0), DoublePointLabel(LabelType::kA, 1), DoublePointLabel(LabelType::kB, 0),
      DoublePointLabel(LabelType::kB, 1), DoublePointLabel(LabelType::kB, 2), DoublePointLabel(LabelType::kB, 3),
      DoublePointLabel(LabelType::kC, 0), DoublePointLabel(LabelType::kC, 1), DoublePointLabel(LabelType::kC, 2),
      DoublePointLabel(LabelType::kC, 3), DoublePointLabel(LabelType::kD, 0),
  };
  return labels;
}

std::string DoublePointLabel::symbol() const {
  std::string s(1, "abcd"[static_cast<int>(type_)]);
  if (rotation_ != 0) s += static_cast<char>('0' + rotation_);
  return s;
}

QuadrantConvention QuadrantConvention::calibrated() {
  QuadrantConvention c;
  c.anchor = {0, 2, 1, 0};
  c.counterclockwise = true;
  return c;
}

std::array<int, 4> quadrant_signs(const DoublePointLabel& label, const QuadrantConvention& convention) {
  static constexpr std::array<std::array<int, 4>, 4> kBase{{
      {1, -1, 1, -1},
      {1, 1, -1, -1},
      {1, 1, 1, -1},
      {1, 1, 1, 1},
  }};
  const auto t = static_cast<std::size_t>(label.type());
  const int turn = convention.counterclockwise ? label.rotation() : -label.rotation();
  std::array<int, 4> out{};
  for (int q = 0; q < 4; ++q) {
    out[static_cast<std::size_t>(q)] = kBase[t][static_cast<std::size_t>(mod4(q - convention.anchor[t] - turn))];
  }
  return out;
}

// ---------------------------------------------------------------- validation

std::string Diagnostics::to_string() const {
  if (ok()) return "ok";
  std::string out;
  for (const auto& v : violations) {
    if (!out.empty()) out += '\n';
    out += v;
  }
  return out;
}

namespace {

std::string point_text(GridPoint p) { return "(" + std::to_string(p.x) + "," + std::to_string(p.y) + ")"; }

void check_generic(const LabelledInterval& c, Diagnostics& diag) {
  const auto& moves = c.path.moves;
  for (std::size_t i = 0; i < moves.size(); ++i) {
    if (!is_move(moves[i])) {
      diag.violations.push_back("unknown move '" + std::string(1, moves[i]) + "' at step " + std::to_string(i));
      return;
    }
  }
  const auto pts = c.path.points();
  const int m = static_cast<int>(moves.size());

  std::set<std::pair<GridPoint, GridPoint>> edges;
  for (int i = 0; i < m; ++i) {
    auto a = pts[static_cast<std::size_t>(i)];
    auto b = pts[static_cast<std::size_t>(i + 1)];
    if (b < a) std::swap(a, b);
    if (!edges.emplace(a, b).second) {
      diag.violations.push_back("genericity: step " + std::to_string(i) + " retraces an earlier segment");
    }
  }

  std::map<GridPoint, std::vector<int>> visits;
  for (int i = 0; i <= m; ++i) visits[pts[static_cast<std::size_t>(i)]].push_back(i);
  int double_count = 0;
  for (const auto& [p, idx] : visits) {
    if (idx.size() == 1) continue;
    if (idx.size() > 2) {
      diag.violations.push_back("genericity: point " + point_text(p) + " is visited " + std::to_string(idx.size()) +
                                " times");
      continue;
    }
    ++double_count;
    const int i = idx[0];
    const int j = idx[1];
    if (i == 0 || j == m) {
      diag.violations.push_back("genericity: end point lies on the path at " + point_text(p));
      continue;
    }
    const char in1 = moves[static_cast<std::size_t>(i - 1)];
    const char out1 = moves[static_cast<std::size_t>(i)];
    const char in2 = moves[static_cast<std::size_t>(j - 1)];
    const char out2 = moves[static_cast<std::size_t>(j)];
    const auto horizontal = [](char mv) { return mv == 'L' || mv == 'R'; };
    if (in1 != out1 || in2 != out2 || horizontal(out1) == horizontal(out2)) {
      diag.violations.push_back("genericity: double point " + point_text(p) + " is not a transverse crossing");
    }
  }

  if (static_cast<int>(c.labels.size()) != double_count) {
    diag.violations.push_back("label count: path has " + std::to_string(double_count) + " double points but " +
                              std::to_string(c.labels.size()) + " labels were given");
  }

  std::set<MarkedPoint> seen;
  for (const auto& mk : c.marks) {
    if (mk.step < 0 || mk.step >= m) {
      diag.violations.push_back("mark: step " + std::to_string(mk.step) + " is outside the path");
    } else if (mk.offset < 0) {
      diag.violations.push_back("mark: negative offset on step " + std::to_string(mk.step));
    } else if (!seen.insert(mk).second) {
      diag.violations.push_back("mark: " + std::to_string(mk.step) + ":" + std::to_string(mk.offset) +
                                " is given twice");
    }
  }
}

// Number of independent cycles of the path's image once every marked step
// is cut.
int surviving_cycles(const GridPath& path, const std::vector<MarkedPoint>& marks) {
  const auto pts = path.points();
  std::map<GridPoint, int> id;
  for (const auto& p : pts) id.emplace(p, static_cast<int>(id.size()));
  std::vector<int> parent(id.size());
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&parent](int x) {
    while (parent[static_cast<std::size_t>(x)] != x) {
      parent[static_cast<std::size_t>(x)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
      x = parent[static_cast<std::size_t>(x)];
    }
    return x;
  };
  std::set<int> cut;
  for (const auto& mk : marks) cut.insert(mk.step);
  int cycles = 0;
  for (int i = 0; i + 1 < static_cast<int>(pts.size()); ++i) {
    if (cut.count(i)) continue;
    const int a = find(id[pts[static_cast<std::size_t>(i)]]);
    const int b = find(id[pts[static_cast<std::size_t>(i + 1)]]);
    if (a == b) {
      ++cycles;
    } else {
      parent[static_cast<std::size_t>(a)] = b;
    }
  }
  return cycles;
}

}  // namespace

Diagnostics validate_generic(const LabelledInterval& c) {
  Diagnostics diag;
  check_generic(c, diag);
  return diag;
}

Diagnostics validate(const LabelledInterval& c) {
  Diagnostics diag;
  check_generic(c, diag);
  if (diag.ok()) {
    if (const int k = surviving_cycles(c.path, c.marks); k > 0) {
      diag.violations.push_back("cycle not broken: " + std::to_string(k) +
                                " independent cycle(s) survive after removing the marked points");
    }
  }
  return diag;
}

// ---------------------------------------------------------------- construction

namespace {

// One passage of the band boundary through a crossing. Strand +1 runs along
// the left side of the path in path direction, strand -1 along the right
// side against it.
struct Visit {
  int crossing;
  int strand;
  int u;  // position along the path, in construction units
  bool over;
};

TrackDiagram construct(const LabelledInterval& c, const std::vector<std::array<int, 4>>& quadrant_sign) {
  const auto& moves = c.path.moves;
  const int m = static_cast<int>(moves.size());
  const auto pts = c.path.points();

  auto marks = c.marks;
  std::sort(marks.begin(), marks.end());
  std::map<int, int> per_step;
  int most = 0;
  for (const auto& mk : marks) most = std::max(most, ++per_step[mk.step]);
  const int S = 6 * (most + 1);

  TrackDiagram out;
  out.scale = S;
  if (m == 0) {
    out.outline = {{-1, 1}, {1, 1}, {1, -1}, {-1, -1}};
    return out;
  }

  auto P = [&](int i) { return Vec{S * pts[static_cast<std::size_t>(i)].x, S * pts[static_cast<std::size_t>(i)].y}; };
  auto d_at = [&](int step) { return dir_of(moves[static_cast<std::size_t>(step)]); };

  std::vector<Crossing> xs;
  std::vector<Visit> visits;
  auto add_crossing = [&](int sign, Visit a, Visit b, Vec ta, Vec tb, CrossingOrigin origin) {
    const int id = static_cast<int>(xs.size());
    // A crossing is positive when the over direction turns counterclockwise
    // onto the under direction.
    const int turn = cross(ta, tb) > 0 ? 1 : -1;
    a.over = turn == sign;
    b.over = !a.over;
    a.crossing = b.crossing = id;
    visits.push_back(a);
    visits.push_back(b);
    Crossing x;
    x.sign = sign;
    xs.push_back(x);
    out.origins.push_back(origin);
  };

  const auto dps = double_points(c.path);
  for (std::size_t q = 0; q < dps.size(); ++q) {
    const int k1 = dps[q].first;
    const int k2 = dps[q].second;
    const Vec d1 = d_at(k1);
    const Vec d2 = d_at(k2);
    const Vec n1 = left_normal(d1);
    const Vec n2 = left_normal(d2);
    const auto& signs = quadrant_sign[q];
    // Quadrant 0: ahead along the earlier pass, behind along the later one.
    const Vec front = d1 - d2;
    for (int e1 : {1, -1}) {
      for (int e2 : {1, -1}) {
        const Vec v = e1 * n1 + e2 * n2;
        const int quadrant = mod4(diagonal_index(v) - diagonal_index(front));
        const Vec at = P(k1) + v;
        add_crossing(signs[static_cast<std::size_t>(quadrant)], Visit{0, e1, k1 * S + dot(v, d1), false},
                     Visit{0, e2, k2 * S + dot(v, d2), false}, e1 * d1, e2 * d2,
                     CrossingOrigin{FeatureKind::kDoublePoint, static_cast<int>(q), quadrant, double(at.x),
                                    double(at.y)});
      }
    }
  }

  std::map<int, int> rank;
  for (std::size_t t = 0; t < marks.size(); ++t) {
    const int step = marks[t].step;
    const int centre = 6 * (++rank[step]);
    const Vec d = d_at(step);
    const Vec n = left_normal(d);
    // Left strand dips to the right side and back; the right strand mirrors
    // it, giving two crossings one unit either side of the centre.
    for (int side : {-1, 1}) {
      const int u = step * S + centre + side;
      const Vec at = P(step) + (centre + side) * d;
      const Vec left_dir = side < 0 ? d - n : d + n;
      const Vec right_dir = side < 0 ? (-1) * d - n : (-1) * d + n;
      add_crossing(1, Visit{0, 1, u, false}, Visit{0, -1, u, false}, left_dir, right_dir,
                   CrossingOrigin{FeatureKind::kTwist, static_cast<int>(t), -1, double(at.x), double(at.y)});
    }
  }

  // Traversal: left strand forward, then right strand backward.
  std::vector<Visit> order;
  for (const auto& v : visits) {
    if (v.strand > 0) order.push_back(v);
  }
  std::sort(order.begin(), order.end(), [](const Visit& a, const Visit& b) { return a.u < b.u; });
  const std::size_t left_count = order.size();
  for (const auto& v : visits) {
    if (v.strand < 0) order.push_back(v);
  }
  std::sort(order.begin() + static_cast<std::ptrdiff_t>(left_count), order.end(),
            [](const Visit& a, const Visit& b) { return a.u > b.u; });

  const int n_arcs = static_cast<int>(order.size());
  for (int k = 0; k < n_arcs; ++k) {
    const auto& v = order[static_cast<std::size_t>(k)];
    auto& x = xs[static_cast<std::size_t>(v.crossing)];
    const int in = (k - 1 + n_arcs) % n_arcs;
    const int outgoing = k;
    if (!v.over) {
      x.arcs[0] = in;
      x.arcs[2] = outgoing;
    } else {
      x.arcs[static_cast<std::size_t>(x.over_in_slot())] = in;
      x.arcs[static_cast<std::size_t>(x.over_out_slot())] = outgoing;
    }
  }
  out.diagram = xs.empty() ? PlanarDiagram() : PlanarDiagram(std::move(xs));

  // Outline for rendering.
  auto strand_points = [&](int side) {
    std::vector<std::pair<int, Vec>> ps;
    const Vec d0 = d_at(0);
    ps.push_back({-1, P(0) - d0 + side * left_normal(d0)});
    for (int i = 1; i < m; ++i) {
      const Vec din = d_at(i - 1);
      const Vec dout = d_at(i);
      const Vec off = dot(din, dout) == 1 ? left_normal(din) : left_normal(din) + left_normal(dout);
      ps.push_back({i * S, P(i) + side * off});
    }
    const Vec dl = d_at(m - 1);
    ps.push_back({m * S + 1, P(m) + dl + side * left_normal(dl)});
    std::map<int, int> seen;
    for (const auto& mk : marks) {
      const int centre = 6 * (++seen[mk.step]);
      const Vec d = d_at(mk.step);
      const Vec n = left_normal(d);
      for (int s : {-2, 0, 2}) {
        const int y = s == 0 ? -side : side;
        ps.push_back({mk.step * S + centre + s, P(mk.step) + (centre + s) * d + y * n});
      }
    }
    std::sort(ps.begin(), ps.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    return ps;
  };
  for (const auto& [u, p] : strand_points(1)) out.outline.push_back({double(p.x), double(p.y)});
  auto right = strand_points(-1);
  for (auto it = right.rbegin(); it != right.rend(); ++it) out.outline.push_back({double(it->second.x), double(it->second.y)});
  return out;
}

std::vector<std::array<int, 4>> signs_of(const LabelledInterval& c, const QuadrantConvention& convention) {
  std::vector<std::array<int, 4>> out;
  for (const auto& l : c.labels) out.push_back(quadrant_signs(l, convention));
  return out;
}

void check_postconditions(const LabelledInterval& c, const TrackDiagram& t) {
  int C = 0;
  int D = 0;
  for (const auto& l : c.labels) {
    C += l.type() == LabelType::kC;
    D += l.type() == LabelType::kD;
  }
  const int r = static_cast<int>(c.marks.size());
  const auto& d = t.diagram;
  const int expected_crossings = 4 * static_cast<int>(c.labels.size()) + 2 * r;
  if (d.crossing_count() != expected_crossings) {
    throw std::logic_error("track build: " + std::to_string(d.crossing_count()) + " crossings, expected " +
                           std::to_string(expected_crossings));
  }
  if (writhe(d) != 2 * C + 4 * D + 2 * r) {
    throw std::logic_error("track build: writhe " + std::to_string(writhe(d)) + ", expected 2C+4D+2r = " +
                           std::to_string(2 * C + 4 * D + 2 * r));
  }
  if (d.component_count() != 1) throw std::logic_error("track build: boundary is not a single component");
}

}  // namespace

TrackDiagram build_diagram(const LabelledInterval& c, const QuadrantConvention& convention) {
  const auto diag = validate(c);
  if (!diag.ok()) throw ValidationError(diag.to_string());
  auto t = construct(c, signs_of(c, convention));
  check_postconditions(c, t);
  const int s = seifert_decompose(t.diagram).circle_count();
  const int r = static_cast<int>(c.marks.size());
  if (s != 2 * r + 1) {
    throw std::logic_error("track build: " + std::to_string(s) + " Seifert circles, expected 2r+1 = " +
                           std::to_string(2 * r + 1));
  }
  return t;
}

TrackDiagram build_from_signs(const LabelledInterval& c, const std::vector<std::array<int, 4>>& signs) {
  const auto diag = validate_generic(c);
  if (!diag.ok()) throw ValidationError(diag.to_string());
  if (signs.size() != c.labels.size()) throw ValidationError("one sign pattern per double point is required");
  return construct(c, signs);
}

RelaxedBuild relaxed_build(const LabelledInterval& c, const QuadrantConvention& convention) {
  const auto diag = validate_generic(c);
  if (!diag.ok()) throw ValidationError(diag.to_string());
  auto t = construct(c, signs_of(c, convention));
  check_postconditions(c, t);
  int C = 0;
  int D = 0;
  for (const auto& l : c.labels) {
    C += l.type() == LabelType::kC;
    D += l.type() == LabelType::kD;
  }
  return {std::move(t), C + 2 * D};
}

TrackBounds bounds(const LabelledInterval& c, const QuadrantConvention& convention) {
  const auto t = build_diagram(c, convention);
  TrackBounds b;
  for (const auto& l : c.labels) {
    switch (l.type()) {
      case LabelType::kA: ++b.A; break;
      case LabelType::kB: ++b.B; break;
      case LabelType::kC: ++b.C; break;
      case LabelType::kD: ++b.D; break;
    }
  }
  b.r = static_cast<int>(c.marks.size());
  b.four_genus = b.C + 2 * b.D;
  if (b.B == 0) {
    b.gordian = b.four_genus;
    b.ordinary_genus = b.four_genus;
  }
  const int w = writhe(t.diagram);
  const int s = seifert_decompose(t.diagram).circle_count();
  b.slice_bennequin_bound = (1 - s + w) / 2;
  return b;
}

// ---------------------------------------------------------------- glue

namespace {

struct Box {
  int x0, y0, x1, y1;
};

Box bounding_box(const std::vector<GridPoint>& pts) {
  Box b{pts[0].x, pts[0].y, pts[0].x, pts[0].y};
  for (const auto& p : pts) {
    b.x0 = std::min(b.x0, p.x);
    b.y0 = std::min(b.y0, p.y);
    b.x1 = std::max(b.x1, p.x);
    b.y1 = std::max(b.y1, p.y);
  }
  return b;
}

char move_between(GridPoint a, GridPoint b) {
  if (b.x == a.x + 1 && b.y == a.y) return 'R';
  if (b.x == a.x - 1 && b.y == a.y) return 'L';
  if (b.y == a.y + 1 && b.x == a.x) return 'U';
  if (b.y == a.y - 1 && b.x == a.x) return 'D';
  throw std::logic_error("glue: points are not adjacent");
}

GridPath doubled(const GridPath& p) {
  GridPath out;
  out.start = {2 * p.start.x, 2 * p.start.y};
  for (char m : p.moves) {
    out.moves += m;
    out.moves += m;
  }
  return out;
}

// Shortest lattice route from `from` to the ring one unit outside the
// bounding box of `pts`, avoiding every point of `pts` other than `from`.
std::vector<GridPoint> escape(const std::vector<GridPoint>& pts, GridPoint from) {
  const Box b = bounding_box(pts);
  const Box ring{b.x0 - 1, b.y0 - 1, b.x1 + 1, b.y1 + 1};
  std::set<GridPoint> blocked(pts.begin(), pts.end());
  auto on_ring = [&](GridPoint p) { return p.x == ring.x0 || p.x == ring.x1 || p.y == ring.y0 || p.y == ring.y1; };
  std::map<GridPoint, GridPoint> parent;
  std::deque<GridPoint> queue{from};
  parent.emplace(from, from);
  while (!queue.empty()) {
    const auto p = queue.front();
    queue.pop_front();
    if (on_ring(p)) {
      std::vector<GridPoint> route{p};
      while (!(route.back() == from)) route.push_back(parent.at(route.back()));
      std::reverse(route.begin(), route.end());
      return route;
    }
    for (char m : {'R', 'U', 'L', 'D'}) {
      const auto s = step_vector(m);
      const GridPoint q{p.x + s.x, p.y + s.y};
      if (q.x < ring.x0 || q.x > ring.x1 || q.y < ring.y0 || q.y > ring.y1) continue;
      if (blocked.count(q) || parent.count(q)) continue;
      parent.emplace(q, p);
      queue.push_back(q);
    }
  }
  throw DomainError("glue: end point " + point_text(from) + " is enclosed by its own interval");
}

// Walks the ring rectangle from `from` to `to`, counterclockwise.
std::vector<GridPoint> ring_walk(const Box& ring, GridPoint from, GridPoint to) {
  std::vector<GridPoint> route{from};
  GridPoint p = from;
  while (!(p == to)) {
    if (p.y == ring.y0 && p.x < ring.x1) {
      ++p.x;
    } else if (p.x == ring.x1 && p.y < ring.y1) {
      ++p.y;
    } else if (p.y == ring.y1 && p.x > ring.x0) {
      --p.x;
    } else {
      --p.y;
    }
    route.push_back(p);
  }
  return route;
}

}  // namespace

LabelledInterval glue(const LabelledInterval& c1, const LabelledInterval& c2) {
  for (const auto* c : {&c1, &c2}) {
    const auto d = validate(*c);
    if (!d.ok()) throw ValidationError("glue: " + d.to_string());
  }
  if (c1.path.moves.empty()) return c2;
  if (c2.path.moves.empty()) return c1;

  const GridPath p1 = doubled(c1.path);
  GridPath p2 = doubled(c2.path);
  const auto pts1 = p1.points();
  const Box box1 = bounding_box(pts1);
  const Box ring1{box1.x0 - 1, box1.y0 - 1, box1.x1 + 1, box1.y1 + 1};

  // Place c2 so that its ring starts two columns right of ring1, tops level.
  const Box box2 = bounding_box(p2.points());
  p2.start.x += (ring1.x1 + 2) - (box2.x0 - 1);
  p2.start.y += ring1.y1 - (box2.y1 + 1);
  const auto pts2 = p2.points();
  const Box box2t = bounding_box(pts2);
  const Box ring2{box2t.x0 - 1, box2t.y0 - 1, box2t.x1 + 1, box2t.y1 + 1};

  const auto out1 = escape(pts1, pts1.back());
  auto in2 = escape(pts2, pts2.front());
  std::reverse(in2.begin(), in2.end());

  std::vector<GridPoint> route = out1;
  const auto walk1 = ring_walk(ring1, out1.back(), GridPoint{ring1.x1, ring1.y1});
  route.insert(route.end(), walk1.begin() + 1, walk1.end());
  route.push_back({ring1.x1 + 1, ring1.y1});
  const GridPoint top_left2{ring2.x0, ring2.y1};
  route.push_back(top_left2);
  const auto walk2 = ring_walk(ring2, top_left2, in2.front());
  route.insert(route.end(), walk2.begin() + 1, walk2.end());
  route.insert(route.end(), in2.begin() + 1, in2.end());

  LabelledInterval out;
  out.path.start = p1.start;
  out.path.moves = p1.moves;
  for (std::size_t i = 1; i < route.size(); ++i) out.path.moves += move_between(route[i - 1], route[i]);
  const int shift = static_cast<int>(out.path.moves.size());
  out.path.moves += p2.moves;

  out.labels = c1.labels;
  out.labels.insert(out.labels.end(), c2.labels.begin(), c2.labels.end());
  for (const auto& mk : c1.marks) out.marks.push_back({2 * mk.step, mk.offset});
  for (const auto& mk : c2.marks) out.marks.push_back({shift + 2 * mk.step, mk.offset});

  const auto d = validate(out);
  if (!d.ok()) throw std::logic_error("glue produced an invalid interval: " + d.to_string());
  return out;
}

// ---------------------------------------------------------------- enumeration

void for_each_labelling(const GridPath& shape, const std::vector<MarkedPoint>& marks,
                        const std::function<void(const LabelledInterval&)>& visit) {
  const auto k = double_points(shape).size();
  LabelledInterval c;
  c.path = shape;
  c.marks = marks;
  c.labels.assign(k, DoublePointLabel::all()[0]);
  const auto diag = validate(c);
  if (!diag.ok()) throw ValidationError(diag.to_string());

  const auto& all = DoublePointLabel::all();
  std::vector<std::size_t> digit(k, 0);
  while (true) {
    for (std::size_t i = 0; i < k; ++i) c.labels[i] = all[digit[i]];
    visit(c);
    std::size_t pos = k;
    while (pos > 0 && ++digit[pos - 1] == all.size()) digit[--pos] = 0;
    if (pos == 0) break;
  }
}

std::vector<LabelledInterval> enumerate_labellings(const GridPath& shape, const std::vector<MarkedPoint>& marks) {
  std::vector<LabelledInterval> out;
  for_each_labelling(shape, marks, [&out](const LabelledInterval& c) { out.push_back(c); });
  return out;
}

// ---------------------------------------------------------------- track files

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split_commas(std::string_view s) {
  std::vector<std::string_view> out;
  if (trim(s).empty()) return out;
  std::size_t start = 0;
  while (true) {
    const auto comma = s.find(',', start);
    out.push_back(trim(s.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

int parse_int(std::string_view s, int line) {
  int sign = 1;
  if (!s.empty() && s.front() == '-') {
    sign = -1;
    s.remove_prefix(1);
  }
  if (s.empty()) throw ParseError("expected an integer", line, 1);
  int v = 0;
  for (char ch : s) {
    if (ch < '0' || ch > '9') throw ParseError("expected an integer, found '" + std::string(s) + "'", line, 1);
    v = v * 10 + (ch - '0');
  }
  return sign * v;
}

}  // namespace

LabelledInterval parse_track(std::string_view text) {
  LabelledInterval c;
  bool have_path = false;
  int line = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto nl = text.find('\n', pos);
    const auto raw = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++line;
    const auto body = trim(raw);
    if (body.empty() || body.front() == '#') continue;
    const auto eq = body.find('=');
    if (eq == std::string_view::npos) throw ParseError("expected 'key = value'", line, 1);
    const auto key = trim(body.substr(0, eq));
    const auto value = trim(body.substr(eq + 1));
    const int col = static_cast<int>(raw.find(value.empty() ? "=" : value)) + 1;
    if (key == "path") {
      for (std::size_t i = 0; i < value.size(); ++i) {
        if (!is_move(value[i])) {
          throw ParseError("unknown move '" + std::string(1, value[i]) + "'", line, col + static_cast<int>(i));
        }
      }
      c.path.moves = std::string(value);
      have_path = true;
    } else if (key == "start") {
      const auto parts = split_commas(value);
      if (parts.size() != 2) throw ParseError("start needs two coordinates", line, col);
      c.path.start = {parse_int(parts[0], line), parse_int(parts[1], line)};
    } else if (key == "labels") {
      for (const auto sym : split_commas(value)) {
        try {
          c.labels.push_back(DoublePointLabel::parse(sym));
        } catch (const ParseError&) {
          throw ParseError("unknown label '" + std::string(sym) + "'", line, col);
        }
      }
    } else if (key == "marks") {
      for (const auto item : split_commas(value)) {
        const auto colon = item.find(':');
        MarkedPoint mk;
        mk.step = parse_int(trim(item.substr(0, colon)), line);
        if (colon != std::string_view::npos) mk.offset = parse_int(trim(item.substr(colon + 1)), line);
        c.marks.push_back(mk);
      }
    } else {
      throw ParseError("unknown key '" + std::string(key) + "'", line, 1);
    }
  }
  if (!have_path) throw ParseError("missing 'path' line");
  return c;
}

std::string emit_track(const LabelledInterval& c) {
  std::ostringstream out;
  out << "path = " << c.path.moves << '\n';
  if (!(c.path.start == GridPoint{})) out << "start = " << c.path.start.x << ", " << c.path.start.y << '\n';
  out << "labels = ";
  for (std::size_t i = 0; i < c.labels.size(); ++i) out << (i ? ", " : "") << c.labels[i].symbol();
  out << "\nmarks = ";
  for (std::size_t i = 0; i < c.marks.size(); ++i) {
    out << (i ? ", " : "") << c.marks[i].step;
    if (c.marks[i].offset != 0) out << ':' << c.marks[i].offset;
  }
  out << '\n';
  return out.str();
}

LabelledInterval load_track_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open track file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  try {
    return parse_track(buf.str());
  } catch (const ParseError& e) {
    throw ParseError(path + ": " + e.what());
  }
}

}  // namespace trackforge
