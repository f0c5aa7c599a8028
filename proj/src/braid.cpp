#include "trackforge/braid.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <stdexcept>

#include "trackforge/error.hpp"

namespace trackforge {

int BraidWord::exponent_sum() const {
  int s = 0;
  for (const auto& l : letters) s += l.sign;
  return s;
}

std::string BraidWord::to_string() const {
  std::string out;
  for (const auto& l : letters) {
    const char base = l.sign > 0 ? 'a' : 'A';
    out += static_cast<char>(base + l.generator - 1);
  }
  return out;
}

BraidWord parse_braid(std::string_view text, std::optional<int> strands) {
  BraidWord b;
  int max_gen = 0;
  int column = 0;
  for (char ch : text) {
    ++column;
    if (std::isspace(static_cast<unsigned char>(ch))) continue;
    if (ch >= 'a' && ch <= 'z') {
      b.letters.push_back({ch - 'a' + 1, 1});
    } else if (ch >= 'A' && ch <= 'Z') {
      b.letters.push_back({ch - 'A' + 1, -1});
    } else {
      throw ParseError(std::string("unexpected character '") + ch + "' in braid word", 1, column);
    }
    max_gen = std::max(max_gen, b.letters.back().generator);
  }
  b.strands = strands.value_or(max_gen + 1);
  if (b.strands < max_gen + 1) {
    throw DomainError("braid word uses generator " + std::to_string(max_gen) + " but has only " +
                      std::to_string(b.strands) + " strands");
  }
  return b;
}

BraidWord inverse(const BraidWord& b) {
  BraidWord out{b.strands, {}};
  for (auto it = b.letters.rbegin(); it != b.letters.rend(); ++it) out.letters.push_back({it->generator, -it->sign});
  return out;
}

BraidWord free_reduce(const BraidWord& b) {
  BraidWord out{b.strands, {}};
  for (const auto& l : b.letters) {
    if (!out.letters.empty() && out.letters.back().generator == l.generator && out.letters.back().sign == -l.sign) {
      out.letters.pop_back();
    } else {
      out.letters.push_back(l);
    }
  }
  return out;
}

PlanarDiagram closure(const BraidWord& b) {
  const int n = b.strands;
  std::vector<int> top(static_cast<std::size_t>(n));
  std::iota(top.begin(), top.end(), 0);
  int next = n;
  std::vector<Crossing> xs;
  for (const auto& l : b.letters) {
    const auto i = static_cast<std::size_t>(l.generator - 1);
    const int left = top[i];
    const int right = top[i + 1];
    const int out_left = next++;
    const int out_right = next++;
    if (l.sign > 0) {
      // over strand: bottom-left to top-right
      xs.push_back(Crossing{{right, out_right, out_left, left}, 1});
    } else {
      // over strand: bottom-right to top-left
      xs.push_back(Crossing{{left, right, out_right, out_left}, -1});
    }
    top[i] = out_left;
    top[i + 1] = out_right;
  }
  // Close: the top arc of each position is the bottom arc of the same position.
  std::vector<int> rep(static_cast<std::size_t>(next));
  std::iota(rep.begin(), rep.end(), 0);
  int loops = 0;
  for (int p = 0; p < n; ++p) {
    if (top[static_cast<std::size_t>(p)] == p) {
      ++loops;
    } else {
      rep[static_cast<std::size_t>(top[static_cast<std::size_t>(p)])] = p;
    }
  }
  std::map<int, int> compact;
  for (auto& x : xs) {
    for (auto& a : x.arcs) {
      a = compact.try_emplace(rep[static_cast<std::size_t>(a)], static_cast<int>(compact.size())).first->second;
    }
  }
  return canonicalize(PlanarDiagram(std::move(xs), loops));
}

namespace {

using Perm = std::vector<signed char>;
using HeckeElement = std::map<Perm, LaurentPoly2>;

// x * T_i, using T_i^2 = v^2 + v z T_i.
HeckeElement times_generator(const HeckeElement& x, int i) {
  HeckeElement out;
  const auto a = static_cast<std::size_t>(i);
  for (const auto& [perm, coef] : x) {
    Perm swapped = perm;
    std::swap(swapped[a], swapped[a + 1]);
    if (perm[a] < perm[a + 1]) {
      out[swapped] += coef;
    } else {
      out[swapped].add_scaled(coef, 1, 2, 0);
      out[perm].add_scaled(coef, 1, 1, 1);
    }
  }
  std::erase_if(out, [](const auto& kv) { return kv.second.is_zero(); });
  return out;
}

// x * T_i^-1 = v^-2 x T_i - v^-1 z x.
HeckeElement times_inverse_generator(const HeckeElement& x, int i) {
  HeckeElement out;
  for (const auto& [perm, coef] : times_generator(x, i)) out[perm].add_scaled(coef, 1, -2, 0);
  for (const auto& [perm, coef] : x) out[perm].add_scaled(coef, -1, -1, 1);
  std::erase_if(out, [](const auto& kv) { return kv.second.is_zero(); });
  return out;
}

class MarkovTrace {
 public:
  // Trace of the basis element T_perm in H_m, m = perm.size().
  const LaurentPoly2& basis(const Perm& perm) {
    if (auto it = memo_.find(perm); it != memo_.end()) return it->second;
    const int m = static_cast<int>(perm.size());
    LaurentPoly2 value;
    if (m == 1) {
      value = LaurentPoly2(1);
    } else if (perm.back() == m - 1) {
      value = LaurentPoly2::delta() * basis(Perm(perm.begin(), perm.end() - 1));
    } else {
      // T_perm = T_rest T_{m-1} T_{m-2} ... T_k (1-based), with `rest` the
      // permutation without its largest entry; the first factor T_{m-1}
      // is absorbed by the Markov property.
      const int k = static_cast<int>(std::find(perm.begin(), perm.end(), m - 1) - perm.begin()) + 1;
      Perm rest;
      for (auto e : perm) {
        if (e != m - 1) rest.push_back(e);
      }
      HeckeElement x{{rest, LaurentPoly2(1)}};
      for (int g = m - 2; g >= k; --g) x = times_generator(x, g - 1);
      value = trace(x);
    }
    return memo_.emplace(perm, std::move(value)).first->second;
  }

  LaurentPoly2 trace(const HeckeElement& x) {
    LaurentPoly2 out;
    for (const auto& [perm, coef] : x) out += coef * basis(perm);
    return out;
  }

 private:
  std::map<Perm, LaurentPoly2> memo_;
};

}  // namespace

LaurentPoly2 closure_homfly(const BraidWord& b) {
  Perm id(static_cast<std::size_t>(b.strands));
  std::iota(id.begin(), id.end(), static_cast<signed char>(0));
  HeckeElement x{{id, LaurentPoly2(1)}};
  for (const auto& l : b.letters) {
    x = l.sign > 0 ? times_generator(x, l.generator - 1) : times_inverse_generator(x, l.generator - 1);
  }
  MarkovTrace trace;
  return trace.trace(x);
}

BraidWord Band::expanded() const {
  BraidWord out = conjugator;
  out.letters.push_back({generator, 1});
  for (const auto& l : inverse(conjugator).letters) out.letters.push_back(l);
  return out;
}

bool Band::is_embedded() const {
  const auto& u = conjugator.letters;
  const int first = generator - static_cast<int>(u.size());
  for (std::size_t t = 0; t < u.size(); ++t) {
    if (u[t].sign != 1 || u[t].generator != first + static_cast<int>(t)) return false;
  }
  return first >= 1;
}

bool QPWord::strongly_quasipositive() const {
  return std::all_of(bands.begin(), bands.end(), [](const Band& b) { return b.is_embedded(); });
}

std::optional<std::vector<Band>> decompose_bands(const BraidWord& word) {
  const auto& w = word.letters;
  const int n = static_cast<int>(w.size());
  // choice(i, j): -2 unknown, -1 impossible, 0 empty, 1 core at i,
  // k >= 2 means w[i] is closed by its inverse at position i + k - 1.
  std::vector<int> choice(static_cast<std::size_t>((n + 1) * (n + 1)), -2);
  auto at = [&](int i, int j) -> int& { return choice[static_cast<std::size_t>(i * (n + 1) + j)]; };
  std::function<bool(int, int)> solve = [&](int i, int j) -> bool {
    int& c = at(i, j);
    if (c != -2) return c >= 0;
    if (i == j) return (c = 0), true;
    if (w[static_cast<std::size_t>(i)].sign > 0 && solve(i + 1, j)) return (c = 1), true;
    for (int k = i + 1; k < j; ++k) {
      const auto& open = w[static_cast<std::size_t>(i)];
      const auto& close = w[static_cast<std::size_t>(k)];
      if (close.generator == open.generator && close.sign == -open.sign && solve(i + 1, k) && solve(k + 1, j)) {
        return (c = k - i + 1), true;
      }
    }
    c = -1;
    return false;
  };
  if (!solve(0, n)) return std::nullopt;

  std::vector<Band> bands;
  BraidWord stack{word.strands, {}};
  std::function<void(int, int)> emit = [&](int i, int j) {
    while (i < j) {
      const int c = at(i, j);
      if (c == 1) {
        bands.push_back(Band{stack, w[static_cast<std::size_t>(i)].generator});
        ++i;
      } else {
        const int k = i + c - 1;
        stack.letters.push_back(w[static_cast<std::size_t>(i)]);
        emit(i + 1, k);
        stack.letters.pop_back();
        i = k + 1;
      }
    }
  };
  emit(0, n);
  return bands;
}

bool bands_valid(const BraidWord& word, const std::vector<Band>& bands) {
  BraidWord product{word.strands, {}};
  for (const auto& band : bands) {
    if (band.generator < 1 || band.generator >= word.strands) return false;
    for (const auto& l : band.expanded().letters) product.letters.push_back(l);
  }
  return free_reduce(product).letters == free_reduce(word).letters;
}

QPWord parse_qp(std::string_view text, std::optional<int> strands) {
  std::vector<std::pair<std::size_t, std::size_t>> segments;  // [begin, end) in letters
  std::string letters;
  int depth = 0;
  std::size_t group_start = 0;
  int column = 0;
  for (char ch : text) {
    ++column;
    if (std::isspace(static_cast<unsigned char>(ch))) continue;
    if (ch == '(') {
      if (depth++ == 0) group_start = letters.size();
    } else if (ch == ')') {
      if (depth == 0) throw ParseError("unbalanced ')' in braid word", 1, column);
      if (--depth == 0) segments.push_back({group_start, letters.size()});
    } else if (std::isalpha(static_cast<unsigned char>(ch))) {
      if (depth == 0) segments.push_back({letters.size(), letters.size() + 1});
      letters += ch;
    } else {
      throw ParseError(std::string("unexpected character '") + ch + "' in braid word", 1, column);
    }
  }
  if (depth != 0) throw ParseError("unbalanced '(' in braid word", 1, column);

  QPWord q;
  q.word = parse_braid(letters, strands);
  auto slice = [&](std::size_t b, std::size_t e) {
    BraidWord part{q.word.strands, {}};
    part.letters.assign(q.word.letters.begin() + static_cast<long>(b), q.word.letters.begin() + static_cast<long>(e));
    return part;
  };
  bool grouped = true;
  for (auto [b, e] : segments) {
    auto part = decompose_bands(slice(b, e));
    if (!part) {
      grouped = false;
      break;
    }
    q.bands.insert(q.bands.end(), part->begin(), part->end());
  }
  if (!grouped) {
    auto whole = decompose_bands(q.word);
    if (!whole) {
      throw DomainError("no quasipositive band factorization found; residual word " +
                        free_reduce(q.word).to_string());
    }
    q.bands = std::move(*whole);
  }
  return q;
}

int qp_genus(const QPWord& q) {
  // Closure components are the cycles of the braid permutation.
  std::vector<int> perm(static_cast<std::size_t>(q.word.strands));
  std::iota(perm.begin(), perm.end(), 0);
  for (const auto& l : q.word.letters) {
    std::swap(perm[static_cast<std::size_t>(l.generator - 1)], perm[static_cast<std::size_t>(l.generator)]);
  }
  std::vector<bool> seen(perm.size(), false);
  int cycles = 0;
  for (std::size_t s = 0; s < perm.size(); ++s) {
    if (seen[s]) continue;
    ++cycles;
    for (auto t = s; !seen[t]; t = static_cast<std::size_t>(perm[t])) seen[t] = true;
  }
  if (cycles != 1) throw DomainError("closure has " + std::to_string(cycles) + " components, not a knot");
  const int twice = static_cast<int>(q.bands.size()) - q.word.strands + 1;
  if (twice % 2 != 0 || twice < 0) throw DomainError("band count inconsistent with a knot closure");
  return twice / 2;
}

}  // namespace trackforge

namespace trackforge {

namespace {

// Pushes arc `a` across the face on the left of its dart and over arc `b`,
// which bounds the same face. `along` says whether both darts run with
// their arcs. Two crossings of opposite sign are appended; returns them as
// (positive, negative).
std::pair<int, int> push_across(std::vector<Crossing>& xs, const PlanarDiagram& d, int a, int b, bool along) {
  const int n = d.crossing_count();
  const int am = 2 * n;
  const int a2 = 2 * n + 1;
  const int bm = 2 * n + 2;
  const int b2 = 2 * n + 3;
  const auto ha = d.head(a);
  const auto hb = d.head(b);
  xs[static_cast<std::size_t>(ha.crossing)].arcs[static_cast<std::size_t>(ha.slot)] = a2;
  xs[static_cast<std::size_t>(hb.crossing)].arcs[static_cast<std::size_t>(hb.slot)] = b2;
  if (along) {
    xs.push_back(Crossing{{bm, am, b2, a}, 1});
    xs.push_back(Crossing{{b, am, bm, a2}, -1});
    return {n, n + 1};
  }
  xs.push_back(Crossing{{bm, a, b2, am}, -1});
  xs.push_back(Crossing{{b, a2, bm, am}, 1});
  return {n + 1, n};
}

struct Defect {
  int a = -1;
  int b = -1;
  bool along = false;
};

// First face, by lowest pair of circle ids, where two different Seifert
// circles run the same way around it.
std::optional<Defect> find_defect(const PlanarDiagram& d, const SeifertDecomposition& s) {
  std::optional<Defect> best;
  std::pair<int, int> best_key{0, 0};
  for (const auto& face : faces(d)) {
    for (std::size_t i = 0; i < face.size(); ++i) {
      for (std::size_t j = i + 1; j < face.size(); ++j) {
        if (face[i].along != face[j].along) continue;
        const int ci = s.circle_of_arc[static_cast<std::size_t>(face[i].arc)];
        const int cj = s.circle_of_arc[static_cast<std::size_t>(face[j].arc)];
        if (ci == cj) continue;
        const std::pair<int, int> key{std::min(ci, cj), std::max(ci, cj)};
        if (!best || key < best_key) {
          best = Defect{face[i].arc, face[j].arc, face[i].along};
          best_key = key;
        }
      }
    }
  }
  return best;
}

// Reads the braid off a diagram whose Seifert circles are coherently nested.
// A ray from the face inside the innermost circle to the face outside the
// outermost one cuts every circle once; crossings are then ordered by angle
// around the ray.
void read_braid(BraidReading& r) {
  const auto& d = r.diagram;
  const auto s = seifert_decompose(d);
  const auto fs = faces(d);
  std::map<std::pair<int, bool>, int> face_of_dart;
  int start = -1;
  for (int f = 0; f < static_cast<int>(fs.size()); ++f) {
    bool against = false;
    for (const auto& dart : fs[static_cast<std::size_t>(f)]) {
      face_of_dart[{dart.arc, dart.along}] = f;
      against = against || !dart.along;
    }
    if (!against) {
      if (start >= 0) throw std::logic_error("braid read-off: two innermost faces");
      start = f;
    }
  }
  if (start < 0) throw std::logic_error("braid read-off: no innermost face");

  std::vector<int> level(static_cast<std::size_t>(s.circle_count()), -1);
  std::vector<int> cut(static_cast<std::size_t>(s.circle_count()), -1);
  int face = start;
  for (int k = 0; k < s.circle_count(); ++k) {
    const Dart* along = nullptr;
    for (const auto& dart : fs[static_cast<std::size_t>(face)]) {
      if (dart.along) {
        along = &dart;
        break;
      }
    }
    if (along == nullptr) throw std::logic_error("braid read-off: circles are not nested");
    const int circle = s.circle_of_arc[static_cast<std::size_t>(along->arc)];
    if (level[static_cast<std::size_t>(circle)] >= 0) throw std::logic_error("braid read-off: ray meets a circle twice");
    level[static_cast<std::size_t>(circle)] = k;
    cut[static_cast<std::size_t>(circle)] = along->arc;
    face = face_of_dart.at({along->arc, false});
  }

  // Each circle, cut at the ray, orders its crossings; merge the orders.
  const int n = d.crossing_count();
  std::vector<std::vector<int>> after(static_cast<std::size_t>(n));
  std::vector<int> indegree(static_cast<std::size_t>(n), 0);
  for (int c = 0; c < s.circle_count(); ++c) {
    auto arcs = s.circles[static_cast<std::size_t>(c)];
    std::rotate(arcs.begin(), std::find(arcs.begin(), arcs.end(), cut[static_cast<std::size_t>(c)]), arcs.end());
    for (std::size_t k = 0; k + 1 < arcs.size(); ++k) {
      const int from = d.head(arcs[k]).crossing;
      const int to = d.head(arcs[k + 1]).crossing;
      after[static_cast<std::size_t>(from)].push_back(to);
      ++indegree[static_cast<std::size_t>(to)];
    }
  }
  std::set<int> ready;
  for (int c = 0; c < n; ++c) {
    if (indegree[static_cast<std::size_t>(c)] == 0) ready.insert(c);
  }
  r.braid = BraidWord{s.circle_count(), {}};
  r.letter_of.assign(static_cast<std::size_t>(n), -1);
  while (!ready.empty()) {
    const int c = *ready.begin();
    ready.erase(ready.begin());
    const auto& arc = s.graph[static_cast<std::size_t>(c)];
    const int la = level[static_cast<std::size_t>(arc.circle_a)];
    const int lb = level[static_cast<std::size_t>(arc.circle_b)];
    if (std::abs(la - lb) != 1) throw std::logic_error("braid read-off: crossing joins non-adjacent circles");
    r.letter_of[static_cast<std::size_t>(c)] = static_cast<int>(r.braid.letters.size());
    r.braid.letters.push_back({std::min(la, lb) + 1, arc.sign});
    for (int next : after[static_cast<std::size_t>(c)]) {
      if (--indegree[static_cast<std::size_t>(next)] == 0) ready.insert(next);
    }
  }
  if (static_cast<int>(r.braid.letters.size()) != n) throw std::logic_error("braid read-off: inconsistent crossing order");
}

// Cancels x ... x^-1 across letters that commute with x (generators at
// distance two or more). Returns true if the word reduces to nothing.
bool trivial_by_far_commutation(const std::vector<BraidLetter>& word) {
  std::vector<BraidLetter> out;
  for (const auto& y : word) {
    bool cancelled = false;
    for (auto j = out.size(); j-- > 0;) {
      if (out[j].generator == y.generator && out[j].sign == -y.sign) {
        out.erase(out.begin() + static_cast<long>(j));
        cancelled = true;
        break;
      }
      if (std::abs(out[j].generator - y.generator) < 2) break;
    }
    if (!cancelled) out.push_back(y);
  }
  return out.empty();
}

bool connected(const PlanarDiagram& d) {
  if (d.free_loops() > 0 || d.crossing_count() == 0) return false;
  std::vector<int> parent(static_cast<std::size_t>(d.crossing_count()));
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int x) {
    return parent[static_cast<std::size_t>(x)] == x ? x : parent[static_cast<std::size_t>(x)] = find(parent[static_cast<std::size_t>(x)]);
  };
  for (int a = 0; a < d.arc_count(); ++a) parent[static_cast<std::size_t>(find(d.head(a).crossing))] = find(d.tail(a).crossing);
  for (int c = 0; c < d.crossing_count(); ++c) {
    if (find(c) != find(0)) return false;
  }
  return true;
}

}  // namespace

BraidReading braid_reading(const PlanarDiagram& d, int crossing_cap) {
  if (d.crossing_count() > crossing_cap) {
    throw ResourceError("braiding: diagram has " + std::to_string(d.crossing_count()) + " crossings, cap is " +
                        std::to_string(crossing_cap));
  }
  BraidReading r{d, {}, {}, {}, 0};
  if (d.crossing_count() == 0 && d.free_loops() == 1) {
    r.braid = BraidWord{1, {}};
    return r;
  }
  if (!connected(d)) throw DomainError("braiding needs a connected diagram");
  const int circles = seifert_decompose(d).circle_count();
  const int move_cap = 4 * circles * circles + 4 * d.crossing_count() + 16;
  while (true) {
    const auto s = seifert_decompose(r.diagram);
    const auto defect = find_defect(r.diagram, s);
    if (!defect) break;
    if (++r.moves > move_cap) throw ResourceError("braiding: move cap exceeded");
    auto xs = r.diagram.crossings();
    r.added_pairs.push_back(push_across(xs, r.diagram, defect->a, defect->b, defect->along));
    r.diagram = PlanarDiagram(std::move(xs), r.diagram.free_loops());
  }
  read_braid(r);
  return r;
}

BraidWord yamada_braid(const PlanarDiagram& d, int crossing_cap) { return braid_reading(d, crossing_cap).braid; }

QPWord qp_diagram_to_braid(const PlanarDiagram& d, const Pairing& certificate, int crossing_cap) {
  if (const auto errors = check_pairing(d, certificate); !errors.empty()) {
    throw DomainError("not a quasipositivity certificate: " + errors.front());
  }
  const auto r = braid_reading(d, crossing_cap);
  const auto& w = r.braid.letters;

  std::vector<bool> single(w.size(), false);
  for (int id : certificate.singles) single[static_cast<std::size_t>(r.letter_of[static_cast<std::size_t>(id)])] = true;

  // With the singles removed the word must collapse; each single then
  // becomes a band conjugated by the paired letters in front of it.
  std::vector<BraidLetter> paired;
  QPWord q;
  q.word = BraidWord{r.braid.strands, {}};
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (!single[i]) {
      paired.push_back(w[i]);
      continue;
    }
    Band band{free_reduce(BraidWord{r.braid.strands, paired}), w[i].generator};
    for (const auto& l : band.expanded().letters) q.word.letters.push_back(l);
    q.bands.push_back(std::move(band));
  }
  if (!trivial_by_far_commutation(paired)) {
    throw DomainError("certificate did not survive braiding: paired letters leave " +
                      free_reduce(BraidWord{r.braid.strands, paired}).to_string());
  }
  q.word = free_reduce(q.word);
  if (!bands_valid(q.word, q.bands)) throw DomainError("band product does not match the braid word");
  return q;
}

}  // namespace trackforge
