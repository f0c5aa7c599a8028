#include "trackforge/quasipos.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <map>
#include <set>
#include <stdexcept>

#include "trackforge/error.hpp"

namespace trackforge {

namespace {

std::pair<int, int> circle_pair(const SeifertDecomposition& s, int crossing) {
  const auto& arc = s.graph[static_cast<std::size_t>(crossing)];
  return std::minmax(arc.circle_a, arc.circle_b);
}

// True if two pairs, given as positions along one circle, interleave.
bool interleaved(int a1, int a2, int b1, int b2) {
  if (a1 > a2) std::swap(a1, a2);
  const bool b1_in = a1 < b1 && b1 < a2;
  const bool b2_in = a1 < b2 && b2 < a2;
  return b1_in != b2_in;
}

// Position of every crossing along every circle it touches.
std::vector<std::map<int, int>> positions(const SeifertDecomposition& s) {
  std::vector<std::map<int, int>> pos(s.crossings_along.size());
  for (std::size_t c = 0; c < s.crossings_along.size(); ++c) {
    const auto& along = s.crossings_along[c];
    for (std::size_t k = 0; k < along.size(); ++k) pos[c].emplace(along[k], static_cast<int>(k));
  }
  return pos;
}

bool pairs_compatible(const SeifertDecomposition& s, const std::vector<std::map<int, int>>& pos,
                      std::pair<int, int> p, std::pair<int, int> q) {
  const auto [ca, cb] = circle_pair(s, p.first);
  for (int circle : {ca, cb}) {
    const auto& at = pos[static_cast<std::size_t>(circle)];
    if (!at.count(q.first) || !at.count(q.second)) continue;
    if (interleaved(at.at(p.first), at.at(p.second), at.at(q.first), at.at(q.second))) return false;
  }
  return true;
}

Pairing normalized(Pairing p) {
  std::sort(p.singles.begin(), p.singles.end());
  std::sort(p.pairs.begin(), p.pairs.end());
  return p;
}

}  // namespace

std::vector<std::string> check_pairing(const PlanarDiagram& d, const Pairing& p) {
  std::vector<std::string> errors;
  const int n = d.crossing_count();
  std::vector<int> used(static_cast<std::size_t>(n), 0);
  auto touch = [&](int id) {
    if (id < 0 || id >= n) {
      errors.push_back("crossing " + std::to_string(id + 1) + " does not exist");
      return false;
    }
    ++used[static_cast<std::size_t>(id)];
    return true;
  };
  for (int id : p.singles) {
    if (touch(id) && d.crossing(id).sign < 0) {
      errors.push_back("single crossing " + std::to_string(id + 1) + " is negative");
    }
  }
  const auto s = seifert_decompose(d);
  for (const auto& [a, b] : p.pairs) {
    const bool ok = touch(a) & touch(b);
    if (!ok) continue;
    if (d.crossing(a).sign + d.crossing(b).sign != 0) {
      errors.push_back("pair (" + std::to_string(a + 1) + "," + std::to_string(b + 1) +
                       ") is not one positive and one negative crossing");
    }
    if (circle_pair(s, a) != circle_pair(s, b)) {
      errors.push_back("pair (" + std::to_string(a + 1) + "," + std::to_string(b + 1) +
                       ") does not join the same two Seifert circles");
    }
  }
  for (int id = 0; id < n; ++id) {
    if (used[static_cast<std::size_t>(id)] != 1) {
      errors.push_back("crossing " + std::to_string(id + 1) + " is used " +
                       std::to_string(used[static_cast<std::size_t>(id)]) + " times");
    }
  }
  if (!errors.empty()) return errors;

  // Interleaving is tested along each circle directly from the cyclic
  // crossing order.
  for (std::size_t c = 0; c < s.crossings_along.size(); ++c) {
    const auto& along = s.crossings_along[c];
    std::map<int, int> pair_of;
    for (std::size_t k = 0; k < p.pairs.size(); ++k) {
      pair_of[p.pairs[k].first] = static_cast<int>(k);
      pair_of[p.pairs[k].second] = static_cast<int>(k);
    }
    std::vector<int> seq;
    for (int x : along) {
      if (auto it = pair_of.find(x); it != pair_of.end()) seq.push_back(it->second);
    }
    // A cyclic sequence in which each pair appears twice is non-interleaved
    // exactly when it reduces to nothing by deleting adjacent equal entries.
    std::vector<int> stack;
    for (int x : seq) {
      if (!stack.empty() && stack.back() == x) {
        stack.pop_back();
      } else {
        stack.push_back(x);
      }
    }
    if (!stack.empty()) {
      errors.push_back("pairs interleave along Seifert circle " + std::to_string(c + 1));
    }
  }
  return errors;
}

std::optional<Pairing> find_certificate(const PlanarDiagram& d, int crossing_cap) {
  if (d.crossing_count() > crossing_cap) {
    throw ResourceError("certificate search: diagram has " + std::to_string(d.crossing_count()) +
                        " crossings, cap is " + std::to_string(crossing_cap));
  }
  const auto s = seifert_decompose(d);
  const auto pos = positions(s);
  std::vector<int> negatives;
  std::vector<int> positives;
  for (int id = 0; id < d.crossing_count(); ++id) (d.crossing(id).sign < 0 ? negatives : positives).push_back(id);

  std::vector<bool> taken(static_cast<std::size_t>(d.crossing_count()), false);
  std::vector<std::pair<int, int>> chosen;
  std::function<bool(std::size_t)> search = [&](std::size_t k) {
    if (k == negatives.size()) return true;
    const int neg = negatives[k];
    for (int cand : positives) {
      if (taken[static_cast<std::size_t>(cand)] || circle_pair(s, cand) != circle_pair(s, neg)) continue;
      const std::pair<int, int> pr{cand, neg};
      bool ok = true;
      for (const auto& other : chosen) {
        if (!pairs_compatible(s, pos, pr, other)) {
          ok = false;
          break;
        }
      }
      if (!ok) continue;
      taken[static_cast<std::size_t>(cand)] = true;
      chosen.push_back(pr);
      if (search(k + 1)) return true;
      chosen.pop_back();
      taken[static_cast<std::size_t>(cand)] = false;
    }
    return false;
  };
  if (!search(0)) return std::nullopt;

  Pairing out;
  out.pairs = chosen;
  for (int id : positives) {
    if (!taken[static_cast<std::size_t>(id)]) out.singles.push_back(id);
  }
  return normalized(out);
}

Pairing track_certificate(const LabelledInterval& c, const TrackDiagram& t) {
  const auto& d = t.diagram;
  std::map<int, std::vector<int>> by_point;
  Pairing out;
  for (int id = 0; id < d.crossing_count(); ++id) {
    const auto& o = t.origins[static_cast<std::size_t>(id)];
    if (o.kind == FeatureKind::kDoublePoint) {
      by_point[o.feature].push_back(id);
    } else {
      out.singles.push_back(id);
    }
  }
  const auto s = seifert_decompose(d);
  const auto pos = positions(s);
  for (const auto& [point, ids] : by_point) {
    std::vector<int> neg;
    std::vector<int> plus;
    for (int id : ids) (d.crossing(id).sign < 0 ? neg : plus).push_back(id);
    // At most two negatives per double point: try the few matchings.
    std::vector<std::pair<int, int>> best;
    std::vector<int> perm = plus;
    std::sort(perm.begin(), perm.end());
    bool found = false;
    do {
      std::vector<std::pair<int, int>> trial;
      bool ok = true;
      for (std::size_t k = 0; k < neg.size() && ok; ++k) {
        const std::pair<int, int> pr{perm[k], neg[k]};
        ok = circle_pair(s, pr.first) == circle_pair(s, pr.second);
        for (const auto& q : trial) ok = ok && pairs_compatible(s, pos, pr, q);
        for (const auto& q : out.pairs) ok = ok && pairs_compatible(s, pos, pr, q);
        trial.push_back(pr);
      }
      if (ok) {
        best = trial;
        found = true;
      }
    } while (!found && std::next_permutation(perm.begin(), perm.end()));
    if (!found) {
      throw std::logic_error("track certificate: no pairing at double point " + std::to_string(point) + " of " +
                             emit_track(c));
    }
    std::set<int> paired;
    for (const auto& pr : best) {
      out.pairs.push_back(pr);
      paired.insert(pr.first);
    }
    for (int id : plus) {
      if (!paired.count(id)) out.singles.push_back(id);
    }
  }
  out = normalized(out);
  if (const auto errors = check_pairing(d, out); !errors.empty()) {
    throw std::logic_error("track certificate rejected: " + errors.front());
  }
  return out;
}

std::string to_string(const Pairing& p) {
  std::string out = "singles: [";
  for (std::size_t i = 0; i < p.singles.size(); ++i) out += (i ? ", " : "") + std::to_string(p.singles[i] + 1);
  out += "]; pairs: [";
  for (std::size_t i = 0; i < p.pairs.size(); ++i) {
    out += (i ? ", (" : "(") + std::to_string(p.pairs[i].first + 1) + "," + std::to_string(p.pairs[i].second + 1) + ")";
  }
  return out + "]";
}

Pairing parse_pairing(std::string_view text) {
  std::size_t i = 0;
  auto fail = [&](const std::string& what) { throw ParseError(what, 1, static_cast<int>(i) + 1); };
  auto skip = [&] {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  };
  auto expect = [&](std::string_view word) {
    skip();
    if (text.substr(i, word.size()) != word) fail("expected '" + std::string(word) + "'");
    i += word.size();
  };
  auto number = [&] {
    skip();
    if (i >= text.size() || !std::isdigit(static_cast<unsigned char>(text[i]))) fail("expected a crossing id");
    int v = 0;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) v = v * 10 + (text[i++] - '0');
    if (v < 1) fail("crossing ids start at 1");
    return v - 1;
  };
  auto peek = [&](char ch) {
    skip();
    return i < text.size() && text[i] == ch;
  };

  Pairing p;
  expect("singles:");
  expect("[");
  if (!peek(']')) {
    p.singles.push_back(number());
    while (peek(',')) {
      ++i;
      p.singles.push_back(number());
    }
  }
  expect("]");
  expect(";");
  expect("pairs:");
  expect("[");
  if (!peek(']')) {
    while (true) {
      expect("(");
      const int a = number();
      expect(",");
      const int b = number();
      expect(")");
      p.pairs.emplace_back(a, b);
      if (!peek(',')) break;
      ++i;
    }
  }
  expect("]");
  skip();
  if (i != text.size()) fail("trailing text");
  return normalized(p);
}

}  // namespace trackforge
