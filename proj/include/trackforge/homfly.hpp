#pragma once

#include <mutex>
#include <string>
#include <unordered_map>

#include "trackforge/diagram.hpp"
#include "trackforge/laurent.hpp"

namespace trackforge {

// Which crossing the skein recursion resolves next. Every strategy walks the
// diagram from a base point and switches crossings first met from below,
// so each resolution strictly approaches a descending (unlinked) diagram.
enum class SkeinStrategy {
  kFirstBad,      // base points at the lowest arcs, first offending crossing
  kLastBad,       // same base points, last offending crossing
  kReversedBase,  // components traversed from their highest arc backwards
};

// Memo table that may be shared between threads. Entries are write-once.
class HomflyCache {
 public:
  bool lookup(const std::string& key, LaurentPoly2& out) const;
  void store(const std::string& key, const LaurentPoly2& value);
  std::size_t size() const;

 private:
  mutable std::mutex mutex_;
  std::unordered_map<std::string, LaurentPoly2> table_;
};

struct HomflyOptions {
  int crossing_cap = 16;
  SkeinStrategy strategy = SkeinStrategy::kFirstBad;
  HomflyCache* cache = nullptr;
};

// HOMFLY polynomial with P(unknot) = 1 and
//   v^-1 P(D+) - v P(D-) = z P(D0).
// Throws ResourceError when the diagram exceeds `crossing_cap`.
LaurentPoly2 homfly(const PlanarDiagram& d, const HomflyOptions& options = {});

struct MortonReport {
  int writhe = 0;
  int seifert_circles = 0;
  int e = 0;
  int E = 0;
  int lower = 0;  // w - (s - 1)
  int upper = 0;  // w + (s - 1)
  bool pass = false;
};

MortonReport morton_check(const PlanarDiagram& d, const HomflyOptions& options = {});
MortonReport morton_check(const PlanarDiagram& d, const LaurentPoly2& p);

}  // namespace trackforge
