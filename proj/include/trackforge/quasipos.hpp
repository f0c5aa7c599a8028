#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "trackforge/diagram.hpp"
#include "trackforge/track.hpp"

namespace trackforge {

// A partition of a diagram's crossings into positive singles and
// (positive, negative) pairs. Ids are crossing indices of the diagram.
struct Pairing {
  std::vector<int> singles;                 // sorted
  std::vector<std::pair<int, int>> pairs;   // (positive, negative), sorted by first

  bool operator==(const Pairing&) const = default;
};

// Independent validity check. Returns the list of violated conditions;
// empty means the pairing certifies the diagram as quasipositive:
//  * every crossing is used exactly once;
//  * singles are positive;
//  * a pair is one positive and one negative crossing joining the same two
//    Seifert circles;
//  * along every Seifert circle, the crossings of two different pairs never
//    interleave (a, b, a, b in cyclic order); singles are ignored.
std::vector<std::string> check_pairing(const PlanarDiagram& d, const Pairing& p);

// Backtracking search that pairs every negative crossing with a positive
// partner, trying partners in increasing id order, so the first certificate
// found is the lexicographically least one. Throws ResourceError above
// `crossing_cap` crossings.
std::optional<Pairing> find_certificate(const PlanarDiagram& d, int crossing_cap = 20);

// The constructive certificate of a track diagram: each negative crossing
// is paired with a positive crossing of the same double point. Throws
// std::logic_error if that fails, which would mean a construction bug.
Pairing track_certificate(const LabelledInterval& c, const TrackDiagram& t);

// `singles: [1, 4]; pairs: [(2,3), (5,6)]` with 1-based crossing ids.
std::string to_string(const Pairing& p);
Pairing parse_pairing(std::string_view text);

}  // namespace trackforge
