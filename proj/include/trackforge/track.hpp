#pragma once

#include <array>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "trackforge/diagram.hpp"

namespace trackforge {

struct GridPoint {
  int x = 0;
  int y = 0;
  bool operator==(const GridPoint&) const = default;
  auto operator<=>(const GridPoint&) const = default;
};

// Orthogonal lattice path: unit moves over U, D, L, R from `start`.
struct GridPath {
  std::string moves;
  GridPoint start;

  std::vector<GridPoint> points() const;
  bool operator==(const GridPath&) const = default;
};

GridPoint step_vector(char move);

// A double point of a path: the two move-sequence vertices that meet there.
struct DoublePoint {
  GridPoint where;
  int first;   // vertex index of the earlier pass
  int second;  // vertex index of the later pass
};

// Double points ordered by first traversal. Assumes a generic path.
std::vector<DoublePoint> double_points(const GridPath& path);

enum class LabelType { kA, kB, kC, kD };

// One of the eleven sign patterns. Rotation is reduced by the type's period
// (2 for a, 4 for b and c, 1 for d).
class DoublePointLabel {
 public:
  DoublePointLabel(LabelType type, int rotation);

  // Parses a, a1, b, b1, b2, b3, c, c1, c2, c3, d. Higher subscripts of a
  // and d are accepted and reduced.
  static DoublePointLabel parse(std::string_view symbol);
  // The eleven labels in lexicographic symbol order.
  static const std::array<DoublePointLabel, 11>& all();

  LabelType type() const noexcept { return type_; }
  int rotation() const noexcept { return rotation_; }
  std::string symbol() const;

  bool operator==(const DoublePointLabel&) const = default;

 private:
  LabelType type_;
  int rotation_;
};

// How a label's pattern is laid onto the four quadrants of a grid double
// point. Quadrants are numbered counterclockwise from the region that lies
// ahead of the double point along the earlier pass and behind it along the
// later pass. With base patterns
//   a: + - + -   b: + + - -   c: + + + -   d: + + + +
// label T_i puts base[(q - anchor[T] - i) mod 4] on quadrant q, or
// base[(q - anchor[T] + i) mod 4] when `counterclockwise` is false.
struct QuadrantConvention {
  std::array<int, 4> anchor{0, 0, 0, 0};  // indexed by LabelType
  bool counterclockwise = true;

  // The convention fixed by calibrating the interval in fixtures/fig17.track.
  static QuadrantConvention calibrated();
  bool operator==(const QuadrantConvention&) const = default;
};

std::array<int, 4> quadrant_signs(const DoublePointLabel& label,
                                  const QuadrantConvention& convention = QuadrantConvention::calibrated());

// A full positive twist on step `step`; `offset` orders several twists on
// the same step.
struct MarkedPoint {
  int step = 0;
  int offset = 0;
  bool operator==(const MarkedPoint&) const = default;
  auto operator<=>(const MarkedPoint&) const = default;
};

struct LabelledInterval {
  GridPath path;
  std::vector<DoublePointLabel> labels;  // by first traversal of the double point
  std::vector<MarkedPoint> marks;
  bool operator==(const LabelledInterval&) const = default;
};

struct Diagnostics {
  std::vector<std::string> violations;
  bool ok() const noexcept { return violations.empty(); }
  std::string to_string() const;
};

// Genericity and label count only.
Diagnostics validate_generic(const LabelledInterval& c);
// Full check, including that removing the marked points leaves no cycle.
Diagnostics validate(const LabelledInterval& c);

enum class FeatureKind { kDoublePoint, kTwist };

// Where a crossing of a built diagram comes from.
struct CrossingOrigin {
  FeatureKind kind;
  int feature;   // double point index, or index into the sorted marks
  int quadrant;  // 0..3 for double points, -1 for twists
  double x;      // position in the construction's coordinates
  double y;
};

struct TrackDiagram {
  PlanarDiagram diagram;
  std::vector<CrossingOrigin> origins;  // indexed by crossing id
  // Closed band boundary as a polyline in construction coordinates.
  std::vector<std::array<double, 2>> outline;
  int scale = 0;  // construction units per lattice step
};

// Builds the diagram of a valid interval. Throws ValidationError otherwise,
// and std::logic_error if a construction postcondition fails.
TrackDiagram build_diagram(const LabelledInterval& c,
                           const QuadrantConvention& convention = QuadrantConvention::calibrated());

// The same construction with explicit quadrant signs for each double point
// (indexed by the quadrant numbering above); the labels of `c` are ignored.
// Only genericity is checked.
TrackDiagram build_from_signs(const LabelledInterval& c, const std::vector<std::array<int, 4>>& signs);

struct RelaxedBuild {
  TrackDiagram track;
  int upper_bound;  // C + 2D bounds the four-genus from above
};

// Same construction without the cycle check (too few marked points).
RelaxedBuild relaxed_build(const LabelledInterval& c,
                           const QuadrantConvention& convention = QuadrantConvention::calibrated());

struct TrackBounds {
  int A = 0;
  int B = 0;
  int C = 0;
  int D = 0;
  int r = 0;
  int four_genus = 0;
  std::optional<int> gordian;
  std::optional<int> ordinary_genus;
  int slice_bennequin_bound = 0;  // (1 - s + w) / 2 of the built diagram
  bool operator==(const TrackBounds&) const = default;
};

TrackBounds bounds(const LabelledInterval& c,
                   const QuadrantConvention& convention = QuadrantConvention::calibrated());

// Joins the end of c1 to the start of c2. Both paths are doubled in scale,
// c2 is translated clear of c1, and a connector is routed from each free end
// to the outside of its own bounding box. Throws ValidationError if an input
// is invalid and DomainError if an end point cannot reach the outside.
LabelledInterval glue(const LabelledInterval& c1, const LabelledInterval& c2);

// Calls `visit` for each of the 11^k labellings of `shape`, in lexicographic
// symbol order. Throws ValidationError if the unlabelled skeleton fails.
void for_each_labelling(const GridPath& shape, const std::vector<MarkedPoint>& marks,
                        const std::function<void(const LabelledInterval&)>& visit);
std::vector<LabelledInterval> enumerate_labellings(const GridPath& shape, const std::vector<MarkedPoint>& marks);

// Track file text:
//   path = RRUULLDD
//   start = 0, 0        (optional)
//   labels = b1, c1
//   marks = 3, 11:1
LabelledInterval parse_track(std::string_view text);
std::string emit_track(const LabelledInterval& c);
LabelledInterval load_track_file(const std::string& path);

}  // namespace trackforge
