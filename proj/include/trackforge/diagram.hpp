#pragma once

#include <array>
#include <string>
#include <string_view>
#include <vector>

namespace trackforge {

// One crossing of an oriented diagram. Arc ids are listed counterclockwise
// starting at the incoming under-strand, so the under-strand runs from slot 0
// to slot 2. A positive crossing has its over-strand entering at slot 3; a
// negative one has it entering at slot 1.
struct Crossing {
  std::array<int, 4> arcs{};
  int sign = 1;

  int over_in_slot() const noexcept { return sign > 0 ? 3 : 1; }
  int over_out_slot() const noexcept { return sign > 0 ? 1 : 3; }
  bool is_incoming(int slot) const noexcept { return slot == 0 || slot == over_in_slot(); }
  bool operator==(const Crossing&) const = default;
};

struct ArcEnd {
  int crossing = -1;
  int slot = -1;
  bool operator==(const ArcEnd&) const = default;
};

// A dart is one side of an arc as seen while walking around a face with the
// face on the left.
struct Dart {
  int arc;
  bool along;  // walking direction agrees with the arc orientation
  bool operator==(const Dart&) const = default;
};

// Oriented link diagram on the sphere in planar-diagram form. Arcs are the
// edges between consecutive crossings along the link and carry ids
// 0..2n-1 (printed 1-based). Crossing-free components are stored as a count.
class PlanarDiagram {
 public:
  // The 0-crossing unknot.
  PlanarDiagram() : free_loops_(1) {}
  // Throws ValidationError unless every arc id appears exactly twice, once
  // entering and once leaving a crossing.
  explicit PlanarDiagram(std::vector<Crossing> crossings, int free_loops = 0);

  static PlanarDiagram unknot() { return PlanarDiagram(); }
  static PlanarDiagram unlink(int components);

  const std::vector<Crossing>& crossings() const noexcept { return crossings_; }
  const Crossing& crossing(int id) const { return crossings_.at(static_cast<std::size_t>(id)); }
  int crossing_count() const noexcept { return static_cast<int>(crossings_.size()); }
  int arc_count() const noexcept { return 2 * crossing_count(); }
  int free_loops() const noexcept { return free_loops_; }
  int component_count() const;

  ArcEnd head(int arc) const { return heads_.at(static_cast<std::size_t>(arc)); }
  ArcEnd tail(int arc) const { return tails_.at(static_cast<std::size_t>(arc)); }
  // The other end of the arc attached at (crossing, slot).
  ArcEnd opposite_end(int crossing, int slot) const;
  // The arc leaving the head crossing of `arc` along the same strand.
  int next_along_strand(int arc) const;
  // Arc ids of each component with crossings, in orientation order.
  std::vector<std::vector<int>> components() const;

  bool operator==(const PlanarDiagram& other) const {
    return crossings_ == other.crossings_ && free_loops_ == other.free_loops_;
  }

 private:
  std::vector<Crossing> crossings_;
  int free_loops_ = 0;
  std::vector<ArcEnd> heads_;
  std::vector<ArcEnd> tails_;
};

struct SeifertArc {
  int crossing;
  int circle_a;  // circle through the incoming under-strand
  int circle_b;  // circle through the incoming over-strand
  int sign;
};

struct SeifertDecomposition {
  // Arc ids of each circle in orientation order, starting at its smallest
  // arc; circles are ordered by smallest arc. Crossing-free components
  // contribute trailing empty circles.
  std::vector<std::vector<int>> circles;
  std::vector<int> circle_of_arc;
  // One signed arc per crossing, indexed by crossing id.
  std::vector<SeifertArc> graph;
  // Crossing ids met along each circle, in orientation order.
  std::vector<std::vector<int>> crossings_along;

  int circle_count() const noexcept { return static_cast<int>(circles.size()); }
};

int writhe(const PlanarDiagram& d);
SeifertDecomposition seifert_decompose(const PlanarDiagram& d);
PlanarDiagram mirror(const PlanarDiagram& d);
// Throws DomainError unless both inputs are knots.
PlanarDiagram connected_sum(const PlanarDiagram& d1, const PlanarDiagram& d2);
// Relabels arcs by traversal order, starting each component at its
// lowest-numbered arc; components are taken in order of their lowest arc.
PlanarDiagram canonicalize(const PlanarDiagram& d);
// Reverses the orientation of every component.
PlanarDiagram reverse(const PlanarDiagram& d);
// Switches crossing `id`, keeping arc labels.
PlanarDiagram switch_crossing(const PlanarDiagram& d, int id);
// Oriented smoothing of crossing `id`; the result is canonicalized.
PlanarDiagram smooth_crossing(const PlanarDiagram& d, int id);

// Face boundaries of the diagram (each face walked with the face on the
// left). A crossing-free diagram has no faces.
std::vector<std::vector<Dart>> faces(const PlanarDiagram& d);
// Euler characteristic test on every connected piece.
bool is_planar(const PlanarDiagram& d);

// PD text: `PD[X(a,b,c,d), ...]` with 1-based arc labels.
std::string to_pd(const PlanarDiagram& d);
// Orientation is read from the under-strands; components that are never
// under use ascending label order. With `strict`, non-planar incidence
// data is rejected.
PlanarDiagram parse_pd(std::string_view text, bool strict = false);

}  // namespace trackforge
