#pragma once

#include <optional>
#include <random>
#include <string>
#include <vector>

#include "trackforge/catalog.hpp"
#include "trackforge/diagram.hpp"
#include "trackforge/track.hpp"

namespace trackforge::testing {

std::string data_path(const std::string& name);     // under data/
std::string fixture_path(const std::string& name);  // under fixtures/

// The ingested catalogs, built once per process.
const CatalogStore& small_catalog();  // up to 10 crossings
const CatalogStore& full_catalog();   // up to 12 crossings

struct Table1Row {
  std::string printed;
  std::string name;
  std::string word;
  int four_genus;
  int genus;
};

struct Table2Row {
  std::string x;
  std::string y;
  std::string dt;
  std::string name;  // "-" above ten crossings
  std::string free_divide;
  int four_genus;
};

std::vector<Table1Row> table1();
std::vector<Table2Row> table2();

// `|`-separated fields of the non-comment lines of a fixture.
std::vector<std::vector<std::string>> read_rows(const std::string& path);

// A random valid labelled interval: a lattice walk of `length` steps with
// transverse double points, random labels, and marks that break every
// cycle. Returns nullopt when the walk gets stuck.
std::optional<LabelledInterval> random_interval(std::mt19937& rng, int length);
LabelledInterval random_valid_interval(std::mt19937& rng, int min_length, int max_length);

// Random knot diagrams: catalog diagrams with random crossings switched,
// occasionally summed with a second one. At most `max_crossings`.
std::vector<PlanarDiagram> random_knot_diagrams(std::mt19937& rng, int count, int max_crossings);

}  // namespace trackforge::testing
