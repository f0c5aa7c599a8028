#pragma once

#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "trackforge/diagram.hpp"
#include "trackforge/laurent.hpp"

namespace trackforge {

enum class EncodingKind { kPD, kBraid };

struct KnotFlags {
  std::optional<bool> positive;
  std::optional<bool> quasipositive;
  std::optional<bool> strongly_quasipositive;
  std::optional<bool> free_divide;
  bool operator==(const KnotFlags&) const = default;
};

struct CatalogEntry {
  std::string name;
  std::string dt_name;
  EncodingKind kind = EncodingKind::kPD;
  std::string payload;
  std::optional<int> genus;
  std::optional<int> four_genus;
  KnotFlags flags;
  // Value written in the source record, if any; checked against `homfly`.
  std::optional<LaurentPoly2> expected;
  LaurentPoly2 homfly;
  int line = 0;

  PlanarDiagram diagram() const;
};

// Parses catalog or store records:
//   name | dtName | kind:payload | genus | fourGenus | flags [| homfly:poly]
// `#` starts a comment line. Unknown integers are written `?`. Flags are a
// comma list of positive, qp, sqp, freedivide, each optionally negated with
// `!`; `-` means nothing is known. Diagrams are parsed eagerly so a bad
// encoding is reported with its line.
std::vector<CatalogEntry> parse_catalog(std::istream& in);
std::vector<CatalogEntry> parse_catalog_file(const std::string& path);

struct IngestOptions {
  int workers = 0;  // 0: hardware concurrency
  int crossing_cap = 16;
};

class CatalogStore {
 public:
  CatalogStore() = default;

  // Computes every entry's HOMFLY polynomial in parallel. Throws
  // DomainError naming the entry and both polynomials when a stored
  // expected value disagrees.
  static CatalogStore ingest(std::vector<CatalogEntry> entries, const IngestOptions& options = {});

  // Schema header followed by one record per entry, in input order.
  void write(std::ostream& out) const;
  std::string to_string() const;

  const std::vector<CatalogEntry>& entries() const noexcept { return entries_; }
  const CatalogEntry* find(std::string_view name) const;
  std::size_t size() const noexcept { return entries_.size(); }

  // Entries whose polynomial equals p or its mirror transform, in store
  // order. More than one name is a HOMFLY collision and is left unresolved.
  std::vector<std::string> identify(const LaurentPoly2& p) const;

  // Concatenates another store. Throws DomainError if a name repeats.
  void merge(const CatalogStore& other);

  static constexpr std::string_view kSchemaHeader = "# trackforge-store v1";

 private:
  void index();

  std::vector<CatalogEntry> entries_;
  std::map<LaurentPoly2, std::vector<std::size_t>> by_poly_;
  std::unordered_map<std::string, std::size_t> by_name_;
};

// Narrows HOMFLY candidates with data the caller knows about its knot: a
// candidate survives unless its stored four-genus differs from
// `four_genus`, or it is recorded as not quasipositive while the caller's
// knot is known to be quasipositive.
std::vector<std::string> refine_candidates(const CatalogStore& store, const std::vector<std::string>& names,
                                           std::optional<int> four_genus, bool known_quasipositive);

struct Prop1Row {
  std::string name;
  int genus;
  int four_genus;
  bool strongly_quasipositive;
  bool holds;  // sqp == (four_genus == genus)
};

struct Prop1Report {
  std::vector<Prop1Row> rows;            // every entry flagged quasipositive
  std::vector<std::string> missing_data;  // quasipositive but incomplete
  bool pass() const;
};

Prop1Report check_prop1(const CatalogStore& store);

}  // namespace trackforge
