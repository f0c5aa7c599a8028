#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "trackforge/diagram.hpp"
#include "trackforge/laurent.hpp"
#include "trackforge/quasipos.hpp"

namespace trackforge {

struct BraidLetter {
  int generator;  // 1-based: sigma_i exchanges strands i and i+1
  int sign;       // +1 for sigma_i, -1 for its inverse
  bool operator==(const BraidLetter&) const = default;
};

struct BraidWord {
  int strands = 1;
  std::vector<BraidLetter> letters;

  int exponent_sum() const;
  // Letters as a..z / A..Z.
  std::string to_string() const;
  bool operator==(const BraidWord&) const = default;
};

// Parses a word over [a-zA-Z], ignoring whitespace. Strand count is
// 1 + max generator unless `strands` is given.
BraidWord parse_braid(std::string_view text, std::optional<int> strands = std::nullopt);

BraidWord inverse(const BraidWord& b);

// Closed braid diagram: strands oriented upward, closed on one side.
PlanarDiagram closure(const BraidWord& b);

// HOMFLY of the closure through the Hecke algebra and its Markov trace.
// Cost grows with strands! rather than with word length.
LaurentPoly2 closure_homfly(const BraidWord& b);

// One band u * sigma_k * u^-1 of a quasipositive factorization.
struct Band {
  BraidWord conjugator;  // u
  int generator;         // k, with positive core sigma_k
  BraidWord expanded() const;
  // True for sigma_{i,j} = (sigma_i ... sigma_{j-2}) sigma_{j-1} (...)^-1.
  bool is_embedded() const;
};

struct QPWord {
  BraidWord word;
  std::vector<Band> bands;
  bool strongly_quasipositive() const;
};

// Free reduction of a word (cancels adjacent x x^-1).
BraidWord free_reduce(const BraidWord& b);

// Factorizes a word into bands whose product freely reduces to the same
// element. Returns nullopt when the bounded search finds none.
std::optional<std::vector<Band>> decompose_bands(const BraidWord& word);

// Table-style quasipositive word: letters with optional parenthesized
// groups. Groups are tried first as independent factors; the whole word is
// searched when that fails. Throws ParseError on bad syntax and DomainError
// (carrying the residual word) when no factorization exists.
QPWord parse_qp(std::string_view text, std::optional<int> strands = std::nullopt);

// (bands - strands + 1) / 2; throws DomainError if the closure is not a knot.
int qp_genus(const QPWord& q);

// Checks that `bands` multiply out to `word` after free reduction and that
// every band has the conjugate-of-positive-generator shape.
bool bands_valid(const BraidWord& word, const std::vector<Band>& bands);

// A diagram brought into closed-braid position, with the braid read off it.
struct BraidReading {
  PlanarDiagram diagram;          // input plus the crossings added by the moves
  BraidWord braid;
  std::vector<int> letter_of;     // crossing id -> index into braid.letters
  // Crossing pairs created by the moves, as (positive, negative) ids.
  std::vector<std::pair<int, int>> added_pairs;
  int moves = 0;
};

// Repeatedly pushes one strand across another with a Reidemeister II move
// wherever a face meets two different Seifert circles with the same
// orientation, until the circles are coherently nested, and then reads the
// braid around them. Writhe, Seifert-circle count and the knot type are
// unchanged. Throws DomainError for diagrams that fall apart into
// separate pieces and ResourceError above `crossing_cap` crossings.
BraidReading braid_reading(const PlanarDiagram& d, int crossing_cap = 40);
BraidWord yamada_braid(const PlanarDiagram& d, int crossing_cap = 40);

// Experimental. Carries a quasipositivity certificate through the moves
// above and reads bands off the braid. The result is checked against the
// band validator and against the HOMFLY of `d`; DomainError reports any
// failure, including a certificate that does not survive the read-off.
QPWord qp_diagram_to_braid(const PlanarDiagram& d, const Pairing& certificate, int crossing_cap = 40);

}  // namespace trackforge
