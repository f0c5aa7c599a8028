#include "trackforge/catalog.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <thread>

#include "trackforge/braid.hpp"
#include "trackforge/error.hpp"
#include "trackforge/homfly.hpp"

namespace trackforge {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto bar = line.find('|', start);
    out.push_back(trim(line.substr(start, bar == std::string_view::npos ? std::string_view::npos : bar - start)));
    if (bar == std::string_view::npos) break;
    start = bar + 1;
  }
  return out;
}

std::optional<int> parse_count(std::string_view field, int line, const char* what) {
  if (field == "?") return std::nullopt;
  int value = 0;
  if (field.empty()) throw ParseError(std::string("empty ") + what, line, 1);
  for (char ch : field) {
    if (ch < '0' || ch > '9') throw ParseError(std::string("bad ") + what + " '" + std::string(field) + "'", line, 1);
    value = value * 10 + (ch - '0');
  }
  return value;
}

KnotFlags parse_flags(std::string_view field, int line) {
  KnotFlags flags;
  if (field == "-" || field.empty()) return flags;
  std::size_t start = 0;
  while (start <= field.size()) {
    const auto comma = field.find(',', start);
    auto token = trim(field.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start));
    bool value = true;
    if (!token.empty() && token.front() == '!') {
      value = false;
      token.remove_prefix(1);
    }
    if (token == "positive") {
      flags.positive = value;
    } else if (token == "qp") {
      flags.quasipositive = value;
    } else if (token == "sqp") {
      flags.strongly_quasipositive = value;
    } else if (token == "freedivide") {
      flags.free_divide = value;
    } else {
      throw ParseError("unknown flag '" + std::string(token) + "'", line, 1);
    }
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return flags;
}

std::string flags_text(const KnotFlags& f) {
  std::string out;
  auto add = [&out](const std::optional<bool>& v, const char* name) {
    if (!v) return;
    if (!out.empty()) out += ',';
    if (!*v) out += '!';
    out += name;
  };
  add(f.positive, "positive");
  add(f.quasipositive, "qp");
  add(f.strongly_quasipositive, "sqp");
  add(f.free_divide, "freedivide");
  return out.empty() ? "-" : out;
}

std::string count_text(const std::optional<int>& v) { return v ? std::to_string(*v) : "?"; }

}  // namespace

PlanarDiagram CatalogEntry::diagram() const {
  if (kind == EncodingKind::kBraid) return closure(parse_braid(payload));
  return parse_pd(payload);
}

std::vector<CatalogEntry> parse_catalog(std::istream& in) {
  std::vector<CatalogEntry> out;
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    const auto text = trim(raw);
    if (text.empty() || text.front() == '#') continue;
    const auto fields = split_fields(text);
    if (fields.size() != 6 && fields.size() != 7) {
      throw ParseError("expected 6 or 7 '|'-separated fields, found " + std::to_string(fields.size()), line, 1);
    }
    CatalogEntry e;
    e.line = line;
    e.name = std::string(fields[0]);
    e.dt_name = std::string(fields[1]);
    if (e.name.empty()) throw ParseError("empty name", line, 1);

    const auto enc = fields[2];
    const auto colon = enc.find(':');
    const auto kind = colon == std::string_view::npos ? std::string_view{} : enc.substr(0, colon);
    if (kind == "pd") {
      e.kind = EncodingKind::kPD;
    } else if (kind == "braid") {
      e.kind = EncodingKind::kBraid;
    } else {
      throw ParseError("encoding must start with 'pd:' or 'braid:'", line, 1);
    }
    e.payload = std::string(trim(enc.substr(colon + 1)));
    try {
      (void)e.diagram();
    } catch (const std::exception& err) {
      throw ParseError(e.name + ": " + err.what(), line, 1);
    }

    e.genus = parse_count(fields[3], line, "genus");
    e.four_genus = parse_count(fields[4], line, "four-genus");
    if (e.genus && e.four_genus && *e.four_genus > *e.genus) {
      throw ParseError(e.name + ": four-genus exceeds genus", line, 1);
    }
    e.flags = parse_flags(fields[5], line);
    if (fields.size() == 7) {
      auto h = fields[6];
      if (h.substr(0, 7) != "homfly:") throw ParseError("seventh field must start with 'homfly:'", line, 1);
      try {
        e.expected = LaurentPoly2::parse(trim(h.substr(7)));
      } catch (const std::exception& err) {
        throw ParseError(e.name + ": " + err.what(), line, 1);
      }
    }
    out.push_back(std::move(e));
  }
  return out;
}

std::vector<CatalogEntry> parse_catalog_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open catalog '" + path + "'");
  try {
    return parse_catalog(in);
  } catch (const ParseError& err) {
    throw ParseError(path + ": " + err.what());
  }
}

CatalogStore CatalogStore::ingest(std::vector<CatalogEntry> entries, const IngestOptions& options) {
  unsigned workers = options.workers > 0 ? static_cast<unsigned>(options.workers) : std::thread::hardware_concurrency();
  workers = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(entries.size())));

  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> errors(entries.size());
  HomflyOptions hopts;
  hopts.crossing_cap = options.crossing_cap;
  auto work = [&] {
    for (std::size_t i = next++; i < entries.size(); i = next++) {
      try {
        const auto& e = entries[i];
        entries[i].homfly = e.kind == EncodingKind::kBraid ? closure_homfly(parse_braid(e.payload))
                                                           : homfly(e.diagram(), hopts);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < workers; ++t) pool.emplace_back(work);
  work();
  for (auto& t : pool) t.join();

  for (std::size_t i = 0; i < entries.size(); ++i) {
    if (errors[i]) std::rethrow_exception(errors[i]);
    const auto& e = entries[i];
    if (e.expected && *e.expected != e.homfly) {
      throw DomainError("catalog entry " + e.name + " (line " + std::to_string(e.line) +
                        "): stored HOMFLY " + e.expected->to_string() + " but computed " + e.homfly.to_string());
    }
  }

  CatalogStore store;
  store.entries_ = std::move(entries);
  store.index();
  return store;
}

void CatalogStore::index() {
  by_poly_.clear();
  by_name_.clear();
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    by_poly_[entries_[i].homfly].push_back(i);
    if (!by_name_.emplace(entries_[i].name, i).second) throw DomainError("duplicate catalog name " + entries_[i].name);
  }
}

void CatalogStore::merge(const CatalogStore& other) {
  entries_.insert(entries_.end(), other.entries_.begin(), other.entries_.end());
  index();
}

void CatalogStore::write(std::ostream& out) const {
  out << kSchemaHeader << '\n';
  for (const auto& e : entries_) {
    out << e.name << " | " << e.dt_name << " | " << (e.kind == EncodingKind::kPD ? "pd:" : "braid:") << e.payload
        << " | " << count_text(e.genus) << " | " << count_text(e.four_genus) << " | " << flags_text(e.flags)
        << " | homfly:" << e.homfly.to_string() << '\n';
  }
}

std::string CatalogStore::to_string() const {
  std::ostringstream out;
  write(out);
  return out.str();
}

const CatalogEntry* CatalogStore::find(std::string_view name) const {
  auto it = by_name_.find(std::string(name));
  return it == by_name_.end() ? nullptr : &entries_[it->second];
}

std::vector<std::string> CatalogStore::identify(const LaurentPoly2& p) const {
  std::vector<std::size_t> hits;
  for (const auto& key : {p, p.mirror_transform()}) {
    auto it = by_poly_.find(key);
    if (it != by_poly_.end()) hits.insert(hits.end(), it->second.begin(), it->second.end());
  }
  std::sort(hits.begin(), hits.end());
  hits.erase(std::unique(hits.begin(), hits.end()), hits.end());
  std::vector<std::string> names;
  for (auto i : hits) names.push_back(entries_[i].name);
  return names;
}

std::vector<std::string> refine_candidates(const CatalogStore& store, const std::vector<std::string>& names,
                                           std::optional<int> four_genus, bool known_quasipositive) {
  std::vector<std::string> out;
  for (const auto& n : names) {
    const auto* e = store.find(n);
    if (!e) continue;
    if (four_genus && e->four_genus && *e->four_genus != *four_genus) continue;
    if (known_quasipositive && e->flags.quasipositive == false) continue;
    out.push_back(n);
  }
  return out;
}

bool Prop1Report::pass() const {
  return std::all_of(rows.begin(), rows.end(), [](const Prop1Row& r) { return r.holds; });
}

Prop1Report check_prop1(const CatalogStore& store) {
  Prop1Report report;
  for (const auto& e : store.entries()) {
    if (e.flags.quasipositive != true) continue;
    if (!e.genus || !e.four_genus || !e.flags.strongly_quasipositive) {
      report.missing_data.push_back(e.name);
      continue;
    }
    const bool sqp = *e.flags.strongly_quasipositive;
    report.rows.push_back({e.name, *e.genus, *e.four_genus, sqp, sqp == (*e.four_genus == *e.genus)});
  }
  return report;
}

}  // namespace trackforge
