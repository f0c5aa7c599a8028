// trackforge: command-line front end.
//
// Exit status: 0 success, 1 domain failure (invalid interval, no
// certificate, mismatching data), 2 usage error (bad flags, unreadable input).

#include <atomic>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>
#include <thread>

#include <CLI11.hpp>

#include "svg.hpp"
#include "trackforge/braid.hpp"
#include "trackforge/catalog.hpp"
#include "trackforge/error.hpp"
#include "trackforge/homfly.hpp"
#include "trackforge/quasipos.hpp"
#include "trackforge/track.hpp"

using namespace trackforge;

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Config {
  int cap = 16;
  int workers = 0;
  std::string format = "text";
  bool strict = false;
  std::vector<std::string> catalogs;
  std::string labels;
  bool relaxed = false;
};

bool records(const Config& cfg) { return cfg.format == "records"; }

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read " + path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::string trimmed(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  return s.substr(b, s.find_last_not_of(" \t\r\n") - b + 1);
}

std::vector<DoublePointLabel> parse_labels(const std::string& text) {
  std::vector<DoublePointLabel> out;
  std::stringstream s(text);
  std::string item;
  while (std::getline(s, item, ',')) out.push_back(DoublePointLabel::parse(trimmed(item)));
  return out;
}

// An input is a track file, a PD file, inline `PD[...]` text, or
// `braid:WORD` for a closed braid.
struct Input {
  std::optional<LabelledInterval> interval;
  std::optional<TrackDiagram> track;
  PlanarDiagram diagram;
};

LabelledInterval load_interval(const std::string& arg, const Config& cfg) {
  auto c = parse_track(read_file(arg));
  if (!cfg.labels.empty()) c.labels = parse_labels(cfg.labels);
  return c;
}

Input load_input(const std::string& arg, const Config& cfg) {
  Input in;
  if (arg.rfind("PD[", 0) == 0) {
    in.diagram = parse_pd(arg, cfg.strict);
    return in;
  }
  if (arg.rfind("braid:", 0) == 0) {
    in.diagram = closure(parse_braid(arg.substr(6)));
    return in;
  }
  const auto text = trimmed(read_file(arg));
  if (text.rfind("PD[", 0) == 0) {
    in.diagram = parse_pd(text, cfg.strict);
    return in;
  }
  in.interval = load_interval(arg, cfg);
  in.track = cfg.relaxed ? relaxed_build(*in.interval).track : build_diagram(*in.interval);
  in.diagram = in.track->diagram;
  return in;
}

std::vector<std::string> catalog_paths(const Config& cfg) {
  if (!cfg.catalogs.empty()) return cfg.catalogs;
  if (const char* env = std::getenv("TRACKFORGE_CATALOG"); env && *env) {
    std::vector<std::string> out;
    std::stringstream s(env);
    std::string item;
    while (std::getline(s, item, ':')) {
      if (!item.empty()) out.push_back(item);
    }
    return out;
  }
  return {std::string(TRACKFORGE_DATA_DIR) + "/knots_10.catalog", std::string(TRACKFORGE_DATA_DIR) + "/knots_11_12.catalog"};
}

CatalogStore load_store(const Config& cfg) {
  CatalogStore store;
  for (const auto& path : catalog_paths(cfg)) {
    if (!std::filesystem::exists(path)) throw UsageError("catalog not found: " + path);
    store.merge(CatalogStore::ingest(parse_catalog_file(path), IngestOptions{cfg.workers, cfg.cap}));
  }
  return store;
}

std::string term_list(const LaurentPoly2& p) {
  std::string out;
  for (const auto& t : p.terms()) {
    if (!out.empty()) out += ";";
    out += std::to_string(t.coef) + ":" + std::to_string(t.v_exp) + ":" + std::to_string(t.z_exp);
  }
  return out;
}

std::string names_text(const std::vector<std::string>& names) {
  if (names.empty()) return "-";
  std::string out;
  for (const auto& n : names) out += (out.empty() ? "" : "/") + n;
  return out;
}

std::string opt_text(const std::optional<int>& v) { return v ? std::to_string(*v) : "?"; }

// ---------------------------------------------------------------- commands

int cmd_validate(const std::string& path, const Config& cfg) {
  const auto c = load_interval(path, cfg);
  const auto diag = validate(c);
  if (records(cfg)) {
    std::cout << "valid=" << (diag.ok() ? "yes" : "no");
    for (const auto& v : diag.violations) std::cout << "\tviolation=" << v;
    std::cout << "\n";
  } else {
    std::cout << (diag.ok() ? "ok" : diag.to_string()) << "\n";
  }
  return diag.ok() ? 0 : 1;
}

int cmd_build(const std::string& arg, const Config& cfg) {
  const auto in = load_input(arg, cfg);
  const auto s = seifert_decompose(in.diagram);
  if (records(cfg)) {
    std::cout << "pd=" << to_pd(in.diagram) << "\tcrossings=" << in.diagram.crossing_count()
              << "\twrithe=" << writhe(in.diagram) << "\tcircles=" << s.circle_count() << "\n";
  } else {
    std::cout << to_pd(in.diagram) << "\n"
              << "crossings " << in.diagram.crossing_count() << ", writhe " << writhe(in.diagram)
              << ", Seifert circles " << s.circle_count() << "\n";
  }
  return 0;
}

int cmd_bounds(const std::string& path, const Config& cfg) {
  const auto c = load_interval(path, cfg);
  const auto b = bounds(c);
  if (records(cfg)) {
    std::cout << "A=" << b.A << "\tB=" << b.B << "\tC=" << b.C << "\tD=" << b.D << "\tr=" << b.r
              << "\tfour_genus=" << b.four_genus << "\tgordian=" << opt_text(b.gordian)
              << "\tgenus=" << opt_text(b.ordinary_genus) << "\tslice_bennequin=" << b.slice_bennequin_bound << "\n";
  } else {
    std::cout << "double points a=" << b.A << " b=" << b.B << " c=" << b.C << " d=" << b.D << ", marks " << b.r << "\n"
              << "fourGenus " << b.four_genus << " (clasp number bound C+2D)\n"
              << "gordian " << opt_text(b.gordian) << ", genus " << opt_text(b.ordinary_genus) << "\n"
              << "slice-Bennequin bound " << b.slice_bennequin_bound << "\n";
  }
  return 0;
}

int cmd_homfly(const std::string& arg, const Config& cfg) {
  const auto in = load_input(arg, cfg);
  const auto p = homfly(in.diagram, HomflyOptions{cfg.cap});
  if (records(cfg)) {
    std::cout << "homfly=" << p.to_string() << "\tterms=" << term_list(p) << "\n";
  } else {
    std::cout << p.to_string() << "\n";
  }
  return 0;
}

int cmd_morton(const std::string& arg, const Config& cfg) {
  const auto in = load_input(arg, cfg);
  const auto m = morton_check(in.diagram, HomflyOptions{cfg.cap});
  if (records(cfg)) {
    std::cout << "writhe=" << m.writhe << "\tcircles=" << m.seifert_circles << "\te=" << m.e << "\tE=" << m.E
              << "\tlower=" << m.lower << "\tupper=" << m.upper << "\tpass=" << (m.pass ? "yes" : "no") << "\n";
  } else {
    std::cout << m.lower << " <= e=" << m.e << " <= E=" << m.E << " <= " << m.upper << " : "
              << (m.pass ? "holds" : "VIOLATED") << "\n";
  }
  return m.pass ? 0 : 1;
}

int cmd_certify(const std::string& arg, const std::string& check, const Config& cfg) {
  const auto in = load_input(arg, cfg);
  if (!check.empty()) {
    const auto errors = check_pairing(in.diagram, parse_pairing(check));
    for (const auto& e : errors) std::cout << (records(cfg) ? "violation=" : "") << e << "\n";
    if (errors.empty()) std::cout << (records(cfg) ? "valid=yes" : "valid certificate") << "\n";
    return errors.empty() ? 0 : 1;
  }
  std::optional<Pairing> cert;
  if (in.track && !cfg.relaxed) {
    cert = track_certificate(*in.interval, *in.track);
  } else {
    cert = find_certificate(in.diagram, std::max(cfg.cap, 20));
  }
  if (!cert) {
    std::cout << (records(cfg) ? "certificate=none" : "no quasipositivity certificate for this diagram") << "\n";
    return 1;
  }
  std::cout << (records(cfg) ? "certificate=" : "") << to_string(*cert) << "\n";
  return 0;
}

int cmd_braid(const std::string& arg, bool qp, const Config& cfg) {
  const auto in = load_input(arg, cfg);
  const int cap = std::max(cfg.cap, 40);
  if (qp) {
    std::optional<Pairing> cert;
    if (in.track && !cfg.relaxed) cert = track_certificate(*in.interval, *in.track);
    if (!cert) cert = find_certificate(in.diagram, std::max(cfg.cap, 20));
    if (!cert) throw DomainError("diagram has no quasipositivity certificate");
    const auto q = qp_diagram_to_braid(in.diagram, *cert, cap);
    std::string bands;
    for (const auto& b : q.bands) {
      bands += (bands.empty() ? "(" : " (") + b.expanded().to_string() + ")";
    }
    if (records(cfg)) {
      std::cout << "word=" << q.word.to_string() << "\tstrands=" << q.word.strands << "\tbands=" << q.bands.size()
                << "\tfactors=" << bands << "\n";
    } else {
      std::cout << "word " << q.word.to_string() << " on " << q.word.strands << " strands\n"
                << q.bands.size() << " bands: " << bands << "\n";
    }
    return 0;
  }
  const auto r = braid_reading(in.diagram, cap);
  if (records(cfg)) {
    std::cout << "word=" << r.braid.to_string() << "\tstrands=" << r.braid.strands
              << "\twrithe=" << r.braid.exponent_sum() << "\tmoves=" << r.moves << "\n";
  } else {
    std::cout << r.braid.to_string() << "\n"
              << r.braid.strands << " strands, writhe " << r.braid.exponent_sum() << ", " << r.moves
              << " Reidemeister II moves\n";
  }
  return 0;
}

int cmd_qp_parse(const std::string& word, std::optional<int> strands, const Config& cfg) {
  const auto q = parse_qp(word, strands);
  std::string bands;
  for (const auto& b : q.bands) bands += (bands.empty() ? "(" : " (") + b.expanded().to_string() + ")";
  const int genus = qp_genus(q);
  if (records(cfg)) {
    std::cout << "strands=" << q.word.strands << "\tbands=" << q.bands.size() << "\tfour_genus=" << genus
              << "\tstrongly_quasipositive=" << (q.strongly_quasipositive() ? "yes" : "no") << "\tfactors=" << bands
              << "\n";
  } else {
    std::cout << q.bands.size() << " bands on " << q.word.strands << " strands: " << bands << "\n"
              << "fourGenus " << genus << (q.strongly_quasipositive() ? ", embedded bands only" : "") << "\n";
  }
  return 0;
}

struct EnumRow {
  std::string x;
  std::string y;
  std::vector<std::string> names;
  int four_genus = 0;
  int crossings = 0;
  int writhe = 0;
  int e = 0;
  int E = 0;
  std::string free_divide = "?";
};

int cmd_enumerate(const std::string& shape_path, const Config& cfg) {
  const auto shape = parse_track(read_file(shape_path));
  const auto store = load_store(cfg);
  const auto all = enumerate_labellings(shape.path, shape.marks);
  std::vector<EnumRow> rows(all.size());
  HomflyCache cache;
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < all.size(); i = next++) {
      const auto& c = all[i];
      const auto t = build_diagram(c);
      const auto p = homfly(t.diagram, HomflyOptions{cfg.cap, SkeinStrategy::kFirstBad, &cache});
      const auto b = bounds(c);
      EnumRow& row = rows[i];
      row.x = c.labels.size() > 0 ? c.labels[0].symbol() : "";
      for (std::size_t k = 1; k < c.labels.size(); ++k) row.y += (k > 1 ? "," : "") + c.labels[k].symbol();
      row.names = refine_candidates(store, store.identify(p), b.four_genus, true);
      row.four_genus = b.four_genus;
      row.crossings = t.diagram.crossing_count();
      row.writhe = writhe(t.diagram);
      const auto r = range(p);
      row.e = r.e;
      row.E = r.E;
      if (row.names.size() == 1) {
        const auto* entry = store.find(row.names.front());
        if (entry && entry->flags.free_divide) row.free_divide = *entry->flags.free_divide ? "yes" : "no";
      }
    }
  };
  const int n_workers = cfg.workers > 0 ? cfg.workers : std::max(1u, std::thread::hardware_concurrency());
  std::vector<std::thread> pool;
  for (int k = 1; k < n_workers; ++k) pool.emplace_back(work);
  work();
  for (auto& th : pool) th.join();

  std::set<std::string> distinct;
  int unidentified = 0;
  for (const auto& row : rows) {
    if (row.names.empty()) ++unidentified;
    if (row.names.size() == 1 && row.names.front() != "0_1") distinct.insert(row.names.front());
  }
  if (records(cfg)) {
    for (const auto& row : rows) {
      std::cout << "x=" << row.x << "\ty=" << row.y << "\tknot=" << names_text(row.names)
                << "\tfour_genus=" << row.four_genus << "\tcrossings=" << row.crossings << "\twrithe=" << row.writhe
                << "\te=" << row.e << "\tE=" << row.E << "\tfree_divide=" << row.free_divide << "\n";
    }
    std::cout << "summary\trows=" << rows.size() << "\tdistinct_primes=" << distinct.size()
              << "\tunidentified=" << unidentified << "\n";
  } else {
    std::printf("%-4s %-4s %-14s %3s %5s %4s %4s %4s  %s\n", "x", "y", "knot", "g*", "cross", "w", "e", "E", "free divide");
    for (const auto& row : rows) {
      std::printf("%-4s %-4s %-14s %3d %5d %4d %4d %4d  %s\n", row.x.c_str(), row.y.c_str(), names_text(row.names).c_str(),
                  row.four_genus, row.crossings, row.writhe, row.e, row.E, row.free_divide.c_str());
    }
    std::printf("%zu labellings, %zu distinct prime knots, %d not in the catalog\n", rows.size(), distinct.size(),
                unidentified);
  }
  return 0;
}

int cmd_identify(const std::string& arg, const Config& cfg) {
  const auto in = load_input(arg, cfg);
  const auto store = load_store(cfg);
  const auto p = homfly(in.diagram, HomflyOptions{cfg.cap});
  auto names = store.identify(p);
  if (in.interval && !cfg.relaxed) names = refine_candidates(store, names, bounds(*in.interval).four_genus, true);
  std::cout << (records(cfg) ? "knot=" : "") << names_text(names) << "\n";
  return names.empty() ? 1 : 0;
}

int cmd_catalog_ingest(const std::vector<std::string>& files, const std::string& out_path, const Config& cfg) {
  CatalogStore store;
  for (const auto& f : files) {
    if (!std::filesystem::exists(f)) throw UsageError("catalog not found: " + f);
    store.merge(CatalogStore::ingest(parse_catalog_file(f), IngestOptions{cfg.workers, cfg.cap}));
  }
  if (!out_path.empty()) {
    std::ofstream out(out_path);
    if (!out) throw UsageError("cannot write " + out_path);
    store.write(out);
  }
  std::cout << (records(cfg) ? "entries=" : "ingested ") << store.size() << (records(cfg) ? "" : " entries") << "\n";
  return 0;
}

int cmd_check_prop1(const Config& cfg) {
  const auto store = load_store(cfg);
  const auto report = check_prop1(store);
  for (const auto& row : report.rows) {
    if (records(cfg)) {
      std::cout << "knot=" << row.name << "\tgenus=" << row.genus << "\tfour_genus=" << row.four_genus
                << "\tsqp=" << (row.strongly_quasipositive ? "yes" : "no") << "\tholds=" << (row.holds ? "yes" : "no")
                << "\n";
    } else {
      std::printf("%-8s g=%d g*=%d sqp=%-3s %s\n", row.name.c_str(), row.genus, row.four_genus,
                  row.strongly_quasipositive ? "yes" : "no", row.holds ? "ok" : "FAILS");
    }
  }
  for (const auto& name : report.missing_data) std::cout << (records(cfg) ? "missing=" : "incomplete data: ") << name << "\n";
  if (!records(cfg)) std::cout << report.rows.size() << " quasipositive entries, " << (report.pass() ? "all consistent" : "INCONSISTENT") << "\n";
  return report.pass() ? 0 : 1;
}

int cmd_render(const std::string& path, bool diagram, const Config& cfg) {
  std::cout << render_svg(load_interval(path, cfg), diagram);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"trackforge: track-knot diagrams, HOMFLY polynomials and quasipositivity"};
  app.require_subcommand(1);
  Config cfg;
  app.add_option("--cap", cfg.cap, "crossing cap for HOMFLY and searches")->check(CLI::PositiveNumber);
  app.add_option("--workers", cfg.workers, "worker threads (0: one per core)")->check(CLI::NonNegativeNumber);
  app.add_option("--format", cfg.format, "output format")->check(CLI::IsMember({"text", "records", "svg"}));
  app.add_flag("--strict", cfg.strict, "reject non-planar PD input");
  app.add_option("--catalog", cfg.catalogs, "catalog file (repeatable; default $TRACKFORGE_CATALOG or bundled data)");
  app.add_option("--labels", cfg.labels, "override the labels of a track file, e.g. b,d");
  app.add_flag("--relaxed", cfg.relaxed, "build without the marked-point cycle check");

  std::string input;
  std::string check;
  std::string out_path;
  std::vector<std::string> files;
  std::optional<int> strands;
  bool qp = false;
  bool as_diagram = false;

  auto sub = [&](const char* name, const char* help) {
    auto* s = app.add_subcommand(name, help);
    s->fallthrough();
    return s;
  };
  auto* validate_cmd = sub("validate", "check a labelled interval");
  validate_cmd->add_option("track", input, "track file")->required();
  auto* build_cmd = sub("build", "construct the diagram");
  build_cmd->add_option("input", input, "track file, PD file, PD[...] or braid:WORD")->required();
  auto* bounds_cmd = sub("bounds", "genus and Gordian bounds of a track knot");
  bounds_cmd->add_option("track", input, "track file")->required();
  auto* homfly_cmd = sub("homfly", "HOMFLY polynomial");
  homfly_cmd->add_option("input", input, "track file, PD file, PD[...] or braid:WORD")->required();
  auto* morton_cmd = sub("morton", "check the Morton bounds on the v-range");
  morton_cmd->add_option("input", input, "track file, PD file, PD[...] or braid:WORD")->required();
  auto* certify_cmd = sub("certify", "find or check a quasipositivity certificate");
  certify_cmd->add_option("input", input, "track file, PD file, PD[...] or braid:WORD")->required();
  certify_cmd->add_option("--check", check, "certificate text to validate instead of searching");
  auto* braid_cmd = sub("braid", "braid form of a diagram");
  braid_cmd->add_option("input", input, "track file, PD file, PD[...] or braid:WORD")->required();
  braid_cmd->add_flag("--qp", qp, "also factor into quasipositive bands (experimental)");
  auto* qp_cmd = sub("qp-parse", "parse a quasipositive braid word");
  qp_cmd->add_option("word", input, "word such as (abA)b(Abba)")->required();
  qp_cmd->add_option("--strands", strands, "strand count")->check(CLI::PositiveNumber);
  auto* enum_cmd = sub("enumerate", "all labellings of a shape, identified against the catalog");
  enum_cmd->add_option("--shape", input, "track file giving the path and marks")->required();
  auto* identify_cmd = sub("identify", "name a knot by HOMFLY lookup");
  identify_cmd->add_option("input", input, "track file, PD file, PD[...] or braid:WORD")->required();
  auto* ingest_cmd = sub("catalog-ingest", "verify catalog files and write a store");
  ingest_cmd->add_option("files", files, "catalog files")->required();
  ingest_cmd->add_option("--out", out_path, "store output path");
  auto* prop1_cmd = sub("check-prop1", "strong quasipositivity against genus data");
  auto* render_cmd = sub("render", "SVG picture of a track file");
  render_cmd->add_option("track", input, "track file")->required();
  render_cmd->add_flag("--diagram", as_diagram, "draw the band and crossings as well");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    auto* chosen = app.get_subcommands().front();
    if (cfg.format == "svg" && chosen != render_cmd) throw UsageError("--format svg is only available for render");
    if (chosen == validate_cmd) return cmd_validate(input, cfg);
    if (chosen == build_cmd) return cmd_build(input, cfg);
    if (chosen == bounds_cmd) return cmd_bounds(input, cfg);
    if (chosen == homfly_cmd) return cmd_homfly(input, cfg);
    if (chosen == morton_cmd) return cmd_morton(input, cfg);
    if (chosen == certify_cmd) return cmd_certify(input, check, cfg);
    if (chosen == braid_cmd) return cmd_braid(input, qp, cfg);
    if (chosen == qp_cmd) return cmd_qp_parse(input, strands, cfg);
    if (chosen == enum_cmd) return cmd_enumerate(input, cfg);
    if (chosen == identify_cmd) return cmd_identify(input, cfg);
    if (chosen == ingest_cmd) return cmd_catalog_ingest(files, out_path, cfg);
    if (chosen == prop1_cmd) return cmd_check_prop1(cfg);
    if (chosen == render_cmd) return cmd_render(input, as_diagram, cfg);
  } catch (const UsageError& e) {
    std::cerr << "trackforge: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "trackforge: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
