// sepack: command line front end.
//
// Exit codes: 0 success, 1 negative verdict under --strict (or an exhausted enumeration budget),
// 2 invalid input.

#include <CLI11.hpp>
#include <fmt/format.h>

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "sepack/bounds.hpp"
#include "sepack/constructions.hpp"
#include "sepack/enumeration.hpp"
#include "sepack/io.hpp"
#include "sepack/separability.hpp"

namespace fs = std::filesystem;
using json = nlohmann::json;
using namespace sepack;

namespace {

constexpr int kOk = 0;
constexpr int kNegative = 1;
constexpr int kInvalid = 2;

struct Common {
  bool strict = false;
  std::string log;
  double contact_tol = 1e-9;
  double angle_tol = 1e-9;

  TolerancePolicy tol() const {
    TolerancePolicy t{contact_tol, angle_tol};
    t.validate();
    return t;
  }
};

/// Text written to stdout plus the fields recorded in the run log.
struct Outcome {
  std::ostringstream out;
  json record = json::object();
  int code = kOk;

  void kv(const std::string& key, const json& value) {
    out << key << ": " << (value.is_string() ? value.get<std::string>() : value.dump()) << '\n';
    record[key] = value;
  }
};

void emit(const std::string& text, const std::string& path) {
  if (path.empty() || path == "-") {
    std::cout << text;
  } else {
    atomic_write(path, text);
  }
}

std::string verdict(VerdictKind k) { return std::string(to_string(k)); }

LatticePoint parse_corner(const std::string& s) {
  const auto comma = s.find(',');
  if (comma == std::string::npos) throw InputError("corner must be given as x,y");
  try {
    return {std::stoi(s.substr(0, comma)), std::stoi(s.substr(comma + 1))};
  } catch (const std::exception&) {
    throw InputError("corner must be given as x,y");
  }
}

fs::path catalog_dir(const std::string& flag) {
  if (!flag.empty()) return flag;
  if (const char* env = std::getenv("SEPACK_CATALOG"); env && *env) return env;
  return "catalog";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Contact graphs and separability of congruent ball packings"};
  app.require_subcommand(1);
  Common common;
  app.add_flag("--strict", common.strict, "Exit with status 1 on a negative verdict");
  app.add_option("--log", common.log, "Append a JSON record of this run to the given file");
  app.add_option("--contact-tol", common.contact_tol, "Absolute tangency tolerance");
  app.add_option("--angle-tol", common.angle_tol, "Tolerance on inner products of unit vectors");

  std::string input, output;

  auto* contacts = app.add_subcommand("contacts", "Contact number, degrees and edges of a packing");
  bool list_edges = false;
  contacts->add_option("file", input, "Packing file")->required();
  contacts->add_flag("--edges", list_edges, "Print every contact pair");

  auto* check_ts = app.add_subcommand("check-ts", "Decide total separability (d = 2)");
  check_ts->add_option("file", input, "Packing file")->required();

  auto* check_ls = app.add_subcommand("check-ls", "Decide local separability");
  std::string ls_mode = "exact";
  check_ls->add_option("file", input, "Packing file")->required();
  check_ls->add_option("--mode", ls_mode, "exact (d = 2) or obtuse (any d, necessary test only)")
      ->check(CLI::IsMember({"exact", "obtuse"}));

  auto* bound = app.add_subcommand("bound", "Evaluate a contact number upper bound");
  std::string formula, delta_source = "hales";
  std::int64_t bound_n = 0;
  int bound_d = 3;
  std::optional<double> delta_value;
  std::uint64_t bound_samples = 1'000'000, seed = 1;
  unsigned jobs = 1;
  bound->add_option("--formula", formula)
      ->required()
      ->check(CLI::IsMember({"harborth", "ls2", "ts3", "ls3", "general3", "main", "beszsz", "lattice"}));
  bound->add_option("--n", bound_n)->required();
  bound->add_option("--d", bound_d);
  bound->add_option("--delta-source", delta_source)->check(CLI::IsMember({"rogers", "hales", "custom"}));
  bound->add_option("--delta-value", delta_value);
  bound->add_option("--samples", bound_samples, "Monte Carlo samples for --delta-source rogers");
  bound->add_option("--seed", seed);
  bound->add_option("--jobs", jobs);

  auto* sigma = app.add_subcommand("sigma", "Monte Carlo estimate of the simplex covering density");
  int sigma_d = 3;
  std::uint64_t sigma_samples = 1'000'000;
  sigma->add_option("--d", sigma_d)->required();
  sigma->add_option("--samples", sigma_samples);
  sigma->add_option("--seed", seed);
  sigma->add_option("--jobs", jobs);

  auto* construct = app.add_subcommand("construct", "Write a generated packing");
  std::string kind, corner;
  int cn = 0, cd = 2, side = 2;
  construct->add_option("kind", kind)
      ->required()
      ->check(CLI::IsMember({"basic-polyomino", "grid", "cross-star", "pentagon", "pendant"}));
  construct->add_option("--n", cn, "Number of disks (basic-polyomino, pentagon, pendant)");
  construct->add_option("--d", cd, "Dimension (grid, cross-star)");
  construct->add_option("--side", side, "Points per axis (grid)");
  construct->add_option("--corner", corner, "Pentagon corner x,y (default: first admissible)");
  construct->add_option("-o,--output", output, "Output file (default stdout)");

  auto* enumerate = app.add_subcommand("enumerate", "Exact maximum contact number over Z^2 subsets");
  int en = 0;
  double budget_seconds = 60.0;
  std::uint64_t max_forms = 10'000'000;
  std::string catalog_flag;
  bool store_witnesses = false;
  enumerate->add_option("--n", en)->required();
  enumerate->add_option("--budget", budget_seconds, "Time limit in seconds");
  enumerate->add_option("--max-forms", max_forms);
  enumerate->add_option("--jobs", jobs);
  enumerate->add_flag("--store", store_witnesses, "Store every witness in the catalog");
  enumerate->add_option("--catalog", catalog_flag, "Catalog directory (default $SEPACK_CATALOG or ./catalog)");

  auto* classify_cmd = app.add_subcommand("classify", "Crystallization case of an extremal planar packing");
  classify_cmd->add_option("file", input, "Packing file")->required();

  auto* render = app.add_subcommand("render", "SVG drawing of a planar packing");
  SvgOptions svg;
  bool with_certificates = false;
  render->add_option("file", input, "Packing file")->required();
  render->add_option("-o,--output", output, "SVG file (default stdout)");
  render->add_option("--scale", svg.scale, "Pixels per unit length");
  render->add_flag("--labels", svg.show_labels, "Draw disk indices");
  render->add_flag("--centers", svg.show_centers, "Mark disk centers");
  render->add_flag("--certificates", with_certificates, "Overlay one separating line per pair (TS packings)");

  auto* catalog = app.add_subcommand("catalog", "Store packings in or verify a catalog directory");
  catalog->require_subcommand(1);
  catalog->add_option("--catalog", catalog_flag, "Catalog directory (default $SEPACK_CATALOG or ./catalog)");
  auto* store = catalog->add_subcommand("store", "Store a packing file");
  store->add_option("file", input, "Packing file")->required();
  auto* verify = catalog->add_subcommand("verify", "Re-check every entry");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kOk : kInvalid;
  }

  const auto started = std::chrono::steady_clock::now();
  Outcome o;
  std::string command;
  for (auto* sub : app.get_subcommands()) command = sub->get_name();
  if (catalog->parsed()) command += store->parsed() ? " store" : " verify";

  try {
    const TolerancePolicy tol = common.tol();

    if (contacts->parsed()) {
      const PackingInstance p = read_packing(input, tol);
      const ContactGraph g = contact_graph(p, tol);
      o.kv("n", p.size());
      o.kv("d", p.dimension);
      o.kv("contacts", g.edge_count());
      o.kv("max_degree", g.max_degree());
      o.kv("connected", g.connected());
      if (list_edges) {
        for (const auto& [i, j] : g.edges()) o.out << "edge: " << i << ' ' << j << '\n';
      }
    } else if (check_ts->parsed()) {
      const PackingInstance p = read_packing(input, tol);
      const SeparabilityVerdict v = is_ts(p, tol);
      o.kv("verdict", verdict(v.kind));
      if (v.witness_pair) o.kv("witness_pair", {v.witness_pair->first, v.witness_pair->second});
      if (v.positive()) o.kv("certificates", v.certificates.size());
      if (!v.positive() && common.strict) o.code = kNegative;
    } else if (check_ls->parsed()) {
      const PackingInstance p = read_packing(input, tol);
      const ContactGraph g = contact_graph(p, tol);
      const SeparabilityVerdict v = is_ls(p, g, tol, ls_mode == "exact" ? LsMode::exact2d : LsMode::obtuse);
      o.kv("mode", ls_mode);
      o.kv("verdict", verdict(v.kind));
      if (v.witness_center) o.kv("witness_center", *v.witness_center);
      if (v.witness_pair) o.kv("witness_pair", {v.witness_pair->first, v.witness_pair->second});
      if (!v.positive() && common.strict) o.code = kNegative;
    } else if (bound->parsed()) {
      BoundReport r;
      if (formula == "harborth") {
        r = planar_bounds(bound_n, PlanarBound::harborth);
      } else if (formula == "ls2") {
        r = planar_bounds(bound_n, PlanarBound::ls2);
      } else if (formula == "ts3") {
        r = bounds_3d(bound_n, Bound3D::ts);
      } else if (formula == "ls3") {
        r = bounds_3d(bound_n, Bound3D::ls_hales);
      } else if (formula == "general3") {
        r = bounds_3d(bound_n, Bound3D::general);
      } else if (formula == "beszsz") {
        r = beszsz_ts_bound(bound_n, bound_d);
      } else if (formula == "lattice") {
        const LatticeBounds lb = lattice_bounds(bound_n, bound_d);
        r = lb.upper;
        o.kv("lattice_side", lb.side);
        o.kv("lattice_lower", lb.lower);
      } else {
        DensityEstimate est;
        if (delta_source == "hales") {
          est = DensityEstimate::hales();
        } else if (delta_source == "custom") {
          if (!delta_value) throw InputError("--delta-source custom needs --delta-value");
          est = DensityEstimate::custom(bound_d, *delta_value);
        } else {
          const SigmaEstimate s = rogers_sigma(bound_d, bound_samples, seed, jobs);
          o.record["sigma"] = {{"value", s.value}, {"std_error", s.std_error}, {"samples", s.samples}, {"seed", s.seed}};
          est = DensityEstimate::from_sigma(s);
        }
        r = main_ls_bound(bound_n, bound_d, est);
      }
      o.out << r.to_key_value();
      o.record["formula"] = r.formula_id;
      o.record["raw"] = r.raw;
      o.record["value"] = r.value;
      o.record["boundary"] = r.boundary;
      o.record["parameters"] = r.parameters;
    } else if (sigma->parsed()) {
      const SigmaEstimate s = rogers_sigma(sigma_d, sigma_samples, seed, jobs);
      o.kv("d", s.dimension);
      o.out << fmt::format("sigma: {:.8f}\nstd_error: {:.8f}\n", s.value, s.std_error);
      o.record["sigma"] = s.value;
      o.record["std_error"] = s.std_error;
      o.kv("samples", s.samples);
      o.kv("hits", s.hits);
      o.kv("seed", s.seed);
    } else if (construct->parsed()) {
      PackingFile f;
      if (kind == "basic-polyomino") {
        f.packing = basic_polyomino(cn).to_packing();
        f.meta.name = fmt::format("basic polyomino, n = {}", cn);
        f.meta.expected_contacts = basic_polyomino_edge_count(cn);
      } else if (kind == "grid") {
        f.packing = grid_packing(cd, side);
        f.meta.name = fmt::format("grid {}^{}", side, cd);
      } else if (kind == "cross-star") {
        f.packing = cross_polytope_star(cd);
        f.meta.name = fmt::format("cross-polytope star, d = {}", cd);
        f.meta.expected_contacts = static_cast<std::size_t>(2 * cd);
      } else if (kind == "pentagon") {
        if (cn < 6) throw InputError("pentagon needs --n >= 6");
        const LatticeConfig base = basic_polyomino(cn - 2);
        LatticePoint at;
        if (corner.empty()) {
          const auto corners = pentagon_corners(base);
          if (corners.empty()) throw ConstructionError("basic polyomino of " + std::to_string(cn - 2) + " points has no pentagon corner");
          at = corners.front();
        } else {
          at = parse_corner(corner);
        }
        f.packing = pentagon_augmented(base, at);
        f.meta.name = fmt::format("pentagon on basic polyomino, n = {}, corner ({}, {})", cn, at.x, at.y);
        f.meta.expected_contacts = basic_polyomino_edge_count(cn - 2) + 3;
      } else {
        if (cn < 5) throw InputError("pendant needs --n >= 5");
        f.packing = pendant_augmented(basic_polyomino(cn - 1));
        f.meta.name = fmt::format("pendant on basic polyomino, n = {}", cn);
        f.meta.expected_contacts = basic_polyomino_edge_count(cn - 1) + 1;
      }
      f.meta.source = "sepack construct " + kind;
      emit(serialize_packing(f), output);
      o.record["kind"] = kind;
      o.record["n"] = f.packing.size();
      if (!output.empty() && output != "-") o.kv("written", output);
    } else if (enumerate->parsed()) {
      SearchBudget budget;
      budget.time_limit = std::chrono::milliseconds(static_cast<long long>(budget_seconds * 1000.0));
      budget.max_forms = max_forms;
      try {
        const LatticeSearchResult r = max_contact_lattice(en, budget, jobs);
        o.kv("n", r.n);
        o.kv("max_contacts", r.max_edges);
        o.kv("formula", max_planar_ls_contacts(r.n));
        o.kv("witnesses", r.witnesses.size());
        o.kv("forms_examined", r.forms_examined);
        o.kv("free_forms", r.forms_per_size.back());
        for (const auto& w : r.witnesses) {
          std::string line;
          for (const auto& q : w) line += fmt::format("({},{})", q.x, q.y);
          o.out << "witness: " << line << '\n';
        }
        if (store_witnesses) {
          Catalog cat(catalog_dir(catalog_flag), tol);
          for (const auto& w : r.witnesses) {
            PackingFile f{LatticeConfig::from_points(w).to_packing(), {}};
            f.meta.source = "sepack enumerate";
            f.meta.expected_contacts = r.max_edges;
            const StoreResult s = cat.store(f);
            o.out << "stored: " << s.entry.file << (s.deduplicated ? " (existing)" : "") << '\n';
          }
        }
      } catch (const BudgetExceeded& e) {
        o.kv("budget_exceeded", true);
        o.kv("completed_size", e.completed_size());
        o.kv("forms_examined", e.forms_examined());
        o.kv("best_contacts_at_completed_size", e.best_edges_at_completed());
        o.code = kNegative;
      }
    } else if (classify_cmd->parsed()) {
      const PackingInstance p = read_packing(input, tol);
      const ContactGraph g = contact_graph(p, tol);
      const ClassificationResult c = classify(p, tol);
      o.kv("n", c.n);
      o.kv("contacts", c.contacts);
      o.kv("ls", verdict(is_ls(p, g, tol, LsMode::exact2d).kind));
      o.kv("ts", verdict(is_ts(p, tol).kind));
      o.kv("label", std::string(to_string(c.label)));
      o.kv("reason", c.reason);
      if (c.label == CrystalCase::other && common.strict) o.code = kNegative;
    } else if (render->parsed()) {
      const PackingInstance p = read_packing(input, tol);
      const ContactGraph g = contact_graph(p, tol);
      if (with_certificates) {
        const SeparabilityVerdict v = is_ts(p, tol);
        svg.certificates = v.certificates;
      }
      const std::string doc = render_svg(p, g, svg);
      emit(doc, output);
      o.record["bytes"] = doc.size();
      o.record["hash"] = hash_hex(fnv1a64(doc));
      if (!output.empty() && output != "-") o.kv("written", output);
    } else if (store->parsed()) {
      Catalog cat(catalog_dir(catalog_flag), tol);
      const StoreResult s = cat.store(read_packing_file(input, tol));
      o.kv("file", s.entry.file);
      o.kv("hash", s.entry.hash);
      o.kv("contacts", s.entry.contacts);
      o.kv("label", s.entry.label);
      o.kv("ts", s.entry.ts);
      o.kv("ls", s.entry.ls);
      o.kv("deduplicated", s.deduplicated);
    } else if (verify->parsed()) {
      const VerifyReport r = Catalog(catalog_dir(catalog_flag), tol).verify();
      o.kv("checked", r.checked);
      o.kv("drift", r.drift.size());
      for (const auto& d : r.drift) o.out << "drift: " << d.file << ": " << d.message << '\n';
      o.record["drift_files"] = json::array();
      for (const auto& d : r.drift) o.record["drift_files"].push_back(d.file);
      if (!r.ok() && common.strict) o.code = kNegative;
    }
  } catch (const BudgetExceeded& e) {
    std::cerr << "error: " << e.what() << '\n';
    o.code = kNegative;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    o.record["error"] = e.what();
    o.code = kInvalid;
  }

  std::cout << o.out.str();
  if (!common.log.empty()) {
    json rec;
    rec["timestamp"] = utc_timestamp();
    rec["command"] = command;
    rec["argv"] = std::vector<std::string>(argv + 1, argv + argc);
    rec["exit_code"] = o.code;
    rec["elapsed_ms"] =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - started).count();
    rec["result"] = o.record;
    try {
      append_log_line(common.log, rec.dump());
    } catch (const std::exception& e) {
      std::cerr << "warning: " << e.what() << '\n';
    }
  }
  return o.code;
}
