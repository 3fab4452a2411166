#include "sepack/io.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <ctime>
#include <fstream>
#include <limits>
#include <map>
#include <random>
#include <sstream>

#include "json.hpp"
#include "sepack/enumeration.hpp"

namespace sepack {
namespace {

using json = nlohmann::json;
namespace fs = std::filesystem;

std::size_t line_at(std::string_view text, std::size_t offset) {
  offset = std::min(offset, text.size());
  return 1 + static_cast<std::size_t>(std::count(text.begin(), text.begin() + static_cast<long>(offset), '\n'));
}

/// Line of the first `"key"` occurrence, 0 when absent.
std::size_t key_line(std::string_view text, std::string_view key) {
  const std::string quoted = "\"" + std::string(key) + "\"";
  const auto pos = text.find(quoted);
  return pos == std::string_view::npos ? 0 : line_at(text, pos);
}

/// Line where centers[index] starts, 0 when it cannot be located.
std::size_t center_line(std::string_view text, std::size_t index) {
  auto pos = text.find("\"centers\"");
  if (pos == std::string_view::npos) return 0;
  pos = text.find('[', pos);
  if (pos == std::string_view::npos) return 0;
  int depth = 0;
  std::size_t seen = 0;
  bool in_string = false;
  for (std::size_t k = pos; k < text.size(); ++k) {
    const char ch = text[k];
    if (in_string) {
      if (ch == '\\') ++k;
      else if (ch == '"') in_string = false;
      continue;
    }
    if (ch == '"') in_string = true;
    if (ch == '[') {
      if (++depth == 2 && seen++ == index) return line_at(text, k);
    } else if (ch == ']') {
      if (--depth == 0) break;
    }
  }
  return 0;
}

std::string read_text(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string number(double v) { return json(v).dump(); }

std::string fixed(double v, int precision) {
  const double half_ulp = 0.5 * std::pow(10.0, -precision);
  if (std::abs(v) < half_ulp) v = 0.0;
  return fmt::format("{:.{}f}", v, precision);
}

std::string xml_escape(std::string_view s) {
  std::string out;
  for (char ch : s) {
    switch (ch) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += ch;
    }
  }
  return out;
}

std::vector<std::string> split_tabs(std::string_view line) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const auto tab = line.find('\t', start);
    out.emplace_back(line.substr(start, tab == std::string_view::npos ? std::string_view::npos : tab - start));
    if (tab == std::string_view::npos) break;
    start = tab + 1;
  }
  return out;
}

std::string entry_label(const PackingInstance& p, const TolerancePolicy& tol) {
  if (p.dimension != 2) return "n/a";
  return std::string(to_string(classify(p, tol).label));
}

}  // namespace

// ---------------------------------------------------------------------------
// Packing files

PackingFile parse_packing(std::string_view text, const TolerancePolicy& tol) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw ParseError(e.what(), line_at(text, e.byte == 0 ? 0 : e.byte - 1), "");
  }
  if (!doc.is_object()) throw ParseError("top level must be a JSON object", 1, "");

  auto require = [&](const char* key) -> const json& {
    const auto it = doc.find(key);
    if (it == doc.end()) throw ParseError("missing field", 0, key);
    return *it;
  };

  PackingFile out;
  const json& dim = require("dimension");
  if (!dim.is_number_integer()) throw ParseError("expected an integer", key_line(text, "dimension"), "dimension");
  out.packing.dimension = dim.get<int>();
  const json& rad = require("radius");
  if (!rad.is_number()) throw ParseError("expected a number", key_line(text, "radius"), "radius");
  out.packing.radius = rad.get<double>();

  const json& centers = require("centers");
  if (!centers.is_array()) throw ParseError("expected an array", key_line(text, "centers"), "centers");
  for (std::size_t i = 0; i < centers.size(); ++i) {
    const json& c = centers[i];
    const std::string field = "centers[" + std::to_string(i) + "]";
    if (!c.is_array()) throw ParseError("expected a coordinate list", center_line(text, i), field);
    if (c.size() != static_cast<std::size_t>(std::max(out.packing.dimension, 0))) {
      throw ParseError("has " + std::to_string(c.size()) + " coordinates, expected " +
                           std::to_string(out.packing.dimension),
                       center_line(text, i), field);
    }
    Point pt;
    pt.reserve(c.size());
    for (const auto& x : c) {
      if (!x.is_number()) throw ParseError("coordinates must be numbers", center_line(text, i), field);
      pt.push_back(x.get<double>());
    }
    out.packing.centers.push_back(std::move(pt));
  }

  if (auto it = doc.find("name"); it != doc.end()) {
    if (!it->is_string()) throw ParseError("expected a string", key_line(text, "name"), "name");
    out.meta.name = it->get<std::string>();
  }
  if (auto it = doc.find("source"); it != doc.end()) {
    if (!it->is_string()) throw ParseError("expected a string", key_line(text, "source"), "source");
    out.meta.source = it->get<std::string>();
  }
  if (auto it = doc.find("expected_contacts"); it != doc.end()) {
    if (!it->is_number_unsigned()) {
      throw ParseError("expected a non-negative integer", key_line(text, "expected_contacts"), "expected_contacts");
    }
    out.meta.expected_contacts = it->get<std::size_t>();
  }

  if (auto v = validate_packing(out.packing, tol)) throw InvalidPacking(*v);
  return out;
}

PackingFile read_packing_file(const fs::path& path, const TolerancePolicy& tol) {
  return parse_packing(read_text(path), tol);
}

PackingInstance read_packing(const fs::path& path, const TolerancePolicy& tol) {
  return read_packing_file(path, tol).packing;
}

std::string serialize_packing(const PackingFile& file) {
  const auto& p = file.packing;
  std::string out = "{\n";
  if (file.meta.name) out += "  \"name\": " + json(*file.meta.name).dump() + ",\n";
  if (file.meta.source) out += "  \"source\": " + json(*file.meta.source).dump() + ",\n";
  out += "  \"dimension\": " + std::to_string(p.dimension) + ",\n";
  out += "  \"radius\": " + number(p.radius) + ",\n";
  if (file.meta.expected_contacts) out += "  \"expected_contacts\": " + std::to_string(*file.meta.expected_contacts) + ",\n";
  out += "  \"centers\": [";
  for (std::size_t i = 0; i < p.size(); ++i) {
    out += i == 0 ? "\n    [" : ",\n    [";
    for (std::size_t k = 0; k < p.centers[i].size(); ++k) {
      if (k) out += ", ";
      out += number(p.centers[i][k]);
    }
    out += "]";
  }
  out += p.size() ? "\n  ]\n}\n" : "]\n}\n";
  return out;
}

void write_packing(const fs::path& path, const PackingFile& file) { atomic_write(path, serialize_packing(file)); }

void atomic_write(const fs::path& path, std::string_view content) {
  const fs::path dir = path.has_parent_path() ? path.parent_path() : fs::path(".");
  std::random_device rd;
  const fs::path tmp = dir / fmt::format(".{}.{:08x}.tmp", path.filename().string(), rd());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw InputError("cannot write " + tmp.string());
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.flush();
    if (!out) {
      fs::remove(tmp);
      throw InputError("write failed for " + tmp.string());
    }
  }
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec) {
    fs::remove(tmp);
    throw InputError("cannot rename onto " + path.string() + ": " + ec.message());
  }
}

// ---------------------------------------------------------------------------
// SVG

std::string render_svg(const PackingInstance& p, const ContactGraph& g, const SvgOptions& opts) {
  if (p.dimension != 2) throw UnsupportedDimension("render_svg", p.dimension);
  if (p.size() == 0) throw InputError("render_svg: empty packing");
  double minx = std::numeric_limits<double>::infinity(), miny = minx;
  double maxx = -minx, maxy = -minx;
  for (std::size_t i = 0; i < p.size(); ++i) {
    const Vec2 c = p.center2(i);
    minx = std::min(minx, c.x);
    maxx = std::max(maxx, c.x);
    miny = std::min(miny, c.y);
    maxy = std::max(maxy, c.y);
  }
  const double pad = p.radius * (1.0 + opts.margin);
  const double width = (maxx - minx + 2 * pad) * opts.scale, height = (maxy - miny + 2 * pad) * opts.scale;
  auto px = [&](double x) { return fixed((x - minx + pad) * opts.scale, opts.precision); };
  auto py = [&](double y) { return fixed((maxy - y + pad) * opts.scale, opts.precision); };
  const int prec = opts.precision;

  std::string out;
  out += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out += fmt::format(
      "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{0}\" height=\"{1}\" viewBox=\"0 0 {0} {1}\">\n",
      fixed(width, prec), fixed(height, prec));
  out += "<g class=\"disks\">\n";
  for (std::size_t i = 0; i < p.size(); ++i) {
    const Vec2 c = p.center2(i);
    out += fmt::format("<circle cx=\"{}\" cy=\"{}\" r=\"{}\" fill=\"{}\" stroke=\"{}\" stroke-width=\"{}\"/>\n", px(c.x),
                       py(c.y), fixed(p.radius * opts.scale, prec), xml_escape(opts.disk_fill),
                       xml_escape(opts.disk_stroke), fixed(opts.stroke_width, prec));
  }
  out += "</g>\n<g class=\"contacts\">\n";
  for (const auto& [i, j] : g.edges()) {
    const Vec2 a = p.center2(i), b = p.center2(j);
    out += fmt::format("<line class=\"contact\" x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"{}\" stroke-width=\"{}\"/>\n",
                       px(a.x), py(a.y), px(b.x), py(b.y), xml_escape(opts.edge_stroke), fixed(opts.stroke_width, prec));
  }
  out += "</g>\n";
  if (!opts.certificates.empty()) {
    const Vec2 mid{(minx + maxx) / 2, (miny + maxy) / 2};
    const double half = std::hypot(maxx - minx + 2 * pad, maxy - miny + 2 * pad);
    out += "<g class=\"separators\">\n";
    for (const auto& cert : opts.certificates) {
      const Vec2 u = cert.line.direction * (1.0 / norm(cert.line.direction));
      const double t = cert.line.offset / norm(cert.line.direction);
      const Vec2 foot = mid + u * (t - dot(u, mid));
      const Vec2 along{-u.y, u.x};
      const Vec2 a = foot + along * half, b = foot - along * half;
      out += fmt::format(
          "<line class=\"separator\" x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"{}\" stroke-width=\"{}\" "
          "stroke-dasharray=\"6 4\"/>\n",
          px(a.x), py(a.y), px(b.x), py(b.y), xml_escape(opts.line_stroke), fixed(opts.stroke_width, prec));
    }
    out += "</g>\n";
  }
  if (opts.show_centers || opts.show_labels) {
    out += "<g class=\"centers\">\n";
    for (std::size_t i = 0; i < p.size(); ++i) {
      const Vec2 c = p.center2(i);
      if (opts.show_centers) {
        out += fmt::format("<circle cx=\"{}\" cy=\"{}\" r=\"{}\" fill=\"{}\"/>\n", px(c.x), py(c.y),
                           fixed(2.0 * opts.stroke_width, prec), xml_escape(opts.disk_stroke));
      }
      if (opts.show_labels) {
        out += fmt::format("<text x=\"{}\" y=\"{}\" font-size=\"{}\" text-anchor=\"middle\">{}</text>\n", px(c.x),
                           py(c.y + 0.35 * p.radius), fixed(0.4 * p.radius * opts.scale, prec), i);
      }
    }
    out += "</g>\n";
  }
  out += "</svg>\n";
  return out;
}

// ---------------------------------------------------------------------------
// Catalog

std::string canonical_key(const PackingInstance& p, const TolerancePolicy& tol) {
  const double unit = 2.0 * p.radius;
  if (p.dimension == 2) {
    LatticeSet pts;
    bool integral = true;
    for (std::size_t i = 0; i < p.size() && integral; ++i) {
      const double x = p.centers[i][0] / unit, y = p.centers[i][1] / unit;
      const double rx = std::round(x), ry = std::round(y);
      integral = std::abs(x - rx) <= tol.contact_tol && std::abs(y - ry) <= tol.contact_tol &&
                 std::abs(rx) < 1e9 && std::abs(ry) < 1e9;
      pts.push_back({static_cast<int>(rx), static_cast<int>(ry)});
    }
    if (integral && !pts.empty()) {
      std::string key = "Z2:";
      for (const auto& q : canonical_lattice_form(pts)) key += fmt::format("{},{};", q.x, q.y);
      return key;
    }
  }
  std::vector<long long> dists;
  for (std::size_t i = 0; i < p.size(); ++i)
    for (std::size_t j = i + 1; j < p.size(); ++j)
      dists.push_back(std::llround(distance(p.centers[i], p.centers[j]) / unit * 1e6));
  std::sort(dists.begin(), dists.end());
  const ContactGraph g = contact_graph(p, tol);
  std::vector<std::size_t> degrees;
  for (std::size_t i = 0; i < p.size(); ++i) degrees.push_back(g.degree(i));
  std::sort(degrees.begin(), degrees.end());
  std::string key = fmt::format("R{}:n{}:d", p.dimension, p.size());
  for (auto v : dists) key += fmt::format("{},", v);
  key += ":g";
  for (auto v : degrees) key += fmt::format("{},", v);
  return key;
}

std::uint64_t fnv1a64(std::string_view data) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : data) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string hash_hex(std::uint64_t h) { return fmt::format("{:016x}", h); }

std::string CatalogEntry::to_index_line() const {
  return fmt::format("{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}", hash, n, contacts, file, label, ts, ls, timestamp);
}

CatalogEntry CatalogEntry::from_index_line(std::string_view line) {
  const auto f = split_tabs(line);
  if (f.size() != 8) throw ParseError("index line has " + std::to_string(f.size()) + " fields, expected 8", 0, "index");
  CatalogEntry e;
  e.hash = f[0];
  try {
    e.n = std::stoul(f[1]);
    e.contacts = std::stoul(f[2]);
  } catch (const std::exception&) {
    throw ParseError("bad count in index line", 0, "index");
  }
  e.file = f[3];
  e.label = f[4];
  e.ts = f[5];
  e.ls = f[6];
  e.timestamp = f[7];
  return e;
}

std::pair<std::string, std::string> catalog_verdicts(const PackingInstance& p, const ContactGraph& g,
                                                     const TolerancePolicy& tol) {
  if (p.dimension != 2) return {"n/a", std::string(to_string(is_ls(p, g, tol, LsMode::obtuse).kind))};
  return {std::string(to_string(is_ts(p, tol).kind)), std::string(to_string(is_ls(p, g, tol, LsMode::exact2d).kind))};
}

Catalog::Catalog(fs::path dir, TolerancePolicy tol) : dir_(std::move(dir)), tol_(tol) { tol_.validate(); }

std::vector<CatalogEntry> Catalog::entries() const {
  std::vector<CatalogEntry> out;
  if (!fs::exists(index_path())) return out;
  std::istringstream in(read_text(index_path()));
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line.front() == '#') continue;
    out.push_back(CatalogEntry::from_index_line(line));
  }
  return out;
}

StoreResult Catalog::store(const PackingFile& file) {
  const PackingInstance& p = file.packing;
  if (auto v = validate_packing(p, tol_)) throw InvalidPacking(*v);
  fs::create_directories(dir_);
  const std::string key = canonical_key(p, tol_);
  const std::string hash = hash_hex(fnv1a64(key));

  auto existing = entries();
  for (const auto& e : existing) {
    if (e.hash != hash) continue;
    const PackingInstance stored = read_packing(dir_ / e.file, tol_);
    if (canonical_key(stored, tol_) != key) {
      throw IntegrityError("catalog hash " + hash + " already used by " + e.file + " with different content");
    }
    return {e, true};
  }

  const ContactGraph g = contact_graph(p, tol_);
  CatalogEntry e;
  e.hash = hash;
  e.n = p.size();
  e.contacts = g.edge_count();
  e.file = fmt::format("n{}_c{}_{}.json", e.n, e.contacts, hash.substr(0, 8));
  e.label = entry_label(p, tol_);
  std::tie(e.ts, e.ls) = catalog_verdicts(p, g, tol_);
  e.timestamp = utc_timestamp();

  write_packing(dir_ / e.file, file);
  std::string index = "# hash\tn\tc\tfile\tlabel\tts\tls\ttimestamp\n";
  for (const auto& old : existing) index += old.to_index_line() + "\n";
  index += e.to_index_line() + "\n";
  atomic_write(index_path(), index);
  return {e, false};
}

VerifyReport Catalog::verify() const {
  VerifyReport report;
  for (const auto& e : entries()) {
    ++report.checked;
    auto fail = [&](std::string msg) { report.drift.push_back({e.file, std::move(msg)}); };
    const fs::path path = dir_ / e.file;
    if (!fs::exists(path)) {
      fail("file missing");
      continue;
    }
    PackingInstance p;
    try {
      p = read_packing(path, tol_);
    } catch (const std::exception& ex) {
      fail(std::string("unreadable: ") + ex.what());
      continue;
    }
    const std::string hash = hash_hex(fnv1a64(canonical_key(p, tol_)));
    if (hash != e.hash) fail("canonical hash " + hash + " differs from index " + e.hash);
    const ContactGraph g = contact_graph(p, tol_);
    if (g.edge_count() != e.contacts) {
      fail("contact count " + std::to_string(g.edge_count()) + " differs from index " + std::to_string(e.contacts));
    }
    const auto [ts, ls] = catalog_verdicts(p, g, tol_);
    if (ts != e.ts) fail("TS verdict " + ts + " differs from index " + e.ts);
    if (ls != e.ls) fail("LS verdict " + ls + " differs from index " + e.ls);
  }
  return report;
}

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

void append_log_line(const fs::path& path, std::string_view line) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::app | std::ios::binary);
  if (!out) throw InputError("cannot open log " + path.string());
  out << line << '\n';
}

}  // namespace sepack
