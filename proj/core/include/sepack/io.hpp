#pragma once

// Packing files, SVG figures, the on-disk catalog of extremal configurations and run logs.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "sepack/geometry.hpp"
#include "sepack/separability.hpp"

namespace sepack {

struct PackingMetadata {
  std::optional<std::string> name;
  std::optional<std::string> source;
  std::optional<std::size_t> expected_contacts;

  bool operator==(const PackingMetadata&) const = default;
};

/// A packing plus optional metadata, as stored on disk.
///
///   {"dimension": 2, "radius": 0.5, "centers": [[0, 0], [1, 0]],
///    "name": "...", "source": "...", "expected_contacts": 1}
struct PackingFile {
  PackingInstance packing;
  PackingMetadata meta;
};

/// Parses and validates. ParseError (with line and field) for malformed JSON, missing or mistyped
/// fields and ragged coordinate lists; InputError for out-of-domain values; InvalidPacking for
/// overlapping centers.
PackingFile parse_packing(std::string_view text, const TolerancePolicy& tol = {});
PackingFile read_packing_file(const std::filesystem::path& path, const TolerancePolicy& tol = {});
PackingInstance read_packing(const std::filesystem::path& path, const TolerancePolicy& tol = {});

/// JSON with coordinates in shortest round-trip form; ends with a newline.
std::string serialize_packing(const PackingFile& file);
void write_packing(const std::filesystem::path& path, const PackingFile& file);

/// Writes to a temporary file in the same directory, then renames over `path`.
void atomic_write(const std::filesystem::path& path, std::string_view content);

// ---------------------------------------------------------------------------
// SVG

/// Defaults: 100 px per unit, margin of one radius, light blue disks with a dark outline, red
/// contact segments, green dashed separators, no center dots or labels, 3 decimals.
struct SvgOptions {
  double scale = 100.0;
  double margin = 1.0;  // in radii
  std::string disk_fill = "#dbe9f6";
  std::string disk_stroke = "#1f4e79";
  std::string edge_stroke = "#c0392b";
  std::string line_stroke = "#2e7d32";
  double stroke_width = 1.5;
  bool show_centers = false;
  bool show_labels = false;
  int precision = 3;
  std::vector<SeparationCertificate> certificates;  // drawn as separating lines
};

/// One <circle> per disk, one <line class="contact"> per edge, one <line class="separator"> per
/// certificate. Identical inputs give identical bytes. UnsupportedDimension unless d = 2.
std::string render_svg(const PackingInstance& p, const ContactGraph& g, const SvgOptions& opts = {});

// ---------------------------------------------------------------------------
// Catalog

/// Isometry-invariant key. Planar packings whose centers are integer multiples of 2r use the
/// canonical lattice form ("Z2:..."); everything else uses dimension, size, the sorted multiset of
/// pairwise distances in units of 2r rounded to 1e-6, and the sorted degree sequence.
std::string canonical_key(const PackingInstance& p, const TolerancePolicy& tol = {});

std::uint64_t fnv1a64(std::string_view data);
/// 16 lowercase hex digits.
std::string hash_hex(std::uint64_t h);

struct CatalogEntry {
  std::string hash;  // hash_hex(fnv1a64(canonical_key))
  std::size_t n = 0;
  std::size_t contacts = 0;
  std::string file;  // relative to the catalog directory
  std::string label;
  std::string ts;  // verdict names, or "n/a" outside the plane
  std::string ls;
  std::string timestamp;  // UTC, ISO 8601

  std::string to_index_line() const;
  static CatalogEntry from_index_line(std::string_view line);
  bool operator==(const CatalogEntry&) const = default;
};

struct StoreResult {
  CatalogEntry entry;
  bool deduplicated = false;  // an entry with the same canonical key already existed
};

struct Drift {
  std::string file;
  std::string message;
};

struct VerifyReport {
  std::size_t checked = 0;
  std::vector<Drift> drift;
  bool ok() const noexcept { return drift.empty(); }
};

/// Directory holding n{N}_c{C}_{hash8}.json packing files and index.txt.
class Catalog {
 public:
  explicit Catalog(std::filesystem::path dir, TolerancePolicy tol = {});

  const std::filesystem::path& dir() const noexcept { return dir_; }
  std::vector<CatalogEntry> entries() const;

  /// Computes contacts and verdicts, writes the packing file and appends the index line.
  /// IntegrityError when the hash is already present for a different canonical key.
  StoreResult store(const PackingFile& file);

  /// Re-reads every entry and reports files that are missing, unreadable, or disagree with the
  /// index on hash, contact count or verdicts.
  VerifyReport verify() const;

 private:
  std::filesystem::path index_path() const { return dir_ / "index.txt"; }

  std::filesystem::path dir_;
  TolerancePolicy tol_;
};

/// Verdict strings stored in the catalog: TS and LS verdict names for d = 2, LS via the obtuse
/// test otherwise with "n/a" for TS.
std::pair<std::string, std::string> catalog_verdicts(const PackingInstance& p, const ContactGraph& g,
                                                     const TolerancePolicy& tol = {});

std::string utc_timestamp();

/// Appends one line (a newline is added) to the run log.
void append_log_line(const std::filesystem::path& path, std::string_view line);

}  // namespace sepack
