#pragma once

// Grid scans over complex alpha and a tau list, with CSV/JSON emission and
// checked-in figure manifests.

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ncqo/beamsplitter.hpp"
#include "ncqo/states.hpp"

namespace ncqo {

enum class Quantity { VarY, VarZ, R, SaturationDefect, U, UTilde, Mandel, PhotonDist, Entropy };

std::string_view to_string(Quantity q);
/// Accepts varY, varZ, R, saturation_defect, U, U_tilde, mandel, photon_dist, entropy.
Quantity parse_quantity(std::string_view text);

struct Axis {
  double min = 0.0;
  double max = 0.0;
  int steps = 1;

  /// Evenly spaced, endpoints included; a single step sits at `min`.
  double at(int i) const;
};

/// Parses "min:max:steps".
Axis parse_axis(std::string_view text);

enum class Format { Csv, Json };
Format parse_format(std::string_view text);

struct ScanSpec {
  Quantity quantity = Quantity::Mandel;
  Kind kind = Kind::Coherent;
  Axis re;
  Axis im;
  std::vector<double> tau_list;
  SplitterParams splitter;
  /// Empty means automatic per-cell cutoff.
  std::optional<int> cutoff;
  /// Fock level reported by photon_dist.
  int level = 0;
  SeriesMode mode = SeriesMode::Exact;

  /// Throws ConfigError for empty grids, non-finite ranges, bad tau values,
  /// and for a fixed cutoff that some cell cannot satisfy.
  void validate() const;
  std::size_t cell_count() const;
};

struct ScanRow {
  double re_alpha = 0.0;
  double im_alpha = 0.0;
  double tau = 0.0;
  double value = 0.0;  // NaN for cells that violate a precondition
  bool valid = true;
  bool warn = false;

  bool operator==(const ScanRow& other) const;
};

struct ScanMetadata {
  std::string quantity;
  std::string kind;
  std::string cutoff;  // "auto" or the fixed value
  int max_cutoff_used = 0;
  double theta = 0.0;
  double phi = 0.0;
  int level = 0;
  std::string series_mode;
  std::string version;

  bool operator==(const ScanMetadata&) const = default;
};

struct ScanTable {
  ScanMetadata metadata;
  std::vector<ScanRow> rows;  // tau-major, then im, then re

  bool operator==(const ScanTable&) const = default;
};

/// Worker count from NCQO_THREADS, else the hardware concurrency.
int worker_count();

/// Evaluates every cell. `threads` <= 0 means worker_count(). The table is
/// identical for every thread count.
ScanTable run_scan(const ScanSpec& spec, int threads = 0);

std::string to_csv(const ScanTable& table);
std::string to_json(const ScanTable& table);
/// Rows only; CSV carries no metadata.
std::vector<ScanRow> parse_csv(std::string_view text);
ScanTable parse_json(std::string_view text);

/// Writes the table; throws IoError naming the path on failure.
void emit(const ScanTable& table, Format format, const std::filesystem::path& path);

/// Formats a double with 17 significant digits ("nan" for NaN).
std::string format_double(double x);

/// Runs manifests/<name>.json from `manifest_dir`, writing its outputs into
/// `out_dir`. Returns the written paths.
std::vector<std::filesystem::path> run_figure(const std::string& name,
                                              const std::filesystem::path& manifest_dir,
                                              const std::filesystem::path& out_dir,
                                              int threads = 0);

}  // namespace ncqo
