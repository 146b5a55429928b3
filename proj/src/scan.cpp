#include "ncqo/scan.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <sstream>
#include <thread>

#include "json.hpp"

#include "ncqo/error.hpp"
#include "ncqo/observables.hpp"

namespace ncqo {

namespace {

using nlohmann::json;

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

bool needs_state(Quantity q) { return q == Quantity::PhotonDist || q == Quantity::Entropy; }

double parse_double(std::string_view text) {
  double x = 0.0;
  const auto* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, x);
  if (ec != std::errc() || ptr != end) {
    throw ConfigError("not a number: '" + std::string(text) + "'");
  }
  return x;
}

int parse_int(std::string_view text) {
  int x = 0;
  const auto* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, x);
  if (ec != std::errc() || ptr != end) {
    throw ConfigError("not an integer: '" + std::string(text) + "'");
  }
  return x;
}

std::vector<std::string_view> split(std::string_view text, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = text.find(sep, start);
    out.push_back(text.substr(start, pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

struct Cell {
  double value = kNaN;
  bool valid = false;
  bool warn = false;
  int cutoff = 0;
};

Cell evaluate(const ScanSpec& spec, Complex alpha, double tau) {
  const StateKind kind{spec.kind, alpha, tau};
  Cell cell;
  try {
    kind.validate();
  } catch (const DegenerateStateError&) {
    return cell;
  }
  cell.warn = perturbative_warning(alpha, tau);
  const QuadratureMoments quad = quad_moments_closed(kind);
  cell.valid = quad.valid();
  try {
    switch (spec.quantity) {
      case Quantity::VarY:
        cell.value = quad.var_Y;
        break;
      case Quantity::VarZ:
        cell.value = quad.var_Z;
        break;
      case Quantity::R:
        cell.value = quad.R;
        break;
      case Quantity::SaturationDefect:
        cell.value = quad.saturation_defect;
        break;
      case Quantity::U:
        cell.value = quad.U;
        break;
      case Quantity::UTilde:
        cell.value = quad.U_tilde;
        break;
      case Quantity::Mandel: {
        const NumberMoments n = mandel_closed(kind);
        cell.value = n.mandel_Q;
        cell.valid = cell.valid && n.defined;
        break;
      }
      case Quantity::PhotonDist: {
        const BuiltState state = build_state(kind, spec.cutoff, spec.mode);
        cell.cutoff = state.cutoff();
        cell.value = spec.level < state.cutoff() ? std::norm(state.vector[spec.level]) : 0.0;
        break;
      }
      case Quantity::Entropy: {
        const BuiltState state = build_state(kind, spec.cutoff, spec.mode);
        cell.cutoff = state.cutoff();
        cell.value =
            linear_entropy_oracle(reduced_density(split_state(state.vector, spec.splitter)));
        break;
      }
    }
  } catch (const Error&) {
    // No cell may abort the scan; failures become sentinels.
    cell.value = kNaN;
    cell.valid = false;
  }
  return cell;
}

std::string mode_name(SeriesMode mode) {
  return mode == SeriesMode::Exact ? "exact" : "first-order";
}

json number_or_null(double x) { return std::isnan(x) ? json(nullptr) : json(x); }

double number_or_nan(const json& j) { return j.is_null() ? kNaN : j.get<double>(); }

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out << text;
  out.close();
  if (!out) throw IoError("write failed for " + path.string());
}

Axis axis_from_json(const json& j) {
  if (j.is_string()) return parse_axis(j.get<std::string>());
  return {j.at(0).get<double>(), j.at(1).get<double>(), j.at(2).get<int>()};
}

ScanSpec spec_from_json(const json& j) {
  ScanSpec spec;
  spec.quantity = parse_quantity(j.at("quantity").get<std::string>());
  spec.kind = parse_kind(j.at("kind").get<std::string>());
  spec.re = axis_from_json(j.at("re"));
  spec.im = axis_from_json(j.at("im"));
  spec.tau_list = j.at("tau").get<std::vector<double>>();
  spec.splitter.theta = j.value("theta", spec.splitter.theta);
  spec.splitter.phi = j.value("phi", spec.splitter.phi);
  spec.level = j.value("level", 0);
  if (j.contains("cutoff") && j.at("cutoff").is_number_integer()) {
    spec.cutoff = j.at("cutoff").get<int>();
  }
  return spec;
}

std::string distribution_csv(const FockVector& state) {
  std::string out = "n,probability\n";
  const std::vector<double> p = photon_distribution(state);
  for (std::size_t n = 0; n < p.size(); ++n) {
    out += std::to_string(n) + "," + format_double(p[n]) + "\n";
  }
  return out;
}

}  // namespace

std::string_view to_string(Quantity q) {
  switch (q) {
    case Quantity::VarY:
      return "varY";
    case Quantity::VarZ:
      return "varZ";
    case Quantity::R:
      return "R";
    case Quantity::SaturationDefect:
      return "saturation_defect";
    case Quantity::U:
      return "U";
    case Quantity::UTilde:
      return "U_tilde";
    case Quantity::Mandel:
      return "mandel";
    case Quantity::PhotonDist:
      return "photon_dist";
    case Quantity::Entropy:
      return "entropy";
  }
  return "?";
}

Quantity parse_quantity(std::string_view text) {
  for (Quantity q : {Quantity::VarY, Quantity::VarZ, Quantity::R, Quantity::SaturationDefect,
                     Quantity::U, Quantity::UTilde, Quantity::Mandel, Quantity::PhotonDist,
                     Quantity::Entropy}) {
    if (to_string(q) == text) return q;
  }
  throw ConfigError("unknown quantity '" + std::string(text) + "'");
}

double Axis::at(int i) const {
  if (steps == 1) return min;
  return min + (max - min) * static_cast<double>(i) / static_cast<double>(steps - 1);
}

Axis parse_axis(std::string_view text) {
  const auto parts = split(text, ':');
  if (parts.size() != 3) throw ConfigError("axis must be min:max:steps, got '" + std::string(text) + "'");
  return {parse_double(parts[0]), parse_double(parts[1]), parse_int(parts[2])};
}

Format parse_format(std::string_view text) {
  if (text == "csv") return Format::Csv;
  if (text == "json") return Format::Json;
  throw ConfigError("unknown format '" + std::string(text) + "'");
}

std::size_t ScanSpec::cell_count() const {
  return static_cast<std::size_t>(re.steps) * im.steps * tau_list.size();
}

void ScanSpec::validate() const {
  for (const Axis* a : {&re, &im}) {
    if (a->steps < 1) throw ConfigError("grid axes need steps >= 1");
    if (!std::isfinite(a->min) || !std::isfinite(a->max)) throw ConfigError("grid ranges must be finite");
  }
  if (tau_list.empty()) throw ConfigError("tau list is empty");
  for (double tau : tau_list) {
    if (!std::isfinite(tau) || tau < 0.0) throw ConfigError("tau values must be finite and >= 0");
  }
  splitter.validate();
  if (level < 0) throw ConfigError("level must be >= 0");
  if (!cutoff || !needs_state(quantity)) return;
  if (*cutoff < 1) throw ConfigError("cutoff must be >= 1");
  for (double tau : tau_list) {
    for (int i = 0; i < im.steps; ++i) {
      for (int r = 0; r < re.steps; ++r) {
        const StateKind k{kind, {re.at(r), im.at(i)}, tau};
        if (kind == Kind::CatOdd && std::abs(k.alpha) < kMinOddCatAlpha) continue;
        if (!cutoff_sufficient(k, *cutoff, mode)) {
          throw ConfigError("cutoff " + std::to_string(*cutoff) + " is too small at alpha = " +
                            format_double(k.alpha.real()) + (k.alpha.imag() < 0 ? "" : "+") +
                            format_double(k.alpha.imag()) + "i, tau = " + format_double(tau) +
                            "; use a larger cutoff or auto");
        }
      }
    }
  }
}

bool ScanRow::operator==(const ScanRow& o) const {
  auto same = [](double a, double b) { return (std::isnan(a) && std::isnan(b)) || a == b; };
  return same(re_alpha, o.re_alpha) && same(im_alpha, o.im_alpha) && same(tau, o.tau) &&
         same(value, o.value) && valid == o.valid && warn == o.warn;
}

int worker_count() {
  if (const char* env = std::getenv("NCQO_THREADS")) {
    try {
      const int n = parse_int(env);
      if (n >= 1) return n;
    } catch (const ConfigError&) {
    }
    throw ConfigError(std::string("NCQO_THREADS must be a positive integer, got '") + env + "'");
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

ScanTable run_scan(const ScanSpec& spec, int threads) {
  spec.validate();
  const std::size_t total = spec.cell_count();
  const std::size_t per_tau = static_cast<std::size_t>(spec.re.steps) * spec.im.steps;
  std::vector<ScanRow> rows(total);
  std::vector<int> cutoffs(total, 0);

  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t idx = next++; idx < total; idx = next++) {
      const std::size_t t = idx / per_tau;
      const int i = static_cast<int>((idx % per_tau) / spec.re.steps);
      const int r = static_cast<int>(idx % spec.re.steps);
      const double tau = spec.tau_list[t];
      const Complex alpha{spec.re.at(r), spec.im.at(i)};
      const Cell cell = evaluate(spec, alpha, tau);
      rows[idx] = {alpha.real(), alpha.imag(), tau, cell.value, cell.valid, cell.warn};
      cutoffs[idx] = cell.cutoff;
    }
  };
  const int n_threads =
      static_cast<int>(std::min<std::size_t>(threads > 0 ? threads : worker_count(), total));
  std::vector<std::thread> pool;
  for (int k = 1; k < n_threads; ++k) pool.emplace_back(work);
  work();
  for (auto& th : pool) th.join();

  ScanTable table;
  table.rows = std::move(rows);
  auto& md = table.metadata;
  md.quantity = to_string(spec.quantity);
  md.kind = to_string(spec.kind);
  md.cutoff = spec.cutoff ? std::to_string(*spec.cutoff) : "auto";
  md.max_cutoff_used = *std::max_element(cutoffs.begin(), cutoffs.end());
  md.theta = spec.splitter.theta;
  md.phi = spec.splitter.phi;
  md.level = spec.level;
  md.series_mode = mode_name(spec.mode);
  md.version = NCQO_VERSION;
  return table;
}

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::general, 17);
  return std::string(buf, ptr);
}

std::string to_csv(const ScanTable& table) {
  std::string out = "re_alpha,im_alpha,tau,value,valid,warn\n";
  for (const ScanRow& row : table.rows) {
    out += format_double(row.re_alpha) + ',' + format_double(row.im_alpha) + ',' +
           format_double(row.tau) + ',' + format_double(row.value) + ',' +
           (row.valid ? '1' : '0') + ',' + (row.warn ? '1' : '0') + '\n';
  }
  return out;
}

std::vector<ScanRow> parse_csv(std::string_view text) {
  std::vector<ScanRow> rows;
  bool header = true;
  for (std::string_view line : split(text, '\n')) {
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty()) continue;
    if (header) {
      if (line != "re_alpha,im_alpha,tau,value,valid,warn") throw ConfigError("unexpected CSV header");
      header = false;
      continue;
    }
    const auto f = split(line, ',');
    if (f.size() != 6) throw ConfigError("CSV row needs 6 fields: '" + std::string(line) + "'");
    auto num = [](std::string_view s) { return s == "nan" ? kNaN : parse_double(s); };
    rows.push_back({num(f[0]), num(f[1]), num(f[2]), num(f[3]), f[4] == "1", f[5] == "1"});
  }
  return rows;
}

std::string to_json(const ScanTable& table) {
  const auto& md = table.metadata;
  json j;
  j["metadata"] = {{"quantity", md.quantity},       {"kind", md.kind},
                   {"cutoff", md.cutoff},           {"max_cutoff_used", md.max_cutoff_used},
                   {"theta", md.theta},             {"phi", md.phi},
                   {"level", md.level},             {"series_mode", md.series_mode},
                   {"version", md.version}};
  json rows = json::array();
  for (const ScanRow& r : table.rows) {
    rows.push_back({{"re_alpha", number_or_null(r.re_alpha)},
                    {"im_alpha", number_or_null(r.im_alpha)},
                    {"tau", number_or_null(r.tau)},
                    {"value", number_or_null(r.value)},
                    {"valid", r.valid},
                    {"warn", r.warn}});
  }
  j["rows"] = std::move(rows);
  return j.dump(1) + "\n";
}

ScanTable parse_json(std::string_view text) {
  ScanTable table;
  try {
    const json j = json::parse(text);
    const json& m = j.at("metadata");
    auto& md = table.metadata;
    md.quantity = m.at("quantity").get<std::string>();
    md.kind = m.at("kind").get<std::string>();
    md.cutoff = m.at("cutoff").get<std::string>();
    md.max_cutoff_used = m.at("max_cutoff_used").get<int>();
    md.theta = m.at("theta").get<double>();
    md.phi = m.at("phi").get<double>();
    md.level = m.at("level").get<int>();
    md.series_mode = m.at("series_mode").get<std::string>();
    md.version = m.at("version").get<std::string>();
    for (const json& r : j.at("rows")) {
      table.rows.push_back({number_or_nan(r.at("re_alpha")), number_or_nan(r.at("im_alpha")),
                            number_or_nan(r.at("tau")), number_or_nan(r.at("value")),
                            r.at("valid").get<bool>(), r.at("warn").get<bool>()});
    }
  } catch (const json::exception& e) {
    throw ConfigError(std::string("malformed scan JSON: ") + e.what());
  }
  return table;
}

void emit(const ScanTable& table, Format format, const std::filesystem::path& path) {
  write_file(path, format == Format::Csv ? to_csv(table) : to_json(table));
}

std::vector<std::filesystem::path> run_figure(const std::string& name,
                                              const std::filesystem::path& manifest_dir,
                                              const std::filesystem::path& out_dir,
                                              int threads) {
  const std::filesystem::path manifest = manifest_dir / (name + ".json");
  if (!std::filesystem::exists(manifest)) throw ConfigError("no manifest " + manifest.string());
  json j;
  try {
    j = json::parse(read_file(manifest));
  } catch (const json::exception& e) {
    throw ConfigError("malformed manifest " + manifest.string() + ": " + e.what());
  }
  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec) throw IoError("cannot create " + out_dir.string() + ": " + ec.message());

  std::vector<std::filesystem::path> written;
  try {
    for (const json& s : j.value("scans", json::array())) {
      const ScanSpec spec = spec_from_json(s);
      const std::filesystem::path out = out_dir / s.at("output").get<std::string>();
      const Format format = out.extension() == ".json" ? Format::Json : Format::Csv;
      emit(run_scan(spec, threads), format, out);
      written.push_back(out);
    }
    for (const json& d : j.value("distributions", json::array())) {
      const StateKind kind{parse_kind(d.at("kind").get<std::string>()),
                           {d.at("alpha").at(0).get<double>(), d.at("alpha").at(1).get<double>()},
                           d.at("tau").get<double>()};
      const BuiltState state = build_state(kind);
      const std::filesystem::path out = out_dir / d.at("output").get<std::string>();
      write_file(out, distribution_csv(state.vector));
      written.push_back(out);
    }
  } catch (const json::exception& e) {
    throw ConfigError("manifest " + manifest.string() + ": " + e.what());
  }
  return written;
}

}  // namespace ncqo
