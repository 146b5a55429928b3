// ncqo: grid scans, cross-check suites and figure manifests.

#include <cstdio>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "ncqo/error.hpp"
#include "ncqo/scan.hpp"
#include "ncqo/validate.hpp"

namespace {

std::vector<double> parse_tau_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != item.size()) throw ncqo::ConfigError("bad tau value '" + item + "'");
    out.push_back(v);
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Nonclassical states of a minimal-length oscillator"};
  app.set_version_flag("--version", std::string(NCQO_VERSION));
  app.require_subcommand(1);

  auto* scan = app.add_subcommand("scan", "Evaluate one quantity over an alpha grid and tau list");
  std::string quantity, kind = "coherent", re = "0:0:1", im = "0:0:1", taus = "0";
  std::string cutoff = "auto", format = "csv", out;
  double theta = 1.5707963267948966, phi = 0.0;
  int level = 0;
  scan->add_option("--quantity", quantity,
                   "varY|varZ|R|saturation_defect|U|U_tilde|mandel|photon_dist|entropy")
      ->required();
  scan->add_option("--kind", kind, "coherent|cat-even|cat-odd")->capture_default_str();
  scan->add_option("--re", re, "min:max:steps")->capture_default_str();
  scan->add_option("--im", im, "min:max:steps")->capture_default_str();
  scan->add_option("--tau", taus, "comma-separated tau values")->capture_default_str();
  scan->add_option("--theta", theta, "splitter angle theta in [0, pi]")->capture_default_str();
  scan->add_option("--phi", phi, "splitter phase phi in [0, 2 pi)")->capture_default_str();
  scan->add_option("--cutoff", cutoff, "Fock cutoff or 'auto'")->capture_default_str();
  scan->add_option("--level", level, "Fock level reported by photon_dist")->capture_default_str();
  scan->add_option("--format", format, "csv|json")->capture_default_str();
  scan->add_option("--out", out, "output path (stdout when omitted)");

  auto* val = app.add_subcommand("validate", "Run the cross-check suites");
  std::string val_level = "fast";
  val->add_option("--level", val_level, "fast|full")->capture_default_str();

  auto* fig = app.add_subcommand("figure", "Run a figure manifest");
  std::string fig_name, fig_out, manifest_dir = NCQO_MANIFEST_DIR;
  fig->add_option("name", fig_name, "fig1 .. fig8")->required();
  fig->add_option("--out", fig_out, "output directory")->required();
  fig->add_option("--manifests", manifest_dir, "manifest directory")->capture_default_str();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*scan) {
      ncqo::ScanSpec spec;
      spec.quantity = ncqo::parse_quantity(quantity);
      spec.kind = ncqo::parse_kind(kind);
      spec.re = ncqo::parse_axis(re);
      spec.im = ncqo::parse_axis(im);
      spec.tau_list = parse_tau_list(taus);
      spec.splitter = {theta, phi};
      spec.level = level;
      if (cutoff != "auto") {
        try {
          spec.cutoff = std::stoi(cutoff);
        } catch (const std::exception&) {
          throw ncqo::ConfigError("cutoff must be an integer or 'auto'");
        }
      }
      const ncqo::Format fmt = ncqo::parse_format(format);
      const ncqo::ScanTable table = ncqo::run_scan(spec);
      if (out.empty()) {
        std::cout << (fmt == ncqo::Format::Csv ? ncqo::to_csv(table) : ncqo::to_json(table));
      } else {
        ncqo::emit(table, fmt, out);
      }
      return 0;
    }
    if (*val) {
      const ncqo::ValidationReport report = ncqo::validate(ncqo::parse_level(val_level));
      std::cout << report.to_text();
      return report.passed() ? 0 : 1;
    }
    if (*fig) {
      for (const auto& path : ncqo::run_figure(fig_name, manifest_dir, fig_out)) {
        std::cout << path.string() << "\n";
      }
      return 0;
    }
  } catch (const ncqo::ConfigError& e) {
    std::cerr << "ncqo: configuration error: " << e.what() << "\n";
    return 2;
  } catch (const ncqo::Error& e) {
    std::cerr << "ncqo: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
