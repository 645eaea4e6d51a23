#pragma once

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <limits>
#include <ostream>
#include <string>
#include <vector>

#include "dynamics.hpp"
#include "entropy.hpp"
#include "errors.hpp"
#include "fock.hpp"

namespace jcentropy {

enum class OutputFormat { kCsv, kJson };

inline OutputFormat parse_format(const std::string& name) {
  if (name == "csv") return OutputFormat::kCsv;
  if (name == "json") return OutputFormat::kJson;
  throw ConfigError("format must be 'csv' or 'json', got '" + name + "'");
}

inline const char* format_name(OutputFormat f) {
  return f == OutputFormat::kCsv ? "csv" : "json";
}

// One scenario = one (alpha, mixing weight) pair swept over a uniform grid
// of dimensionless times. The defaults reproduce the alpha = 4 equal
// mixture on [0, 30].
struct ScenarioConfig {
  Complex alpha{4.0, 0.0};
  double p_plus = 0.5;
  Eigen::Index dim = 64;
  double t_max = 30.0;
  int steps = 600;  // grid has steps + 1 points, spacing t_max / steps
  double pi_tol = kPiTolDefault;
  double truncation_tol = kTruncationTol;
  bool with_oracle = true;
  OutputFormat format = OutputFormat::kCsv;
  std::string out_path = "-";  // "-" writes to stdout

  void validate() const {
    if (p_plus < 0.0 || p_plus > 1.0)
      throw ConfigError("p-plus must lie in [0, 1]");
    if (dim < 1) throw ConfigError("dim must be >= 1");
    if (steps < 1) throw ConfigError("steps must be >= 1");
    if (!(t_max > 0.0)) throw ConfigError("t-max must be positive");
    if (!(pi_tol > 0.0)) throw ConfigError("pi-tol must be positive");
    if (!(truncation_tol > 0.0))
      throw ConfigError("truncation-tol must be positive");
  }

  std::vector<double> t_grid() const {
    std::vector<double> ts(static_cast<size_t>(steps) + 1);
    for (int i = 0; i <= steps; ++i) {
      ts[static_cast<size_t>(i)] = t_max * static_cast<double>(i) / steps;
    }
    return ts;
  }
};

// One grid point of the exported series. Field order matches the CSV
// header. s_f_oracle is NaN when the oracle is switched off.
struct TimeSeriesRecord {
  double t = 0.0;
  double w = 0.0;                 // atomic inversion
  double xi_f = 0.0;              // linear entropy of the mixed field state
  double s_a = 0.0;               // atomic von Neumann entropy
  double s_f_mix_analytic = 0.0;  // closed-form mixed field entropy
  double s_f_oracle = 0.0;        // eigendecomposition entropy
  double pi_cc = 0.0;             // Re <c|Pi|c>
  double pi_ss = 0.0;             // Re <s|Pi|s>
  double pi_cs_abs = 0.0;         // |<c|Pi|s>|
  bool valid = false;             // max parity scalar below pi_tol here
};

// Landmarks pulled out of a finished run. NaN marks quantities the grid or
// the oracle switch cannot supply (e.g. no valid prefix, oracle off).
struct FigureComparison {
  double t_star = std::numeric_limits<double>::quiet_NaN();
  double in_window_max_gap = std::numeric_limits<double>::quiet_NaN();
  double out_window_max_gap = std::numeric_limits<double>::quiet_NaN();
  double out_window_argmax_t = std::numeric_limits<double>::quiet_NaN();
  double revival_center_t = std::numeric_limits<double>::quiet_NaN();
};

struct RunReport {
  ScenarioConfig config;
  FigureComparison figures;
  double wall_seconds = 0.0;
};

struct ScenarioResult {
  std::vector<TimeSeriesRecord> records;
  RunReport report;
};

// t_star is the last time of the maximal valid prefix: the closed-form
// mixture split is trusted from t = 0 up to the first grid point whose
// parity scalars break the tolerance. Gaps |oracle - analytic| are split
// into that prefix and everything after it; the revival center is the
// largest |W| past the collapse plateau (t > 15).
inline FigureComparison compare_figures(
    const std::vector<TimeSeriesRecord>& records) {
  FigureComparison fig;
  size_t n_valid = 0;
  while (n_valid < records.size() && records[n_valid].valid) ++n_valid;
  if (n_valid > 0) fig.t_star = records[n_valid - 1].t;

  double in_gap = -1.0;
  double out_gap = -1.0;
  for (size_t i = 0; i < records.size(); ++i) {
    const TimeSeriesRecord& r = records[i];
    if (std::isnan(r.s_f_oracle)) continue;
    const double gap = std::abs(r.s_f_oracle - r.s_f_mix_analytic);
    if (i < n_valid) {
      in_gap = std::max(in_gap, gap);
    } else if (gap > out_gap) {
      out_gap = gap;
      fig.out_window_argmax_t = r.t;
    }
  }
  if (in_gap >= 0.0) fig.in_window_max_gap = in_gap;
  if (out_gap >= 0.0) fig.out_window_max_gap = out_gap;

  double w_best = -1.0;
  for (const TimeSeriesRecord& r : records) {
    if (r.t > 15.0 && std::abs(r.w) > w_best) {
      w_best = std::abs(r.w);
      fig.revival_center_t = r.t;
    }
  }
  return fig;
}

inline ScenarioResult run_scenario(const ScenarioConfig& config) {
  config.validate();
  const auto start = std::chrono::steady_clock::now();
  const double nan = std::numeric_limits<double>::quiet_NaN();

  ScenarioResult result;
  result.report.config = config;
  const std::vector<double> ts = config.t_grid();
  result.records.reserve(ts.size());
  for (double t : ts) {
    const Branches b =
        evolve_branches(config.alpha, t, config.dim, config.truncation_tol);
    const BranchGram g = branch_gram(b);
    const MixedEntropy mix = mixed_field_entropy(b, config.p_plus,
                                                 config.pi_tol);
    const FockOperator rho_mix = field_density_mixed(b, config.p_plus);

    TimeSeriesRecord rec;
    rec.t = t;
    rec.w = atomic_inversion(b);
    rec.xi_f = linear_entropy(rho_mix);
    rec.s_a = atomic_entropy(atomic_density(b, config.p_plus));
    rec.s_f_mix_analytic = mix.value;
    rec.s_f_oracle = config.with_oracle ? oracle_entropy(rho_mix) : nan;
    rec.pi_cc = g.pi_cc.real();
    rec.pi_ss = g.pi_ss.real();
    rec.pi_cs_abs = std::abs(g.pi_cs);
    rec.valid = mix.valid;
    result.records.push_back(rec);
  }
  result.report.figures = compare_figures(result.records);
  result.report.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  return result;
}

// 17-significant-digit scientific format, enough for exact double
// round-trips; shared by both emitters so the two formats always carry
// identical values.
inline std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.16e", x);
  return buf;
}

inline constexpr const char* kCsvHeader =
    "t,W,xi_F,S_A,S_F_mix_analytic,S_F_oracle,pi_cc,pi_ss,pi_cs_abs,valid";

inline void emit_csv(const std::vector<TimeSeriesRecord>& records,
                     std::ostream& os) {
  os << kCsvHeader << '\n';
  for (const TimeSeriesRecord& r : records) {
    os << format_double(r.t) << ',' << format_double(r.w) << ','
       << format_double(r.xi_f) << ',' << format_double(r.s_a) << ','
       << format_double(r.s_f_mix_analytic) << ','
       << format_double(r.s_f_oracle) << ',' << format_double(r.pi_cc) << ','
       << format_double(r.pi_ss) << ',' << format_double(r.pi_cs_abs) << ','
       << (r.valid ? '1' : '0') << '\n';
  }
}

inline void emit_json(const std::vector<TimeSeriesRecord>& records,
                      std::ostream& os) {
  os << "[\n";
  for (size_t i = 0; i < records.size(); ++i) {
    const TimeSeriesRecord& r = records[i];
    os << "  {\"t\": " << format_double(r.t)
       << ", \"W\": " << format_double(r.w)
       << ", \"xi_F\": " << format_double(r.xi_f)
       << ", \"S_A\": " << format_double(r.s_a)
       << ", \"S_F_mix_analytic\": " << format_double(r.s_f_mix_analytic)
       << ", \"S_F_oracle\": "
       << (std::isnan(r.s_f_oracle) ? std::string("null")
                                    : format_double(r.s_f_oracle))
       << ", \"pi_cc\": " << format_double(r.pi_cc)
       << ", \"pi_ss\": " << format_double(r.pi_ss)
       << ", \"pi_cs_abs\": " << format_double(r.pi_cs_abs)
       << ", \"valid\": " << (r.valid ? "true" : "false") << '}'
       << (i + 1 < records.size() ? "," : "") << '\n';
  }
  os << "]\n";
}

inline void emit(const std::vector<TimeSeriesRecord>& records,
                 OutputFormat format, std::ostream& os) {
  if (format == OutputFormat::kCsv) {
    emit_csv(records, os);
  } else {
    emit_json(records, os);
  }
  os.flush();
  if (!os) throw IoError("emit: stream went bad while writing");
}

// Writes to the path from the config; "-" means stdout. Binary mode keeps
// line endings LF regardless of platform.
inline void emit_to_file(const std::vector<TimeSeriesRecord>& records,
                         OutputFormat format, const std::string& path) {
  if (path == "-") {
    emit(records, format, std::cout);
    return;
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  emit(records, format, out);
  if (!out) throw IoError("write failed for '" + path + "'");
}

// Key: value summary of a run, one datum per line. Goes to stderr in the
// CLI so the data stream stays clean. The config echo is exact (%.17g
// round-trips doubles), so a run can be reproduced from its report.
inline void print_report(const RunReport& report, std::ostream& os) {
  const ScenarioConfig& c = report.config;
  char buf[64];
  auto g17 = [&buf](double x) {
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return std::string(buf);
  };
  os << "alpha-re: " << g17(c.alpha.real()) << '\n'
     << "alpha-im: " << g17(c.alpha.imag()) << '\n'
     << "p-plus: " << g17(c.p_plus) << '\n'
     << "dim: " << c.dim << '\n'
     << "t-max: " << g17(c.t_max) << '\n'
     << "steps: " << c.steps << '\n'
     << "pi-tol: " << g17(c.pi_tol) << '\n'
     << "truncation-tol: " << g17(c.truncation_tol) << '\n'
     << "oracle: " << (c.with_oracle ? "on" : "off") << '\n'
     << "format: " << format_name(c.format) << '\n'
     << "grid-points: " << (c.steps + 1) << '\n'
     << "t-star: " << g17(report.figures.t_star) << '\n'
     << "in-window-max-gap: " << g17(report.figures.in_window_max_gap) << '\n'
     << "out-window-max-gap: " << g17(report.figures.out_window_max_gap)
     << '\n'
     << "out-window-argmax-t: " << g17(report.figures.out_window_argmax_t)
     << '\n'
     << "revival-center-t: " << g17(report.figures.revival_center_t) << '\n'
     << "wall-seconds: " << g17(report.wall_seconds) << '\n';
}

}  // namespace jcentropy
