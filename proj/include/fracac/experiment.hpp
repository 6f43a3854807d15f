#pragma once

#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "fracac/common.hpp"
#include "fracac/regime.hpp"

namespace fracac {

enum class ReportFormat { csv, json };
enum class ExperimentKind { bounds, multiplicity, zero_scaling, all };

const char* experiment_name(ExperimentKind k);

struct ExperimentConfig {
  std::vector<double> s_list{0.75};
  std::vector<double> eps_list{0.1, 0.05};
  std::vector<int> k_list{1, 2};
  int num_cells = 256;
  int sample_count = 64;
  std::uint64_t seed = 1;
  double grad_tol = 1e-4;
  // Domain endpoints. The default (0, pi) hosts the cosine family's pure
  // modes with their interfaces inside the domain and symmetric about the
  // midpoint, which is where descent actually lands on nonconstant profiles.
  double domain_a = 0.0;
  double domain_b = 3.14159265358979323846;
  std::string output_path;  // empty = stdout
  ReportFormat format = ReportFormat::csv;

  // Empty when valid; otherwise one message per offending field.
  std::vector<std::string> validate() const;
};

// One report row per (s, eps, k). Fields a given experiment does not compute
// stay at their defaults: NaN for real metrics (serialized as "nan" in CSV
// and null in JSON) and 0 for pair_count. Zero-energy scaling rows carry
// k = 0 since they do not depend on k. runtime_ms is pinned to 0 in reports
// so identical configs produce identical bytes; measured timings go to
// stderr instead.
struct ReportRow {
  double s = 0.0;
  double eps = 0.0;
  int k = 0;
  Regime regime = Regime::sub_half;
  double empirical_bound = std::numeric_limits<double>::quiet_NaN();
  double m_eps = std::numeric_limits<double>::quiet_NaN();
  int pair_count = 0;
  double energy_of_zero = std::numeric_limits<double>::quiet_NaN();
  std::uint64_t seed = 0;
  int num_cells = 0;
  int sample_count = 0;
  std::int64_t runtime_ms = 0;

  std::vector<double> pair_energies;  // per distinct pair, ascending; not serialized
};

// Max member energy per (s, eps, k) over sample_count sphere samples.
std::vector<ReportRow> run_bound_table(const ExperimentConfig& cfg);

// Full critical-point search per (s, eps, k): empirical bound, constrained
// minimum m_eps, and the count of distinct nonconstant pairs found by
// descending from sampled family members (axes first, at most 24 of them),
// 8 seeded random fields. Individual descent failures are logged to stderr
// and skipped; a row fails only if the constrained minimization has no
// converged start.
std::vector<ReportRow> run_multiplicity_sweep(const ExperimentConfig& cfg);

// Energy of the zero field per (s, eps); rows carry k = 0.
std::vector<ReportRow> run_zero_energy_scaling(const ExperimentConfig& cfg);

// Dispatch; ExperimentKind::all is the union of zero-scaling rows and
// multiplicity-grade rows.
std::vector<ReportRow> run_experiment(ExperimentKind kind, const ExperimentConfig& cfg);

// Rows are emitted sorted by (s ascending, eps descending, k ascending);
// floats are printed with 17 significant digits. Byte-identical for
// identical configs.
std::string report_csv(const std::vector<ReportRow>& rows);
std::string report_json(const ExperimentConfig& cfg, ExperimentKind kind,
                        const std::vector<ReportRow>& rows);

}  // namespace fracac
