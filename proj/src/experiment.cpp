#include "fracac/experiment.hpp"

#include <algorithm>
#include <bit>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <iostream>
#include <map>
#include <sstream>

#include <json.hpp>

#include "fracac/cosine_family.hpp"
#include "fracac/descent.hpp"
#include "fracac/double_well.hpp"
#include "fracac/energy.hpp"
#include "fracac/rng.hpp"

namespace fracac {

namespace {

constexpr int kMaxMemberSeeds = 24;
constexpr int kRandomSeeds = 8;
constexpr int kConstrainedRandomSeeds = 3;
constexpr int kDescentMaxIters = 20000;
constexpr double kBracketTol = 1e-6;

std::string fmt17(double x) {
  if (std::isnan(x)) return "nan";
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

std::uint64_t row_seed(const ExperimentConfig& cfg, double s, double eps, int k) {
  std::uint64_t h = mix64(cfg.seed);
  h = mix64(h ^ std::bit_cast<std::uint64_t>(s));
  h = mix64(h ^ std::bit_cast<std::uint64_t>(eps));
  h = mix64(h ^ std::uint64_t(k));
  return h;
}

Field random_field(const Grid1D& grid, std::mt19937_64& gen) {
  Eigen::ArrayXd v(grid.num_cells);
  for (Eigen::Index i = 0; i < grid.num_cells; ++i) v[i] = uniform(gen, -1.0, 1.0);
  return Field(grid, std::move(v));
}

struct Sweep {
  const ExperimentConfig& cfg;
  Grid1D grid;
  std::vector<double> s_values, eps_values;
  std::vector<int> k_values;
  std::map<double, KernelMatrix> kernels;  // keyed by s; grid is fixed

  explicit Sweep(const ExperimentConfig& c)
      : cfg(c), grid(c.domain_a, c.domain_b, c.num_cells) {
    const auto errors = c.validate();
    if (!errors.empty()) {
      std::ostringstream msg;
      msg << "invalid experiment config:";
      for (const std::string& e : errors) msg << "\n  " << e;
      throw std::invalid_argument(msg.str());
    }
    s_values = c.s_list;
    std::sort(s_values.begin(), s_values.end());
    s_values.erase(std::unique(s_values.begin(), s_values.end()), s_values.end());
    eps_values = c.eps_list;
    std::sort(eps_values.begin(), eps_values.end(), std::greater<>());
    eps_values.erase(std::unique(eps_values.begin(), eps_values.end()), eps_values.end());
    k_values = c.k_list;
    std::sort(k_values.begin(), k_values.end());
    k_values.erase(std::unique(k_values.begin(), k_values.end()), k_values.end());
  }

  const KernelMatrix& kernel_for(const RegimeParams& params) {
    auto it = kernels.find(params.s);
    if (it == kernels.end()) it = kernels.emplace(params.s, build_kernel(grid, params)).first;
    return it->second;
  }

  ReportRow base_row(double s, double eps, int k, const RegimeParams& params) {
    ReportRow row;
    row.s = s;
    row.eps = eps;
    row.k = k;
    row.regime = params.regime;
    row.seed = cfg.seed;
    row.num_cells = cfg.num_cells;
    row.sample_count = cfg.sample_count;
    return row;
  }

  double zero_energy(const RegimeParams& params) {
    const KernelMatrix& km = kernel_for(params);
    return energy(Field::constant(grid, 0.0), km, params, DoubleWell::quartic());
  }

  void fill_bound(ReportRow& row, const RegimeParams& params) {
    const KernelMatrix& km = kernel_for(params);
    row.empirical_bound = empirical_bound(row.k, row.eps, grid, params, DoubleWell::quartic(),
                                          cfg.sample_count, cfg.seed, &km);
  }

  void fill_critical_search(ReportRow& row, const RegimeParams& params) {
    const KernelMatrix& km = kernel_for(params);
    const DoubleWell well = DoubleWell::extended();
    DescentOptions opts;
    opts.max_iters = kDescentMaxIters;
    opts.grad_tol = cfg.grad_tol;

    std::mt19937_64 gen(row_seed(cfg, row.s, row.eps, row.k));

    // Free descents: family members (signed axes come first in the sample
    // order) plus seeded random fields.
    const auto members =
        sample_sphere(row.k, std::min(cfg.sample_count, kMaxMemberSeeds), cfg.seed);
    std::vector<Field> seeds;
    for (const CosinePoly& p : members) seeds.push_back(build_member(p, row.eps, grid));
    for (int r = 0; r < kRandomSeeds; ++r) seeds.push_back(random_field(grid, gen));

    std::vector<CriticalPointRecord> converged;
    for (std::size_t i = 0; i < seeds.size(); ++i) {
      try {
        CriticalPointRecord rec = descend(seeds[i], km, params, well, opts);
        if (rec.converged) {
          rec.source_index = int(i);
          converged.push_back(std::move(rec));
        }
      } catch (const numerical_error& err) {
        std::cerr << "[fracac] descent from seed " << i << " failed (s=" << row.s
                  << ", eps=" << row.eps << ", k=" << row.k << "): " << err.what() << "\n";
      }
    }

    const auto pairs = dedup_pairs(converged, km);
    row.pair_count = int(pairs.size());
    row.pair_energies.clear();
    for (const CriticalPair& p : pairs) row.pair_energies.push_back(p.rep.energy_value);
    std::cerr << "[fracac] s=" << row.s << " eps=" << row.eps << " k=" << row.k
              << ": pair_count " << row.pair_count << (row.pair_count >= row.k ? " >= " : " < ")
              << "k (multiplicity prediction " << (row.pair_count >= row.k ? "met" : "not met")
              << " at this tolerance)\n";

    // Constrained minimum: antisymmetric step, a few members, random fields;
    // constrained_min projects and clamps every seed itself.
    const double midpoint = 0.5 * (grid.a + grid.b);
    std::vector<Field> cseeds;
    cseeds.push_back(field_from_fn(
        grid, [&](double x) { return x < midpoint ? -1.0 : (x > midpoint ? 1.0 : 0.0); }));
    for (std::size_t i = 0; i < seeds.size() && i < 4; ++i) cseeds.push_back(seeds[i]);
    for (int r = 0; r < kConstrainedRandomSeeds; ++r) cseeds.push_back(random_field(grid, gen));
    row.m_eps = constrained_min(km, params, well, opts, cseeds).energy_value;

    // Cross-consistency gate: every recorded pair energy must fall inside
    // the [m_eps, empirical_bound] bracket for its row. A violation means
    // the sampled bound or the constrained minimum is unusable (e.g. far too
    // few samples), and the report would be misleading. The tolerance widens
    // with grad_tol: descents stopping at a loose stationarity threshold
    // carry energy fuzz of that order along soft (translation) modes.
    const double bracket_tol = kBracketTol + 10.0 * cfg.grad_tol;
    if (!(row.m_eps > 0.0)) {
      std::ostringstream msg;
      msg << "report invariant violated: m_eps = " << row.m_eps << " is not positive (s="
          << row.s << ", eps=" << row.eps << ", k=" << row.k << ")";
      throw numerical_error(msg.str());
    }
    for (double e : row.pair_energies) {
      if (e < row.m_eps - bracket_tol || e > row.empirical_bound + bracket_tol) {
        std::ostringstream msg;
        msg << "report invariant violated: pair energy " << e << " outside [m_eps - tol, "
            << "empirical_bound + tol] = [" << row.m_eps - bracket_tol << ", "
            << row.empirical_bound + bracket_tol << "] (s=" << row.s << ", eps=" << row.eps
            << ", k=" << row.k << ")";
        throw numerical_error(msg.str());
      }
    }
  }
};

template <class FillRow>
std::vector<ReportRow> sweep_rows(const ExperimentConfig& cfg, bool per_k, FillRow&& fill) {
  Sweep sweep(cfg);
  std::vector<ReportRow> rows;
  for (double s : sweep.s_values) {
    for (double eps : sweep.eps_values) {
      const RegimeParams params = RegimeParams::make(s, eps);
      const std::vector<int> ks = per_k ? sweep.k_values : std::vector<int>{0};
      for (int k : ks) {
        const auto start = std::chrono::steady_clock::now();
        ReportRow row = sweep.base_row(s, eps, k, params);
        row.energy_of_zero = sweep.zero_energy(params);
        fill(sweep, row, params);
        const auto elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(
            std::chrono::steady_clock::now() - start);
        std::cerr << "[fracac] row s=" << s << " eps=" << eps << " k=" << k << " done in "
                  << elapsed.count() << " ms\n";
        rows.push_back(std::move(row));
      }
    }
  }
  return rows;
}

void sort_rows(std::vector<ReportRow>& rows) {
  std::stable_sort(rows.begin(), rows.end(), [](const ReportRow& a, const ReportRow& b) {
    if (a.s != b.s) return a.s < b.s;
    if (a.eps != b.eps) return a.eps > b.eps;
    return a.k < b.k;
  });
}

}  // namespace

const char* experiment_name(ExperimentKind k) {
  switch (k) {
    case ExperimentKind::bounds: return "bounds";
    case ExperimentKind::multiplicity: return "multiplicity";
    case ExperimentKind::zero_scaling: return "zero-scaling";
    case ExperimentKind::all: return "all";
  }
  return "?";
}

std::vector<std::string> ExperimentConfig::validate() const {
  std::vector<std::string> errors;
  if (s_list.empty()) errors.push_back("s_list: must not be empty");
  for (std::size_t i = 0; i < s_list.size(); ++i)
    if (!(s_list[i] > 0.0 && s_list[i] < 1.0)) {
      std::ostringstream m;
      m << "s_list[" << i << "]: s must lie in (0,1), got " << s_list[i];
      errors.push_back(m.str());
    }
  if (eps_list.empty()) errors.push_back("eps_list: must not be empty");
  for (std::size_t i = 0; i < eps_list.size(); ++i)
    if (!(eps_list[i] > 0.0) || eps_list[i] == 1.0) {
      std::ostringstream m;
      m << "eps_list[" << i << "]: eps must be positive and != 1, got " << eps_list[i];
      errors.push_back(m.str());
    }
  if (k_list.empty()) errors.push_back("k_list: must not be empty");
  for (std::size_t i = 0; i < k_list.size(); ++i)
    if (k_list[i] < 1) {
      std::ostringstream m;
      m << "k_list[" << i << "]: k must be >= 1, got " << k_list[i];
      errors.push_back(m.str());
    }
  if (num_cells < 64) errors.push_back("num_cells: must be >= 64");
  if (sample_count < 1) errors.push_back("sample_count: must be >= 1");
  if (!(grad_tol > 0.0)) errors.push_back("grad_tol: must be positive");
  if (!(domain_b > domain_a)) errors.push_back("domain: need domain_b > domain_a");
  return errors;
}

std::vector<ReportRow> run_bound_table(const ExperimentConfig& cfg) {
  auto rows = sweep_rows(cfg, /*per_k=*/true, [](Sweep& sweep, ReportRow& row,
                                                 const RegimeParams& params) {
    sweep.fill_bound(row, params);
  });
  sort_rows(rows);
  return rows;
}

std::vector<ReportRow> run_multiplicity_sweep(const ExperimentConfig& cfg) {
  auto rows = sweep_rows(cfg, /*per_k=*/true, [](Sweep& sweep, ReportRow& row,
                                                 const RegimeParams& params) {
    sweep.fill_bound(row, params);
    sweep.fill_critical_search(row, params);
  });
  sort_rows(rows);
  return rows;
}

std::vector<ReportRow> run_zero_energy_scaling(const ExperimentConfig& cfg) {
  auto rows = sweep_rows(cfg, /*per_k=*/false,
                         [](Sweep&, ReportRow&, const RegimeParams&) {});
  sort_rows(rows);
  return rows;
}

std::vector<ReportRow> run_experiment(ExperimentKind kind, const ExperimentConfig& cfg) {
  switch (kind) {
    case ExperimentKind::bounds: return run_bound_table(cfg);
    case ExperimentKind::multiplicity: return run_multiplicity_sweep(cfg);
    case ExperimentKind::zero_scaling: return run_zero_energy_scaling(cfg);
    case ExperimentKind::all: {
      auto rows = run_zero_energy_scaling(cfg);
      auto full = run_multiplicity_sweep(cfg);
      rows.insert(rows.end(), std::make_move_iterator(full.begin()),
                  std::make_move_iterator(full.end()));
      sort_rows(rows);
      return rows;
    }
  }
  throw std::invalid_argument("run_experiment: unknown experiment kind");
}

std::string report_csv(const std::vector<ReportRow>& rows) {
  std::ostringstream out;
  out << "s,eps,k,regime,empirical_bound,m_eps,pair_count,energy_of_zero,seed,num_cells,"
         "sample_count,runtime_ms\n";
  for (const ReportRow& r : rows) {
    out << fmt17(r.s) << ',' << fmt17(r.eps) << ',' << r.k << ',' << regime_name(r.regime)
        << ',' << fmt17(r.empirical_bound) << ',' << fmt17(r.m_eps) << ',' << r.pair_count
        << ',' << fmt17(r.energy_of_zero) << ',' << r.seed << ',' << r.num_cells << ','
        << r.sample_count << ',' << r.runtime_ms << '\n';
  }
  return out.str();
}

std::string report_json(const ExperimentConfig& cfg, ExperimentKind kind,
                        const std::vector<ReportRow>& rows) {
  nlohmann::ordered_json doc;
  doc["config"] = {
      {"experiment", experiment_name(kind)},
      {"s", cfg.s_list},
      {"eps", cfg.eps_list},
      {"k", cfg.k_list},
      {"cells", cfg.num_cells},
      {"samples", cfg.sample_count},
      {"seed", cfg.seed},
      {"grad_tol", cfg.grad_tol},
      {"domain", {cfg.domain_a, cfg.domain_b}},
      {"format", cfg.format == ReportFormat::csv ? "csv" : "json"},
      {"out", cfg.output_path},
  };
  doc["rows"] = nlohmann::ordered_json::array();
  for (const ReportRow& r : rows) {
    doc["rows"].push_back({
        {"s", r.s},
        {"eps", r.eps},
        {"k", r.k},
        {"regime", regime_name(r.regime)},
        {"empirical_bound", r.empirical_bound},
        {"m_eps", r.m_eps},
        {"pair_count", r.pair_count},
        {"energy_of_zero", r.energy_of_zero},
        {"seed", r.seed},
        {"num_cells", r.num_cells},
        {"sample_count", r.sample_count},
        {"runtime_ms", r.runtime_ms},
    });
  }
  return doc.dump(2) + "\n";
}

}  // namespace fracac
