#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "meshgrad/descent.hpp"
#include "meshgrad/mesh.hpp"

namespace meshgrad {

// Shared knobs of the experiment drivers.
struct ExperimentSpec {
  int dim = 1;
  int order = 1;
  int levels = 0;            // number of ratio-doubling levels (0 = default)
  int max_ratio = 0;         // cap on the grading ratio (0 = default)
  double epsilon = 1e-15;    // descent stopping threshold (absolute)
  std::string out_dir = "out";
  std::uint64_t seed = 0x5eedULL;
  bool dump_matrix = false;
  bool dump_mesh = false;
  bool dump_fields = false;
};

// ---- generic steepest-descent sweep over grading ratios ----

struct SweepRow {
  int level = 0;
  double ratio_target = 1.0;     // spacing-profile grading ratio (power of 2)
  double h_ratio_scalar = 1.0;   // SVD-based global scaling ratio
  int dofs = 0;
  int iters_euclidean = 0;
  int iters_l2 = 0;
  double f_initial = 0.0;
  double kappa = 0.0;            // measured condition number of the mass matrix
  double bound_directional = 0.0;
  double bound_product = 0.0;
  double khat = 0.0;             // analytic iteration estimate
  bool kantorovich_ok = false;   // per-pair contraction with measured kappa
};

struct SweepResult {
  int dim = 1;
  int order = 1;
  std::vector<SweepRow> rows;
  double fitted_slope = 0.0;     // log-log slope of euclidean iterations
  bool l2_all_one = false;
  bool bounds_hold = false;      // kappa <= bound_directional on every row
  bool khat_holds = false;       // iters <= khat on rows with ratio >= 4
  std::vector<OptTrace> euclidean_traces;
};

SweepResult run_generic_sweep(const ExperimentSpec& spec);
void write_sweep_outputs(const SweepResult& result, const ExperimentSpec& spec);

// ---- uniform-refinement iteration table over element orders ----

struct UniformTableResult {
  std::vector<int> orders;                    // 1..5
  std::vector<int> cells_per_level;           // 96, 192, ...
  std::vector<std::vector<int>> iterations;   // [order][level]
  std::vector<std::vector<int>> dofs;         // [order][level]
  bool level_trend_ok = false;  // non-increasing down refinements (+1 slack)
};

UniformTableResult run_uniform_table(const ExperimentSpec& spec);
void write_uniform_table_outputs(const UniformTableResult& result,
                                 const ExperimentSpec& spec);

// ---- PDE-constrained control table ----

struct PoissonRow {
  int h_ratio = 1;
  std::string inner_product;  // euclidean_l2 | riesz_l2 | euclidean_h1 | riesz_h1
  int iterations = 0;
  bool converged = false;
  double final_j = 0.0;
  double final_grad_norm = 0.0;
  double wall_ms = 0.0;
};

struct PoissonTableResult {
  std::vector<PoissonRow> rows;
  bool riesz_flat = false;      // riesz rows: max/min iterations <= 2
  bool euclidean_grows = false; // euclidean rows: last/first >= 3
};

PoissonTableResult run_poisson_table(const ExperimentSpec& spec);
void write_poisson_table_outputs(const PoissonTableResult& result,
                                 const ExperimentSpec& spec);

// ---- analytic-estimate report ----

struct EstimateRow {
  int level = 0;
  double ratio_target = 1.0;
  double kappa = 0.0;
  double bound_directional = 0.0;
  double khat = 0.0;
  int iters_euclidean = 0;
  bool bound_holds = false;
  bool khat_holds = false;
};

struct EstimateReport {
  int dim = 1;
  std::vector<EstimateRow> rows;
  bool all_bounds_hold = false;
  bool all_khat_hold = false;   // on rows with ratio >= 4
};

EstimateReport run_estimate_report(const ExperimentSpec& spec);
void write_estimate_outputs(const EstimateReport& report, const ExperimentSpec& spec);

// ---- shared helpers ----

// Graded mesh family used by the sweeps: starting from a uniform base, the
// left half of the currently finest zone of every axis is halved once per
// level, so the spacing ratio doubles each level.
Mesh sweep_mesh(int dim, int levels, int base_cells_per_axis);

// Control-problem family: unit square, axis-0 grading only.
Mesh axis0_graded_square(int levels, int base_cells_per_axis);

// Least-squares slope of log2 y against log2 x.
double fit_loglog_slope(const std::vector<double>& x, const std::vector<double>& y);

// Minimal log2-log2 scatter/line plot of CSV columns. The plot is generated
// by re-parsing the CSV file, never from separate state.
void write_loglog_svg_from_csv(const std::string& csv_path, const std::string& svg_path,
                               const std::string& x_column,
                               const std::vector<std::string>& y_columns,
                               const std::string& title);

}  // namespace meshgrad
