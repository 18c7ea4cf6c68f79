#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "meshgrad/descent.hpp"
#include "meshgrad/errors.hpp"
#include "meshgrad/experiments.hpp"
#include "meshgrad/mesh.hpp"

#include "testutil.hpp"

using namespace meshgrad;
using testutil::close_abs;
using testutil::close_rel;

namespace {

namespace fs = std::filesystem;

std::vector<std::string> read_lines(const fs::path& p) {
  std::ifstream is(p);
  REQUIRE(is.good());
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(is, line)) lines.push_back(line);
  return lines;
}

std::string drop_last_field(const std::string& line) {
  const std::size_t pos = line.rfind(',');
  return pos == std::string::npos ? line : line.substr(0, pos);
}

double spacing_ratio(const std::vector<double>& s) {
  const auto [lo, hi] = std::minmax_element(s.begin(), s.end());
  return *hi / *lo;
}

double spacing_sum(const std::vector<double>& s) {
  double t = 0.0;
  for (double v : s) t += v;
  return t;
}

fs::path fresh_dir(const std::string& name) {
  const fs::path p = fs::path("exp_out") / name;
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

}  // namespace

TEST_CASE("sweep meshes double the spacing ratio once per level") {
  for (int r = 0; r <= 3; ++r) {
    const Mesh m = sweep_mesh(1, r, 8);
    REQUIRE(m.axis_spacings.size() == 1);
    CHECK(m.cell_count() == 8 + 4 * r);
    CHECK(close_abs(spacing_sum(m.axis_spacings[0]), 1.0, 1e-12));
    CHECK(spacing_ratio(m.axis_spacings[0]) == static_cast<double>(1 << r));
  }

  const Mesh m2 = sweep_mesh(2, 2, 4);
  REQUIRE(m2.axis_spacings.size() == 2);
  for (int axis = 0; axis < 2; ++axis) {
    CHECK(m2.axis_spacings[static_cast<std::size_t>(axis)].size() == 8);
    CHECK(spacing_ratio(m2.axis_spacings[static_cast<std::size_t>(axis)]) == 4.0);
    CHECK(close_abs(spacing_sum(m2.axis_spacings[static_cast<std::size_t>(axis)]),
                    1.0, 1e-12));
  }
  CHECK(m2.cell_count() == 8 * 8 * 2);
}

TEST_CASE("axis-0 graded squares refine a fixed left window") {
  const Mesh flat = axis0_graded_square(0, 16);
  CHECK(flat.cell_count() == 16 * 16 * 2);
  CHECK(spacing_ratio(flat.axis_spacings[0]) == 1.0);

  const Mesh m = axis0_graded_square(2, 16);
  REQUIRE(m.axis_spacings.size() == 2);
  CHECK(m.axis_spacings[0].size() == 8 + 8 * 4);  // left half refined twice
  CHECK(spacing_ratio(m.axis_spacings[0]) == 4.0);
  CHECK(m.axis_spacings[1].size() == 16);
  CHECK(spacing_ratio(m.axis_spacings[1]) == 1.0);
  CHECK(m.cell_count() == 40 * 16 * 2);
  // the refined zone still covers the left half of the axis
  double left = 0.0;
  for (double h : m.axis_spacings[0])
    if (h < 1.0 / 16.0 - 1e-15) left += h;
  CHECK(close_abs(left, 0.5, 1e-12));
}

TEST_CASE("log-log slope fit recovers exact power laws") {
  const std::vector<double> x{1.0, 2.0, 4.0, 8.0, 16.0};
  std::vector<double> y;
  for (double v : x) y.push_back(3.0 * std::pow(v, 1.7));
  CHECK(close_abs(fit_loglog_slope(x, y), 1.7, 1e-12));

  // non-positive samples are dropped before the fit
  std::vector<double> y2 = y;
  y2[1] = 0.0;
  y2[3] = -5.0;
  CHECK(close_abs(fit_loglog_slope(x, y2), 1.7, 1e-12));

  CHECK(fit_loglog_slope({1.0, 2.0}, {0.0, 0.0}) == 0.0);
  CHECK(fit_loglog_slope({4.0}, {9.0}) == 0.0);
  CHECK_THROWS_AS(fit_loglog_slope({1.0, 2.0}, {1.0}), DimensionMismatch);
}

TEST_CASE("generic sweep in one dimension: rows, flags, outputs") {
  ExperimentSpec spec;
  spec.dim = 1;
  spec.order = 1;
  spec.levels = 3;
  spec.dump_matrix = spec.dump_mesh = true;
  spec.out_dir = fresh_dir("sweep_run").string();

  const SweepResult res = run_generic_sweep(spec);
  CHECK(res.dim == 1);
  CHECK(res.order == 1);
  REQUIRE(res.rows.size() == 3);
  REQUIRE(res.euclidean_traces.size() == 3);

  for (std::size_t i = 0; i < res.rows.size(); ++i) {
    const SweepRow& r = res.rows[i];
    const int level = static_cast<int>(i) + 1;
    CHECK(r.level == level);
    CHECK(r.ratio_target == static_cast<double>(1 << level));
    CHECK(r.h_ratio_scalar == r.ratio_target);  // isotropic 1-D family
    CHECK(r.dofs == 9 + 4 * level);
    CHECK(r.iters_l2 == 1);
    CHECK(r.iters_euclidean >= 2);
    CHECK(close_abs(r.f_initial, 0.5, 1e-12));
    CHECK(r.kappa >= 1.0);
    CHECK(r.kappa <= r.bound_directional * (1.0 + 1e-12));
    CHECK(close_rel(r.bound_directional, r.bound_product, 1e-12));  // 1-D
    CHECK(r.kantorovich_ok);

    EstimateInputs in;
    in.epsilon = spec.epsilon;
    in.f_initial = r.f_initial;
    in.p_max = 2;
    in.lambda_hat_ratio = 3.0;
    in.h_ratio = r.h_ratio_scalar;
    in.dim = 1;
    CHECK(close_rel(r.khat, iteration_estimate(in), 1e-9));

    CHECK(res.euclidean_traces[i].converged);
    CHECK(res.euclidean_traces[i].iterations == r.iters_euclidean);
  }
  CHECK(res.l2_all_one);
  CHECK(res.bounds_hold);
  CHECK(res.khat_holds);
  CHECK(res.fitted_slope > 0.0);
  // iterations grow with the grading ratio
  CHECK(res.rows[2].iters_euclidean > res.rows[0].iters_euclidean);

  // dumps land in the configured output directory, one per level
  for (int level = 1; level <= 3; ++level) {
    char name[64];
    std::snprintf(name, sizeof name, "mesh_dim1_order1_level%d.txt", level);
    CHECK(fs::exists(fs::path(spec.out_dir) / name));
    std::snprintf(name, sizeof name, "mass_dim1_order1_level%d.mtx", level);
    const fs::path mtx = fs::path(spec.out_dir) / name;
    REQUIRE(fs::exists(mtx));
    CHECK(testutil::read_file(mtx.string()).rfind("%%MatrixMarket", 0) == 0);
  }

  // CSV + SVG writer: exact header, exact row count, byte-stable
  ExperimentSpec out_a = spec;
  out_a.out_dir = fresh_dir("sweep_out_a").string();
  ExperimentSpec out_b = spec;
  out_b.out_dir = fresh_dir("sweep_out_b").string();
  write_sweep_outputs(res, out_a);
  write_sweep_outputs(res, out_b);

  const fs::path csv = fs::path(out_a.out_dir) / "sweep_dim1_order1.csv";
  const auto lines = read_lines(csv);
  REQUIRE(lines.size() == 4);
  CHECK(lines[0] ==
        "level,ratio_target,h_ratio_scalar,dofs,iters_euclidean,iters_l2,"
        "f_initial,kappa,bound_directional,bound_product,khat,kantorovich_ok");
  CHECK(lines[1].rfind("1,2,2,13,", 0) == 0);
  for (std::size_t i = 1; i < lines.size(); ++i) {
    CHECK(std::count(lines[i].begin(), lines[i].end(), ',') == 11);
    CHECK(lines[i].back() == '1');  // kantorovich_ok on every row
  }
  CHECK(testutil::read_file(csv.string()) ==
        testutil::read_file((fs::path(out_b.out_dir) / "sweep_dim1_order1.csv").string()));

  const std::string svg =
      testutil::read_file((fs::path(out_a.out_dir) / "sweep_dim1_order1.svg").string());
  CHECK(svg.rfind("<svg", 0) == 0);
  CHECK(svg.find("steepest descent iterations vs grading ratio") != std::string::npos);
  CHECK(svg.find("</svg>") != std::string::npos);

  // a second full run reproduces every row bit for bit
  const SweepResult res2 = run_generic_sweep(spec);
  REQUIRE(res2.rows.size() == res.rows.size());
  for (std::size_t i = 0; i < res.rows.size(); ++i) {
    CHECK(res2.rows[i].iters_euclidean == res.rows[i].iters_euclidean);
    CHECK(res2.rows[i].kappa == res.rows[i].kappa);
    CHECK(res2.rows[i].khat == res.rows[i].khat);
    CHECK(res2.rows[i].h_ratio_scalar == res.rows[i].h_ratio_scalar);
  }
}

TEST_CASE("uniform-refinement table over element orders") {
  ExperimentSpec spec;
  spec.levels = 2;
  spec.out_dir = fresh_dir("uniform_out").string();

  const UniformTableResult res = run_uniform_table(spec);
  CHECK(res.orders == std::vector<int>{1, 2, 3, 4, 5});
  CHECK(res.cells_per_level == std::vector<int>{96, 192});
  REQUIRE(res.iterations.size() == 5);
  REQUIRE(res.dofs.size() == 5);
  for (int o = 0; o < 5; ++o) {
    REQUIRE(res.iterations[static_cast<std::size_t>(o)].size() == 2);
    for (int l = 0; l < 2; ++l) {
      CHECK(res.dofs[static_cast<std::size_t>(o)][static_cast<std::size_t>(l)] ==
            res.cells_per_level[static_cast<std::size_t>(l)] * (o + 1) + 1);
      CHECK(res.iterations[static_cast<std::size_t>(o)][static_cast<std::size_t>(l)] >= 1);
    }
    // refinement must not inflate the count (the trend the table documents)
    CHECK(res.iterations[static_cast<std::size_t>(o)][1] <=
          res.iterations[static_cast<std::size_t>(o)][0] + 1);
  }
  CHECK(res.level_trend_ok);
  // higher order conditions the mass matrix worse on the same mesh
  CHECK(res.iterations[4][0] > res.iterations[0][0]);

  write_uniform_table_outputs(res, spec);
  const auto lines = read_lines(fs::path(spec.out_dir) / "uniform_table.csv");
  REQUIRE(lines.size() == 11);
  CHECK(lines[0] == "order,level,cells,dofs,iterations");
  CHECK(lines[1].rfind("1,1,96,97,", 0) == 0);
  CHECK(lines[2].rfind("1,2,192,193,", 0) == 0);

  const UniformTableResult res2 = run_uniform_table(spec);
  CHECK(res2.iterations == res.iterations);
}

TEST_CASE("control table on the two smallest gradings") {
  ExperimentSpec spec;
  spec.max_ratio = 8;
  spec.dump_fields = true;
  spec.out_dir = fresh_dir("poisson_out").string();

  const PoissonTableResult res = run_poisson_table(spec);
  REQUIRE(res.rows.size() == 8);

  const std::vector<std::string> tag_order{"euclidean_l2", "riesz_l2",
                                           "euclidean_h1", "riesz_h1"};
  for (std::size_t i = 0; i < res.rows.size(); ++i) {
    const PoissonRow& r = res.rows[i];
    CHECK(r.h_ratio == (i < 4 ? 4 : 8));
    CHECK(r.inner_product == tag_order[i % 4]);
    CHECK(r.converged);
    CHECK(r.iterations >= 1);
    CHECK(r.final_j >= 0.0);
    CHECK(r.final_grad_norm <= 1e-7 * 1.01);  // the solver's stopping norm
    CHECK(r.wall_ms >= 0.0);
  }
  CHECK(res.riesz_flat);
  // euclidean growth needs the full ratio range; not asserted on this cut

  // Iteration counts of the deterministic solver chain, frozen from the
  // committed configuration. A change here means the optimizer, the meshes,
  // or the solvers changed behaviour and must be re-examined.
  const auto count = [&](int ratio, const std::string& tag) {
    for (const PoissonRow& r : res.rows)
      if (r.h_ratio == ratio && r.inner_product == tag) return r.iterations;
    return -1;
  };
  CHECK(count(4, "euclidean_l2") == 45);
  CHECK(count(8, "euclidean_l2") == 65);
  CHECK(count(4, "riesz_l2") == 73);
  CHECK(count(8, "riesz_l2") == 70);
  CHECK(count(4, "euclidean_h1") == 56);
  CHECK(count(8, "euclidean_h1") == 110);
  CHECK(count(4, "riesz_h1") == 43);
  CHECK(count(8, "riesz_h1") == 43);

  // field dumps: one control and one state file per run, one line per dof
  for (int ratio : {4, 8}) {
    const int axis0_cells = 8 + 8 * ratio;  // fixed-window grading at base 16
    const int dof_lines = (axis0_cells + 1) * 17;
    for (const std::string& tag : tag_order) {
      char name[96];
      std::snprintf(name, sizeof name, "control_ratio%d_%s.txt", ratio, tag.c_str());
      const auto clines = read_lines(fs::path(spec.out_dir) / name);
      CHECK(static_cast<int>(clines.size()) == dof_lines);
      std::istringstream first(clines.front());
      double x = -1.0, y = -1.0, v = 0.0;
      CHECK(static_cast<bool>(first >> x >> y >> v));
      std::snprintf(name, sizeof name, "state_ratio%d_%s.txt", ratio, tag.c_str());
      CHECK(read_lines(fs::path(spec.out_dir) / name).size() == clines.size());
    }
  }

  // determinism: identical rows up to wall time, identical CSV after
  // stripping the timing column
  const PoissonTableResult res2 = run_poisson_table(spec);
  REQUIRE(res2.rows.size() == res.rows.size());
  for (std::size_t i = 0; i < res.rows.size(); ++i) {
    CHECK(res2.rows[i].iterations == res.rows[i].iterations);
    CHECK(res2.rows[i].final_j == res.rows[i].final_j);
    CHECK(res2.rows[i].final_grad_norm == res.rows[i].final_grad_norm);
  }

  ExperimentSpec out_a = spec;
  out_a.out_dir = fresh_dir("poisson_out_a").string();
  ExperimentSpec out_b = spec;
  out_b.out_dir = fresh_dir("poisson_out_b").string();
  write_poisson_table_outputs(res, out_a);
  write_poisson_table_outputs(res2, out_b);
  const auto la = read_lines(fs::path(out_a.out_dir) / "poisson_table.csv");
  const auto lb = read_lines(fs::path(out_b.out_dir) / "poisson_table.csv");
  REQUIRE(la.size() == 9);
  REQUIRE(lb.size() == 9);
  CHECK(la[0] == "h_ratio,inner_product,iterations,final_J,final_grad_norm_H,wall_ms");
  for (std::size_t i = 1; i < la.size(); ++i)
    CHECK(drop_last_field(la[i]) == drop_last_field(lb[i]));
}

TEST_CASE("estimate report summarises the sweep") {
  ExperimentSpec spec;
  spec.dim = 1;
  spec.order = 1;
  spec.levels = 3;
  spec.out_dir = fresh_dir("estimate_out").string();

  const EstimateReport rep = run_estimate_report(spec);
  CHECK(rep.dim == 1);
  REQUIRE(rep.rows.size() == 3);
  for (std::size_t i = 0; i < rep.rows.size(); ++i) {
    const EstimateRow& r = rep.rows[i];
    CHECK(r.level == static_cast<int>(i) + 1);
    CHECK(r.khat > 0.0);
    CHECK(r.bound_holds);
    if (r.ratio_target >= 4.0) {
      CHECK(r.khat_holds);
      CHECK(r.iters_euclidean <= r.khat);
    }
    if (i > 0) CHECK(r.khat > rep.rows[i - 1].khat);
  }
  CHECK(rep.all_bounds_hold);
  CHECK(rep.all_khat_hold);

  write_estimate_outputs(rep, spec);
  const auto lines = read_lines(fs::path(spec.out_dir) / "estimate_dim1.csv");
  REQUIRE(lines.size() == 4);
  CHECK(lines[0] ==
        "level,ratio_target,kappa,bound_directional,khat,iters_euclidean,"
        "bound_holds,khat_holds");
}

TEST_CASE("log-log plotter renders arbitrary CSV columns") {
  const fs::path dir = fresh_dir("svg_out");
  const fs::path csv = dir / "series.csv";
  {
    std::ofstream os(csv);
    os << "x,a,b\n1,10,1\n2,40,2\n4,160,4\n8,640,8\n";
  }
  const fs::path svg = dir / "series.svg";
  write_loglog_svg_from_csv(csv.string(), svg.string(), "x", {"a", "b"},
                            "handmade series");
  REQUIRE(fs::exists(svg));
  const std::string body = testutil::read_file(svg.string());
  CHECK(body.rfind("<svg", 0) == 0);
  CHECK(body.find("handmade series") != std::string::npos);
  CHECK(body.find("</svg>") != std::string::npos);
}
