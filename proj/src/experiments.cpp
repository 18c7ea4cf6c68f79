#include "meshgrad/experiments.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <stdexcept>
#include <utility>

#include "meshgrad/assembly.hpp"
#include "meshgrad/control.hpp"
#include "meshgrad/errors.hpp"
#include "meshgrad/function_space.hpp"
#include "meshgrad/spectra.hpp"

namespace meshgrad {

namespace {

constexpr double kPi = 3.14159265358979323846;

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot open for writing: " + path.string());
  return os;
}

int resolved_levels(const ExperimentSpec& spec, int default_levels) {
  int levels = spec.levels > 0 ? spec.levels : default_levels;
  if (spec.max_ratio > 0) {
    int cap = 0;
    while ((1 << (cap + 1)) <= spec.max_ratio) ++cap;
    levels = std::min(levels, cap);
  }
  return std::max(levels, 1);
}

QuadraticObjective all_ones_objective(const FunctionSpace& space) {
  QuadraticObjective obj;
  obj.gram = assemble_mass(space);
  obj.target = interpolate_constant(space, 1.0);
  return obj;
}

}  // namespace

Mesh sweep_mesh(int dim, int levels, int base_cells_per_axis) {
  Mesh mesh = build_graded_mesh(dim, std::vector<int>(static_cast<std::size_t>(dim),
                                                      base_cells_per_axis));
  double hi = 0.5;
  for (int r = 1; r <= levels; ++r, hi *= 0.5)
    for (int axis = 0; axis < dim; ++axis)
      mesh = refine_subregion(mesh, axis, 0.0, hi);
  return mesh;
}

Mesh axis0_graded_square(int levels, int base_cells_per_axis) {
  // The same left window is refined at every level, so the graded zone keeps
  // a fixed share of the domain area while its spacing ratio doubles.
  Mesh mesh = build_graded_mesh(2, {base_cells_per_axis, base_cells_per_axis});
  for (int r = 1; r <= levels; ++r) mesh = refine_subregion(mesh, 0, 0.0, 0.5);
  return mesh;
}

double fit_loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size())
    throw DimensionMismatch("fit_loglog_slope: length mismatch");
  std::vector<double> lx, ly;
  for (std::size_t i = 0; i < x.size(); ++i)
    if (x[i] > 0.0 && y[i] > 0.0) {
      lx.push_back(std::log2(x[i]));
      ly.push_back(std::log2(y[i]));
    }
  if (lx.size() < 2) return 0.0;
  const double m = static_cast<double>(lx.size());
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    sx += lx[i];
    sy += ly[i];
    sxx += lx[i] * lx[i];
    sxy += lx[i] * ly[i];
  }
  const double denom = m * sxx - sx * sx;
  if (denom == 0.0) return 0.0;
  return (m * sxy - sx * sy) / denom;
}

// ---- generic sweep ----

SweepResult run_generic_sweep(const ExperimentSpec& spec) {
  if (spec.dim < 1 || spec.dim > 3)
    throw UnsupportedElement("run_generic_sweep: dim must be 1, 2, or 3");
  const int base = spec.dim == 1 ? 8 : spec.dim == 2 ? 4 : 3;
  const int levels = resolved_levels(spec, spec.dim == 1 ? 7 : 5);

  SweepResult result;
  result.dim = spec.dim;
  result.order = spec.order;

  if (spec.dump_matrix || spec.dump_mesh)
    std::filesystem::create_directories(spec.out_dir);

  for (int r = 1; r <= levels; ++r) {
    Mesh mesh = sweep_mesh(spec.dim, r, base);
    FunctionSpace space = make_function_space(mesh, spec.order);
    QuadraticObjective obj = all_ones_objective(space);
    const MeshMetrics metrics = mesh_metrics(mesh);

    DescentConfig cfg;
    cfg.epsilon = spec.epsilon;
    cfg.max_iter = 15000000;
    cfg.riesz_tol = 1e-14;

    cfg.representation = InnerProduct::Euclidean;
    OptTrace euclid = steepest_descent(obj, cfg);
    cfg.representation = InnerProduct::L2Mass;
    OptTrace l2 = steepest_descent(obj, cfg);

    const SpectralSummary eig = extreme_eigs(obj.gram, 1e-8, spec.seed);

    SweepRow row;
    row.level = r;
    row.ratio_target = std::ldexp(1.0, r);
    row.h_ratio_scalar = metrics.h_ratio_scalar;
    row.dofs = space.dof_count;
    row.iters_euclidean = euclid.iterations;
    row.iters_l2 = l2.iterations;
    row.f_initial = euclid.f_initial;
    row.kappa = eig.kappa;
    row.bound_directional = condition_bound(metrics, space.element);
    row.bound_product = condition_bound_product(metrics, space.element);

    EstimateInputs est;
    est.epsilon = spec.epsilon;
    est.f_initial = euclid.f_initial;
    est.p_max = metrics.p_max;
    est.lambda_hat_ratio = space.element.lambda_hat_max / space.element.lambda_hat_min;
    est.h_ratio = metrics.h_ratio_scalar;
    est.dim = spec.dim;
    row.khat = iteration_estimate(est);

    row.kantorovich_ok = kantorovich_contraction(euclid, eig.kappa);

    if (spec.dump_mesh) {
      char name[96];
      std::snprintf(name, sizeof name, "mesh_dim%d_order%d_level%d.txt", spec.dim,
                    spec.order, r);
      write_mesh_text_file((std::filesystem::path(spec.out_dir) / name).string(), mesh);
    }
    if (spec.dump_matrix) {
      char name[96];
      std::snprintf(name, sizeof name, "mass_dim%d_order%d_level%d.mtx", spec.dim,
                    spec.order, r);
      write_matrix_market_file((std::filesystem::path(spec.out_dir) / name).string(),
                               obj.gram);
    }

    result.rows.push_back(row);
    result.euclidean_traces.push_back(std::move(euclid));
  }

  std::vector<double> xs, ys;
  for (const SweepRow& row : result.rows) {
    xs.push_back(row.h_ratio_scalar);
    ys.push_back(static_cast<double>(row.iters_euclidean));
  }
  result.fitted_slope = fit_loglog_slope(xs, ys);

  result.l2_all_one = true;
  result.bounds_hold = true;
  result.khat_holds = true;
  for (std::size_t i = 0; i < result.rows.size(); ++i) {
    const SweepRow& row = result.rows[i];
    if (row.iters_l2 != 1) result.l2_all_one = false;
    if (row.kappa > row.bound_directional) result.bounds_hold = false;
    if (row.h_ratio_scalar >= 4.0 &&
        (!result.euclidean_traces[i].converged ||
         static_cast<double>(row.iters_euclidean) > row.khat))
      result.khat_holds = false;
  }
  return result;
}

void write_sweep_outputs(const SweepResult& result, const ExperimentSpec& spec) {
  namespace fs = std::filesystem;
  fs::create_directories(spec.out_dir);
  char name[96];
  std::snprintf(name, sizeof name, "sweep_dim%d_order%d", result.dim, result.order);
  const fs::path csv_path = fs::path(spec.out_dir) / (std::string(name) + ".csv");
  const fs::path svg_path = fs::path(spec.out_dir) / (std::string(name) + ".svg");

  {
    std::ofstream os = open_out(csv_path);
    os << "level,ratio_target,h_ratio_scalar,dofs,iters_euclidean,iters_l2,"
          "f_initial,kappa,bound_directional,bound_product,khat,kantorovich_ok\n";
    for (const SweepRow& r : result.rows) {
      os << r.level << ',' << fmt(r.ratio_target) << ',' << fmt(r.h_ratio_scalar)
         << ',' << r.dofs << ',' << r.iters_euclidean << ',' << r.iters_l2 << ','
         << fmt(r.f_initial) << ',' << fmt(r.kappa) << ','
         << fmt(r.bound_directional) << ',' << fmt(r.bound_product) << ','
         << fmt(r.khat) << ',' << (r.kantorovich_ok ? 1 : 0) << '\n';
    }
  }
  char title[120];
  std::snprintf(title, sizeof title,
                "steepest descent iterations vs grading ratio (dim %d, order %d)",
                result.dim, result.order);
  write_loglog_svg_from_csv(csv_path.string(), svg_path.string(), "h_ratio_scalar",
                            {"iters_euclidean", "khat"}, title);
}

// ---- uniform-refinement table ----

UniformTableResult run_uniform_table(const ExperimentSpec& spec) {
  const int levels = spec.levels > 0 ? spec.levels : 5;

  Mesh base = build_graded_mesh(1, {64});
  base = refine_subregion(base, 0, 0.0, 0.5);  // 96 cells, spacing ratio 2
  std::vector<Mesh> meshes;
  meshes.push_back(std::move(base));
  for (int l = 1; l < levels; ++l) meshes.push_back(uniform_refine(meshes.back()));

  UniformTableResult result;
  for (const Mesh& m : meshes) result.cells_per_level.push_back(m.cell_count());

  for (int order = 1; order <= 5; ++order) {
    result.orders.push_back(order);
    std::vector<int> iters, dofs;
    for (const Mesh& m : meshes) {
      FunctionSpace space = make_function_space(m, order);
      QuadraticObjective obj = all_ones_objective(space);
      DescentConfig cfg;
      cfg.representation = InnerProduct::Euclidean;
      cfg.epsilon = spec.epsilon;
      cfg.max_iter = 2000000;
      OptTrace trace = steepest_descent(obj, cfg);
      iters.push_back(trace.iterations);
      dofs.push_back(space.dof_count);
    }
    result.iterations.push_back(std::move(iters));
    result.dofs.push_back(std::move(dofs));
  }

  result.level_trend_ok = true;
  for (const std::vector<int>& per_order : result.iterations)
    for (std::size_t l = 1; l < per_order.size(); ++l)
      if (per_order[l] > per_order[l - 1] + 1) result.level_trend_ok = false;
  return result;
}

void write_uniform_table_outputs(const UniformTableResult& result,
                                 const ExperimentSpec& spec) {
  namespace fs = std::filesystem;
  fs::create_directories(spec.out_dir);
  std::ofstream os = open_out(fs::path(spec.out_dir) / "uniform_table.csv");
  os << "order,level,cells,dofs,iterations\n";
  for (std::size_t oi = 0; oi < result.orders.size(); ++oi)
    for (std::size_t l = 0; l < result.cells_per_level.size(); ++l)
      os << result.orders[oi] << ',' << (l + 1) << ',' << result.cells_per_level[l]
         << ',' << result.dofs[oi][l] << ',' << result.iterations[oi][l] << '\n';
}

// ---- PDE-constrained control table ----

PoissonTableResult run_poisson_table(const ExperimentSpec& spec) {
  std::vector<int> ratios{4, 8, 16, 32, 64};
  if (spec.max_ratio > 0) {
    std::vector<int> kept;
    for (int r : ratios)
      if (r <= spec.max_ratio) kept.push_back(r);
    if (!kept.empty()) ratios = std::move(kept);
  }

  const double alpha_tik = 1e-6;
  const auto desired = [](const std::array<double, 3>& x) {
    // Smooth profile plus a discontinuous ledge inside the graded strip.  The
    // jump keeps fine-scale structure in the optimal control at every grading
    // level, so the refined region genuinely participates in the optimization.
    const double smooth =
        std::sin(kPi * x[0]) * std::sin(kPi * x[1]) / (2.0 * kPi * kPi);
    const double ledge = x[0] < 0.25 ? 0.1 * std::sin(kPi * x[1]) : 0.0;
    return smooth + ledge;
  };

  PoissonTableResult result;
  if (spec.dump_fields) std::filesystem::create_directories(spec.out_dir);

  for (int ratio : ratios) {
    int level = 0;
    while ((1 << (level + 1)) <= ratio) ++level;
    const Mesh mesh = axis0_graded_square(level, 16);

    for (InnerProduct hspace : {InnerProduct::L2Mass, InnerProduct::H1Full}) {
      const PoissonControlProblem prob =
          make_poisson_problem(mesh, hspace, alpha_tik, desired);
      const char* htag = hspace == InnerProduct::L2Mass ? "l2" : "h1";

      for (bool riesz : {false, true}) {
        LbfgsConfig cfg;
        cfg.gradient_representation = riesz ? hspace : InnerProduct::Euclidean;

        const auto t0 = std::chrono::steady_clock::now();
        std::vector<double> control;
        const OptTrace trace = lbfgs_minimize(prob, cfg, &control);
        const auto t1 = std::chrono::steady_clock::now();

        PoissonRow row;
        row.h_ratio = ratio;
        row.inner_product = std::string(riesz ? "riesz_" : "euclidean_") + htag;
        row.iterations = trace.iterations;
        row.converged = trace.converged;
        row.final_j = trace.steps.empty() ? trace.f_initial : trace.steps.back().f_value;
        row.wall_ms =
            std::chrono::duration<double, std::milli>(t1 - t0).count();

        std::vector<double> g = reduced_gradient_dual(prob, control);
        if (riesz) {
          std::vector<double> ghat = riesz_map(prob.gram_control, g, cfg.riesz_tol);
          double gg = 0.0;
          for (std::size_t i = 0; i < g.size(); ++i) gg += ghat[i] * g[i];
          row.final_grad_norm = std::sqrt(std::max(0.0, gg));
        } else {
          double gg = 0.0;
          for (double v : g) gg += v * v;
          row.final_grad_norm = std::sqrt(gg);
        }

        if (spec.dump_fields) {
          const std::vector<double> state = solve_state(prob, control);
          char name[96];
          std::snprintf(name, sizeof name, "control_ratio%d_%s.txt", ratio,
                        row.inner_product.c_str());
          std::ofstream cf =
              open_out(std::filesystem::path(spec.out_dir) / name);
          std::snprintf(name, sizeof name, "state_ratio%d_%s.txt", ratio,
                        row.inner_product.c_str());
          std::ofstream sf =
              open_out(std::filesystem::path(spec.out_dir) / name);
          for (int i = 0; i < prob.space.dof_count; ++i) {
            const auto& x = prob.space.dof_coords[static_cast<std::size_t>(i)];
            cf << fmt(x[0]) << ' ' << fmt(x[1]) << ' '
               << fmt(control[static_cast<std::size_t>(i)]) << '\n';
            sf << fmt(x[0]) << ' ' << fmt(x[1]) << ' '
               << fmt(state[static_cast<std::size_t>(i)]) << '\n';
          }
        }

        result.rows.push_back(std::move(row));
      }
    }
  }

  const auto iteration_span = [&](const std::string& tag, int& first, int& last,
                                  int& lo, int& hi) {
    first = last = lo = hi = 0;
    bool seen = false;
    for (const PoissonRow& row : result.rows) {
      if (row.inner_product != tag) continue;
      if (!seen) {
        first = lo = hi = row.iterations;
        seen = true;
      }
      last = row.iterations;
      lo = std::min(lo, row.iterations);
      hi = std::max(hi, row.iterations);
    }
  };

  result.riesz_flat = true;
  for (const char* tag : {"riesz_l2", "riesz_h1"}) {
    int first, last, lo, hi;
    iteration_span(tag, first, last, lo, hi);
    if (lo < 1 || hi > 2 * lo) result.riesz_flat = false;
  }
  result.euclidean_grows = true;
  for (const char* tag : {"euclidean_l2", "euclidean_h1"}) {
    int first, last, lo, hi;
    iteration_span(tag, first, last, lo, hi);
    if (first < 1 || last < 3 * first) result.euclidean_grows = false;
  }
  return result;
}

void write_poisson_table_outputs(const PoissonTableResult& result,
                                 const ExperimentSpec& spec) {
  namespace fs = std::filesystem;
  fs::create_directories(spec.out_dir);
  std::ofstream os = open_out(fs::path(spec.out_dir) / "poisson_table.csv");
  os << "h_ratio,inner_product,iterations,final_J,final_grad_norm_H,wall_ms\n";
  for (const PoissonRow& r : result.rows)
    os << r.h_ratio << ',' << r.inner_product << ',' << r.iterations << ','
       << fmt(r.final_j) << ',' << fmt(r.final_grad_norm) << ',' << fmt(r.wall_ms)
       << '\n';
}

// ---- analytic-estimate report ----

EstimateReport run_estimate_report(const ExperimentSpec& spec) {
  const SweepResult sweep = run_generic_sweep(spec);
  EstimateReport report;
  report.dim = sweep.dim;
  report.all_bounds_hold = true;
  report.all_khat_hold = true;
  for (std::size_t i = 0; i < sweep.rows.size(); ++i) {
    const SweepRow& s = sweep.rows[i];
    EstimateRow row;
    row.level = s.level;
    row.ratio_target = s.ratio_target;
    row.kappa = s.kappa;
    row.bound_directional = s.bound_directional;
    row.khat = s.khat;
    row.iters_euclidean = s.iters_euclidean;
    row.bound_holds = s.kappa <= s.bound_directional;
    row.khat_holds = s.h_ratio_scalar < 4.0 ||
                     (sweep.euclidean_traces[i].converged &&
                      static_cast<double>(s.iters_euclidean) <= s.khat);
    if (!row.bound_holds) report.all_bounds_hold = false;
    if (s.h_ratio_scalar >= 4.0 && !row.khat_holds) report.all_khat_hold = false;
    report.rows.push_back(std::move(row));
  }
  return report;
}

void write_estimate_outputs(const EstimateReport& report, const ExperimentSpec& spec) {
  namespace fs = std::filesystem;
  fs::create_directories(spec.out_dir);
  char name[64];
  std::snprintf(name, sizeof name, "estimate_dim%d.csv", report.dim);
  std::ofstream os = open_out(fs::path(spec.out_dir) / name);
  os << "level,ratio_target,kappa,bound_directional,khat,iters_euclidean,"
        "bound_holds,khat_holds\n";
  for (const EstimateRow& r : report.rows)
    os << r.level << ',' << fmt(r.ratio_target) << ',' << fmt(r.kappa) << ','
       << fmt(r.bound_directional) << ',' << fmt(r.khat) << ',' << r.iters_euclidean
       << ',' << (r.bound_holds ? 1 : 0) << ',' << (r.khat_holds ? 1 : 0) << '\n';
}

// ---- SVG plotting ----

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string cur;
  for (char c : line) {
    if (c == ',') {
      fields.push_back(cur);
      cur.clear();
    } else if (c != '\r') {
      cur.push_back(c);
    }
  }
  fields.push_back(cur);
  return fields;
}

int column_index(const std::vector<std::string>& header, const std::string& name) {
  for (std::size_t i = 0; i < header.size(); ++i)
    if (header[i] == name) return static_cast<int>(i);
  return -1;
}

}  // namespace

void write_loglog_svg_from_csv(const std::string& csv_path, const std::string& svg_path,
                               const std::string& x_column,
                               const std::vector<std::string>& y_columns,
                               const std::string& title) {
  std::ifstream is(csv_path);
  if (!is) throw std::runtime_error("cannot read csv: " + csv_path);
  std::string line;
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    if (header.empty())
      header = split_csv_line(line);
    else
      rows.push_back(split_csv_line(line));
  }
  const int xi = column_index(header, x_column);
  if (xi < 0) throw std::runtime_error("csv column not found: " + x_column);

  struct Series {
    std::string name;
    std::vector<std::pair<double, double>> pts;  // (log2 x, log2 y)
  };
  std::vector<Series> series;
  for (const std::string& yname : y_columns) {
    const int yi = column_index(header, yname);
    if (yi < 0) throw std::runtime_error("csv column not found: " + yname);
    Series s;
    s.name = yname;
    for (const auto& row : rows) {
      if (static_cast<int>(row.size()) <= std::max(xi, yi)) continue;
      const double x = std::strtod(row[static_cast<std::size_t>(xi)].c_str(), nullptr);
      const double y = std::strtod(row[static_cast<std::size_t>(yi)].c_str(), nullptr);
      if (x > 0.0 && y > 0.0) s.pts.emplace_back(std::log2(x), std::log2(y));
    }
    series.push_back(std::move(s));
  }

  double xmin = 1e300, xmax = -1e300, ymin = 1e300, ymax = -1e300;
  bool any = false;
  for (const Series& s : series)
    for (const auto& p : s.pts) {
      any = true;
      xmin = std::min(xmin, p.first);
      xmax = std::max(xmax, p.first);
      ymin = std::min(ymin, p.second);
      ymax = std::max(ymax, p.second);
    }
  if (!any) {
    xmin = ymin = 0.0;
    xmax = ymax = 1.0;
  }
  if (xmax - xmin < 1e-9) {
    xmin -= 0.5;
    xmax += 0.5;
  }
  if (ymax - ymin < 1e-9) {
    ymin -= 0.5;
    ymax += 0.5;
  }

  const double W = 760, H = 480, L = 70, R = 180, T = 48, B = 56;
  const auto px = [&](double x) { return L + (x - xmin) / (xmax - xmin) * (W - L - R); };
  const auto py = [&](double y) { return H - B - (y - ymin) / (ymax - ymin) * (H - T - B); };
  const char* palette[4] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd"};

  std::ofstream os = open_out(svg_path);
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\""
     << H << "\" viewBox=\"0 0 " << W << ' ' << H << "\">\n";
  os << "<rect width=\"" << W << "\" height=\"" << H << "\" fill=\"white\"/>\n";
  os << "<text x=\"" << L << "\" y=\"24\" font-family=\"sans-serif\" font-size=\"15\""
     << " fill=\"#222\">" << title << "</text>\n";

  // Gridlines and tick labels at integer powers of two.
  const auto tick_step = [](double span) {
    int step = 1;
    while (span / step > 8.0) ++step;
    return step;
  };
  const int xstep = tick_step(xmax - xmin), ystep = tick_step(ymax - ymin);
  os << "<g font-family=\"sans-serif\" font-size=\"11\" fill=\"#444\">\n";
  for (int k = static_cast<int>(std::ceil(xmin)); k <= std::floor(xmax); k += xstep) {
    const double x = px(k);
    os << "<line x1=\"" << x << "\" y1=\"" << T << "\" x2=\"" << x << "\" y2=\""
       << H - B << "\" stroke=\"#ddd\"/>\n";
    os << "<text x=\"" << x << "\" y=\"" << H - B + 16
       << "\" text-anchor=\"middle\">2^" << k << "</text>\n";
  }
  for (int k = static_cast<int>(std::ceil(ymin)); k <= std::floor(ymax); k += ystep) {
    const double y = py(k);
    os << "<line x1=\"" << L << "\" y1=\"" << y << "\" x2=\"" << W - R << "\" y2=\""
       << y << "\" stroke=\"#ddd\"/>\n";
    os << "<text x=\"" << L - 6 << "\" y=\"" << y + 4
       << "\" text-anchor=\"end\">2^" << k << "</text>\n";
  }
  os << "</g>\n";
  os << "<rect x=\"" << L << "\" y=\"" << T << "\" width=\"" << W - L - R
     << "\" height=\"" << H - T - B << "\" fill=\"none\" stroke=\"#888\"/>\n";
  os << "<text x=\"" << (L + (W - R)) / 2 << "\" y=\"" << H - 12
     << "\" font-family=\"sans-serif\" font-size=\"12\" fill=\"#222\""
     << " text-anchor=\"middle\">" << x_column << " (log2)</text>\n";

  for (std::size_t si = 0; si < series.size(); ++si) {
    const Series& s = series[si];
    const char* color = palette[si % 4];
    if (s.pts.size() > 1) {
      os << "<polyline fill=\"none\" stroke=\"" << color
         << "\" stroke-width=\"1.5\" points=\"";
      for (const auto& p : s.pts) os << px(p.first) << ',' << py(p.second) << ' ';
      os << "\"/>\n";
    }
    for (const auto& p : s.pts)
      os << "<circle cx=\"" << px(p.first) << "\" cy=\"" << py(p.second)
         << "\" r=\"3\" fill=\"" << color << "\"/>\n";
    const double ly = T + 18 + 18 * static_cast<double>(si);
    os << "<line x1=\"" << W - R + 12 << "\" y1=\"" << ly - 4 << "\" x2=\""
       << W - R + 34 << "\" y2=\"" << ly - 4 << "\" stroke=\"" << color
       << "\" stroke-width=\"2\"/>\n";
    os << "<text x=\"" << W - R + 40 << "\" y=\"" << ly
       << "\" font-family=\"sans-serif\" font-size=\"12\" fill=\"#222\">" << s.name
       << "</text>\n";
  }
  os << "</svg>\n";
}

}  // namespace meshgrad
