#include "ergoquench/app/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <optional>

#include "ergoquench/app/output.hpp"
#include "ergoquench/app/parallel.hpp"
#include "ergoquench/errors.hpp"
#include "ergoquench/jc.hpp"
#include "ergoquench/oracles.hpp"

namespace ergoquench::app {

namespace fs = std::filesystem;
using dynamics::TimeGrid;

namespace {

std::string fmt(double v, const char* spec = "%.4g") {
  char buf[64];
  std::snprintf(buf, sizeof buf, spec, v);
  return buf;
}

std::string beta_label(double b) { return "beta=" + fmt(b); }

// ---- config resolution --------------------------------------------------------

struct Defaults {
  int n_qubits = 2;
  double alpha = 0.0;
  double alpha_minus = 0.0;
  double alpha_z = 0.0;
  double t_max = 800.0;
  double dt = 0.5;
  std::vector<double> betas = {0.2, 0.5, 1.0, 2.0, 5.0};
};

model::ModelSpec resolve_model(const ExperimentConfig& c, const Defaults& d) {
  return {c.n_qubits.value_or(d.n_qubits), c.j, c.h};
}

channels::ChannelSpec resolve_channel(const ExperimentConfig& c, const Defaults& d) {
  return {c.gamma, c.alpha.value_or(d.alpha), c.alpha_minus.value_or(d.alpha_minus), c.alpha_z.value_or(d.alpha_z)};
}

TimeGrid resolve_grid(const ExperimentConfig& c, const Defaults& d) {
  TimeGrid g{c.t_max.value_or(d.t_max), c.dt.value_or(d.dt)};
  try {
    g.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("time grid: ") + e.what());
  }
  return g;
}

std::vector<double> resolve_betas(const ExperimentConfig& c, const Defaults& d) {
  return c.beta_list_set ? c.beta_list : d.betas;
}

std::vector<int> resolve_sizes(const ExperimentConfig& c, std::vector<int> fallback) {
  if (c.n_qubits) return {*c.n_qubits};
  return fallback;
}

fs::path output_path(const ExperimentConfig& c, const std::string& stem, const char* ext) {
  return fs::path(c.output_dir) / (stem + ext);
}

// ---- trajectory tables -------------------------------------------------------

struct ExtraColumn {
  std::string name;
  std::function<Cell(std::size_t run, std::size_t step)> value;
};

CsvTable trajectory_table(const std::string& experiment, std::span<const QuenchRun> runs,
                          const std::vector<ExtraColumn>& extra) {
  std::size_t width = 0;
  for (const auto& r : runs) width = std::max(width, r.model.dim());

  std::vector<std::string> header = {"experiment", "n_qubits", "h",    "gamma",  "alpha",          "alpha_minus",
                                     "alpha_z",    "beta",     "time", "energy", "passive_energy", "ergotropy"};
  for (const auto& e : extra) header.push_back(e.name);
  for (std::size_t k = 0; k < width; ++k) header.push_back("lambda_" + std::to_string(k));

  CsvTable table(header);
  for (std::size_t r = 0; r < runs.size(); ++r) {
    const auto& run = runs[r];
    for (std::size_t k = 0; k < run.series.size(); ++k) {
      const auto& rec = run.series[k];
      std::vector<Cell> row = {experiment,
                               static_cast<long long>(run.model.n_qubits),
                               run.model.field_h,
                               run.channel.gamma,
                               run.channel.alpha,
                               run.channel.alpha_minus,
                               run.channel.alpha_z,
                               run.beta,
                               rec.time,
                               rec.energy,
                               rec.passive_energy,
                               rec.ergotropy};
      for (const auto& e : extra) row.push_back(e.value(r, k));
      for (std::size_t j = 0; j < width; ++j)
        row.push_back(j < rec.rho_spectrum.size() ? Cell{rec.rho_spectrum[j]} : Cell{});
      table.add_row(std::move(row));
    }
  }
  return table;
}

LinePlot ergotropy_plot(const std::string& title, std::span<const QuenchRun> runs,
                        const std::function<std::string(const QuenchRun&)>& label) {
  LinePlot plot{title, "time (1/J)", "ergotropy (J)", {}};
  for (const auto& run : runs) {
    PlotSeries s{label(run), {}, {}};
    for (const auto& rec : run.series) {
      s.x.push_back(rec.time);
      s.y.push_back(rec.ergotropy);
    }
    plot.series.push_back(std::move(s));
  }
  return plot;
}

void emit(RunReport& report, const ExperimentConfig& c, const std::string& stem, const CsvTable& table,
          const std::optional<LinePlot>& plot = std::nullopt) {
  const auto csv = output_path(c, stem, ".csv");
  table.write(csv);
  report.files.push_back(csv);
  if (c.emit_svg && plot) {
    const auto svg = output_path(c, stem, ".svg");
    write_svg(*plot, svg);
    report.files.push_back(svg);
  }
}

std::size_t reference_index(std::span<const double> betas) {
  return static_cast<std::size_t>(std::max_element(betas.begin(), betas.end()) - betas.begin());
}

std::vector<double> delta_series(const QuenchRun& run, const QuenchRun& ref) {
  std::vector<double> d(run.series.size());
  for (std::size_t k = 0; k < d.size(); ++k) d[k] = run.series[k].ergotropy - ref.series[k].ergotropy;
  return d;
}

double settling_time(std::span<const ergotropy::ErgotropyRecord> series, double tol) {
  const double last = series.back().ergotropy;
  for (std::size_t k = series.size(); k-- > 0;)
    if (std::abs(series[k].ergotropy - last) > tol) return series[std::min(k + 1, series.size() - 1)].time;
  return series.front().time;
}

// ---- experiments -------------------------------------------------------------

RunReport run_fig2(const ExperimentConfig& c) {
  const Defaults d{};
  const auto model = resolve_model(c, d);
  const auto betas = resolve_betas(c, d);
  const auto runs = run_quenches(model, resolve_channel(c, d), betas, resolve_grid(c, d));

  RunReport report;
  emit(report, c, "fig2", trajectory_table("fig2", runs, {}),
       ergotropy_plot("Parallel dissipation, N=" + std::to_string(model.n_qubits), runs,
                      [](const QuenchRun& r) { return beta_label(r.beta); }));
  for (const auto& r : runs) {
    const auto tc = ergotropy::activation_time(r.series);
    std::string line = beta_label(r.beta) + ": plateau " + fmt(r.series.back().ergotropy, "%.6f") +
                       ", activation " + (tc ? fmt(*tc, "%.3f") : std::string("none"));
    if (model.n_qubits == 2 && c.h < 1.0 && r.beta > 0.0 && c.gamma > 0.0)
      line += " (analytic " + fmt(oracles::t_c_analytic(r.beta, c.h, c.gamma), "%.3f") + ")";
    report.summary.push_back(line);
  }
  return report;
}

RunReport run_fig3(const ExperimentConfig& c) {
  Defaults d{};
  d.alpha_minus = 1.0;
  d.betas = {0.2, 0.3, 0.4, 0.5, 1.0, 2.0, 5.0};
  const auto model = resolve_model(c, d);
  const auto runs = run_quenches(model, resolve_channel(c, d), resolve_betas(c, d), resolve_grid(c, d));

  RunReport report;
  emit(report, c, "fig3", trajectory_table("fig3", runs, {}),
       ergotropy_plot("Collective dissipation, N=" + std::to_string(model.n_qubits), runs,
                      [](const QuenchRun& r) { return beta_label(r.beta); }));
  if (c.h < 1.0) report.summary.push_back("beta_c(h=" + fmt(c.h) + ") = " + fmt(oracles::beta_critical(c.h), "%.6f"));
  for (const auto& r : runs)
    report.summary.push_back(beta_label(r.beta) + ": steady ergotropy " + fmt(r.series.back().ergotropy, "%.6g") +
                             (oracles::passivity_predicate(r.beta, c.h) ? " (predicted passive)"
                                                                        : " (predicted non-passive)"));
  return report;
}

RunReport run_fig4(const ExperimentConfig& c) {
  Defaults d{};
  d.alpha_minus = 1.0;
  constexpr std::size_t kCells = 50;
  constexpr double kBetaLo = 0.1, kBetaHi = 3.0, kHLo = 0.0, kHHi = 0.9;
  constexpr double kPassiveThreshold = 1e-4;
  const double dbeta = (kBetaHi - kBetaLo) / (kCells - 1);
  const double dh = (kHHi - kHLo) / (kCells - 1);

  const auto grid = resolve_grid(c, d);
  auto channel = resolve_channel(c, d);
  const int n = c.n_qubits.value_or(2);

  struct Point {
    double beta = 0, h = 0, ergotropy = 0;
  };
  const auto points = parallel_map(kCells * kCells, [&](std::size_t idx) {
    const double h = kHLo + dh * static_cast<double>(idx / kCells);
    const double beta = kBetaLo + dbeta * static_cast<double>(idx % kCells);
    return Point{beta, h, steady_ergotropy({n, c.j, h}, channel, beta, grid)};
  });

  CsvTable table({"experiment", "n_qubits", "h", "gamma", "beta", "steady_ergotropy", "numeric_passive",
                  "predicted_passive", "beta_critical", "near_boundary"});
  std::size_t mismatches = 0, off_boundary = 0;
  for (const auto& p : points) {
    const double bc = oracles::beta_critical(p.h);
    const bool numeric = p.ergotropy < kPassiveThreshold;
    const bool predicted = oracles::passivity_predicate(p.beta, p.h);
    const bool near = std::abs(p.beta - bc) <= dbeta;
    if (!near) {
      ++off_boundary;
      if (numeric != predicted) ++mismatches;
    }
    table.add_row({std::string("fig4"), static_cast<long long>(n), p.h, c.gamma, p.beta, p.ergotropy,
                   static_cast<long long>(numeric), static_cast<long long>(predicted), bc,
                   static_cast<long long>(near)});
  }

  LinePlot plot{"Passive/non-passive boundary", "h", "beta", {}};
  PlotSeries analytic{"beta_c(h)", {}, {}};
  PlotSeries numeric{"numeric boundary", {}, {}};
  for (std::size_t j = 0; j < kCells; ++j) {
    const double h = kHLo + dh * static_cast<double>(j);
    analytic.x.push_back(h);
    analytic.y.push_back(oracles::beta_critical(h));
    for (std::size_t i = 0; i < kCells; ++i) {
      const auto& p = points[j * kCells + i];
      if (p.ergotropy < kPassiveThreshold) {
        numeric.x.push_back(h);
        numeric.y.push_back(p.beta);
        break;
      }
    }
  }
  plot.series = {analytic, numeric};

  RunReport report;
  emit(report, c, "fig4", table, plot);
  report.summary.push_back(std::to_string(mismatches) + " classification mismatches among " +
                           std::to_string(off_boundary) + " grid points away from the boundary");
  return report;
}

RunReport run_ergotropy_crossings(const ExperimentConfig& c, const std::string& name, Defaults d, bool with_p_dark) {
  const auto model = resolve_model(c, d);
  const auto betas = resolve_betas(c, d);
  const auto runs = run_quenches(model, resolve_channel(c, d), betas, resolve_grid(c, d));
  const std::size_t ref = reference_index(betas);

  std::vector<std::vector<double>> deltas;
  for (const auto& r : runs) deltas.push_back(delta_series(r, runs[ref]));

  std::vector<ExtraColumn> extra = {
      {"delta_vs_reference", [&](std::size_t r, std::size_t k) { return Cell{deltas[r][k]}; }}};

  std::vector<std::vector<double>> pdark;
  if (with_p_dark) {
    const auto dark = oracles::dark_subspace(model);
    for (const auto& r : runs) {
      std::vector<double> series;
      for (const auto& s : r.trajectory.states) series.push_back(std::real((dark.projector * s.matrix()).trace()));
      pdark.push_back(std::move(series));
    }
    extra.push_back({"p_dark", [&](std::size_t r, std::size_t k) { return Cell{pdark[r][k]}; }});
  }

  RunReport report;
  emit(report, c, name, trajectory_table(name, runs, extra),
       ergotropy_plot(name + ", N=" + std::to_string(model.n_qubits), runs,
                      [](const QuenchRun& r) { return beta_label(r.beta); }));
  for (std::size_t r = 0; r < runs.size(); ++r) {
    std::string line = beta_label(runs[r].beta) + ": final ergotropy " + fmt(runs[r].series.back().ergotropy, "%.6f");
    if (r != ref) {
      const auto diff = ergotropy::ergotropy_difference(runs[r].series, runs[ref].series);
      line += ", sign changes vs " + beta_label(betas[ref]) + ": " + std::to_string(diff.sign_changes.size());
      if (!diff.sign_changes.empty()) line += " (first at t=" + fmt(diff.sign_changes.front(), "%.3f") + ")";
    }
    if (with_p_dark) {
      const auto [lo, hi] = std::minmax_element(pdark[r].begin(), pdark[r].end());
      line += ", p_dark " + fmt(pdark[r].front(), "%.6f") + " drift " + fmt(*hi - *lo, "%.3g");
    }
    report.summary.push_back(line);
  }
  return report;
}

RunReport run_fig5(const ExperimentConfig& c) {
  Defaults d{};
  d.n_qubits = 4;
  return run_ergotropy_crossings(c, "fig5", d, false);
}

RunReport run_fig6(const ExperimentConfig& c) {
  Defaults d{};
  d.n_qubits = 4;
  d.alpha_minus = 1.0;
  return run_ergotropy_crossings(c, "fig6", d, true);
}

RunReport run_fig7(const ExperimentConfig& c) {
  const model::ModelSpec model{c.n_qubits.value_or(4), c.j, c.h};
  constexpr double kStep = 0.05, kFd = 1e-5;
  CsvTable table({"experiment", "n_qubits", "h", "beta", "p_dark", "mean_energy", "mean_energy_dark",
                  "dp_dark_dbeta", "dp_dark_dbeta_fd"});
  PlotSeries series{"p_dark", {}, {}};
  for (int i = 0; i <= 100; ++i) {
    const double beta = kStep * i;
    const auto pd = oracles::dark_population(beta, model);
    Cell fd{};
    if (beta >= kFd)
      fd = (oracles::p_dark(beta + kFd, model) - oracles::p_dark(beta - kFd, model)) / (2.0 * kFd);
    table.add_row({std::string("fig7"), static_cast<long long>(model.n_qubits), c.h, beta, pd.p_dark,
                   pd.mean_energy, pd.mean_energy_dark, pd.derivative, fd});
    series.x.push_back(beta);
    series.y.push_back(pd.p_dark);
  }
  RunReport report;
  emit(report, c, "fig7", table, LinePlot{"Dark-subspace population of the Gibbs state", "beta", "p_dark", {series}});
  report.summary.push_back("dark subspace dimension " + std::to_string(oracles::dark_subspace(model).dimension()) +
                           ", p_dark(0) = " + fmt(oracles::p_dark(0.0, model), "%.6f") +
                           ", p_dark(5) = " + fmt(oracles::p_dark(5.0, model), "%.6f"));
  return report;
}

RunReport run_fig8(const ExperimentConfig& c) {
  Defaults d{};
  d.alpha = 1.0;
  const auto betas = resolve_betas(c, d);
  const auto grid = resolve_grid(c, d);
  const std::size_t ref = reference_index(betas);

  std::vector<QuenchRun> all;
  RunReport report;
  for (int n : resolve_sizes(c, {2, 4})) {
    auto runs = run_quenches({n, c.j, c.h}, resolve_channel(c, d), betas, grid);
    for (std::size_t r = 0; r < runs.size(); ++r) {
      if (r == ref) continue;
      const auto diff = ergotropy::ergotropy_difference(runs[r].series, runs[ref].series);
      report.summary.push_back("N=" + std::to_string(n) + " " + beta_label(runs[r].beta) + ": sign changes vs " +
                               beta_label(betas[ref]) + ": " + std::to_string(diff.sign_changes.size()));
    }
    std::move(runs.begin(), runs.end(), std::back_inserter(all));
  }
  emit(report, c, "fig8", trajectory_table("fig8", all, {}),
       ergotropy_plot("Parallel dephasing", all, [](const QuenchRun& r) {
         return "N=" + std::to_string(r.model.n_qubits) + " " + beta_label(r.beta);
       }));
  return report;
}

RunReport run_sweep(const ExperimentConfig& c, const std::string& name, bool dephasing) {
  Defaults d{};
  d.alpha = dephasing ? 1.0 : 0.0;
  const auto betas = resolve_betas(c, d);
  const auto grid = resolve_grid(c, d);
  const auto sizes = resolve_sizes(c, {2, 4});
  std::vector<double> interp;
  for (int i = 0; i <= 10; ++i) interp.push_back(0.1 * i);

  struct Point {
    int n = 0;
    channels::ChannelSpec channel;
    double beta = 0, ergotropy = 0;
  };
  std::vector<Point> points;
  for (int n : sizes)
    for (double a : interp)
      for (double b : betas) {
        auto ch = resolve_channel(c, d);
        (dephasing ? ch.alpha_z : ch.alpha_minus) = a;
        points.push_back({n, ch, b, 0.0});
      }
  // one Liouvillian per (N, interpolation value); betas share it
  const std::size_t nb = betas.size();
  const auto groups = parallel_map(points.size() / nb, [&](std::size_t g) {
    const auto& p = points[g * nb];
    const model::ModelSpec model{p.n, c.j, c.h};
    const auto h = model::build_hamiltonian(model);
    const auto liou = channels::build_liouvillian(h, p.channel, model);
    std::vector<double> out;
    for (double b : betas) {
      const auto traj = dynamics::propagate(liou, model::gibbs_state(h, b), grid);
      out.push_back(ergotropy::ergotropy(traj.final_state(), h).ergotropy);
    }
    return out;
  });
  std::vector<double> values;
  for (const auto& g : groups) values.insert(values.end(), g.begin(), g.end());

  CsvTable table({"experiment", "n_qubits", "h", "gamma", "alpha", "alpha_minus", "alpha_z", "beta", "t_max",
                  "steady_ergotropy"});
  std::map<std::pair<int, double>, PlotSeries> curves;
  for (std::size_t i = 0; i < points.size(); ++i) {
    const auto& p = points[i];
    table.add_row({name, static_cast<long long>(p.n), c.h, c.gamma, p.channel.alpha, p.channel.alpha_minus,
                   p.channel.alpha_z, p.beta, grid.t_max, values[i]});
    auto& s = curves[{p.n, p.beta}];
    s.label = "N=" + std::to_string(p.n) + " " + beta_label(p.beta);
    s.x.push_back(dephasing ? p.channel.alpha_z : p.channel.alpha_minus);
    s.y.push_back(values[i]);
  }
  LinePlot plot{name + ": steady ergotropy", dephasing ? "alpha_z" : "alpha_minus", "ergotropy (J)", {}};
  for (auto& [key, s] : curves) plot.series.push_back(std::move(s));

  RunReport report;
  emit(report, c, name, table, plot);
  report.summary.push_back(std::to_string(points.size()) + " steady states at t=" + fmt(grid.t_max));
  return report;
}

RunReport run_appb_channels(const ExperimentConfig& c) {
  Defaults d{};
  d.betas = {0.2, 5.0};
  const auto model = resolve_model(c, d);
  const auto betas = resolve_betas(c, d);
  const auto grid = resolve_grid(c, d);
  const std::vector<double> alphas = {0.0, 0.3, 0.5, 0.7, 0.9, 1.0};

  std::vector<QuenchRun> all;
  for (double a : alphas) {
    auto ch = resolve_channel(c, d);
    ch.alpha = a;
    auto runs = run_quenches(model, ch, betas, grid);
    std::move(runs.begin(), runs.end(), std::back_inserter(all));
  }
  RunReport report;
  emit(report, c, "appB-channels", trajectory_table("appB-channels", all, {}),
       ergotropy_plot("Channel interpolation", all, [](const QuenchRun& r) {
         return "alpha=" + fmt(r.channel.alpha) + " " + beta_label(r.beta);
       }));
  for (const auto& r : all)
    report.summary.push_back("alpha=" + fmt(r.channel.alpha) + " " + beta_label(r.beta) + ": final ergotropy " +
                             fmt(r.series.back().ergotropy, "%.6f") + ", settles (1e-3) at t=" +
                             fmt(settling_time(r.series, 1e-3), "%.1f"));
  return report;
}

RunReport run_appc_check(const ExperimentConfig& c) {
  Defaults d{};
  const auto betas = resolve_betas(c, d);
  const auto grid = resolve_grid(c, d);
  const model::ModelSpec model{2, c.j, c.h};
  constexpr double kBlockTol = 1e-8, kSpectrumTol = 1e-6;

  auto block_dev = [](const oracles::TwoQubitBlockState& a, const oracles::TwoQubitBlockState& b) {
    return std::max({std::abs(a.p_gg - b.p_gg), std::abs(a.p_eg - b.p_eg), std::abs(a.p_ge - b.p_ge),
                     std::abs(a.p_ee - b.p_ee), std::abs(a.c - b.c)});
  };

  struct Row {
    std::string check;
    double beta, deviation, tol;
  };
  std::vector<Row> rows;
  for (double beta : betas) {
    const auto parallel = run_quenches(model, {c.gamma, 0.0, 0.0, 0.0}, std::span(&beta, 1), grid).front();
    const auto collective = run_quenches(model, {c.gamma, 0.0, 1.0, 0.0}, std::span(&beta, 1), grid).front();
    const auto dephasing = run_quenches(model, {c.gamma, 1.0, 0.0, 0.0}, std::span(&beta, 1), grid).front();
    const auto init = oracles::TwoQubitBlockState::from_density(parallel.trajectory.states.front());

    double dev_par = 0, dev_col = 0, dev_deph = 0;
    for (std::size_t k = 0; k < parallel.trajectory.size(); ++k) {
      const double t = parallel.trajectory.times[k];
      dev_par = std::max(dev_par, block_dev(oracles::TwoQubitBlockState::from_density(parallel.trajectory.states[k]),
                                            oracles::two_qubit_parallel_block(init, c.gamma, t)));
      dev_deph = std::max(dev_deph, block_dev(oracles::TwoQubitBlockState::from_density(dephasing.trajectory.states[k]),
                                              oracles::dephasing_two_qubit_block(init, c.gamma, t)));
      const auto eng = oracles::TwoQubitBlockState::from_density(collective.trajectory.states[k]);
      const auto sc = oracles::two_qubit_collective_sc(init, c.gamma, t);
      dev_col = std::max({dev_col, std::abs(eng.p_eg + eng.p_ge - sc.s), std::abs(eng.c - sc.c)});
    }
    rows.push_back({"parallel_block", beta, dev_par, kBlockTol});
    rows.push_back({"collective_sc", beta, dev_col, kBlockTol});
    rows.push_back({"dephasing_block", beta, dev_deph, kBlockTol});

    if (beta > 0.0) {
      auto oracle = oracles::collective_steady_spectrum(beta, c.h);
      std::sort(oracle.begin(), oracle.end());
      const auto spectrum = collective.series.back().rho_spectrum;  // descending
      double dev = 0;
      for (std::size_t k = 0; k < 4; ++k) dev = std::max(dev, std::abs(spectrum[3 - k] - oracle[k]));
      rows.push_back({"collective_steady_spectrum", beta, dev, kSpectrumTol});
    }
  }

  CsvTable table({"experiment", "check", "beta", "max_abs_deviation", "tolerance", "pass"});
  RunReport report;
  for (const auto& r : rows) {
    const bool pass = r.deviation <= r.tol;
    table.add_row({std::string("appC-check"), r.check, r.beta, r.deviation, r.tol, static_cast<long long>(pass)});
    report.summary.push_back(std::string(pass ? "PASS " : "FAIL ") + r.check + " " + beta_label(r.beta) +
                             ": max deviation " + fmt(r.deviation, "%.3g"));
  }
  emit(report, c, "appC-check", table);
  return report;
}

RunReport run_appd(const ExperimentConfig& c) {
  Defaults d{};
  d.n_qubits = 4;
  d.dt = 0.1;
  d.t_max = 100.0;
  d.betas = {0.2, 5.0};
  const auto model = resolve_model(c, d);
  const auto runs = run_quenches(model, resolve_channel(c, d), resolve_betas(c, d), resolve_grid(c, d));
  const auto h = model::build_hamiltonian(model);

  std::vector<std::vector<std::vector<double>>> pops;
  for (const auto& r : runs) pops.push_back(ergotropy::energy_basis_populations(r.trajectory, h));
  std::vector<ExtraColumn> extra;
  for (std::size_t j = 0; j < model.dim(); ++j)
    extra.push_back({"pop_" + std::to_string(j), [&, j](std::size_t r, std::size_t k) { return Cell{pops[r][k][j]}; }});

  RunReport report;
  LinePlot plot{"Energy and passive energy", "time (1/J)", "energy (J)", {}};
  for (const auto& r : runs) {
    PlotSeries e{beta_label(r.beta) + " Tr(rho H)", {}, {}}, p{beta_label(r.beta) + " passive", {}, {}};
    for (const auto& rec : r.series) {
      e.x.push_back(rec.time);
      e.y.push_back(rec.energy);
      p.x.push_back(rec.time);
      p.y.push_back(rec.passive_energy);
    }
    plot.series.push_back(std::move(e));
    plot.series.push_back(std::move(p));
  }
  emit(report, c, "appD", trajectory_table("appD", runs, extra), plot);

  CsvTable crossings({"experiment", "n_qubits", "beta", "time", "branch_a", "branch_b"});
  for (const auto& r : runs) {
    const auto list = ergotropy::eigenvalue_crossings(r.trajectory);
    for (const auto& x : list)
      crossings.add_row({std::string("appD"), static_cast<long long>(model.n_qubits), r.beta, x.time,
                         static_cast<long long>(x.branch_a), static_cast<long long>(x.branch_b)});
    const std::size_t top = model.dim() - 1;
    const auto dominant = std::find_if(list.begin(), list.end(),
                                       [&](const auto& x) { return x.branch_a == top || x.branch_b == top; });
    report.summary.push_back(beta_label(r.beta) + ": " + std::to_string(list.size()) + " eigenvalue crossings" +
                             (list.empty() ? "" : ", first at t=" + fmt(list.front().time, "%.3g")) +
                             (dominant == list.end() ? "" : ", largest eigenvalue first crosses at t=" +
                                                                fmt(dominant->time, "%.3f")));
  }
  emit(report, c, "appD-crossings", crossings);
  return report;
}

RunReport run_fig9(const ExperimentConfig& c) {
  const std::vector<double> ratios = {1, 5, 10, 20, 50, 100};
  const auto table_rows = jc::compare_jc(jc::JCSpec{}, ratios);

  CsvTable table({"experiment", "kappa_over_g", "gamma_eff", "time", "p_ee_full", "p_ee_eff", "abs_deviation"});
  LinePlot plot{"Jaynes-Cummings vs effective decay", "Gamma_eff t", "p_ee", {}};
  RunReport report;
  for (const auto& cmp : table_rows) {
    PlotSeries full{"k/g=" + fmt(cmp.kappa_over_g) + " full", {}, {}};
    PlotSeries eff{"k/g=" + fmt(cmp.kappa_over_g) + " eff", {}, {}};
    for (std::size_t k = 0; k < cmp.full.size(); ++k) {
      const double t = cmp.full.times[k];
      const double pf = cmp.full.states[k](0, 0).real();
      const double pe = cmp.effective.states[k](0, 0).real();
      table.add_row({std::string("fig9-jc"), cmp.kappa_over_g, cmp.gamma_eff, t, pf, pe, std::abs(pf - pe)});
      full.x.push_back(cmp.gamma_eff * t);
      full.y.push_back(pf);
      eff.x.push_back(cmp.gamma_eff * t);
      eff.y.push_back(pe);
    }
    plot.series.push_back(std::move(full));
    plot.series.push_back(std::move(eff));
    report.summary.push_back("k/g=" + fmt(cmp.kappa_over_g) + ": max |p_ee full - eff| = " +
                             fmt(cmp.max_deviation, "%.4g"));
  }
  emit(report, c, "fig9-jc", table, plot);
  return report;
}

}  // namespace

std::vector<QuenchRun> run_quenches(const model::ModelSpec& model, const channels::ChannelSpec& channel,
                                    std::span<const double> betas, const dynamics::TimeGrid& grid) {
  const auto h = model::build_hamiltonian(model);
  const auto liou = channels::build_liouvillian(h, channel, model);
  std::vector<double> list(betas.begin(), betas.end());
  return parallel_map(list.size(), [&](std::size_t i) {
    QuenchRun run;
    run.beta = list[i];
    run.model = model;
    run.channel = channel;
    run.trajectory = dynamics::propagate(liou, model::gibbs_state(h, list[i]), grid);
    run.trajectory.model = model;
    run.trajectory.channel = channel;
    run.series = ergotropy::ergotropy_series(run.trajectory, h);
    return run;
  });
}

double steady_ergotropy(const model::ModelSpec& model, const channels::ChannelSpec& channel, double beta,
                        const dynamics::TimeGrid& grid) {
  const auto h = model::build_hamiltonian(model);
  const auto liou = channels::build_liouvillian(h, channel, model);
  const auto traj = dynamics::propagate(liou, model::gibbs_state(h, beta), grid);
  return ergotropy::ergotropy(traj.final_state(), h).ergotropy;
}

const std::vector<ExperimentInfo>& experiment_registry() {
  static const std::vector<ExperimentInfo> registry = {
      {"fig2", "Fig. 2", "N=2 parallel dissipation, ergotropy vs time over the beta grid", run_fig2},
      {"fig3", "Fig. 3", "N=2 collective dissipation, temperature-dependent steady state", run_fig3},
      {"fig4", "Fig. 4", "N=2 collective steady-state passivity on a 50x50 (beta, h) grid", run_fig4},
      {"fig5", "Fig. 5", "N=4 parallel dissipation, ergotropy and difference vs the coldest state", run_fig5},
      {"fig6", "Fig. 6", "N=4 collective dissipation, ergotropy, difference and p_dark(t)", run_fig6},
      {"fig7", "Fig. 7", "Dark-subspace population of the Gibbs state vs beta", run_fig7},
      {"fig8", "Fig. 8", "Parallel dephasing for N=2 and N=4", run_fig8},
      {"appB-diss", "Fig. 11", "Steady ergotropy vs alpha_minus and beta (dissipation)",
       [](const ExperimentConfig& c) { return run_sweep(c, "appB-diss", false); }},
      {"appB-deph", "Fig. 12", "Steady ergotropy vs alpha_z and beta (dephasing)",
       [](const ExperimentConfig& c) { return run_sweep(c, "appB-deph", true); }},
      {"appB-channels", "Fig. 13", "Dissipation/dephasing mixing alpha in {0,.3,.5,.7,.9,1}", run_appb_channels},
      {"appC-check", "App. C", "Closed-form two-qubit oracles vs full propagation", run_appc_check},
      {"appD", "Fig. 10", "N=4 parallel crossings: energies, populations, eigenvalue crossings", run_appd},
      {"fig9-jc", "Fig. 9", "Lossy-cavity Jaynes-Cummings vs effective atomic decay", run_fig9},
  };
  return registry;
}

RunReport run_experiment(const ExperimentConfig& config) {
  check_ranges(config);
  const auto& reg = experiment_registry();
  const auto it = std::find_if(reg.begin(), reg.end(), [&](const auto& e) { return e.name == config.experiment; });
  if (it == reg.end()) throw ConfigError("unknown experiment '" + config.experiment + "' (see `ergoquench list`)");
  std::error_code ec;
  fs::create_directories(config.output_dir, ec);
  if (ec) throw ConfigError("cannot create output directory '" + config.output_dir + "': " + ec.message());
  return it->run(config);
}

}  // namespace ergoquench::app
