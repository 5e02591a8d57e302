#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "parosc/operators.hpp"
#include "parosc/scenario.hpp"
#include "parosc/tdse.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace parosc;

namespace {

std::vector<double> time_samples(const Scenario& s, int count = 0) {
  const int n = count > 0 ? count : s.samples;
  std::vector<double> ts(std::size_t(n), 0.0);
  for (int i = 0; i < n; ++i)
    ts[std::size_t(i)] =
        s.t_start + (s.t_end - s.t_start) * double(i) / double(n - 1);
  return ts;
}

json moments_record(double t, const Moments& m) {
  return json{{"t", t},          {"mean_x", m.mean_x}, {"mean_p", m.mean_p},
              {"var_x", m.var_x}, {"var_p", m.var_p},   {"cov_xp", m.cov_xp}};
}

void write_json(const fs::path& file, const json& j) {
  std::ofstream out(file);
  if (!out) throw std::runtime_error("cannot write " + file.string());
  out << j.dump(2) << "\n";
}

int run_states(const ScenarioRun& run, const fs::path& out_dir) {
  const auto ts = time_samples(run.scenario);
  for (int n = 0; n <= run.scenario.n_max; ++n) {
    std::vector<std::vector<double>> rows;
    rows.reserve(ts.size() * std::size_t(run.grid.n));
    for (double t : ts) {
      const QuantumState st = sample_psi(n, t, *run.data, run.consts, run.grid);
      for (int j = 0; j < run.grid.n; ++j) {
        const Complex v = st.samples[std::size_t(j)];
        rows.push_back({t, run.grid.x(j), v.real(), v.imag(), std::norm(v)});
      }
    }
    write_csv(out_dir / ("states_n" + std::to_string(n) + ".csv"),
              {"t", "x", "re", "im", "density"}, rows);
  }
  return 0;
}

int run_moments(const ScenarioRun& run, const fs::path& out_dir) {
  const auto ts = time_samples(run.scenario);
  for (int n = 0; n <= run.scenario.n_max; ++n) {
    json recs = json::array();
    for (double t : ts) {
      const QuantumState st = sample_psi(n, t, *run.data, run.consts, run.grid);
      recs.push_back(moments_record(t, grid_moments(st, run.consts)));
    }
    write_json(out_dir / ("moments_n" + std::to_string(n) + ".json"), recs);
  }
  return 0;
}

int run_coherent(const ScenarioRun& run, const fs::path& out_dir) {
  const auto ts = time_samples(run.scenario);
  const CoherentParams alpha = run.scenario.coherent();

  std::vector<std::vector<double>> raster;
  std::vector<std::vector<double>> traces;
  json recs = json::array();
  for (double t : ts) {
    const QuantumState st =
        coherent_wavepacket(alpha, t, *run.data, run.consts, run.grid);
    for (int j = 0; j < run.grid.n; ++j)
      raster.push_back(
          {t, run.grid.x(j), std::norm(st.samples[std::size_t(j)])});
    const Moments m = coherent_moments(alpha, run.data->frame(t), run.consts);
    traces.push_back({t, m.var_x, m.var_p, m.cov_xp,
                      m.var_x * m.var_p - m.cov_xp * m.cov_xp});
    recs.push_back(moments_record(t, m));
  }
  write_csv(out_dir / "coherent_density.csv", {"t", "x", "density"}, raster);
  write_csv(out_dir / "coherent_uncertainty.csv",
            {"t", "var_x", "var_p", "cov_xp", "sr_product"}, traces);
  write_json(out_dir / "coherent_moments.json", recs);
  return 0;
}

int run_figures(const ScenarioRun& run, const fs::path& out_dir) {
  const auto ts = time_samples(run.scenario, std::max(run.scenario.samples, 201));

  std::vector<std::vector<double>> curves;
  for (double t : ts)
    curves.push_back({t, run.data->sigma(t), run.data->pair().q1.value(t),
                      run.data->pair().q2.value(t)});
  write_csv(out_dir / "fig_sigma.csv", {"t", "sigma", "q1", "q2"}, curves);

  const auto ts_raster = time_samples(run.scenario);
  std::vector<std::vector<double>> raster;
  for (int n = 0; n <= run.scenario.n_max; ++n)
    for (double t : ts_raster) {
      const QuantumState st = sample_psi(n, t, *run.data, run.consts, run.grid);
      for (int j = 0; j < run.grid.n; ++j)
        raster.push_back({double(n), t, run.grid.x(j),
                          std::norm(st.samples[std::size_t(j)])});
    }
  write_csv(out_dir / "fig_densities.csv", {"n", "t", "x", "density"}, raster);

  std::vector<std::vector<double>> coh;
  const CoherentParams alpha = run.scenario.coherent();
  for (double t : ts_raster) {
    const QuantumState st =
        coherent_wavepacket(alpha, t, *run.data, run.consts, run.grid);
    for (int j = 0; j < run.grid.n; ++j)
      coh.push_back({t, run.grid.x(j), std::norm(st.samples[std::size_t(j)])});
  }
  write_csv(out_dir / "fig_coherent.csv", {"t", "x", "density"}, coh);
  return 0;
}

int run_verify(const ScenarioRun& run, const fs::path& out_dir, double tol) {
  std::vector<CheckResult> results;
  auto add = [&](std::string name, double t, double residual, double tolerance) {
    results.push_back(CheckResult{std::move(name), t, residual, tolerance,
                                  std::isfinite(residual) &&
                                      residual <= tolerance});
  };

  const auto ts5 = time_samples(run.scenario, 5);
  const auto ts3 = time_samples(run.scenario, 3);
  const double hw = run.consts.hbar * run.consts.w;

  // classical layer: Wronskian constancy and the Ermakov equation
  for (double t : ts5) {
    add("wronskian constant", t,
        std::abs(run.data->pair().wronskian(t) / run.data->pair().W0 - 1.0),
        1e-8);
    const Frame f = run.data->frame(t);
    const double om2 = run.profile.omega_sq(t);
    add("ermakov equation", t,
        std::abs(f.sigma_ddot + om2 * f.sigma -
                 run.consts.w * run.consts.w / std::pow(f.sigma, 3)),
        tol);
  }

  // potential reconstruction identity on the grid
  for (double t : ts3) {
    double worst = 0.0;
    const double om2 = run.profile.omega_sq(t);
    const double f_t = run.force(t);
    for (int j = 0; j < run.grid.n; j += 16) {
      const double x = run.grid.x(j);
      const double want = 0.5 * run.consts.m * om2 * x * x + f_t * x;
      const double got = reconstruct_potential(x, t, *run.data);
      worst = std::max(worst, std::abs(got - want) / (1.0 + std::abs(want)));
    }
    add("potential reconstruction", t, worst, 1e-6);
  }

  // orthonormality of phi_0..phi_8
  for (double t : ts5) {
    std::vector<QuantumState> basis;
    for (int n = 0; n <= 8; ++n)
      basis.push_back(sample_varphi(n, t, *run.data, run.consts, run.grid));
    double worst = 0.0;
    for (int i = 0; i <= 8; ++i)
      for (int j = 0; j <= 8; ++j) {
        const Complex g = inner_product(basis[std::size_t(i)],
                                        basis[std::size_t(j)]).value;
        worst = std::max(worst,
                         std::abs(g - (i == j ? Complex(1, 0) : Complex(0, 0))));
      }
    add("gram matrix", t, worst, 1e-8);
  }

  // invariant eigenvalues
  for (double t : ts5)
    for (int n = 0; n <= 6; ++n) {
      const QuantumState phi =
          sample_varphi(n, t, *run.data, run.consts, run.grid);
      QuantumState r = apply_invariant(phi, t, *run.data, run.consts);
      const double en = run.consts.energy(n);
      for (std::size_t j = 0; j < r.samples.size(); ++j)
        r.samples[j] -= en * phi.samples[j];
      add("invariant eigenvalue n=" + std::to_string(n), t, r.norm() / en, tol);
    }

  // ladder coefficients a2 phi_{n+1} = sqrt(hbar w (n+1)) phi_n
  for (double t : ts3)
    for (int n = 0; n <= 4; ++n) {
      const QuantumState hi =
          sample_varphi(n + 1, t, *run.data, run.consts, run.grid);
      const QuantumState lo =
          sample_varphi(n, t, *run.data, run.consts, run.grid);
      QuantumState r = apply_ladder(hi, t, Ladder::Lower, *run.data, run.consts);
      const double coef = std::sqrt(hw * (n + 1.0));
      for (std::size_t j = 0; j < r.samples.size(); ++j)
        r.samples[j] -= coef * lo.samples[j];
      add("lowering coefficient n=" + std::to_string(n + 1), t,
          r.norm() / coef, tol);
    }

  for (double t : ts3) {
    for (auto& c : commutator_check(t, 16, *run.data, run.consts, run.grid, tol))
      results.push_back(c);
    for (auto& c :
         factorization_check(t, 16, *run.data, run.consts, run.grid, tol))
      results.push_back(c);
    for (auto& c : quadrature_reconstruction(t, 16, *run.data, run.consts,
                                             run.grid, tol))
      results.push_back(c);
  }

  // coherent state: Schrodinger-Robertson saturation, closed form
  const CoherentParams alpha = run.scenario.coherent();
  for (double t : ts5) {
    const Moments m = coherent_moments(alpha, run.data->frame(t), run.consts);
    add("schrodinger-robertson saturation", t,
        std::abs(m.var_x * m.var_p - m.cov_xp * m.cov_xp -
                 0.25 * run.consts.hbar * run.consts.hbar),
        1e-10);
  }

  json report = json::array();
  bool all_pass = true;
  for (const auto& c : results) {
    report.push_back(json{{"check", c.check},
                          {"t", c.t},
                          {"norm_residual", c.residual},
                          {"tolerance", c.tolerance},
                          {"pass", c.pass}});
    if (!c.pass) {
      all_pass = false;
      std::fprintf(stderr, "FAIL %s at t=%g: residual %.3e > %.3e\n",
                   c.check.c_str(), c.t, c.residual, c.tolerance);
    }
  }
  write_json(out_dir / "verify_report.json", report);
  std::printf("%zu checks, %s\n", results.size(),
              all_pass ? "all passed" : "FAILURES");
  return all_pass ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"point-transformed parametric oscillator toolkit"};
  app.require_subcommand(1);

  std::string scenario_path, out_dir = ".";
  double tol = 1e-6;
  int grid_n = 0;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--scenario", scenario_path,
                    "scenario file, or preset name free_particle|constant|tanh_step")
        ->required();
    cmd->add_option("--out", out_dir, "output directory");
    cmd->add_option("--tol", tol, "verification tolerance");
    cmd->add_option("--grid-n", grid_n, "override grid point count");
  };
  for (const char* name : {"states", "moments", "coherent", "verify", "figures"})
    add_common(app.add_subcommand(name));

  CLI11_PARSE(app, argc, argv);
  const std::string cmd = app.get_subcommands().front()->get_name();

  try {
    Scenario s;
    if (fs::exists(scenario_path))
      s = load_scenario(scenario_path);
    else
      s = preset_scenario(scenario_path);
    ScenarioRun run = build_run(s, grid_n);
    fs::create_directories(out_dir);

    if (cmd == "states") return run_states(run, out_dir);
    if (cmd == "moments") return run_moments(run, out_dir);
    if (cmd == "coherent") return run_coherent(run, out_dir);
    if (cmd == "figures") return run_figures(run, out_dir);
    return run_verify(run, out_dir, tol);
  } catch (const AccuracyError& e) {
    std::fprintf(stderr, "accuracy failure: %s\n", e.what());
    return 3;
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "invalid input: %s\n", e.what());
    return 1;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 3;
  }
}
