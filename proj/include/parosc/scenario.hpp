#pragma once

#include <filesystem>
#include <memory>

#include "parosc/states.hpp"

namespace parosc {

// Flat description of one run: frequency profile, driving, transform
// parameters, grid and time-sampling policy. Serialized as sectioned
// key = value text.
struct Scenario {
  std::string name = "unnamed";

  std::string profile_kind = "constant";  // zero | constant | tanh_step
  double omega0 = 1.0;                    // constant profile
  double k = 0.5, omega1 = 5.0, omega2 = 3.0;  // tanh_step profile

  std::string force_kind = "none";  // none | constant | cosine
  double f0 = 0.0;                  // constant force
  double f_amp = 0.0, f_freq = 1.0, f_phase = 0.0;  // cosine force

  double a = 1.0, c = 1.0;          // Ermakov combination weights
  double m = 1.0, hbar = 1.0, w = 1.0;
  double gamma1 = 0.0, gamma2 = 0.0;

  int grid_n = 2048;
  double margin_sigmas = 8.0;

  double t_start = -5.0, t_end = 5.0;
  int samples = 41;

  int n_max = 3;                    // highest mode for states/figures
  double alpha_re = 2.0, alpha_im = 0.0;  // coherent amplitude
  int n_trunc = 60;                 // coherent series truncation

  CoherentParams coherent() const { return {Complex(alpha_re, alpha_im)}; }
  PhysConstants constants() const { return {m, hbar, w}; }
};

Scenario parse_scenario(const std::string& text);
Scenario load_scenario(const std::filesystem::path& file);
std::string serialize_scenario(const Scenario& s);

// Built-in parameter sets: free_particle, constant, tanh_step.
Scenario preset_scenario(const std::string& name);
std::vector<std::string> preset_names();

// Scenario with the classical pair solved and the transform assembled.
struct ScenarioRun {
  Scenario scenario;
  PhysConstants consts;
  FrequencyProfile profile = FrequencyProfile::zero();
  DrivingForce force;
  std::shared_ptr<TransformData> data;
  Grid grid;
};

// Throws std::invalid_argument on validation failures, AccuracyError on
// numeric ones. grid_override > 0 replaces the configured point count.
ScenarioRun build_run(const Scenario& s, int grid_override = 0);

// 17-significant-digit CSV writers; identical input gives byte-identical
// files.
void write_csv(const std::filesystem::path& file,
               const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& rows);
std::string format_g17(double v);

}  // namespace parosc
