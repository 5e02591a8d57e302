#include "parosc/scenario.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

namespace parosc {
namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

double to_double(const std::string& key, const std::string& v) {
  try {
    std::size_t used = 0;
    const double x = std::stod(v, &used);
    if (used != v.size() || !std::isfinite(x))
      throw std::invalid_argument("trailing characters");
    return x;
  } catch (const std::exception&) {
    throw std::invalid_argument("scenario field '" + key +
                                "': cannot parse number '" + v + "'");
  }
}

int to_int(const std::string& key, const std::string& v) {
  const double x = to_double(key, v);
  const int i = int(std::lround(x));
  if (std::abs(x - i) > 0.0)
    throw std::invalid_argument("scenario field '" + key +
                                "': expected an integer, got '" + v + "'");
  return i;
}

}  // namespace

Scenario parse_scenario(const std::string& text) {
  std::map<std::string, std::string> kv;
  std::istringstream in(text);
  std::string line, section;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find_first_of("#;");
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']')
        throw std::invalid_argument("scenario line " + std::to_string(line_no) +
                                    ": unterminated section header");
      section = trim(line.substr(1, line.size() - 2));
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("scenario line " + std::to_string(line_no) +
                                  ": expected key = value");
    const std::string key =
        (section.empty() ? "" : section + ".") + trim(line.substr(0, eq));
    kv[key] = trim(line.substr(eq + 1));
  }

  Scenario s;
  auto take = [&](const char* key) -> std::optional<std::string> {
    auto it = kv.find(key);
    if (it == kv.end()) return std::nullopt;
    std::string v = it->second;
    kv.erase(it);
    return v;
  };
  auto num = [&](const char* key, double& dst) {
    if (auto v = take(key)) dst = to_double(key, *v);
  };
  auto integer = [&](const char* key, int& dst) {
    if (auto v = take(key)) dst = to_int(key, *v);
  };
  auto word = [&](const char* key, std::string& dst) {
    if (auto v = take(key)) dst = *v;
  };

  word("scenario.name", s.name);
  word("profile.kind", s.profile_kind);
  num("profile.omega0", s.omega0);
  num("profile.k", s.k);
  num("profile.omega1", s.omega1);
  num("profile.omega2", s.omega2);
  word("force.kind", s.force_kind);
  num("force.f0", s.f0);
  num("force.amplitude", s.f_amp);
  num("force.frequency", s.f_freq);
  num("force.phase", s.f_phase);
  num("ermakov.a", s.a);
  num("ermakov.c", s.c);
  num("physical.m", s.m);
  num("physical.hbar", s.hbar);
  num("physical.w", s.w);
  num("trajectory.gamma1", s.gamma1);
  num("trajectory.gamma2", s.gamma2);
  integer("grid.n", s.grid_n);
  num("grid.margin_sigmas", s.margin_sigmas);
  num("times.t_start", s.t_start);
  num("times.t_end", s.t_end);
  integer("times.samples", s.samples);
  integer("states.n_max", s.n_max);
  num("coherent.alpha_re", s.alpha_re);
  num("coherent.alpha_im", s.alpha_im);
  integer("coherent.n_trunc", s.n_trunc);

  if (!kv.empty())
    throw std::invalid_argument("scenario field '" + kv.begin()->first +
                                "' is not recognized");
  return s;
}

Scenario load_scenario(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in)
    throw std::invalid_argument("cannot open scenario file " + file.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_scenario(buf.str());
}

std::string serialize_scenario(const Scenario& s) {
  std::ostringstream out;
  out << "[scenario]\nname = " << s.name << "\n\n";
  out << "[profile]\nkind = " << s.profile_kind << "\n";
  if (s.profile_kind == "constant")
    out << "omega0 = " << format_g17(s.omega0) << "\n";
  if (s.profile_kind == "tanh_step")
    out << "k = " << format_g17(s.k) << "\nomega1 = " << format_g17(s.omega1)
        << "\nomega2 = " << format_g17(s.omega2) << "\n";
  out << "\n[force]\nkind = " << s.force_kind << "\n";
  if (s.force_kind == "constant") out << "f0 = " << format_g17(s.f0) << "\n";
  if (s.force_kind == "cosine")
    out << "amplitude = " << format_g17(s.f_amp)
        << "\nfrequency = " << format_g17(s.f_freq)
        << "\nphase = " << format_g17(s.f_phase) << "\n";
  out << "\n[ermakov]\na = " << format_g17(s.a)
      << "\nc = " << format_g17(s.c) << "\n";
  out << "\n[physical]\nm = " << format_g17(s.m)
      << "\nhbar = " << format_g17(s.hbar) << "\nw = " << format_g17(s.w)
      << "\n";
  out << "\n[trajectory]\ngamma1 = " << format_g17(s.gamma1)
      << "\ngamma2 = " << format_g17(s.gamma2) << "\n";
  out << "\n[grid]\nn = " << s.grid_n
      << "\nmargin_sigmas = " << format_g17(s.margin_sigmas) << "\n";
  out << "\n[times]\nt_start = " << format_g17(s.t_start)
      << "\nt_end = " << format_g17(s.t_end) << "\nsamples = " << s.samples
      << "\n";
  out << "\n[states]\nn_max = " << s.n_max << "\n";
  out << "\n[coherent]\nalpha_re = " << format_g17(s.alpha_re)
      << "\nalpha_im = " << format_g17(s.alpha_im)
      << "\nn_trunc = " << s.n_trunc << "\n";
  return out.str();
}

Scenario preset_scenario(const std::string& name) {
  Scenario s;
  s.name = name;
  if (name == "free_particle") {
    s.profile_kind = "zero";
    s.t_start = -5.0;
    s.t_end = 5.0;
  } else if (name == "constant") {
    s.profile_kind = "constant";
    s.omega0 = 1.0;
    s.t_start = -5.0;
    s.t_end = 5.0;
  } else if (name == "tanh_step") {
    s.profile_kind = "tanh_step";
    s.k = 0.5;
    s.omega1 = 5.0;
    s.omega2 = 3.0;
    s.t_start = -6.0;
    s.t_end = 6.0;
  } else {
    throw std::invalid_argument("unknown preset '" + name + "'");
  }
  return s;
}

std::vector<std::string> preset_names() {
  return {"free_particle", "constant", "tanh_step"};
}

ScenarioRun build_run(const Scenario& s, int grid_override) {
  if (s.m <= 0.0 || s.hbar <= 0.0 || s.w <= 0.0)
    throw std::invalid_argument("physical constants must be positive");
  if (s.a <= 0.0 || s.c <= 0.0)
    throw std::invalid_argument("ermakov weights a, c must be positive");
  if (s.t_end <= s.t_start)
    throw std::invalid_argument("times.t_end must exceed times.t_start");
  if (s.samples < 2)
    throw std::invalid_argument("times.samples must be at least 2");
  if (s.n_max < 0 || s.n_max > 60)
    throw std::invalid_argument("states.n_max must be in [0, 60]");

  ScenarioRun run;
  run.scenario = s;
  run.consts = s.constants();

  if (s.profile_kind == "zero")
    run.profile = FrequencyProfile::zero();
  else if (s.profile_kind == "constant")
    run.profile = FrequencyProfile::constant(s.omega0);
  else if (s.profile_kind == "tanh_step")
    run.profile = FrequencyProfile::tanh_step(s.omega1, s.omega2, s.k);
  else
    throw std::invalid_argument("profile.kind '" + s.profile_kind +
                                "' is not one of zero|constant|tanh_step");

  if (s.force_kind == "none") {
    run.force = DrivingForce();
  } else if (s.force_kind == "constant") {
    const double f0 = s.f0;
    run.force = DrivingForce([f0](double) { return f0; });
  } else if (s.force_kind == "cosine") {
    const double amp = s.f_amp, freq = s.f_freq, phase = s.f_phase;
    run.force =
        DrivingForce([=](double t) { return amp * std::cos(freq * t + phase); });
  } else {
    throw std::invalid_argument("force.kind '" + s.force_kind +
                                "' is not one of none|constant|cosine");
  }

  const double pad = 2.0 + 0.1 * (s.t_end - s.t_start);
  ClassicalPair pair =
      analytic_pair(run.profile, s.t_start - pad, s.t_end + pad);
  ErmakovParams params = ErmakovParams::make(s.a, s.c, s.w, pair.W0);
  run.data = std::make_shared<TransformData>(run.profile, run.force,
                                             std::move(pair), params, s.gamma1,
                                             s.gamma2, s.m, s.hbar);

  const int n = grid_override > 0 ? grid_override : s.grid_n;
  run.grid = make_grid(*run.data, run.consts, s.n_max, s.t_start, s.t_end, n,
                       s.margin_sigmas);
  return run;
}

std::string format_g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_csv(const std::filesystem::path& file,
               const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& rows) {
  std::ofstream out(file);
  if (!out) throw std::runtime_error("cannot write " + file.string());
  for (std::size_t j = 0; j < header.size(); ++j)
    out << (j ? "," : "") << header[j];
  out << "\n";
  for (const auto& row : rows) {
    if (row.size() != header.size())
      throw std::invalid_argument("csv row width does not match header");
    for (std::size_t j = 0; j < row.size(); ++j)
      out << (j ? "," : "") << format_g17(row[j]);
    out << "\n";
  }
}

}  // namespace parosc
