// Compares the serial and OpenMP state-sampling paths on a full raster
// and reports throughput plus the maximum sample difference (which must
// be exactly zero: both paths run the same per-point map).
#include <chrono>
#include <cstdio>

#include "parosc/parallel.hpp"
#include "parosc/scenario.hpp"

using namespace parosc;

namespace {

double raster_seconds(const ScenarioRun& run, bool parallel,
                      std::vector<Complex>& sink) {
  const auto t0 = std::chrono::steady_clock::now();
  sink.clear();
  for (int rep = 0; rep < 20; ++rep) {
    const double t = run.scenario.t_start +
                     (run.scenario.t_end - run.scenario.t_start) * rep / 19.0;
    for (int n = 0; n <= run.scenario.n_max; ++n) {
      const QuantumState st =
          sample_psi(n, t, *run.data, run.consts, run.grid, parallel);
      sink.insert(sink.end(), st.samples.begin(), st.samples.end());
    }
  }
  const auto t1 = std::chrono::steady_clock::now();
  return std::chrono::duration<double>(t1 - t0).count();
}

}  // namespace

int main() {
  Scenario s = preset_scenario("tanh_step");
  s.n_max = 8;
  ScenarioRun run = build_run(s);

  std::vector<Complex> serial_out, parallel_out;
  raster_seconds(run, false, serial_out);  // warmup: caches, page faults
  const double ts = raster_seconds(run, false, serial_out);
  const double tp = raster_seconds(run, true, parallel_out);

  double worst = 0.0;
  for (std::size_t j = 0; j < serial_out.size(); ++j)
    worst = std::max(worst, std::abs(serial_out[j] - parallel_out[j]));

  const std::size_t points = serial_out.size();
  std::printf("raster: %zu samples, grid n = %d, threads = %d\n", points,
              run.grid.n, max_threads());
  std::printf("serial:   %8.3f s  (%.2f Msamples/s)\n", ts,
              points / ts / 1e6);
  std::printf("parallel: %8.3f s  (%.2f Msamples/s, speedup %.2fx)\n", tp,
              points / tp / 1e6, ts / tp);
  std::printf("max |serial - parallel| = %.3e\n", worst);
  return worst == 0.0 ? 0 : 1;
}
