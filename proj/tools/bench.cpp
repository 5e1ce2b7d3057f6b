// Timing comparison of the OpenMP batch kernels against their serial
// reference implementations.

#include <chrono>
#include <cstdio>

#include "hessfield/batch.hpp"

using namespace hessfield;

namespace {

double ms_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
}

NetworkSpec bench_network(int n, Rng& rng) {
  Mat J(n, n, 0.0);
  for (int a = 0; a < n; ++a)
    for (int b = a; b < n; ++b) {
      const double x = a == b ? 0.0 : rng.uniform(-0.4, 0.4);
      J(a, b) = x;
      J(b, a) = x;
    }
  Vec R(n), I(n);
  for (int a = 0; a < n; ++a) {
    R[a] = rng.uniform(0.5, 2.0);
    I[a] = rng.uniform(-0.5, 0.5);
  }
  return NetworkSpec(J, R, I);
}

}  // namespace

int main() {
  const int jobs = default_jobs();
  std::printf("batch kernels, serial reference vs OpenMP (%d threads)\n\n", jobs);

  Rng rng(4242);
  const int n = 4;
  const SeparablePotential sp(ConvexPotential::softplus(), n);
  const EnergyFunction energy = EnergyFunction::hopfield(bench_network(n, rng), ConvexPotential::softplus());

  {
    const int count = 20000;
    std::vector<Vec> points;
    points.reserve(count);
    for (int i = 0; i < count; ++i) points.push_back(rng.uniform_vec(n, -3.0, 3.0));

    auto t0 = std::chrono::steady_clock::now();
    const auto serial = kappa_reports_serial(energy, sp, points);
    const double t_serial = ms_since(t0);

    t0 = std::chrono::steady_clock::now();
    const auto parallel = kappa_reports_batch(energy, sp, points, jobs);
    const double t_parallel = ms_since(t0);

    double max_dev = 0.0;
    for (int i = 0; i < count; ++i)
      max_dev = std::max(max_dev, std::abs(serial[i].closed_form - parallel[i].closed_form));
    std::printf("kappa reports   n=%d  points=%d   serial %8.1f ms   omp %8.1f ms   speedup %.2fx   max dev %g\n",
                n, count, t_serial, t_parallel, t_serial / t_parallel, max_dev);
  }

  {
    const int count = 64;
    std::vector<Vec> ics;
    ics.reserve(count);
    for (int i = 0; i < count; ++i) ics.push_back(rng.uniform_vec(n, -2.0, 2.0));
    IntegratorConfig cfg;
    cfg.dt = 1e-3;
    cfg.t_max = 2.0;
    cfg.record_every = 100;

    auto t0 = std::chrono::steady_clock::now();
    const auto serial = integrate_ensemble_serial(energy, sp, ics, cfg);
    const double t_serial = ms_since(t0);

    t0 = std::chrono::steady_clock::now();
    const auto parallel = integrate_ensemble(energy, sp, ics, cfg, jobs);
    const double t_parallel = ms_since(t0);

    double max_dev = 0.0;
    for (int i = 0; i < count; ++i)
      max_dev = std::max(max_dev,
                         std::abs(serial[i].rows.back().H - parallel[i].rows.back().H));
    std::printf("trajectories    n=%d  runs=%d     serial %8.1f ms   omp %8.1f ms   speedup %.2fx   max dev %g\n",
                n, count, t_serial, t_parallel, t_serial / t_parallel, max_dev);
  }
  return 0;
}
