#include "hessfield/batch.hpp"

#include <exception>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace hessfield {

int default_jobs() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

namespace {

// Exceptions must not cross a parallel region; the first one thrown is
// kept and rethrown after the join.
template <typename Out, typename Work>
std::vector<Out> parallel_map(size_t count, int jobs, const Work& work) {
  std::vector<Out> out(count);
  std::exception_ptr first_error = nullptr;
  if (jobs < 1) jobs = 1;
#ifdef _OPENMP
#pragma omp parallel for schedule(static) num_threads(jobs)
#endif
  for (long i = 0; i < static_cast<long>(count); ++i) {
    try {
      out[static_cast<size_t>(i)] = work(static_cast<size_t>(i));
    } catch (...) {
#ifdef _OPENMP
#pragma omp critical(hessfield_batch_error)
#endif
      {
        if (!first_error) first_error = std::current_exception();
      }
    }
  }
  if (first_error) std::rethrow_exception(first_error);
  return out;
}

}  // namespace

std::vector<KappaReport> kappa_reports_serial(const EnergyFunction& energy,
                                              const SeparablePotential& sp,
                                              const std::vector<Vec>& points, FdOptions opt) {
  std::vector<KappaReport> out;
  out.reserve(points.size());
  for (const Vec& p : points) out.push_back(kappa_report(energy, sp, p, opt));
  return out;
}

std::vector<KappaReport> kappa_reports_batch(const EnergyFunction& energy,
                                             const SeparablePotential& sp,
                                             const std::vector<Vec>& points, int jobs,
                                             FdOptions opt) {
  return parallel_map<KappaReport>(points.size(), jobs, [&](size_t i) {
    return kappa_report(energy, sp, points[i], opt);
  });
}

std::vector<TrajectoryRecord> integrate_ensemble_serial(const EnergyFunction& energy,
                                                        const SeparablePotential& sp,
                                                        const std::vector<Vec>& initial_conditions,
                                                        const IntegratorConfig& cfg) {
  std::vector<TrajectoryRecord> out;
  out.reserve(initial_conditions.size());
  for (const Vec& u0 : initial_conditions) out.push_back(integrate(energy, sp, u0, cfg));
  return out;
}

std::vector<TrajectoryRecord> integrate_ensemble(const EnergyFunction& energy,
                                                 const SeparablePotential& sp,
                                                 const std::vector<Vec>& initial_conditions,
                                                 const IntegratorConfig& cfg, int jobs) {
  return parallel_map<TrajectoryRecord>(initial_conditions.size(), jobs, [&](size_t i) {
    return integrate(energy, sp, initial_conditions[i], cfg);
  });
}

std::vector<TrajectoryRecord> integrate_ensemble_cg(const CohenGrossbergSpec& spec,
                                                    const std::vector<Vec>& initial_conditions,
                                                    const IntegratorConfig& cfg, int jobs) {
  return parallel_map<TrajectoryRecord>(initial_conditions.size(), jobs, [&](size_t i) {
    return integrate_cohen_grossberg(spec, initial_conditions[i], cfg);
  });
}

}  // namespace hessfield
