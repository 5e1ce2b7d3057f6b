#pragma once

// Data-parallel kernels over point batches and trajectory ensembles.
// Each kernel has an OpenMP implementation and a serial reference that
// runs the identical per-item code path, so the two must agree bitwise;
// tests hold them to that and tools/bench.cpp compares their timing.

#include "hessfield/compressibility.hpp"
#include "hessfield/dynamics.hpp"

namespace hessfield {

int default_jobs();

std::vector<KappaReport> kappa_reports_serial(const EnergyFunction& energy,
                                              const SeparablePotential& sp,
                                              const std::vector<Vec>& points, FdOptions opt = {});

std::vector<KappaReport> kappa_reports_batch(const EnergyFunction& energy,
                                             const SeparablePotential& sp,
                                             const std::vector<Vec>& points, int jobs,
                                             FdOptions opt = {});

std::vector<TrajectoryRecord> integrate_ensemble_serial(const EnergyFunction& energy,
                                                        const SeparablePotential& sp,
                                                        const std::vector<Vec>& initial_conditions,
                                                        const IntegratorConfig& cfg);

std::vector<TrajectoryRecord> integrate_ensemble(const EnergyFunction& energy,
                                                 const SeparablePotential& sp,
                                                 const std::vector<Vec>& initial_conditions,
                                                 const IntegratorConfig& cfg, int jobs);

std::vector<TrajectoryRecord> integrate_ensemble_cg(const CohenGrossbergSpec& spec,
                                                    const std::vector<Vec>& initial_conditions,
                                                    const IntegratorConfig& cfg, int jobs);

}  // namespace hessfield
