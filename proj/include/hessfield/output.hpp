#pragma once

// Tabular and streaming serialization of trajectory records and kappa
// reports. Numbers carry 17 significant digits so parsed values round-trip
// losslessly.

#include <ostream>
#include <string>

#include "hessfield/compressibility.hpp"
#include "hessfield/config.hpp"
#include "hessfield/dynamics.hpp"

namespace hessfield {

std::string format_g17(double x);

/// Header is exactly t,U_1..U_n,V_1..V_n,H,dHdt,kappa,field_norm_g.
std::string trajectory_csv_header(int n);
void write_trajectory_csv(std::ostream& os, const TrajectoryRecord& rec, int n);
void write_trajectory_jsonl(std::ostream& os, const TrajectoryRecord& rec);

std::string kappa_csv_header(int n);
void write_kappa_csv(std::ostream& os, const std::vector<KappaReport>& reports, int n);
void write_kappa_jsonl(std::ostream& os, const std::vector<KappaReport>& reports);

/// Output file naming for a run with k streams: <stem>_<idx:03d><ext>,
/// where any .csv/.jsonl extension on the configured path becomes the stem
/// and the extension follows the configured format.
std::string output_file_name(const OutputSpec& spec, size_t index);
std::string kappa_file_name(const OutputSpec& spec);

}  // namespace hessfield
