#include "hessfield/output.hpp"

#include <cstdio>

#include <json.hpp>

namespace hessfield {

std::string format_g17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string trajectory_csv_header(int n) {
  std::string h = "t";
  for (int a = 1; a <= n; ++a) h += ",U_" + std::to_string(a);
  for (int a = 1; a <= n; ++a) h += ",V_" + std::to_string(a);
  h += ",H,dHdt,kappa,field_norm_g";
  return h;
}

void write_trajectory_csv(std::ostream& os, const TrajectoryRecord& rec, int n) {
  os << trajectory_csv_header(n) << '\n';
  for (const TrajectoryRow& r : rec.rows) {
    os << format_g17(r.t);
    for (int a = 0; a < n; ++a) os << ',' << format_g17(r.U[a]);
    for (int a = 0; a < n; ++a) os << ',' << format_g17(r.V[a]);
    os << ',' << format_g17(r.H) << ',' << format_g17(r.dHdt) << ',' << format_g17(r.kappa) << ','
       << format_g17(r.field_norm_g) << '\n';
  }
}

namespace {

nlohmann::json vec_to_json17(const Vec& v) {
  // emit through the string formatter so JSONL numbers match the CSV ones
  nlohmann::json arr = nlohmann::json::array();
  for (double x : v) arr.push_back(std::stod(format_g17(x)));
  return arr;
}

}  // namespace

void write_trajectory_jsonl(std::ostream& os, const TrajectoryRecord& rec) {
  for (const TrajectoryRow& r : rec.rows) {
    nlohmann::json j;
    j["t"] = r.t;
    j["U"] = vec_to_json17(r.U);
    j["V"] = vec_to_json17(r.V);
    j["H"] = r.H;
    j["dHdt"] = r.dHdt;
    j["kappa"] = r.kappa;
    j["field_norm_g"] = r.field_norm_g;
    os << j.dump() << '\n';
  }
  nlohmann::json tail;
  tail["termination_reason"] = to_string(rec.termination_reason);
  if (rec.failure_step >= 0) {
    tail["failure_step"] = rec.failure_step;
    tail["failure_detail"] = rec.failure_detail;
  }
  os << tail.dump() << '\n';
}

std::string kappa_csv_header(int n) {
  std::string h;
  for (int a = 1; a <= n; ++a) h += "U_" + std::to_string(a) + ",";
  h += "kappa_closed_form,kappa_laplacian,kappa_divergence,max_pairwise_residual";
  return h;
}

void write_kappa_csv(std::ostream& os, const std::vector<KappaReport>& reports, int n) {
  os << kappa_csv_header(n) << '\n';
  for (const KappaReport& r : reports) {
    for (int a = 0; a < n; ++a) os << format_g17(r.point_U[a]) << ',';
    os << format_g17(r.closed_form) << ',' << format_g17(r.laplacian) << ','
       << format_g17(r.divergence) << ',' << format_g17(r.max_pairwise_residual) << '\n';
  }
}

void write_kappa_jsonl(std::ostream& os, const std::vector<KappaReport>& reports) {
  for (const KappaReport& r : reports) {
    nlohmann::json j;
    j["U"] = vec_to_json17(r.point_U);
    j["kappa_closed_form"] = r.closed_form;
    j["kappa_laplacian"] = r.laplacian;
    j["kappa_divergence"] = r.divergence;
    j["max_pairwise_residual"] = r.max_pairwise_residual;
    os << j.dump() << '\n';
  }
}

namespace {

std::pair<std::string, std::string> split_stem(const OutputSpec& spec) {
  std::string stem = spec.path;
  for (const char* known : {".csv", ".jsonl"}) {
    const std::string suffix(known);
    if (stem.size() > suffix.size() &&
        stem.compare(stem.size() - suffix.size(), suffix.size(), suffix) == 0) {
      stem.erase(stem.size() - suffix.size());
      break;
    }
  }
  const std::string ext = spec.format == OutputSpec::Format::Csv ? ".csv" : ".jsonl";
  return {stem, ext};
}

}  // namespace

std::string output_file_name(const OutputSpec& spec, size_t index) {
  const auto [stem, ext] = split_stem(spec);
  char idx[8];
  std::snprintf(idx, sizeof idx, "%03zu", index);
  return stem + "_" + idx + ext;
}

std::string kappa_file_name(const OutputSpec& spec) {
  const auto [stem, ext] = split_stem(spec);
  return stem + "_kappa" + ext;
}

}  // namespace hessfield
