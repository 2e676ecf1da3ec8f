#pragma once

#include <cstdio>
#include <fstream>
#include <ostream>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "pdlimits/families.hpp"
#include "pdlimits/intensity.hpp"
#include "pdlimits/moments.hpp"
#include "pdlimits/sampler.hpp"
#include "pdlimits/series.hpp"

namespace pdl {

using Json = nlohmann::ordered_json;

/// 12 significant digits, the numeric format of every CSV we emit.
inline std::string fmt12(double v) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

inline void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out << content;
}

/// Coefficient dump: rows "n,q_phi_n" with exact values (integers, or p/q
/// when phi is non-integral).
inline std::string coeffs_csv(const CoeffSeries& s) {
  std::ostringstream os;
  os << "n,q_phi_n\n";
  for (int n = 0; n <= s.degree(); ++n) os << n << "," << to_string_exact(s.ordinary(n)) << "\n";
  return os.str();
}

/// Sample dump, wide form: replicate,L_1..L_k.
inline std::string scaled_samples_csv(std::span<const ScaledSizeSeq> samples, std::size_t k) {
  std::ostringstream os;
  os << "replicate";
  for (std::size_t j = 1; j <= k; ++j) os << ",L_" << j;
  os << "\n";
  for (std::size_t r = 0; r < samples.size(); ++r) {
    os << r;
    for (std::size_t j = 0; j < k; ++j)
      os << "," << fmt12(j < samples[r].values.size() ? samples[r].values[j] : 0.0);
    os << "\n";
  }
  return os.str();
}

/// Sample dump, sparse profile form: replicate,i,C_i.
inline std::string profile_samples_csv(std::span<const CountVector> samples) {
  std::ostringstream os;
  os << "replicate,i,C_i\n";
  for (std::size_t r = 0; r < samples.size(); ++r)
    for (int i = 1; i <= samples[r].n; ++i)
      if (samples[r].counts[i - 1] != 0)
        os << r << "," << i << "," << samples[r].counts[i - 1] << "\n";
  return os.str();
}

/// (t, empirical_cdf, theoretical_cdf) rows for plotting.
inline std::string cdf_compare_csv(std::span<const double> ts, std::span<const double> emp,
                                   std::span<const double> theo) {
  std::ostringstream os;
  os << "t,empirical_cdf,theoretical_cdf\n";
  for (std::size_t i = 0; i < ts.size(); ++i)
    os << fmt12(ts[i]) << "," << fmt12(emp[i]) << "," << fmt12(theo[i]) << "\n";
  return os.str();
}

inline Json family_descriptor(const FamilySpec& fam) {
  Json j;
  j["schema"] = 1;
  j["kind"] = to_string(fam.kind());
  j["phi"] = to_string_exact(fam.phi());
  switch (fam.source()) {
    case MSource::permutation: j["source"] = "permutation"; break;
    case MSource::necklace:
      j["source"] = "necklace";
      j["q"] = fam.q();
      break;
    case MSource::uniform: j["source"] = "uniform"; break;
    case MSource::custom: j["source"] = "custom"; break;
  }
  if (fam.singular()) {
    j["singular"] = {{"rho", to_string_exact(fam.singular()->rho)},
                     {"theta", fam.singular()->theta},
                     {"lambda", fam.singular()->lambda},
                     {"lambda_two_delta_disagreement", fam.lambda_disagreement()}};
  }
  return j;
}

inline Json intensity_report_json(const IntensityReport& rep) {
  Json j;
  j["schema"] = 1;
  j["empirical"] = rep.empirical;
  j["std_error"] = rep.std_error;
  j["replicates"] = rep.replicates;
  j["rhs_theta_alpha_first"] = rep.rhs_theta.alpha_first;
  j["rhs_theta_beta_first"] = rep.rhs_theta.beta_first;
  j["rhs_master"] = rep.rhs_master;
  if (rep.exact) {
    j["exact"] = to_string_exact(*rep.exact);
    j["exact_value"] = to_double(*rep.exact);
  }
  return j;
}

inline Json moment_record_json(const FamilySpec& fam, int n, std::span<const int> idx,
                               const Rational& exact, double rhs, double ratio) {
  Json j;
  j["schema"] = 1;
  j["family"] = fam.name();
  j["n"] = n;
  j["indices"] = std::vector<int>(idx.begin(), idx.end());
  j["exact"] = to_string_exact(exact);
  j["exact_value"] = to_double(exact);
  j["master_rhs"] = rhs;
  j["ratio"] = ratio;
  return j;
}

}  // namespace pdl
