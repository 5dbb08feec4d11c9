#pragma once

#include "wignerlab/config.hpp"
#include "wignerlab/experiments.hpp"
#include "wignerlab/oracle.hpp"

#include <string>

namespace wignerlab {

// JSON reports. Every report carries the resolved config under "config".
ordered_json report_json(const OracleReport& r, const ordered_json& config);
ordered_json report_json(const LlnReport& r, const ordered_json& config);
ordered_json report_json(const CltReport& r, const ordered_json& config);
ordered_json report_json(const ExactReport& r, const ordered_json& config);

// CSV tables. First line is "# config=<compact json>", second the header.
// Numbers use %.17g; missing values are empty fields.

/// k,l,tree,cycle,value
std::string a_table_csv(const OracleReport& r, const ordered_json& config);
/// N,k,replicas,mean,sd,se,target,abs_error,median_ks_spectral,median_ks_empirical
std::string lln_csv(const LlnReport& r, const ordered_json& config);
/// k,a_k,limit,variance,variance_se,predicted_variance,mean,centering_se,skewness,excess_kurtosis,
/// predicted_kurtosis,normality_p,variance_verdict,normality_verdict,kurtosis_verdict
std::string clt_csv(const CltReport& r, const ordered_json& config);
/// k,l,sample,se,predicted,verdict
std::string clt_cov_csv(const CltReport& r, const ordered_json& config);
/// N,k,k2,value,exact,mc_estimate,mc_se,mc_replicas,verdict
std::string exact_csv(const ExactReport& r, const ordered_json& config);

/// location,weight
std::string measure_csv(const AtomicMeasure& m, const ordered_json& config);
/// k,value with k = 1..K
std::string moments_csv(const std::vector<double>& moments, const ordered_json& config);

/// %.17g
std::string format_number(double x);

}  // namespace wignerlab
