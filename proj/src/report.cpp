#include "wignerlab/report.hpp"

#include <cstdio>
#include <optional>
#include <sstream>

namespace wignerlab {

namespace {

ordered_json opt(const std::optional<double>& x) {
    return x ? ordered_json(*x) : ordered_json(nullptr);
}

std::string cell(const std::optional<double>& x) { return x ? format_number(*x) : std::string(); }

std::string header(const ordered_json& config, const char* columns) {
    return "# config=" + config.dump() + "\n" + columns + "\n";
}

ordered_json entry_json(const CovarianceEntry& e) {
    ordered_json j;
    j["k"] = e.k;
    j["l"] = e.l;
    j["tree"] = e.tree_count;
    j["cycle"] = e.cycle_count;
    j["value"] = e.value;
    return j;
}

ordered_json thresholds_json(const Thresholds& t) {
    ordered_json j;
    j["variance_relative"] = t.variance_relative;
    j["se_multiple"] = t.se_multiple;
    j["normality_alpha"] = t.normality_alpha;
    j["min_replicas"] = t.min_replicas;
    return j;
}

}  // namespace

std::string format_number(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

ordered_json report_json(const OracleReport& r, const ordered_json& config) {
    ordered_json j;
    j["config"] = config;
    j["kmax"] = r.kmax;
    j["profile"] = r.profile;
    j["catalan"] = r.catalan;
    j["a"] = r.a;
    ordered_json cells = ordered_json::array();
    for (const auto& e : r.table.entries()) cells.push_back(entry_json(e));
    j["A"] = cells;
    j["limit_cov"] = r.limit_cov;
    j["findings"] = r.findings;
    return j;
}

ordered_json report_json(const LlnReport& r, const ordered_json& config) {
    ordered_json j;
    j["config"] = config;
    ordered_json cells = ordered_json::array();
    for (const auto& c : r.cells) {
        ordered_json cj;
        cj["N"] = c.N;
        cj["replicas"] = c.replicas;
        if (c.error) {
            cj["error"] = *c.error;
            cells.push_back(cj);
            continue;
        }
        ordered_json ms = ordered_json::array();
        for (const auto& m : c.moments) {
            ms.push_back({{"k", m.k}, {"mean", m.mean}, {"sd", m.sd}, {"se", m.se},
                          {"target", m.target}, {"abs_error", m.error}});
        }
        cj["moments"] = ms;
        cj["median_ks_spectral"] = c.median_ks_spectral;
        cj["median_ks_empirical"] = c.median_ks_empirical;
        cj["ks_spectral"] = c.ks_spectral;
        cj["ks_empirical"] = c.ks_empirical;
        cells.push_back(cj);
    }
    j["cells"] = cells;
    ordered_json trends = ordered_json::array();
    for (const auto& t : r.trends) {
        trends.push_back({{"k", t.k}, {"error_smallest_N", t.error_smallest_N},
                          {"error_largest_N", t.error_largest_N},
                          {"variance_exponent", opt(t.variance_exponent)}});
    }
    j["trends"] = trends;
    j["ks_spectral_decreasing"] = r.ks_spectral_decreasing;
    j["ks_empirical_decreasing"] = r.ks_empirical_decreasing;
    j["verdicts"] = {{"ks_trend", to_string(r.ks_trend)}};
    return j;
}

ordered_json report_json(const CltReport& r, const ordered_json& config) {
    ordered_json j;
    j["config"] = config;
    j["N"] = r.config.N;
    j["replicas"] = r.config.replicas;
    j["thresholds"] = thresholds_json(r.config.thresholds);
    ordered_json orders = ordered_json::array();
    for (const auto& o : r.orders) {
        ordered_json oj;
        oj["k"] = o.k;
        oj["a_k"] = o.a_k;
        oj["limit"] = to_string(o.limit);
        oj["moment_mean"] = o.moment_mean;
        oj["centering_se"] = o.centering_se;
        oj["mean"] = o.summary.mean;
        oj["sd"] = o.summary.sd;
        oj["skewness"] = opt(o.summary.skewness);
        oj["excess_kurtosis"] = opt(o.summary.excess_kurtosis);
        oj["variance"] = o.variance;
        oj["variance_se"] = o.variance_se;
        oj["predicted_variance"] = o.predicted_variance;
        oj["predicted_kurtosis"] = opt(o.predicted_kurtosis);
        if (o.normality) {
            oj["normality"] = {{"statistic", o.normality->statistic}, {"p_value", o.normality->p_value}};
        } else {
            oj["normality"] = nullptr;
        }
        oj["verdicts"] = {{"variance", to_string(o.variance_verdict)},
                          {"normality", to_string(o.normality_verdict)},
                          {"kurtosis", to_string(o.kurtosis_verdict)}};
        orders.push_back(oj);
    }
    j["orders"] = orders;
    ordered_json covs = ordered_json::array();
    for (const auto& c : r.covariances) {
        covs.push_back({{"k", c.k}, {"l", c.l}, {"sample", c.sample}, {"se", c.se},
                        {"predicted", c.predicted}, {"verdict", to_string(c.verdict)}});
    }
    j["covariances"] = covs;
    j["sample_cov"] = r.sample_cov;
    j["predicted_cov"] = r.predicted_cov;
    ordered_json cells = ordered_json::array();
    for (const auto& e : r.table) cells.push_back(entry_json(e));
    j["A"] = cells;
    j["overall"] = to_string(r.overall);
    return j;
}

ordered_json report_json(const ExactReport& r, const ordered_json& config) {
    ordered_json j;
    j["config"] = config;
    j["profile"] = r.profile;
    j["N"] = r.config.N;
    j["k"] = r.config.k;
    j["k2"] = r.config.k2;
    j["value"] = r.value.value;
    const auto exact = r.value.exact();
    j["exact"] = exact ? ordered_json(exact->str()) : ordered_json(nullptr);
    j["word_sum"] = r.value.word_sum ? ordered_json(r.value.word_sum->str()) : ordered_json(nullptr);
    j["power"] = r.value.power;
    j["terms"] = r.value.terms;
    if (r.monte_carlo) {
        j["monte_carlo"] = {{"estimate", r.monte_carlo->estimate}, {"se", r.monte_carlo->se},
                            {"replicas", r.monte_carlo->replicas}};
    } else {
        j["monte_carlo"] = nullptr;
    }
    j["z_score"] = opt(r.z_score);
    j["se_multiple"] = r.config.thresholds.se_multiple;
    j["verdict"] = to_string(r.verdict);
    return j;
}

std::string a_table_csv(const OracleReport& r, const ordered_json& config) {
    std::ostringstream out;
    out << header(config, "k,l,tree,cycle,value");
    for (const auto& e : r.table.entries()) {
        out << e.k << ',' << e.l << ',' << e.tree_count << ',' << e.cycle_count << ','
            << format_number(e.value) << '\n';
    }
    return out.str();
}

std::string lln_csv(const LlnReport& r, const ordered_json& config) {
    std::ostringstream out;
    out << header(config, "N,k,replicas,mean,sd,se,target,abs_error,median_ks_spectral,median_ks_empirical");
    for (const auto& c : r.cells) {
        for (const auto& m : c.moments) {
            out << c.N << ',' << m.k << ',' << c.replicas << ',' << format_number(m.mean) << ','
                << format_number(m.sd) << ',' << format_number(m.se) << ',' << format_number(m.target) << ','
                << format_number(m.error) << ',' << format_number(c.median_ks_spectral) << ','
                << format_number(c.median_ks_empirical) << '\n';
        }
    }
    return out.str();
}

std::string clt_csv(const CltReport& r, const ordered_json& config) {
    std::ostringstream out;
    out << header(config,
                  "k,a_k,limit,variance,variance_se,predicted_variance,mean,centering_se,skewness,"
                  "excess_kurtosis,predicted_kurtosis,normality_p,variance_verdict,normality_verdict,"
                  "kurtosis_verdict");
    for (const auto& o : r.orders) {
        out << o.k << ',' << o.a_k << ',' << to_string(o.limit) << ',' << format_number(o.variance) << ','
            << format_number(o.variance_se) << ',' << format_number(o.predicted_variance) << ','
            << format_number(o.summary.mean) << ',' << format_number(o.centering_se) << ','
            << cell(o.summary.skewness) << ',' << cell(o.summary.excess_kurtosis) << ','
            << cell(o.predicted_kurtosis) << ','
            << (o.normality ? format_number(o.normality->p_value) : std::string()) << ','
            << to_string(o.variance_verdict) << ',' << to_string(o.normality_verdict) << ','
            << to_string(o.kurtosis_verdict) << '\n';
    }
    return out.str();
}

std::string clt_cov_csv(const CltReport& r, const ordered_json& config) {
    std::ostringstream out;
    out << header(config, "k,l,sample,se,predicted,verdict");
    for (const auto& c : r.covariances) {
        out << c.k << ',' << c.l << ',' << format_number(c.sample) << ',' << format_number(c.se) << ','
            << format_number(c.predicted) << ',' << to_string(c.verdict) << '\n';
    }
    return out.str();
}

std::string exact_csv(const ExactReport& r, const ordered_json& config) {
    std::ostringstream out;
    out << header(config, "N,k,k2,value,exact,mc_estimate,mc_se,mc_replicas,verdict");
    const auto exact = r.value.exact();
    out << r.config.N << ',' << r.config.k << ',' << r.config.k2 << ',' << format_number(r.value.value) << ','
        << (exact ? exact->str() : std::string()) << ',';
    if (r.monte_carlo) {
        out << format_number(r.monte_carlo->estimate) << ',' << format_number(r.monte_carlo->se) << ','
            << r.monte_carlo->replicas;
    } else {
        out << ",,";
    }
    out << ',' << to_string(r.verdict) << '\n';
    return out.str();
}

std::string measure_csv(const AtomicMeasure& m, const ordered_json& config) {
    std::ostringstream out;
    out << header(config, "location,weight");
    for (const auto& a : m.atoms()) out << format_number(a.location) << ',' << format_number(a.weight) << '\n';
    return out.str();
}

std::string moments_csv(const std::vector<double>& moments, const ordered_json& config) {
    std::ostringstream out;
    out << header(config, "k,value");
    for (std::size_t k = 0; k < moments.size(); ++k) out << k + 1 << ',' << format_number(moments[k]) << '\n';
    return out.str();
}

}  // namespace wignerlab
