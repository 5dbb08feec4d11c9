#include "wignerlab/config.hpp"
#include "wignerlab/oracle.hpp"
#include "wignerlab/report.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <thread>

namespace fs = std::filesystem;
using namespace wignerlab;

namespace {

enum Exit { kOk = 0, kConfig = 2, kCap = 3, kVerdict = 4 };

struct Flags {
    std::string config_path;
    std::string outdir;
    int threads = 0;

    std::uint64_t seed = 1;
    std::string profile;
    std::string diag;
    int kmax = 0;
    std::vector<std::size_t> grid;
    std::size_t N = 0;
    int K = 0;
    std::size_t replicas = 0;
    int k = 0;
    int k2 = 0;
    int max_word_k = 0;
    int max_pair_sum = 0;
    std::uint64_t max_terms = 0;
    std::string solver;
    std::uint64_t replica = 0;

    // words
    std::string filter = "all";
    int k1 = 0;
};

void write_file(const fs::path& path, const std::string& body) {
    fs::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << body;
    if (!out) throw std::runtime_error("cannot write " + path.string());
}

std::string pretty(const ordered_json& j) { return j.dump(2) + "\n"; }

RunConfig load_config(const std::string& command, const Flags& f, const CLI::App& sub) {
    RunConfig c;
    if (!f.config_path.empty()) {
        std::ifstream in(f.config_path);
        if (!in) throw ConfigError("cannot open config file " + f.config_path);
        ordered_json j;
        try {
            j = ordered_json::parse(in);
        } catch (const nlohmann::json::parse_error& e) {
            throw ConfigError(std::string("config is not valid JSON: ") + e.what());
        }
        merge_json(j, c);
        if (!c.command.empty() && c.command != command) {
            throw ConfigError("config is for '" + c.command + "', not '" + command + "'");
        }
    }
    c.command = command;
    auto given = [&](const char* name) {
        const CLI::Option* opt = sub.get_option_no_throw(name);
        return opt != nullptr && opt->count() > 0;
    };
    if (given("--seed")) c.seed = f.seed;
    if (given("--profile")) c.profile = f.profile;
    if (given("--diag")) c.diag = f.diag;
    if (given("--kmax")) c.kmax = f.kmax;
    if (given("--grid")) c.grid = f.grid;
    if (given("--N")) c.N = f.N;
    if (given("--K")) c.K = f.K;
    if (given("--replicas")) c.replicas = f.replicas;
    if (given("--k")) c.k = f.k;
    if (given("--k2")) c.k2 = f.k2;
    if (given("--max-word-k")) c.caps.max_word_k = f.max_word_k;
    if (given("--max-pair-sum")) c.caps.max_pair_sum = f.max_pair_sum;
    if (given("--max-terms")) c.max_terms = f.max_terms;
    if (given("--solver")) c.solver = f.solver;
    if (given("--replica")) c.replica = f.replica;
    c.resolve();
    return c;
}

fs::path run_dir(const Flags& f, const RunConfig& c) {
    return fs::path(f.outdir) / (c.command + "-" + std::to_string(c.seed));
}

int cmd_oracle(const RunConfig& c, const Flags& f) {
    const OracleReport r = run_oracle(c.kmax, c.moment_profile(), c.caps, f.threads);
    const ordered_json cj = to_json(c);
    const fs::path dir = run_dir(f, c);
    write_file(dir / "config.json", pretty(cj));
    write_file(dir / "oracle.json", pretty(report_json(r, cj)));
    write_file(dir / "tables" / "a-table.csv", a_table_csv(r, cj));
    std::cout << "profile " << r.profile << ", kmax " << r.kmax << "\n";
    for (const auto& e : r.table.entries()) {
        if ((e.k + e.l) % 2 != 0) continue;
        std::cout << "A(" << e.k << "," << e.l << ") = " << format_number(e.value) << "  (tree "
                  << e.tree_count << ", cycle " << e.cycle_count << ")\n";
    }
    for (std::size_t i = 0; i < r.a.size(); ++i) {
        if (i % 2 == 0) std::cout << "a_" << i + 1 << " = " << r.a[i] << "\n";
    }
    for (const auto& s : r.findings) std::cout << "note: " << s << "\n";
    std::cout << "wrote " << dir.string() << "\n";
    return kOk;
}

int verdict_exit(Verdict v) {
    if (v == Verdict::Fail) return kVerdict;
    if (v == Verdict::Insufficient) std::cerr << "warning: too few replicas for verdicts\n";
    return kOk;
}

int cmd_lln(const RunConfig& c, const Flags& f) {
    const LlnReport r = run_lln(c.lln(), f.threads);
    const ordered_json cj = to_json(c);
    const fs::path dir = run_dir(f, c);
    write_file(dir / "config.json", pretty(cj));
    write_file(dir / "report.json", pretty(report_json(r, cj)));
    write_file(dir / "tables" / "lln.csv", lln_csv(r, cj));
    for (const auto& cell : r.cells) {
        if (cell.error) {
            std::cout << "N=" << cell.N << ": " << *cell.error << "\n";
            continue;
        }
        std::cout << "N=" << cell.N << "  median KS(nu_N) " << format_number(cell.median_ks_spectral)
                  << "  median KS(L_N) " << format_number(cell.median_ks_empirical) << "\n";
    }
    std::cout << "KS trend: " << to_string(r.ks_trend) << "\nwrote " << dir.string() << "\n";
    return verdict_exit(r.ks_trend);
}

int cmd_clt(const RunConfig& c, const Flags& f) {
    const CltReport r = run_clt(c.clt(), f.threads);
    const ordered_json cj = to_json(c);
    const fs::path dir = run_dir(f, c);
    write_file(dir / "config.json", pretty(cj));
    write_file(dir / "report.json", pretty(report_json(r, cj)));
    write_file(dir / "tables" / "clt.csv", clt_csv(r, cj));
    write_file(dir / "tables" / "clt-cov.csv", clt_cov_csv(r, cj));
    for (const auto& o : r.orders) {
        std::cout << "k=" << o.k << "  var " << format_number(o.variance) << " (pred "
                  << format_number(o.predicted_variance) << ")  " << to_string(o.variance_verdict);
        if (o.normality) std::cout << "  normality p=" << format_number(o.normality->p_value);
        std::cout << "\n";
    }
    std::cout << "overall: " << to_string(r.overall) << "\nwrote " << dir.string() << "\n";
    return verdict_exit(r.overall);
}

int cmd_exact(const RunConfig& c, const Flags& f) {
    const ExactReport r = run_exact(c.exact(), f.threads);
    const ordered_json cj = to_json(c);
    const fs::path dir = run_dir(f, c);
    write_file(dir / "config.json", pretty(cj));
    write_file(dir / "report.json", pretty(report_json(r, cj)));
    write_file(dir / "tables" / "exact.csv", exact_csv(r, cj));
    std::cout << format_number(r.value.value);
    if (const auto e = r.value.exact()) std::cout << "  (exact " << e->str() << ")";
    std::cout << "\n";
    if (r.monte_carlo) {
        std::cout << "monte carlo " << format_number(r.monte_carlo->estimate) << " +- "
                  << format_number(r.monte_carlo->se) << "  " << to_string(r.verdict) << "\n";
    }
    return verdict_exit(r.verdict);
}

int cmd_sample(const RunConfig& c, const Flags& f) {
    const SymMatrix a = sample_wigner(c.ensemble(), c.replica);
    const SpectralMeasures m = spectral_measures(a, parse_spectrum_solver(c.solver));
    const std::vector<double> moments = spectral_moments(a, *c.K);
    const ordered_json cj = to_json(c);
    const fs::path dir = run_dir(f, c);
    write_file(dir / "config.json", pretty(cj));
    write_file(dir / "tables" / "spectral-measure.csv", measure_csv(m.spectral, cj));
    write_file(dir / "tables" / "empirical-measure.csv", measure_csv(m.empirical, cj));
    write_file(dir / "tables" / "moments.csv", moments_csv(moments, cj));
    std::cout << "KS(nu_N) " << format_number(ks_distance(m.spectral, semicircle_cdf)) << "  KS(L_N) "
              << format_number(ks_distance(m.empirical, semicircle_cdf)) << "\n";
    for (std::size_t k = 0; k < moments.size(); ++k) {
        std::cout << "X^" << k + 1 << "(1,1) = " << format_number(moments[k]) << "\n";
    }
    std::cout << "wrote " << dir.string() << "\n";
    return kOk;
}

int cmd_words_dump(const Flags& f) {
    EnumerationCaps caps;
    if (f.max_word_k > 0) caps.max_word_k = f.max_word_k;
    for_each_word(f.k, parse_word_filter(f.filter),
                  [](const Word& w) { std::cout << w.to_string() << "\n"; }, caps);
    return kOk;
}

int cmd_words_pairs(const Flags& f) {
    EnumerationCaps caps;
    if (f.max_pair_sum > 0) caps.max_pair_sum = f.max_pair_sum;
    for_each_clt_pair(f.k1, f.k2, [](const CltPair& p) {
        std::cout << p.first.to_string() << " | " << p.second.to_string() << " | " << to_string(p.kind) << "\n";
    }, caps);
    return kOk;
}

void add_ensemble(CLI::App* sub, Flags& f) {
    sub->add_option("--seed", f.seed, "Random seed");
    sub->add_option("--profile", f.profile, "Entry law: gaussian, rademacher or uniform");
    sub->add_option("--diag", f.diag, "Diagonal law, defaults to the profile (also: zero)");
}

void add_caps(CLI::App* sub, Flags& f) {
    sub->add_option("--max-word-k", f.max_word_k, "Enumeration cap on word order k");
    sub->add_option("--max-pair-sum", f.max_pair_sum, "Enumeration cap on k1 + k2");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Wigner matrix moment oracles and Monte Carlo checks"};
    app.require_subcommand(1);
    Flags f;
    f.threads = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
    const char* env_out = std::getenv("WIGNERLAB_OUTDIR");
    f.outdir = env_out && *env_out ? env_out : "runs";
    app.add_option("--config", f.config_path, "JSON config; flags override it")->check(CLI::ExistingFile);
    app.add_option("--threads", f.threads, "Worker threads")->check(CLI::PositiveNumber);
    app.add_option("--outdir", f.outdir, "Output directory (env WIGNERLAB_OUTDIR)");

    auto* oracle = app.add_subcommand("oracle", "Covariance table A(k,l), a_k and Catalan numbers");
    add_ensemble(oracle, f);
    oracle->add_option("--kmax", f.kmax, "Largest moment order");
    add_caps(oracle, f);

    auto* lln = app.add_subcommand("lln", "Law of large numbers for the spectral measure");
    add_ensemble(lln, f);
    lln->add_option("--grid", f.grid, "Increasing N values")->delimiter(',');
    lln->add_option("--K", f.K, "Moments 1..K");
    lln->add_option("--replicas", f.replicas, "Replicas per N");
    lln->add_option("--solver", f.solver, "auto, jacobi or tridiagonal");

    auto* clt = app.add_subcommand("clt", "Fluctuations of X^k(1,1)");
    add_ensemble(clt, f);
    clt->add_option("--N", f.N, "Matrix size");
    clt->add_option("--K", f.K, "Moments 1..K");
    clt->add_option("--replicas", f.replicas, "Replicas");
    add_caps(clt, f);

    auto* exact = app.add_subcommand("exact", "Finite-N brute force, optional Monte Carlo cross-check");
    add_ensemble(exact, f);
    exact->add_option("--N", f.N, "Matrix size");
    exact->add_option("--k", f.k, "Moment order");
    exact->add_option("--k2", f.k2, "Second order; selects the covariance");
    exact->add_option("--replicas", f.replicas, "Monte Carlo replicas (0 = none)");
    exact->add_option("--max-terms", f.max_terms, "Brute-force budget");

    auto* sample = app.add_subcommand("sample", "One sampled matrix: spectral measures and X^k(1,1)");
    add_ensemble(sample, f);
    sample->add_option("--N", f.N, "Matrix size");
    sample->add_option("--K", f.K, "Moments 1..K");
    sample->add_option("--replica", f.replica, "Replica index in the seeded stream");
    sample->add_option("--solver", f.solver, "auto, jacobi or tridiagonal");

    auto* words = app.add_subcommand("words", "Debug dump of word classes");
    words->require_subcommand(1);
    auto* dump = words->add_subcommand("dump", "Canonical closed words of length k+1");
    dump->add_option("--k", f.k, "Order")->required();
    dump->add_option("--filter", f.filter, "all, U, V, weak_wigner, wigner, A");
    dump->add_option("--max-word-k", f.max_word_k, "Enumeration cap on k");
    auto* pairs = words->add_subcommand("pairs", "CLT pair classes");
    pairs->add_option("--k1", f.k1, "First order")->required();
    pairs->add_option("--k2", f.k2, "Second order")->required();
    pairs->add_option("--max-pair-sum", f.max_pair_sum, "Enumeration cap on k1 + k2");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kConfig;
    }

    try {
        if (*words) return *dump ? cmd_words_dump(f) : cmd_words_pairs(f);
        for (auto* sub : {oracle, lln, clt, exact, sample}) {
            if (!*sub) continue;
            const RunConfig c = load_config(sub->get_name(), f, *sub);
            if (sub == oracle) return cmd_oracle(c, f);
            if (sub == lln) return cmd_lln(c, f);
            if (sub == clt) return cmd_clt(c, f);
            if (sub == sample) return cmd_sample(c, f);
            return cmd_exact(c, f);
        }
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kConfig;
    } catch (const CapError& e) {
        std::cerr << "enumeration cap: " << e.what() << "\n";
        return kCap;
    } catch (const BudgetError& e) {
        std::cerr << "budget: " << e.what() << "\n";
        return kCap;
    } catch (const std::invalid_argument& e) {
        std::cerr << "invalid argument: " << e.what() << "\n";
        return kConfig;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return kOk;
}
