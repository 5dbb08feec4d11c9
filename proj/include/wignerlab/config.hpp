#pragma once

#include "wignerlab/experiments.hpp"

#include <json.hpp>

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace wignerlab {

using ordered_json = nlohmann::ordered_json;

class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Resolved parameters of one run. Unset optionals take the per-command defaults in `resolve`.
/// The worker count is deliberately absent: it never changes a result.
struct RunConfig {
    std::string command;  // oracle, lln, clt, exact, sample
    std::uint64_t seed = 1;
    std::string profile = "gaussian";  // off-diagonal law, and the diagonal one unless `diag` is set
    std::optional<std::string> diag;
    int kmax = 6;
    std::vector<std::size_t> grid{100, 400, 1600};
    std::optional<std::size_t> N;
    std::optional<int> K;
    std::optional<std::size_t> replicas;
    int k = 2;
    int k2 = 0;
    EnumerationCaps caps;
    std::uint64_t max_terms = BruteForceBudget{}.max_terms;
    std::string solver = "auto";
    std::uint64_t replica = 0;  // sample: which replica of the seeded stream

    /// Fills command defaults and checks ranges. Throws ConfigError.
    void resolve();

    EntryKind offdiag_kind() const;
    EntryKind diag_kind() const;
    MomentProfile moment_profile() const;

    LlnConfig lln() const;
    CltConfig clt() const;
    ExactConfig exact() const;
    EnsembleSpec ensemble() const;
};

/// Keys relevant to the command only, in a fixed order.
ordered_json to_json(const RunConfig& config);

/// Overlays the keys of `j` onto `config`. Unknown keys and wrong types throw ConfigError.
void merge_json(const ordered_json& j, RunConfig& config);

}  // namespace wignerlab
