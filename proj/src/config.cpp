#include "wignerlab/config.hpp"

#include <set>

namespace wignerlab {

namespace {

EntryKind kind_or_throw(const std::string& name) {
    try {
        return parse_entry_kind(name);
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }
}

template <class T>
T get_as(const ordered_json& j, const char* key) {
    try {
        return j.at(key).get<T>();
    } catch (const nlohmann::json::exception&) {
        throw ConfigError(std::string("config key '") + key + "' has the wrong type");
    }
}

}  // namespace

void RunConfig::resolve() {
    static const std::set<std::string> commands{"oracle", "lln", "clt", "exact", "sample"};
    if (!commands.contains(command)) throw ConfigError("unknown command '" + command + "'");
    const EntryKind off = kind_or_throw(profile);
    if (off == EntryKind::Zero) throw ConfigError("off-diagonal law cannot be 'zero'");
    if (diag) kind_or_throw(*diag);
    try {
        parse_spectrum_solver(solver);
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }
    if (caps.max_word_k < 1 || caps.max_pair_sum < 2) throw ConfigError("enumeration caps must be positive");

    if (command == "oracle") {
        if (kmax < 1) throw ConfigError("kmax must be >= 1");
    } else if (command == "lln") {
        if (!K) K = 6;
        if (!replicas) replicas = 20;
        if (grid.empty()) throw ConfigError("grid must not be empty");
        for (std::size_t i = 0; i < grid.size(); ++i) {
            if (grid[i] == 0) throw ConfigError("grid entries must be positive");
            if (i > 0 && grid[i] <= grid[i - 1]) throw ConfigError("grid must be strictly increasing");
        }
    } else if (command == "clt") {
        if (!N) N = 500;
        if (!K) K = 4;
        if (!replicas) replicas = 20000;
    } else if (command == "sample") {
        if (!N) N = 100;
        if (!K) K = 6;
    } else {
        if (!N) N = 2;
        if (!replicas) replicas = 0;
        if (k < 1) throw ConfigError("k must be >= 1");
        if (k2 < 0) throw ConfigError("k2 must be >= 0");
        if (*replicas == 1) throw ConfigError("replicas must be 0 or >= 2");
    }
    if (N && *N == 0) throw ConfigError("N must be positive");
    if (K && *K < 1) throw ConfigError("K must be >= 1");
    if ((command == "lln" || command == "clt") && *replicas < 2) throw ConfigError("replicas must be >= 2");
}

EntryKind RunConfig::offdiag_kind() const { return kind_or_throw(profile); }

EntryKind RunConfig::diag_kind() const { return diag ? kind_or_throw(*diag) : offdiag_kind(); }

MomentProfile RunConfig::moment_profile() const { return MomentProfile(diag_kind(), offdiag_kind()); }

LlnConfig RunConfig::lln() const {
    LlnConfig c;
    c.grid = grid;
    c.K = K.value_or(c.K);
    c.replicas = replicas.value_or(c.replicas);
    c.diag = diag_kind();
    c.offdiag = offdiag_kind();
    c.seed = seed;
    c.solver = parse_spectrum_solver(solver);
    return c;
}

CltConfig RunConfig::clt() const {
    CltConfig c;
    c.N = N.value_or(c.N);
    c.K = K.value_or(c.K);
    c.replicas = replicas.value_or(c.replicas);
    c.diag = diag_kind();
    c.offdiag = offdiag_kind();
    c.seed = seed;
    c.caps = caps;
    return c;
}

ExactConfig RunConfig::exact() const {
    ExactConfig c;
    c.N = N.value_or(c.N);
    c.k = k;
    c.k2 = k2;
    c.diag = diag_kind();
    c.offdiag = offdiag_kind();
    c.seed = seed;
    c.replicas = replicas.value_or(0);
    c.budget.max_terms = max_terms;
    return c;
}

EnsembleSpec RunConfig::ensemble() const {
    return EnsembleSpec{N.value_or(100), {diag_kind()}, {offdiag_kind()}, seed};
}

ordered_json to_json(const RunConfig& c) {
    ordered_json j;
    j["command"] = c.command;
    j["seed"] = c.seed;
    j["profile"] = c.profile;
    j["diag"] = c.diag.value_or(c.profile);
    if (c.command == "oracle") {
        j["kmax"] = c.kmax;
    } else if (c.command == "lln") {
        j["grid"] = c.grid;
        j["K"] = c.K.value_or(0);
        j["replicas"] = c.replicas.value_or(0);
        j["solver"] = c.solver;
    } else if (c.command == "clt") {
        j["N"] = c.N.value_or(0);
        j["K"] = c.K.value_or(0);
        j["replicas"] = c.replicas.value_or(0);
    } else if (c.command == "exact") {
        j["N"] = c.N.value_or(0);
        j["k"] = c.k;
        j["k2"] = c.k2;
        j["replicas"] = c.replicas.value_or(0);
        j["max_terms"] = c.max_terms;
    } else if (c.command == "sample") {
        j["N"] = c.N.value_or(0);
        j["K"] = c.K.value_or(0);
        j["replica"] = c.replica;
        j["solver"] = c.solver;
    }
    if (c.command == "oracle" || c.command == "clt") {
        j["caps"] = {{"max_word_k", c.caps.max_word_k}, {"max_pair_sum", c.caps.max_pair_sum}};
    }
    return j;
}

void merge_json(const ordered_json& j, RunConfig& c) {
    if (!j.is_object()) throw ConfigError("config must be a JSON object");
    for (const auto& [key, value] : j.items()) {
        if (key == "command") c.command = get_as<std::string>(j, "command");
        else if (key == "seed") c.seed = get_as<std::uint64_t>(j, "seed");
        else if (key == "profile") c.profile = get_as<std::string>(j, "profile");
        else if (key == "diag") c.diag = get_as<std::string>(j, "diag");
        else if (key == "kmax") c.kmax = get_as<int>(j, "kmax");
        else if (key == "grid") c.grid = get_as<std::vector<std::size_t>>(j, "grid");
        else if (key == "N") c.N = get_as<std::size_t>(j, "N");
        else if (key == "K") c.K = get_as<int>(j, "K");
        else if (key == "replicas") c.replicas = get_as<std::size_t>(j, "replicas");
        else if (key == "replica") c.replica = get_as<std::uint64_t>(j, "replica");
        else if (key == "k") c.k = get_as<int>(j, "k");
        else if (key == "k2") c.k2 = get_as<int>(j, "k2");
        else if (key == "max_terms") c.max_terms = get_as<std::uint64_t>(j, "max_terms");
        else if (key == "solver") c.solver = get_as<std::string>(j, "solver");
        else if (key == "caps") {
            if (!value.is_object()) throw ConfigError("config key 'caps' must be an object");
            for (const auto& [ck, cv] : value.items()) {
                if (ck == "max_word_k") c.caps.max_word_k = get_as<int>(value, "max_word_k");
                else if (ck == "max_pair_sum") c.caps.max_pair_sum = get_as<int>(value, "max_pair_sum");
                else throw ConfigError("unknown caps key '" + ck + "'");
            }
        } else {
            throw ConfigError("unknown config key '" + key + "'");
        }
    }
}

}  // namespace wignerlab
