#pragma once

#include "wignerlab/combinatorics.hpp"
#include "wignerlab/moment_profile.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <stdexcept>
#include <utility>
#include <vector>

namespace wignerlab {

/// Exact C_n. Throws std::overflow_error when C_n does not fit in 64 bits (n > 36).
std::uint64_t catalan(int n);

/// <sigma, x^k>: zero for odd k, C_{k/2} for even k.
double semicircle_moment(int k);

/// One cell of the limiting covariance of the self-edge-free parts.
/// The counts do not depend on the entry laws; value = cycle + tree * (m4 - 1).
struct CovarianceEntry {
    int k = 0;
    int l = 0;
    std::int64_t tree_count = 0;
    std::int64_t cycle_count = 0;
    double value = 0.0;

    double value_for(double m4) const {
        return static_cast<double>(cycle_count) + static_cast<double>(tree_count) * (m4 - 1.0);
    }
};

CovarianceEntry covariance_A(int k1, int k2, const MomentProfile& profile,
                             const EnumerationCaps& caps = {});

class CovarianceTable {
public:
    CovarianceTable() = default;

    /// Fills every cell with 2 <= k <= l <= kmax. Cells are filled in parallel with `threads`
    /// workers; the result does not depend on the worker count.
    static CovarianceTable build(int kmax, const MomentProfile& profile,
                                 const EnumerationCaps& caps = {}, int threads = 1);

    void insert(const CovarianceEntry& entry);
    bool contains(int k, int l) const;
    /// Symmetric lookup. Orders below 2 read as 0.
    double value(int k, int l) const;
    const CovarianceEntry& entry(int k, int l) const;
    int kmax() const { return kmax_; }
    /// Cells with k <= l in row-major order.
    std::vector<CovarianceEntry> entries() const;

    /// Even-sum cells with no cycle-kind class. Positivity of the limit then rests on m4 > 1.
    std::vector<CovarianceEntry> cells_without_cycles() const;

private:
    std::map<std::pair<int, int>, CovarianceEntry> cells_;
    int kmax_ = 1;
};

/// a_k: a_1 = 1, 0 for even k, otherwise the number of classes in A_k.
std::int64_t a_coefficient(int k, const EnumerationCaps& caps = {});

/// Limiting Cov(S_k, S_l) = A(k, l) + a_k a_l E[xi_11^2].
double limit_cov_S(int k, int l, const CovarianceTable& table, const MomentProfile& profile,
                   const EnumerationCaps& caps = {});

/// K x K block of limit_cov_S for orders 1..K.
std::vector<std::vector<double>> limit_cov_matrix(int K, const CovarianceTable& table,
                                                  const MomentProfile& profile,
                                                  const EnumerationCaps& caps = {});

/// E[prod eta_{k_i}] by the Wick/Isserlis expansion over perfect matchings.
double wick_joint_moment(const std::vector<int>& orders, const CovarianceTable& table);

class BudgetError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct BruteForceBudget {
    /// Maximum number of N-words (single moment) or word pairs (pair moment) visited.
    std::uint64_t max_terms = 20'000'000;
};

/// Finite-N expectation by direct summation over every N-word.
struct FiniteNValue {
    double value = 0.0;
    /// Exact value of the word sum before the N^{-power/2} scaling, when the profile is rational.
    std::optional<Rational> word_sum;
    /// Total order of the scaling factor N^{-power/2}.
    int power = 0;
    int N = 0;
    std::uint64_t terms = 0;

    /// Exact scaled value, available when the scaling is rational (even power).
    std::optional<Rational> exact() const;
};

/// E[X_N^k(1,1)].
FiniteNValue exact_moment_finite_N(int N, int k, const MomentProfile& profile,
                                   const BruteForceBudget& budget = {});

/// E[(X^{k1}(1,1) - E X^{k1}(1,1)) (X^{k2}(1,1) - E X^{k2}(1,1))].
FiniteNValue exact_pair_moment_finite_N(int N, int k1, int k2, const MomentProfile& profile,
                                        const BruteForceBudget& budget = {});

/// Everything the `oracle` command emits.
struct OracleReport {
    int kmax = 0;
    std::string profile;
    std::vector<std::uint64_t> catalan;          // C_0..C_kmax
    CovarianceTable table;
    std::vector<std::int64_t> a;                 // a_1..a_kmax
    std::vector<std::vector<double>> limit_cov;  // orders 1..kmax
    /// Even-sum cells without a cycle-kind class.
    std::vector<std::string> findings;
};

OracleReport run_oracle(int kmax, const MomentProfile& profile, const EnumerationCaps& caps = {},
                        int threads = 1);

}  // namespace wignerlab
