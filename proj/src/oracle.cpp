#include "wignerlab/oracle.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <mutex>
#include <string>
#include <thread>
#include <unordered_map>

namespace wignerlab {

std::uint64_t catalan(int n) {
    if (n < 0) throw std::invalid_argument("catalan: n must be nonnegative");
    // C_{j+1} = C_j * 2(2j+1) / (j+2), exact at every step.
    unsigned __int128 c = 1;
    for (int j = 0; j < n; ++j) {
        c = c * static_cast<unsigned>(2 * (2 * j + 1)) / static_cast<unsigned>(j + 2);
        if (c > std::numeric_limits<std::uint64_t>::max()) {
            throw std::overflow_error("catalan(" + std::to_string(n) + ") exceeds 64-bit range");
        }
    }
    return static_cast<std::uint64_t>(c);
}

double semicircle_moment(int k) {
    if (k < 0) throw std::invalid_argument("semicircle_moment: k must be nonnegative");
    if (k % 2 == 1) return 0.0;
    return static_cast<double>(catalan(k / 2));
}

CovarianceEntry covariance_A(int k1, int k2, const MomentProfile& profile, const EnumerationCaps& caps) {
    CovarianceEntry e{k1, k2, 0, 0, 0.0};
    for_each_clt_pair(
        k1, k2,
        [&](const CltPair& p) {
            if (p.kind == PairKind::Tree) ++e.tree_count;
            else ++e.cycle_count;
        },
        caps);
    e.value = e.value_for(profile.offdiag(4).value);
    return e;
}

CovarianceTable CovarianceTable::build(int kmax, const MomentProfile& profile,
                                       const EnumerationCaps& caps, int threads) {
    if (kmax < 2) throw std::invalid_argument("covariance table needs kmax >= 2");
    if (2 * kmax > caps.max_pair_sum) {
        throw CapError("enumeration cap exceeded: kmax = " + std::to_string(kmax) +
                       " needs pair sum " + std::to_string(2 * kmax) + " > " +
                       std::to_string(caps.max_pair_sum));
    }
    std::vector<std::pair<int, int>> cells;
    for (int k = 2; k <= kmax; ++k) {
        for (int l = k; l <= kmax; ++l) cells.emplace_back(k, l);
    }
    std::vector<CovarianceEntry> results(cells.size());
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto worker = [&] {
        for (std::size_t i = next++; i < cells.size(); i = next++) {
            try {
                results[i] = covariance_A(cells[i].first, cells[i].second, profile, caps);
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure) failure = std::current_exception();
            }
        }
    };
    const int n = std::max(1, std::min<int>(threads, static_cast<int>(cells.size())));
    if (n == 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        for (int t = 0; t < n; ++t) pool.emplace_back(worker);
    }
    if (failure) std::rethrow_exception(failure);

    CovarianceTable table;
    for (const auto& e : results) table.insert(e);
    return table;
}

void CovarianceTable::insert(const CovarianceEntry& entry) {
    const int k = std::min(entry.k, entry.l);
    const int l = std::max(entry.k, entry.l);
    CovarianceEntry e = entry;
    e.k = k;
    e.l = l;
    cells_[{k, l}] = e;
    kmax_ = std::max(kmax_, l);
}

bool CovarianceTable::contains(int k, int l) const {
    return cells_.count({std::min(k, l), std::max(k, l)}) > 0;
}

const CovarianceEntry& CovarianceTable::entry(int k, int l) const {
    auto it = cells_.find({std::min(k, l), std::max(k, l)});
    if (it == cells_.end()) {
        throw std::out_of_range("covariance table has no cell (" + std::to_string(k) + "," +
                                std::to_string(l) + ")");
    }
    return it->second;
}

double CovarianceTable::value(int k, int l) const {
    if (k < 2 || l < 2) return 0.0;
    return entry(k, l).value;
}

std::vector<CovarianceEntry> CovarianceTable::entries() const {
    std::vector<CovarianceEntry> out;
    for (const auto& [key, e] : cells_) out.push_back(e);
    return out;
}

std::vector<CovarianceEntry> CovarianceTable::cells_without_cycles() const {
    std::vector<CovarianceEntry> out;
    for (const auto& [key, e] : cells_) {
        if ((e.k + e.l) % 2 == 0 && e.cycle_count == 0) out.push_back(e);
    }
    return out;
}

std::int64_t a_coefficient(int k, const EnumerationCaps& caps) {
    if (k < 1) throw std::invalid_argument("a_coefficient: k must be positive");
    if (k == 1) return 1;
    if (k % 2 == 0) return 0;
    return static_cast<std::int64_t>(count_words(k, WordFilter::A, caps));
}

double limit_cov_S(int k, int l, const CovarianceTable& table, const MomentProfile& profile,
                   const EnumerationCaps& caps) {
    if (k < 1 || l < 1) throw std::invalid_argument("limit_cov_S: orders must be positive");
    const double a = static_cast<double>(a_coefficient(k, caps) * a_coefficient(l, caps));
    return table.value(k, l) + a * profile.diag(2).value;
}

std::vector<std::vector<double>> limit_cov_matrix(int K, const CovarianceTable& table,
                                                  const MomentProfile& profile,
                                                  const EnumerationCaps& caps) {
    std::vector<double> a(K + 1, 0.0);
    for (int k = 1; k <= K; ++k) a[k] = static_cast<double>(a_coefficient(k, caps));
    const double d2 = profile.diag(2).value;
    std::vector<std::vector<double>> out(K, std::vector<double>(K, 0.0));
    for (int k = 1; k <= K; ++k) {
        for (int l = 1; l <= K; ++l) {
            out[k - 1][l - 1] = table.value(k, l) + a[k] * a[l] * d2;
        }
    }
    return out;
}

namespace {

double wick_recurse(std::vector<int>& rest, const CovarianceTable& table) {
    if (rest.empty()) return 1.0;
    const int first = rest.front();
    double total = 0.0;
    for (std::size_t j = 1; j < rest.size(); ++j) {
        const double a = table.value(first, rest[j]);
        if (a == 0.0) continue;
        std::vector<int> sub;
        sub.reserve(rest.size() - 2);
        for (std::size_t i = 1; i < rest.size(); ++i) {
            if (i != j) sub.push_back(rest[i]);
        }
        total += a * wick_recurse(sub, table);
    }
    return total;
}

}  // namespace

double wick_joint_moment(const std::vector<int>& orders, const CovarianceTable& table) {
    for (int k : orders) {
        if (k < 2) throw std::invalid_argument("wick_joint_moment: orders must be >= 2");
    }
    if (orders.size() % 2 == 1) return 0.0;
    std::vector<int> rest(orders);
    return wick_recurse(rest, table);
}

OracleReport run_oracle(int kmax, const MomentProfile& profile, const EnumerationCaps& caps, int threads) {
    if (kmax < 2) throw std::invalid_argument("oracle: kmax must be >= 2");
    if (kmax > caps.max_word_k) {
        throw CapError("enumeration cap exceeded: kmax = " + std::to_string(kmax) + " > " +
                       std::to_string(caps.max_word_k));
    }
    OracleReport r;
    r.kmax = kmax;
    r.profile = profile.name();
    for (int n = 0; n <= kmax; ++n) r.catalan.push_back(catalan(n));
    r.table = CovarianceTable::build(kmax, profile, caps, threads);
    for (int k = 1; k <= kmax; ++k) r.a.push_back(a_coefficient(k, caps));
    r.limit_cov = limit_cov_matrix(kmax, r.table, profile, caps);
    for (const auto& e : r.table.cells_without_cycles()) {
        r.findings.push_back("A(" + std::to_string(e.k) + "," + std::to_string(e.l) +
                             ") has no cycle-kind pair; the limit is " + std::to_string(e.tree_count) +
                             " * (m4 - 1) and vanishes when m4 = 1");
    }
    return r;
}

std::optional<Rational> FiniteNValue::exact() const {
    if (!word_sum || power % 2 != 0) return std::nullopt;
    boost::multiprecision::cpp_int scale = 1;
    for (int i = 0; i < power / 2; ++i) scale *= N;
    return *word_sum / Rational(scale);
}

namespace {

// Edge multiset of one N-word, plus its moment signature: one byte per edge holding
// 2 * passage_count + is_self, sorted. Signatures index the moment products.
struct WordEdges {
    std::vector<std::pair<std::uint32_t, std::uint8_t>> edges;  // (edge id, passage count), sorted
    std::string signature;
};

WordEdges edges_of(const std::vector<std::uint32_t>& seq, int N) {
    std::vector<std::pair<std::uint32_t, std::uint8_t>> e;
    for (std::size_t i = 0; i + 1 < seq.size(); ++i) {
        const std::uint32_t a = std::min(seq[i], seq[i + 1]);
        const std::uint32_t b = std::max(seq[i], seq[i + 1]);
        const std::uint32_t id = a * static_cast<std::uint32_t>(N) + b;
        auto it = std::find_if(e.begin(), e.end(), [id](const auto& x) { return x.first == id; });
        if (it == e.end()) e.emplace_back(id, 1);
        else ++it->second;
    }
    std::sort(e.begin(), e.end());
    WordEdges out{std::move(e), {}};
    for (const auto& [id, n] : out.edges) {
        const bool self = id / N == id % N;
        out.signature.push_back(static_cast<char>(2 * n + (self ? 1 : 0)));
    }
    std::sort(out.signature.begin(), out.signature.end());
    return out;
}

std::string union_signature(const WordEdges& x, const WordEdges& y, int N) {
    std::string sig;
    std::size_t i = 0;
    std::size_t j = 0;
    auto push = [&](std::uint32_t id, int n) {
        const bool self = id / N == id % N;
        sig.push_back(static_cast<char>(2 * n + (self ? 1 : 0)));
    };
    while (i < x.edges.size() || j < y.edges.size()) {
        if (j == y.edges.size() || (i < x.edges.size() && x.edges[i].first < y.edges[j].first)) {
            push(x.edges[i].first, x.edges[i].second);
            ++i;
        } else if (i == x.edges.size() || y.edges[j].first < x.edges[i].first) {
            push(y.edges[j].first, y.edges[j].second);
            ++j;
        } else {
            push(x.edges[i].first, x.edges[i].second + y.edges[j].second);
            ++i;
            ++j;
        }
    }
    std::sort(sig.begin(), sig.end());
    return sig;
}

std::vector<WordEdges> all_n_words(int N, int k) {
    std::vector<WordEdges> out;
    std::vector<std::uint32_t> seq(k + 1, 0);  // 0-based letters; position 0 and k hold letter 1
    const int interior = k - 1;
    std::vector<int> digits(std::max(interior, 0), 0);
    while (true) {
        for (int i = 0; i < interior; ++i) seq[i + 1] = static_cast<std::uint32_t>(digits[i]);
        out.push_back(edges_of(seq, N));
        int pos = interior - 1;
        while (pos >= 0 && ++digits[pos] == N) digits[pos--] = 0;
        if (pos < 0) break;
    }
    return out;
}

std::uint64_t checked_power(int N, int e, const BruteForceBudget& budget) {
    long double terms = 1.0L;
    for (int i = 0; i < e; ++i) terms *= N;
    if (terms > static_cast<long double>(budget.max_terms)) {
        throw BudgetError("brute-force budget exceeded: " + std::to_string(static_cast<double>(terms)) +
                          " terms > " + std::to_string(budget.max_terms));
    }
    return static_cast<std::uint64_t>(terms);
}

// Evaluates sum over signatures of count * prod moment(code).
class SignatureSum {
public:
    void add(const std::string& sig, std::int64_t count) { counts_[sig] += count; }

    void evaluate(const MomentProfile& profile, FiniteNValue& out) const {
        std::vector<std::pair<std::string, std::int64_t>> sorted(counts_.begin(), counts_.end());
        std::sort(sorted.begin(), sorted.end());
        auto moment = [&](char code) -> const Moment& {
            const int n = code / 2;
            return code % 2 == 1 ? profile.diag(n) : profile.offdiag(n);
        };
        if (profile.exact()) {
            Rational sum = 0;
            for (const auto& [sig, count] : sorted) {
                if (count == 0) continue;
                Rational term = count;
                for (char c : sig) term *= *moment(c).exact;
                sum += term;
            }
            out.word_sum = sum;
            out.value = static_cast<double>(sum);
        } else {
            double sum = 0.0;
            for (const auto& [sig, count] : sorted) {
                double term = static_cast<double>(count);
                for (char c : sig) term *= moment(c).value;
                sum += term;
            }
            out.value = sum;
        }
    }

private:
    std::unordered_map<std::string, std::int64_t> counts_;
};

void scale(FiniteNValue& v) {
    if (auto e = v.exact()) {
        v.value = static_cast<double>(*e);
    } else {
        v.value /= std::pow(static_cast<double>(v.N), v.power / 2.0);
    }
}

}  // namespace

FiniteNValue exact_moment_finite_N(int N, int k, const MomentProfile& profile, const BruteForceBudget& budget) {
    if (N < 1 || k < 1) throw std::invalid_argument("exact_moment_finite_N: N and k must be positive");
    FiniteNValue out;
    out.N = N;
    out.power = k;
    out.terms = checked_power(N, k - 1, budget);
    SignatureSum sums;
    for (const auto& w : all_n_words(N, k)) sums.add(w.signature, 1);
    sums.evaluate(profile, out);
    scale(out);
    return out;
}

FiniteNValue exact_pair_moment_finite_N(int N, int k1, int k2, const MomentProfile& profile,
                                        const BruteForceBudget& budget) {
    if (N < 1 || k1 < 1 || k2 < 1) {
        throw std::invalid_argument("exact_pair_moment_finite_N: N, k1, k2 must be positive");
    }
    FiniteNValue out;
    out.N = N;
    out.power = k1 + k2;
    out.terms = checked_power(N, k1 + k2 - 2, budget);
    const auto words1 = all_n_words(N, k1);
    const auto words2 = all_n_words(N, k2);

    // Cov = sum_{w1,w2} (E[T1 T2] - E[T1] E[T2]); the subtracted part factorizes, so its
    // signature counts are the products of the single-word signature counts.
    SignatureSum sums;
    for (const auto& w1 : words1) {
        for (const auto& w2 : words2) sums.add(union_signature(w1, w2, N), 1);
    }
    std::unordered_map<std::string, std::int64_t> single1;
    std::unordered_map<std::string, std::int64_t> single2;
    for (const auto& w : words1) ++single1[w.signature];
    for (const auto& w : words2) ++single2[w.signature];
    for (const auto& [s1, c1] : single1) {
        for (const auto& [s2, c2] : single2) {
            std::string sig = s1 + s2;
            std::sort(sig.begin(), sig.end());
            sums.add(sig, -c1 * c2);
        }
    }
    sums.evaluate(profile, out);
    scale(out);
    return out;
}

}  // namespace wignerlab
