#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <optional>
#include <string>
#include <vector>

namespace wignerlab {

using Rational = boost::multiprecision::cpp_rational;

enum class EntryKind { Gaussian, Rademacher, Uniform, Zero };

std::string to_string(EntryKind kind);
EntryKind parse_entry_kind(const std::string& name);

/// E[x^p] for the standardized law of the given kind (uniform lives on [-sqrt 3, sqrt 3]).
/// Every shipped kind has rational moments.
Rational entry_moment(EntryKind kind, int p);

/// A single moment with its exact value when one is known.
struct Moment {
    double value = 0.0;
    std::optional<Rational> exact;
};

/// Moment sequences of the off-diagonal entry xi_12 and the diagonal entry xi_11.
/// Index p holds E[xi^p] for p = 0..max_order.
class MomentProfile {
public:
    static constexpr int kDefaultOrder = 24;

    MomentProfile(EntryKind diag, EntryKind offdiag, int max_order = kDefaultOrder);
    /// Custom sequences; element p is the p-th moment, element 0 must be 1.
    MomentProfile(std::vector<Moment> diag, std::vector<Moment> offdiag, std::string name);

    static MomentProfile gaussian() { return {EntryKind::Gaussian, EntryKind::Gaussian}; }
    static MomentProfile rademacher() { return {EntryKind::Rademacher, EntryKind::Rademacher}; }
    static MomentProfile uniform() { return {EntryKind::Uniform, EntryKind::Uniform}; }
    /// Same kind on and off the diagonal.
    static MomentProfile named(const std::string& kind);

    MomentProfile with_diagonal(EntryKind diag) const;

    const Moment& offdiag(int p) const;
    const Moment& diag(int p) const;
    int max_order() const { return static_cast<int>(offdiag_.size()) - 1; }
    bool exact() const;
    const std::string& name() const { return name_; }

    /// Throws std::invalid_argument unless m1 = 0, m2 = 1, d1 = 0, m4 >= 1 and all entries are finite.
    void validate() const;

private:
    std::vector<Moment> diag_;
    std::vector<Moment> offdiag_;
    std::string name_;
};

}  // namespace wignerlab
