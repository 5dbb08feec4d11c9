#include "wignerlab/moment_profile.hpp"

#include <cmath>
#include <stdexcept>

namespace wignerlab {

std::string to_string(EntryKind kind) {
    switch (kind) {
        case EntryKind::Gaussian: return "gaussian";
        case EntryKind::Rademacher: return "rademacher";
        case EntryKind::Uniform: return "uniform";
        case EntryKind::Zero: return "zero";
    }
    return "?";
}

EntryKind parse_entry_kind(const std::string& name) {
    if (name == "gaussian") return EntryKind::Gaussian;
    if (name == "rademacher") return EntryKind::Rademacher;
    if (name == "uniform") return EntryKind::Uniform;
    if (name == "zero") return EntryKind::Zero;
    throw std::invalid_argument("unknown entry distribution '" + name + "'");
}

Rational entry_moment(EntryKind kind, int p) {
    if (p < 0) throw std::invalid_argument("moment order must be nonnegative");
    if (p == 0) return Rational(1);
    if (p % 2 == 1) return Rational(0);
    switch (kind) {
        case EntryKind::Gaussian: {
            boost::multiprecision::cpp_int v = 1;
            for (int j = p - 1; j > 1; j -= 2) v *= j;
            return Rational(v);
        }
        case EntryKind::Rademacher: return Rational(1);
        case EntryKind::Uniform: {
            boost::multiprecision::cpp_int v = 1;
            for (int j = 0; j < p / 2; ++j) v *= 3;
            return Rational(v, p + 1);
        }
        case EntryKind::Zero: return Rational(0);
    }
    return Rational(0);
}

namespace {

std::vector<Moment> sequence(EntryKind kind, int max_order) {
    std::vector<Moment> out;
    out.reserve(max_order + 1);
    for (int p = 0; p <= max_order; ++p) {
        Rational r = entry_moment(kind, p);
        out.push_back(Moment{static_cast<double>(r), r});
    }
    return out;
}

}  // namespace

MomentProfile::MomentProfile(EntryKind diag, EntryKind offdiag, int max_order)
    : diag_(sequence(diag, max_order)), offdiag_(sequence(offdiag, max_order)) {
    if (offdiag == EntryKind::Zero) {
        throw std::invalid_argument("off-diagonal entries cannot be identically zero");
    }
    name_ = diag == offdiag ? to_string(offdiag) : to_string(offdiag) + "/diag=" + to_string(diag);
}

MomentProfile::MomentProfile(std::vector<Moment> diag, std::vector<Moment> offdiag, std::string name)
    : diag_(std::move(diag)), offdiag_(std::move(offdiag)), name_(std::move(name)) {
    if (diag_.size() != offdiag_.size()) {
        throw std::invalid_argument("diagonal and off-diagonal sequences must have equal length");
    }
    validate();
}

MomentProfile MomentProfile::named(const std::string& kind) {
    const EntryKind k = parse_entry_kind(kind);
    return MomentProfile(k, k);
}

MomentProfile MomentProfile::with_diagonal(EntryKind diag) const {
    MomentProfile out = *this;
    out.diag_ = sequence(diag, max_order());
    const auto slash = name_.find("/diag=");
    const std::string base = slash == std::string::npos ? name_ : name_.substr(0, slash);
    out.name_ = base == to_string(diag) ? base : base + "/diag=" + to_string(diag);
    return out;
}

const Moment& MomentProfile::offdiag(int p) const {
    if (p < 0 || p > max_order()) {
        throw std::out_of_range("off-diagonal moment order " + std::to_string(p) + " not available");
    }
    return offdiag_[p];
}

const Moment& MomentProfile::diag(int p) const {
    if (p < 0 || p > max_order()) {
        throw std::out_of_range("diagonal moment order " + std::to_string(p) + " not available");
    }
    return diag_[p];
}

bool MomentProfile::exact() const {
    for (std::size_t p = 0; p < offdiag_.size(); ++p) {
        if (!offdiag_[p].exact || !diag_[p].exact) return false;
    }
    return true;
}

void MomentProfile::validate() const {
    if (max_order() < 4) throw std::invalid_argument("moment profile must reach order 4");
    for (std::size_t p = 0; p < offdiag_.size(); ++p) {
        if (!std::isfinite(offdiag_[p].value) || !std::isfinite(diag_[p].value)) {
            throw std::invalid_argument("moment profile entries must be finite");
        }
    }
    if (offdiag_[0].value != 1.0 || diag_[0].value != 1.0) {
        throw std::invalid_argument("zeroth moments must be 1");
    }
    if (offdiag_[1].value != 0.0) throw std::invalid_argument("off-diagonal mean must be 0");
    if (offdiag_[2].value != 1.0) throw std::invalid_argument("off-diagonal variance must be 1");
    if (diag_[1].value != 0.0) throw std::invalid_argument("diagonal mean must be 0");
    if (offdiag_[4].value < 1.0) throw std::invalid_argument("off-diagonal fourth moment must be >= 1");
}

}  // namespace wignerlab
