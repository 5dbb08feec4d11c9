#include "wignerlab/measure.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace wignerlab {

AtomicMeasure::AtomicMeasure(std::vector<Atom> atoms) : atoms_(std::move(atoms)) {
    for (const auto& a : atoms_) {
        if (!std::isfinite(a.location) || !std::isfinite(a.weight) || a.weight < 0.0) {
            throw std::invalid_argument("atoms need finite locations and nonnegative weights");
        }
    }
    std::stable_sort(atoms_.begin(), atoms_.end(),
                     [](const Atom& x, const Atom& y) { return x.location < y.location; });
}

double AtomicMeasure::total_weight() const {
    double s = 0.0;
    for (const auto& a : atoms_) s += a.weight;
    return s;
}

double AtomicMeasure::moment(int k) const {
    double s = 0.0;
    for (const auto& a : atoms_) s += a.weight * std::pow(a.location, k);
    return s;
}

double AtomicMeasure::cdf(double x) const {
    double s = 0.0;
    for (const auto& a : atoms_) {
        if (a.location > x) break;
        s += a.weight;
    }
    return s;
}

AtomicMeasure AtomicMeasure::merged(double gap) const {
    std::vector<Atom> out;
    double prev = 0.0;
    for (const auto& a : atoms_) {
        if (!out.empty() && (a.location == prev || a.location - prev < gap)) {
            out.back().weight += a.weight;
        } else {
            out.push_back(a);
        }
        prev = a.location;
    }
    AtomicMeasure m;
    m.atoms_ = std::move(out);
    return m;
}

}  // namespace wignerlab
