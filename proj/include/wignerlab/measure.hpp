#pragma once

#include <vector>

namespace wignerlab {

struct Atom {
    double location = 0.0;
    double weight = 0.0;
};

/// Finitely supported probability measure; locations sorted ascending, weights summing to 1.
class AtomicMeasure {
public:
    AtomicMeasure() = default;
    /// Sorts atoms by location. Throws std::invalid_argument for negative or non-finite input.
    explicit AtomicMeasure(std::vector<Atom> atoms);

    const std::vector<Atom>& atoms() const { return atoms_; }
    std::size_t size() const { return atoms_.size(); }
    double total_weight() const;
    double moment(int k) const;
    /// F(x) = mu((-inf, x]).
    double cdf(double x) const;

    /// Merges chains of neighbours closer than `gap`, adding their weights. A merged atom keeps
    /// the smallest location of its chain, so two measures over the same spectrum stay aligned.
    AtomicMeasure merged(double gap) const;

private:
    std::vector<Atom> atoms_;
};

}  // namespace wignerlab
