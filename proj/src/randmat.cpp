#include "wignerlab/randmat.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace wignerlab {

double EntryDistribution::sample(CounterRng& rng) const {
    switch (kind) {
        case EntryKind::Gaussian:
            while (true) {
                const double x = 2.0 * rng.uniform() - 1.0;
                const double y = 2.0 * rng.uniform() - 1.0;
                const double s = x * x + y * y;
                if (s > 0.0 && s < 1.0) return x * std::sqrt(-2.0 * std::log(s) / s);
            }
        case EntryKind::Rademacher: return (rng.next() >> 63) ? 1.0 : -1.0;
        case EntryKind::Uniform: return (2.0 * rng.uniform() - 1.0) * std::sqrt(3.0);
        case EntryKind::Zero: return 0.0;
    }
    return 0.0;
}

void EnsembleSpec::validate() const {
    if (N == 0) throw std::invalid_argument("ensemble dimension must be positive");
    if (offdiag.kind == EntryKind::Zero) {
        throw std::invalid_argument("off-diagonal entries cannot be identically zero");
    }
}

SymMatrix sample_wigner(const EnsembleSpec& spec, std::uint64_t replica) {
    spec.validate();
    const std::size_t n = spec.N;
    const double scale = 1.0 / std::sqrt(static_cast<double>(n));
    const std::uint64_t base = hash_combine(spec.seed, n);
    SymMatrix m(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i; j < n; ++j) {
            CounterRng rng = CounterRng::for_entry(base, replica, i * n + j);
            const EntryDistribution& dist = i == j ? spec.diag : spec.offdiag;
            m.set(i, j, dist.sample(rng) * scale);
        }
    }
    return m;
}

namespace {

SpectralPairs solve(const SymMatrix& a, SpectrumSolver solver) {
    if (solver == SpectrumSolver::Auto) {
        solver = a.size() <= kJacobiAutoLimit ? SpectrumSolver::Jacobi : SpectrumSolver::Tridiagonal;
    }
    return solver == SpectrumSolver::Jacobi ? jacobi_spectrum(a) : tridiagonal_spectrum(a);
}

double merge_gap(const SpectralPairs& s) {
    double norm = 0.0;
    for (double x : s.values) norm = std::max(norm, std::abs(x));
    return 1e-9 * norm;
}

}  // namespace

SpectralMeasures spectral_measures(const SymMatrix& a, SpectrumSolver solver) {
    const SpectralPairs s = solve(a, solver);
    const std::size_t n = s.values.size();
    std::vector<Atom> spectral(n);
    std::vector<Atom> empirical(n);
    for (std::size_t j = 0; j < n; ++j) {
        const double c = s.first_components[j];
        spectral[j] = {s.values[j], c * c};
        empirical[j] = {s.values[j], 1.0 / static_cast<double>(n)};
    }
    const double gap = merge_gap(s);
    return {AtomicMeasure(std::move(spectral)).merged(gap), AtomicMeasure(std::move(empirical)).merged(gap)};
}

AtomicMeasure spectral_measure(const SymMatrix& a, SpectrumSolver solver) {
    return spectral_measures(a, solver).spectral;
}

AtomicMeasure empirical_measure(const SymMatrix& a, SpectrumSolver solver) {
    return spectral_measures(a, solver).empirical;
}

std::vector<double> spectral_moments(const SymMatrix& a, int K) { return moment_via_power(a, K); }

std::string to_string(SpectrumSolver solver) {
    switch (solver) {
        case SpectrumSolver::Auto: return "auto";
        case SpectrumSolver::Jacobi: return "jacobi";
        case SpectrumSolver::Tridiagonal: return "tridiagonal";
    }
    return "?";
}

SpectrumSolver parse_spectrum_solver(const std::string& name) {
    if (name == "auto") return SpectrumSolver::Auto;
    if (name == "jacobi") return SpectrumSolver::Jacobi;
    if (name == "tridiagonal") return SpectrumSolver::Tridiagonal;
    throw std::invalid_argument("unknown solver '" + name + "' (expected auto, jacobi or tridiagonal)");
}

}  // namespace wignerlab
