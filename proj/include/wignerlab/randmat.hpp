#pragma once

#include "wignerlab/linalg.hpp"
#include "wignerlab/measure.hpp"
#include "wignerlab/moment_profile.hpp"
#include "wignerlab/rng.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace wignerlab {

struct EntryDistribution {
    EntryKind kind = EntryKind::Gaussian;

    /// Mean-zero draw: gaussian (polar method), rademacher (one bit), uniform on
    /// [-sqrt 3, sqrt 3], or exactly 0.
    double sample(CounterRng& rng) const;
    Rational moment(int p) const { return entry_moment(kind, p); }
};

struct EnsembleSpec {
    std::size_t N = 1;
    EntryDistribution diag{EntryKind::Gaussian};
    EntryDistribution offdiag{EntryKind::Gaussian};
    std::uint64_t seed = 0;

    /// Throws std::invalid_argument when N = 0 or the off-diagonal kind is zero.
    void validate() const;
    MomentProfile profile() const { return MomentProfile(diag.kind, offdiag.kind); }
};

/// Replica `replica` of the ensemble. Entry (i, j), i <= j, is drawn from its own counter stream,
/// so the result depends only on (seed, N, replica).
SymMatrix sample_wigner(const EnsembleSpec& spec, std::uint64_t replica);

/// Spectrum solver used for measure extraction. Auto picks Jacobi up to kJacobiAutoLimit and the
/// tridiagonal QL path above it.
enum class SpectrumSolver { Auto, Jacobi, Tridiagonal };

constexpr std::size_t kJacobiAutoLimit = 200;

std::string to_string(SpectrumSolver solver);
SpectrumSolver parse_spectrum_solver(const std::string& name);

/// Atoms (lambda_j, (v_j, e1)^2), merged where eigenvalues are closer than 1e-9 ||A||.
AtomicMeasure spectral_measure(const SymMatrix& a, SpectrumSolver solver = SpectrumSolver::Auto);
/// Atoms (lambda_j, 1/N), merged the same way.
AtomicMeasure empirical_measure(const SymMatrix& a, SpectrumSolver solver = SpectrumSolver::Auto);

/// Both measures from one decomposition.
struct SpectralMeasures {
    AtomicMeasure spectral;
    AtomicMeasure empirical;
};
SpectralMeasures spectral_measures(const SymMatrix& a, SpectrumSolver solver = SpectrumSolver::Auto);

/// <nu_N, x^k> = A^k(1,1) for k = 1..K, by powering; no eigendecomposition.
std::vector<double> spectral_moments(const SymMatrix& a, int K);

}  // namespace wignerlab
