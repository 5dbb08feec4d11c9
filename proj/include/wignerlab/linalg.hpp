#pragma once

#include "wignerlab/measure.hpp"

#include <functional>
#include <span>
#include <stdexcept>
#include <vector>

namespace wignerlab {

/// Dense real symmetric matrix, stored in full row-major form and kept exactly symmetric.
class SymMatrix {
public:
    SymMatrix() = default;
    explicit SymMatrix(std::size_t n) : n_(n), a_(n * n, 0.0) {}
    /// Throws std::invalid_argument unless rows form a square, exactly symmetric, finite array.
    static SymMatrix from_rows(const std::vector<std::vector<double>>& rows);
    static SymMatrix diagonal(const std::vector<double>& d);

    std::size_t size() const { return n_; }
    double operator()(std::size_t i, std::size_t j) const { return a_[i * n_ + j]; }
    /// Writes (i, j) and (j, i).
    void set(std::size_t i, std::size_t j, double v) {
        a_[i * n_ + j] = v;
        a_[j * n_ + i] = v;
    }
    std::span<const double> row(std::size_t i) const { return {a_.data() + i * n_, n_}; }
    const std::vector<double>& data() const { return a_; }

    double frobenius_norm() const;
    /// out = A * in.
    void multiply(std::span<const double> in, std::span<double> out) const;
    SymMatrix shifted(double shift) const;

    bool operator==(const SymMatrix&) const = default;

private:
    std::size_t n_ = 0;
    std::vector<double> a_;
};

class EigenError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Eigenvalues ascending; eigenvector j is column j of the column-major `vectors` array.
struct EigenDecomposition {
    std::size_t n = 0;
    std::vector<double> values;
    std::vector<double> vectors;
    int sweeps = 0;

    double vector(std::size_t i, std::size_t j) const { return vectors[j * n + i]; }
};

/// e1' A^k e1 for k = 1..K from the power vectors u_j = A^j e1, using
/// A^k(1,1) = u_ceil(k/2) . u_floor(k/2).
std::vector<double> moment_via_power(const SymMatrix& a, int K);

constexpr std::size_t kMaxJacobiDimension = 4096;

/// Cyclic Jacobi rotations until the off-diagonal Frobenius mass is at most tol * ||A||_F.
/// Throws EigenError if the sweep cap is reached or the dimension exceeds kMaxJacobiDimension.
EigenDecomposition jacobi_eigh(const SymMatrix& a, double tol = 1e-12);

/// Eigenvalues with the first components of the matching unit eigenvectors, which is what the
/// spectral measure of (A, e1) needs.
struct SpectralPairs {
    std::vector<double> values;            // ascending
    std::vector<double> first_components;  // (v_j, e1)
};

/// Householder reduction to tridiagonal form followed by implicit QL. The reflectors leave e1
/// fixed, so only the first row of the tridiagonal eigenvector matrix has to be tracked.
/// O(N^3) with a small constant; used for large N where cyclic Jacobi is too slow.
SpectralPairs tridiagonal_spectrum(const SymMatrix& a);

/// Same data extracted from a Jacobi decomposition.
SpectralPairs jacobi_spectrum(const SymMatrix& a, double tol = 1e-12);

double semicircle_pdf(double x);
double semicircle_cdf(double x);

/// Kolmogorov distance between an atomic measure and a continuous cdf, taken over atom
/// locations from both sides of each jump. Throws std::invalid_argument when the weights do not
/// sum to 1 within 1e-8.
double ks_distance(const AtomicMeasure& mu, const std::function<double(double)>& cdf);

}  // namespace wignerlab
