#include "wignerlab/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <string>

namespace wignerlab {

SymMatrix SymMatrix::from_rows(const std::vector<std::vector<double>>& rows) {
    const std::size_t n = rows.size();
    SymMatrix m(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (rows[i].size() != n) throw std::invalid_argument("matrix rows must form a square");
        for (std::size_t j = 0; j < n; ++j) {
            if (!std::isfinite(rows[i][j])) throw std::invalid_argument("matrix entries must be finite");
            if (rows[i][j] != rows[j][i]) throw std::invalid_argument("matrix must be exactly symmetric");
            m.a_[i * n + j] = rows[i][j];
        }
    }
    return m;
}

SymMatrix SymMatrix::diagonal(const std::vector<double>& d) {
    SymMatrix m(d.size());
    for (std::size_t i = 0; i < d.size(); ++i) m.a_[i * d.size() + i] = d[i];
    return m;
}

double SymMatrix::frobenius_norm() const {
    double s = 0.0;
    for (double x : a_) s += x * x;
    return std::sqrt(s);
}

void SymMatrix::multiply(std::span<const double> in, std::span<double> out) const {
    for (std::size_t i = 0; i < n_; ++i) {
        const double* r = a_.data() + i * n_;
        double s = 0.0;
        for (std::size_t j = 0; j < n_; ++j) s += r[j] * in[j];
        out[i] = s;
    }
}

SymMatrix SymMatrix::shifted(double shift) const {
    SymMatrix m = *this;
    for (std::size_t i = 0; i < n_; ++i) m.a_[i * n_ + i] += shift;
    return m;
}

std::vector<double> moment_via_power(const SymMatrix& a, int K) {
    if (K < 1) throw std::invalid_argument("moment_via_power: K must be positive");
    const std::size_t n = a.size();
    const int half = (K + 1) / 2;
    std::vector<std::vector<double>> u(half + 1, std::vector<double>(n, 0.0));
    u[0][0] = 1.0;
    for (int j = 1; j <= half; ++j) a.multiply(u[j - 1], u[j]);
    std::vector<double> out(K);
    for (int k = 1; k <= K; ++k) {
        const auto& x = u[(k + 1) / 2];
        const auto& y = u[k / 2];
        out[k - 1] = std::inner_product(x.begin(), x.end(), y.begin(), 0.0);
    }
    return out;
}

namespace {

double off_diagonal_norm(const std::vector<double>& a, std::size_t n) {
    double s = 0.0;
    for (std::size_t p = 0; p < n; ++p) {
        for (std::size_t q = p + 1; q < n; ++q) s += a[p * n + q] * a[p * n + q];
    }
    return std::sqrt(2.0 * s);
}

constexpr int kMaxSweeps = 100;

}  // namespace

EigenDecomposition jacobi_eigh(const SymMatrix& m, double tol) {
    if (!(tol > 0.0)) throw std::invalid_argument("jacobi_eigh: tol must be positive");
    const std::size_t n = m.size();
    if (n > kMaxJacobiDimension) {
        throw EigenError("jacobi_eigh: dimension " + std::to_string(n) + " exceeds " +
                         std::to_string(kMaxJacobiDimension));
    }
    std::vector<double> a = m.data();
    std::vector<double> v(n * n, 0.0);  // column-major, columns are eigenvectors
    for (std::size_t i = 0; i < n; ++i) v[i * n + i] = 1.0;

    const double target = tol * m.frobenius_norm();
    int sweep = 0;
    while (off_diagonal_norm(a, n) > target) {
        if (++sweep > kMaxSweeps) throw EigenError("jacobi_eigh: no convergence after sweep cap");
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const double apq = a[p * n + q];
                if (apq == 0.0) continue;
                const double app = a[p * n + p];
                const double aqq = a[q * n + q];
                const double theta = (aqq - app) / (2.0 * apq);
                const double t = std::copysign(1.0, theta) / (std::abs(theta) + std::hypot(theta, 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                const double tau = s / (1.0 + c);

                a[p * n + p] = app - t * apq;
                a[q * n + q] = aqq + t * apq;
                a[p * n + q] = 0.0;
                a[q * n + p] = 0.0;
                double* rp = a.data() + p * n;
                double* rq = a.data() + q * n;
                for (std::size_t r = 0; r < n; ++r) {
                    if (r == p || r == q) continue;
                    const double g = rp[r];
                    const double h = rq[r];
                    rp[r] = g - s * (h + tau * g);
                    rq[r] = h + s * (g - tau * h);
                    a[r * n + p] = rp[r];
                    a[r * n + q] = rq[r];
                }
                double* vp = v.data() + p * n;
                double* vq = v.data() + q * n;
                for (std::size_t r = 0; r < n; ++r) {
                    const double g = vp[r];
                    const double h = vq[r];
                    vp[r] = g - s * (h + tau * g);
                    vq[r] = h + s * (g - tau * h);
                }
            }
        }
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t x, std::size_t y) { return a[x * n + x] < a[y * n + y]; });
    EigenDecomposition out;
    out.n = n;
    out.sweeps = sweep;
    out.values.resize(n);
    out.vectors.resize(n * n);
    for (std::size_t j = 0; j < n; ++j) {
        const std::size_t src = order[j];
        out.values[j] = a[src * n + src];
        std::copy_n(v.begin() + src * n, n, out.vectors.begin() + j * n);
    }
    return out;
}

SpectralPairs jacobi_spectrum(const SymMatrix& a, double tol) {
    const EigenDecomposition e = jacobi_eigh(a, tol);
    SpectralPairs out;
    out.values = e.values;
    out.first_components.resize(e.n);
    for (std::size_t j = 0; j < e.n; ++j) out.first_components[j] = e.vector(0, j);
    return out;
}

SpectralPairs tridiagonal_spectrum(const SymMatrix& m) {
    const std::size_t n = m.size();
    SpectralPairs out;
    if (n == 0) return out;
    std::vector<double> a = m.data();
    std::vector<double> d(n, 0.0);
    std::vector<double> e(n, 0.0);  // e[i] couples i and i + 1
    std::vector<double> v(n);
    std::vector<double> w(n);

    // Reflector j acts on indices j+1..n-1 and zeroes column j below the subdiagonal.
    for (std::size_t j = 0; j + 2 < n; ++j) {
        const std::size_t len = n - j - 1;
        double norm = 0.0;
        for (std::size_t i = 0; i < len; ++i) norm += a[(j + 1 + i) * n + j] * a[(j + 1 + i) * n + j];
        norm = std::sqrt(norm);
        const double x0 = a[(j + 1) * n + j];
        if (norm == 0.0) {
            d[j] = a[j * n + j];
            e[j] = 0.0;
            continue;
        }
        const double alpha = x0 >= 0.0 ? -norm : norm;
        for (std::size_t i = 0; i < len; ++i) v[i] = a[(j + 1 + i) * n + j];
        v[0] -= alpha;
        double vv = 0.0;
        for (std::size_t i = 0; i < len; ++i) vv += v[i] * v[i];
        d[j] = a[j * n + j];
        e[j] = alpha;
        if (vv == 0.0) continue;
        const double beta = 2.0 / vv;

        // p = beta S v, w = p - (beta v'p / 2) v, S <- S - v w' - w v'.
        double vp = 0.0;
        for (std::size_t r = 0; r < len; ++r) {
            const double* row = a.data() + (j + 1 + r) * n + j + 1;
            double s = 0.0;
            for (std::size_t c = 0; c < len; ++c) s += row[c] * v[c];
            w[r] = beta * s;
            vp += v[r] * w[r];
        }
        const double kappa = 0.5 * beta * vp;
        for (std::size_t r = 0; r < len; ++r) w[r] -= kappa * v[r];
        for (std::size_t r = 0; r < len; ++r) {
            double* row = a.data() + (j + 1 + r) * n + j + 1;
            const double vr = v[r];
            const double wr = w[r];
            for (std::size_t c = 0; c < len; ++c) row[c] -= vr * w[c] + wr * v[c];
        }
    }
    if (n >= 2) {
        d[n - 2] = a[(n - 2) * n + n - 2];
        e[n - 2] = a[(n - 1) * n + n - 2];
    }
    d[n - 1] = a[(n - 1) * n + n - 1];
    e[n - 1] = 0.0;

    // Implicit QL with Wilkinson-type shifts; z tracks row 0 of the eigenvector matrix.
    std::vector<double> z(n, 0.0);
    z[0] = 1.0;
    const double eps = std::numeric_limits<double>::epsilon();
    for (std::size_t l = 0; l < n; ++l) {
        int iter = 0;
        std::size_t mm;
        do {
            for (mm = l; mm + 1 < n; ++mm) {
                const double dd = std::abs(d[mm]) + std::abs(d[mm + 1]);
                if (std::abs(e[mm]) <= eps * dd) break;
            }
            if (mm != l) {
                if (++iter > 60) throw EigenError("tridiagonal_spectrum: QL iteration did not converge");
                double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
                double r = std::hypot(g, 1.0);
                g = d[mm] - d[l] + e[l] / (g + std::copysign(r, g));
                double s = 1.0;
                double c = 1.0;
                double p = 0.0;
                bool deflated = false;
                for (std::size_t i = mm; i-- > l;) {
                    const double f = s * e[i];
                    const double b = c * e[i];
                    r = std::hypot(f, g);
                    e[i + 1] = r;
                    if (r == 0.0) {
                        d[i + 1] -= p;
                        e[mm] = 0.0;
                        deflated = true;
                        break;
                    }
                    s = f / r;
                    c = g / r;
                    g = d[i + 1] - p;
                    r = (d[i] - g) * s + 2.0 * c * b;
                    p = s * r;
                    d[i + 1] = g + p;
                    g = c * r - b;
                    const double zf = z[i + 1];
                    z[i + 1] = s * z[i] + c * zf;
                    z[i] = c * z[i] - s * zf;
                }
                if (deflated) continue;
                d[l] -= p;
                e[l] = g;
                e[mm] = 0.0;
            }
        } while (mm != l);
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return d[x] < d[y]; });
    out.values.resize(n);
    out.first_components.resize(n);
    for (std::size_t j = 0; j < n; ++j) {
        out.values[j] = d[order[j]];
        out.first_components[j] = z[order[j]];
    }
    return out;
}

double semicircle_pdf(double x) {
    if (x <= -2.0 || x >= 2.0) return 0.0;
    return std::sqrt(4.0 - x * x) / (2.0 * std::numbers::pi);
}

double semicircle_cdf(double x) {
    if (x <= -2.0) return 0.0;
    if (x >= 2.0) return 1.0;
    const double f = 0.5 + x * std::sqrt(4.0 - x * x) / (4.0 * std::numbers::pi) +
                     std::asin(x / 2.0) / std::numbers::pi;
    return std::clamp(f, 0.0, 1.0);
}

double ks_distance(const AtomicMeasure& mu, const std::function<double(double)>& cdf) {
    const double total = mu.total_weight();
    if (std::abs(total - 1.0) > 1e-8) {
        throw std::invalid_argument("ks_distance: measure weights sum to " + std::to_string(total));
    }
    const auto& atoms = mu.atoms();
    double below = 0.0;
    double sup = 0.0;
    for (std::size_t i = 0; i < atoms.size();) {
        const double x = atoms[i].location;
        double above = below;
        for (; i < atoms.size() && atoms[i].location == x; ++i) above += atoms[i].weight;
        // The reference's left limit is read just below x, so a step cdf compared with itself
        // gives zero.
        const double left = cdf(std::nextafter(x, -std::numeric_limits<double>::infinity()));
        sup = std::max({sup, std::abs(below - left), std::abs(above - cdf(x))});
        below = above;
    }
    return sup;
}

}  // namespace wignerlab
