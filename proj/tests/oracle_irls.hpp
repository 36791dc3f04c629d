#pragma once

// Test-only brute-force weighted-LAD solver: iteratively reweighted least
// squares on a smoothed |.| with a shrinking smoothing parameter, restarted
// from zero. Deliberately shares no code with the simplex path it checks.

#include <cmath>
#include <cstddef>
#include <vector>

namespace oracle {

struct IrlsResult {
    std::vector<double> coefficients;
    double objective = 0.0;
};

// Gaussian elimination with partial pivoting on a p x p system (self-contained).
inline std::vector<double> solve_dense(std::vector<double> m, std::vector<double> rhs,
                                       std::size_t p) {
    for (std::size_t col = 0; col < p; ++col) {
        std::size_t best = col;
        for (std::size_t r = col + 1; r < p; ++r)
            if (std::fabs(m[r * p + col]) > std::fabs(m[best * p + col])) best = r;
        for (std::size_t c = 0; c < p; ++c) std::swap(m[col * p + c], m[best * p + c]);
        std::swap(rhs[col], rhs[best]);
        for (std::size_t r = col + 1; r < p; ++r) {
            const double fac = m[r * p + col] / m[col * p + col];
            for (std::size_t c = col; c < p; ++c) m[r * p + c] -= fac * m[col * p + c];
            rhs[r] -= fac * rhs[col];
        }
    }
    std::vector<double> x(p);
    for (std::size_t i = p; i-- > 0;) {
        double v = rhs[i];
        for (std::size_t j = i + 1; j < p; ++j) v -= m[i * p + j] * x[j];
        x[i] = v / m[i * p + i];
    }
    return x;
}

inline IrlsResult irls_lad(const std::vector<double>& a_rowmajor, std::size_t n,
                           std::size_t p, const std::vector<double>& f,
                           const std::vector<double>& w) {
    std::vector<double> c(p, 0.0);
    for (double eps = 1e-1; eps > 5e-11; eps *= 0.35) {
        for (int inner = 0; inner < 4; ++inner) {
            std::vector<double> normal(p * p, 0.0), rhs(p, 0.0);
            for (std::size_t i = 0; i < n; ++i) {
                const double* row = &a_rowmajor[i * p];
                double fit = 0.0;
                for (std::size_t j = 0; j < p; ++j) fit += row[j] * c[j];
                const double r = f[i] - fit;
                const double d = w[i] / std::sqrt(r * r + eps * eps);
                for (std::size_t j = 0; j < p; ++j) {
                    rhs[j] += d * row[j] * f[i];
                    for (std::size_t l = j; l < p; ++l) normal[j * p + l] += d * row[j] * row[l];
                }
            }
            for (std::size_t j = 0; j < p; ++j)
                for (std::size_t l = 0; l < j; ++l) normal[j * p + l] = normal[l * p + j];
            c = solve_dense(std::move(normal), std::move(rhs), p);
        }
    }
    IrlsResult out;
    out.coefficients = c;
    for (std::size_t i = 0; i < n; ++i) {
        double fit = 0.0;
        for (std::size_t j = 0; j < p; ++j) fit += a_rowmajor[i * p + j] * c[j];
        out.objective += w[i] * std::fabs(f[i] - fit);
    }
    return out;
}

}  // namespace oracle
