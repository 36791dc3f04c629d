#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

namespace trigl1 {

/// Real trigonometric polynomial of degree < n on the unit-period circle:
/// tau(x) = a0 + sum_{m=1}^{n-1} a_m cos(2 pi m x) + b_m sin(2 pi m x).
/// The space T_{2n-1} has dimension 2n-1.
struct TrigPoly {
    int degree_bound = 1;    // n
    double a0 = 0.0;
    std::vector<double> a;   // cosine coefficients, index m-1
    std::vector<double> b;   // sine coefficients, index m-1

    TrigPoly() = default;
    explicit TrigPoly(int n) : degree_bound(n) {
        if (n < 1) throw std::invalid_argument("TrigPoly: degree bound must be >= 1");
        a.assign(n - 1, 0.0);
        b.assign(n - 1, 0.0);
    }

    int dimension() const { return 2 * degree_bound - 1; }

    double operator()(double x) const {
        double v = a0;
        for (std::size_t i = 0; i < a.size(); ++i) {
            const double w = 2.0 * M_PI * static_cast<double>(i + 1) * x;
            v += a[i] * std::cos(w) + b[i] * std::sin(w);
        }
        return v;
    }

    TrigPoly derivative() const {
        TrigPoly d(degree_bound);
        for (std::size_t i = 0; i < a.size(); ++i) {
            const double w = 2.0 * M_PI * static_cast<double>(i + 1);
            d.a[i] = w * b[i];
            d.b[i] = -w * a[i];
        }
        return d;
    }

    TrigPoly derivative(int times) const {
        TrigPoly d = *this;
        for (int t = 0; t < times; ++t) d = d.derivative();
        return d;
    }

    double max_abs_coefficient() const {
        double m = std::abs(a0);
        for (double c : a) m = std::max(m, std::abs(c));
        for (double c : b) m = std::max(m, std::abs(c));
        return m;
    }
};

inline double eval_trig(const TrigPoly& t, double x) { return t(x); }

/// Convolution with chi_h^k as a Fourier multiplier: coefficient m is scaled
/// by (sin(pi m h)/(pi m h))^k; the mean is unchanged.
inline TrigPoly convolve_trig(const TrigPoly& t, int k, double h) {
    if (!(h > 0.0)) throw std::invalid_argument("convolve_trig: width must be positive");
    if (k < 1) throw std::invalid_argument("convolve_trig: order must be >= 1");
    TrigPoly out = t;
    for (std::size_t i = 0; i < out.a.size(); ++i) {
        const double z = M_PI * static_cast<double>(i + 1) * h;
        double mult = 1.0;
        const double s = std::sin(z) / z;
        for (int p = 0; p < k; ++p) mult *= s;
        out.a[i] *= mult;
        out.b[i] *= mult;
    }
    return out;
}

}  // namespace trigl1
