#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "trigl1/constants.hpp"
#include "trigl1/piecewise.hpp"

namespace trigl1 {

namespace detail {

// sum_m coeff[m] * trig((2m+1) * pi * t) by the three-term recurrence
// T_{m+1} = 2 cos(2 pi t) T_m - T_{m-1}, re-synchronized against libm
// every 4096 terms to kill drift. trig is cosine or sine.
inline double odd_harmonic_sum(const std::vector<double>& coeff, double t, bool sine) {
    const double phi = M_PI * t;
    const double c2 = 2.0 * std::cos(2.0 * phi);
    double prev = sine ? std::sin(-phi) : std::cos(phi);   // index m = -1
    double cur = sine ? std::sin(phi) : std::cos(phi);     // index m = 0
    double sum = 0.0, comp = 0.0;
    for (std::size_t m = 0; m < coeff.size(); ++m) {
        if ((m & 4095u) == 4095u) {
            const double arg = (2.0 * static_cast<double>(m) + 1.0) * phi;
            cur = sine ? std::sin(arg) : std::cos(arg);
            const double argp = (2.0 * static_cast<double>(m) - 1.0) * phi;
            prev = sine ? std::sin(argp) : std::cos(argp);
        }
        const double term = coeff[m] * cur - comp;
        const double s = sum + term;
        comp = (s - sum) - term;
        sum = s;
        const double next = c2 * cur - prev;
        prev = cur;
        cur = next;
    }
    return sum;
}

inline double reduce_period2(double x) {
    double t = std::fmod(x, 2.0);
    if (t < 0.0) t += 2.0;
    return t;
}

// Normalization denominator sum_{m>=0} s_{k,m} / (2m+1)^{k+1} including the
// analytic tail beyond M terms (integral + midpoint bound; the alternating
// even-k tail is negligible for the M used here). Converges to (pi/4) K_k.
inline double euler_denominator_full(int k, std::size_t m_terms) {
    double sum = 0.0;
    for (std::size_t m = m_terms; m-- > 0;) {
        const double s = (k % 2 == 0 && m % 2 == 1) ? -1.0 : 1.0;
        sum += s * ipow(1.0 / (2.0 * static_cast<double>(m) + 1.0), k + 1);
    }
    if (k % 2 == 1) {
        // all-positive tail: int_{M-1/2}^inf (2x+1)^-(k+1) dx = (2M)^-k / (2k)
        sum += ipow(1.0 / (2.0 * static_cast<double>(m_terms)), k) / (2.0 * k);
    }
    return sum;
}

}  // namespace detail

/// Euler spline E_k as a truncated series of odd cosine harmonics,
/// E_k(x) = sum_{m<M} a_m cos((2m+1) pi x) with
/// a_m = s_{k,m} (2m+1)^-(k+1) / N, s_{k,m} = (-1)^{m(k+1)}, N the partial
/// denominator, so E_k(0) = 1 exactly. k = 0 is stored as the exact square
/// wave sign(cos(pi x)) instead.
class EulerSpline {
  public:
    EulerSpline(int k, std::size_t harmonics) : order_(k) {
        if (k < 0) throw std::invalid_argument("EulerSpline: order must be >= 0");
        if (k == 0) {
            normalization_ = 4.0 / M_PI;  // square-wave series scale, unused in eval
            tail_bound_ = 0.0;
            return;
        }
        if (harmonics < 8) harmonics = 8;
        coeff_.resize(harmonics);
        double norm = 0.0;
        for (std::size_t m = harmonics; m-- > 0;) {
            const double s = (k % 2 == 0 && m % 2 == 1) ? -1.0 : 1.0;
            norm += s * detail::ipow(1.0 / (2.0 * static_cast<double>(m) + 1.0), k + 1);
        }
        for (std::size_t m = 0; m < harmonics; ++m) {
            const double s = (k % 2 == 0 && m % 2 == 1) ? -1.0 : 1.0;
            coeff_[m] =
                s * detail::ipow(1.0 / (2.0 * static_cast<double>(m) + 1.0), k + 1) / norm;
        }
        normalization_ = norm;
        tail_bound_ = detail::ipow(1.0 / (2.0 * static_cast<double>(harmonics)), k) /
                      (2.0 * k) / std::abs(norm);
    }

    int order() const { return order_; }
    std::size_t harmonics() const { return coeff_.size(); }
    double normalization() const { return normalization_; }
    /// Bound on the absolute truncation error of evaluate, zero for k = 0.
    double tail_bound() const { return tail_bound_; }
    const std::vector<double>& coefficients() const { return coeff_; }

    double operator()(double x) const {
        const double t = detail::reduce_period2(x);
        if (order_ == 0) {
            // +1 on (-1/2, 1/2) mod 2, -1 on (1/2, 3/2), 0 at the jumps
            if (t == 0.5 || t == 1.5) return 0.0;
            return (t < 0.5 || t > 1.5) ? 1.0 : -1.0;
        }
        return detail::odd_harmonic_sum(coeff_, t, /*sine=*/false);
    }

    /// Exact integral of the stored representation over [a, b].
    double integrate(double a, double b) const {
        if (order_ == 0) return sign_antiderivative(b) - sign_antiderivative(a);
        return sine_antiderivative(b) - sine_antiderivative(a);
    }

  private:
    // Antiderivative of the series; periodic with period 2 since the mean
    // vanishes, so arguments may be reduced.
    double sine_antiderivative(double x) const {
        const double t = detail::reduce_period2(x);
        std::vector<double> c(coeff_.size());
        for (std::size_t m = 0; m < c.size(); ++m)
            c[m] = coeff_[m] / ((2.0 * static_cast<double>(m) + 1.0) * M_PI);
        return detail::odd_harmonic_sum(c, t, /*sine=*/true);
    }

    static double sign_antiderivative(double x) {
        const double t = detail::reduce_period2(x);
        if (t < 0.5) return t;
        if (t < 1.5) return 1.0 - t;
        return t - 2.0;
    }

    int order_ = 0;
    std::vector<double> coeff_;
    double normalization_ = 1.0;
    double tail_bound_ = 0.0;
};

namespace detail {

inline std::size_t euler_harmonics_for_tol(int k, double tol) {
    // normalized tail <= (2M)^-k / (2k) / |N_k|, N_k >= pi/4 K_0-ish; solve for M
    const std::size_t cap = std::size_t{1} << 21;
    if (k == 0) return 0;
    std::size_t m = 8;
    while (m < cap) {
        const double norm_floor = 0.75;  // every |N_k| exceeds this
        const double tail = ipow(1.0 / (2.0 * static_cast<double>(m)), k) / (2.0 * k) / norm_floor;
        if (tail <= tol) break;
        m *= 2;
    }
    return m;
}

}  // namespace detail

inline EulerSpline euler_spline(int k, double tol) {
    if (!(tol > 0.0)) throw std::invalid_argument("euler_spline: tol must be positive");
    if (k < 0) throw std::invalid_argument("euler_spline: order must be >= 0");
    return EulerSpline(k, detail::euler_harmonics_for_tol(k, tol));
}

inline double evaluate_euler(const EulerSpline& e, double x) { return e(x); }

/// Delta^k with step h = 2j+1 applied to E_k at x.
inline double euler_central_difference(int k, int j, double x) {
    if (k < 1) throw std::invalid_argument("euler_central_difference: order must be >= 1");
    if (j < 0) throw std::invalid_argument("euler_central_difference: j must be >= 0");
    const std::size_t m = (k == 1) ? (std::size_t{1} << 20)
                                   : detail::euler_harmonics_for_tol(k, 1e-10);
    const EulerSpline e(k, m);
    return central_difference([&](double y) { return e(y); },
                              2.0 * static_cast<double>(j) + 1.0, k, x);
}

/// Max over sample points of |centered FD of E_j - pi K_{j-1}/K_j E_{j-1}(x+1/2)|,
/// step 1e-6. Sample points stay 0.15 away from the integers, where the j = 1
/// right-hand side jumps; the tail of the differentiated series is controlled
/// there (Dirichlet bound 1/((2M+1) sin(pi d))).
inline double derivative_relation_residual(int j, int samples) {
    if (j < 1) throw std::invalid_argument("derivative_relation_residual: j must be >= 1");
    if (samples < 8)
        throw std::invalid_argument("derivative_relation_residual: need at least 8 samples");
    const auto pick = [](int k) -> std::size_t {
        if (k <= 1) return std::size_t{1} << 20;
        if (k == 2) return std::size_t{1} << 18;
        return std::size_t{1} << 14;
    };
    const EulerSpline ej(j, pick(j));
    const EulerSpline eprev(j - 1, j - 1 == 0 ? 0 : pick(j - 1));
    const double factor = M_PI * favard_constant(j - 1, 1e-14).value /
                          favard_constant(j, 1e-14).value;
    const double step = 1e-6;
    double worst = 0.0;
    for (int i = 0; i < samples; ++i) {
        const double band = static_cast<double>(i % 2);  // [0.15,0.85] or [1.15,1.85]
        const double x = band + 0.15 + 0.7 * (i + 0.5) / static_cast<double>(samples);
        const double fd = (ej(x + step) - ej(x - step)) / (2.0 * step);
        const double rhs = factor * eprev(x + 0.5);
        worst = std::max(worst, std::abs(fd - rhs));
    }
    return worst;
}

}  // namespace trigl1
