#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>

namespace trigl1 {

/// Favard constant K_k = (4/pi) * sum_{j in Z} (4j+1)^-(k+1), with a
/// guaranteed bound on the truncation error.
struct FavardConstant {
    int order = 0;
    double value = 0.0;
    double abs_error_bound = 0.0;
    // Set when k exceeds the supported range and the 4/pi limit is returned.
    bool at_limit = false;
};

/// Sharp theorem constant F_k = (2/pi)^k * K_k.
struct BoundConstant {
    int order = 0;
    double value = 0.0;
};

namespace detail {

inline double ipow(double base, int e) {
    double r = 1.0, b = base;
    for (int n = e; n > 0; n >>= 1) {
        if (n & 1) r *= b;
        b *= b;
    }
    return r;
}

// Paired term for j >= 1: 1/(4j+1)^{k+1} + (-1)^{k+1}/(4j-1)^{k+1}.
// Pairing j with -j makes the k = 0 series absolutely summable.
inline double favard_pair_term(int k, double j) {
    const double a = detail::ipow(1.0 / (4.0 * j + 1.0), k + 1);
    const double b = detail::ipow(1.0 / (4.0 * j - 1.0), k + 1);
    return (k % 2 == 1) ? a + b : a - b;
}

// Midpoint-rule bound for |sum_{j>J} pair(j) - integral_{J+1/2}^inf pair(x) dx|:
// |pair''(x)| <= 32 (k+1)(k+2) (4x-1)^-(k+3), decreasing, so the per-interval
// midpoint error sums to at most (k+1) (4J-3)^-(k+2) / 3.
inline double favard_tail_error(int k, std::int64_t j_cut) {
    return (k + 1) * detail::ipow(1.0 / (4.0 * static_cast<double>(j_cut) - 3.0), k + 2) / 3.0;
}

// Partial paired sum up to J plus the closed-form integral tail; *err_bound
// (optional) receives the analytic error bound including the 4/pi prefactor.
inline double favard_partial(int k, std::int64_t j_cut, double* err_bound = nullptr) {
    double sum = 0.0, comp = 0.0;  // Kahan, summed smallest terms first
    for (std::int64_t j = j_cut; j >= 1; --j) {
        const double t = favard_pair_term(k, static_cast<double>(j)) - comp;
        const double s = sum + t;
        comp = (s - sum) - t;
        sum = s;
    }
    sum += 1.0;  // j = 0 term
    const double J = static_cast<double>(j_cut);
    double tail_integral;
    if (k == 0) {
        tail_integral = -0.25 * std::log1p(2.0 / (4.0 * J + 1.0));
    } else {
        const double a = detail::ipow(1.0 / (4.0 * J + 3.0), k);
        const double b = detail::ipow(1.0 / (4.0 * J + 1.0), k);
        tail_integral = (k % 2 == 1) ? (a + b) / (4.0 * k) : (a - b) / (4.0 * k);
    }
    const double four_over_pi = 4.0 / M_PI;
    if (err_bound) {
        *err_bound = four_over_pi * favard_tail_error(k, j_cut)
                   + 8.0 * std::numeric_limits<double>::epsilon();
    }
    return four_over_pi * (sum + tail_integral);
}

}  // namespace detail

// Orders above this are indistinguishable from the 4/pi limit in double
// precision (the j = +-1 corrections are below 2^-52).
inline constexpr int kFavardMaxOrder = 32;

inline FavardConstant favard_constant(int k, double tol) {
    if (!(tol > 0.0)) throw std::invalid_argument("favard_constant: tol must be positive");
    if (k < 0) throw std::invalid_argument("favard_constant: order must be nonnegative");
    if (k > kFavardMaxOrder) {
        FavardConstant c;
        c.order = k;
        c.value = 4.0 / M_PI;
        c.abs_error_bound = 4.0 * std::numeric_limits<double>::epsilon();
        c.at_limit = true;
        return c;
    }
    // Smallest J with (4/pi)(k+1)(4J-3)^-(k+2)/3 <= tol/2, by doubling +
    // bisection; the slack absorbs the rounding term added to the bound.
    const double target = 0.5 * tol;
    std::int64_t lo = 2, hi = 2;
    const std::int64_t j_max = 1LL << 26;
    while (4.0 / M_PI * detail::favard_tail_error(k, hi) > target && hi < j_max) hi *= 2;
    while (lo + 1 < hi) {
        const std::int64_t mid = lo + (hi - lo) / 2;
        if (4.0 / M_PI * detail::favard_tail_error(k, mid) > target) lo = mid;
        else hi = mid;
    }
    FavardConstant c;
    c.order = k;
    c.value = detail::favard_partial(k, hi, &c.abs_error_bound);
    return c;
}

inline BoundConstant bound_constant(int k) {
    if (k < 1) throw std::invalid_argument("bound_constant: order must be >= 1");
    const FavardConstant kk = favard_constant(k, 1e-14);
    return BoundConstant{k, detail::ipow(2.0 / M_PI, k) * kk.value};
}

/// min(1, F_k / alpha^k), the refined form of the theorem bound.
inline double theorem_bound(int k, double alpha) {
    if (!(alpha > 0.0)) throw std::invalid_argument("theorem_bound: alpha must be positive");
    const double fk = bound_constant(k).value;
    return std::min(1.0, fk * detail::ipow(1.0 / alpha, k));
}

}  // namespace trigl1
