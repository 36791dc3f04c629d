#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "trigl1/constants.hpp"
#include "trigl1/lad.hpp"
#include "trigl1/piecewise.hpp"
#include "trigl1/sign_pattern.hpp"
#include "trigl1/trig_poly.hpp"

namespace trigl1 {

/// Result of a best-L1-approximation solve. primal_value is the exactly
/// re-integrated ||f - approximant||_1 (a true upper bound for E_n(f)_1);
/// dual_lower is the exact sign-pattern witness integral (a true lower bound).
struct ApproxResult {
    int n = 0;
    int k = 0;               // spline order; 0 when the input was a raw function
    double h = 0.0;          // spline width; 0 when unknown
    double alpha = 0.0;      // 2nh when a spline context exists
    double primal_value = 0.0;
    TrigPoly approximant;
    double dual_lower = 0.0;
    SignPattern witness;
    double theorem_upper = std::numeric_limits<double>::infinity();
    double gap = 0.0;        // primal_value - dual_lower
    bool certified = false;
    int grid_size = 0;       // final grid M
    // solver metadata
    std::vector<int> m_schedule;
    double grid_value = 0.0;             // discretized LP objective at final M
    double discretization_error = 0.0;   // |grid_value - primal_value|
    double lp_gap = 0.0;                 // LP duality gap of the discrete problem
    int lp_iterations = 0;
    bool lp_converged = false;
};

namespace detail {

inline void require_period_support(const PiecewisePolynomial& f, const char* who) {
    constexpr double slack = 1e-9;
    if (f.support_min() < -0.5 - slack || f.support_max() > 0.5 + slack)
        throw std::domain_error(std::string(who) + ": support must lie within [-1/2, 1/2]");
}

}  // namespace detail

/// Fourier coefficient int_0^1 pattern(x) exp(-2 pi i m x) dx, closed form
/// from the pattern's jump points.
inline std::complex<double> pattern_fourier_coefficient(const SignPattern& p, long m) {
    const int n = p.frequency;
    const double step = 1.0 / (4.0 * n);
    if (m == 0) return {0.0, 0.0};  // equal positive and negative lengths
    std::complex<double> sum(0.0, 0.0);
    const std::complex<double> denom(0.0, -2.0 * M_PI * static_cast<double>(m));
    // one period starting at theta: first jump at theta + step, then every 2*step
    double a = p.shift;
    for (int seg = 0; seg <= 2 * n; ++seg) {
        const double b = (seg == 2 * n) ? p.shift + 1.0 : p.shift + step * (2.0 * seg + 1.0);
        const double v = p(0.5 * (a + b));
        const std::complex<double> ea = std::exp(std::complex<double>(0.0, -2.0 * M_PI * m * a));
        const std::complex<double> eb = std::exp(std::complex<double>(0.0, -2.0 * M_PI * m * b));
        sum += v * (eb - ea) / denom;
        a = b;
    }
    return sum;
}

/// True iff every Fourier coefficient of the pattern below frequency n
/// vanishes within tol, i.e. the pattern lies in T_{2n-1}^perp.
inline bool orthogonality_check(const SignPattern& p, int n, double tol) {
    for (long m = 0; m < n; ++m)
        if (std::abs(pattern_fourier_coefficient(p, m)) >= tol) return false;
    return true;
}

/// Best lower bound for E_n(f)_1 over the four-shift square-wave witness
/// family; the returned pattern attains it with a nonnegative integral.
inline std::pair<double, SignPattern> dual_lower_bound(const PiecewisePolynomial& f, int n) {
    if (n < 1) throw std::invalid_argument("dual_lower_bound: n must be >= 1");
    detail::require_period_support(f, "dual_lower_bound");
    const double shifts[] = {0.0, 1.0 / (4.0 * n), 1.0 / (2.0 * n), 3.0 / (4.0 * n)};
    double best = -1.0;
    SignPattern best_pattern(n, 0.0, 1);
    for (double theta : shifts) {
        const SignPattern candidate(n, theta, 1);
        const double v = integrate_against_sign(f, candidate);
        const double mag = std::abs(v);
        if (mag > best + 1e-15) {  // ties keep the smallest shift, sigma = +1
            best = mag;
            best_pattern = SignPattern(n, theta, (v >= 0.0) ? 1 : -1);
        }
    }
    return {best, best_pattern};
}

namespace detail {

// Antiderivative of a trig polynomial (mean term included).
inline double trig_antiderivative(const TrigPoly& t, double x) {
    double v = t.a0 * x;
    for (std::size_t i = 0; i < t.a.size(); ++i) {
        const double w = 2.0 * M_PI * static_cast<double>(i + 1);
        v += t.a[i] * std::sin(w * x) / w - t.b[i] * std::cos(w * x) / w;
    }
    return v;
}

}  // namespace detail

/// ||f - tau||_1 over one period, by locating the sign changes of the
/// residual (scan + bisection to 1e-13) and integrating each sign-constant
/// stretch in closed form. A true upper bound for E_n(f)_1 for any tau.
inline double exact_l1_error(const PiecewisePolynomial& f, const TrigPoly& tau) {
    detail::require_period_support(f, "exact_l1_error");
    const auto r = [&](double x) { return f(x) - tau(x); };

    std::vector<double> bounds{-0.5};
    for (double t : f.breakpoints())
        if (t > -0.5 + 1e-14 && t < 0.5 - 1e-14) bounds.push_back(t);
    bounds.push_back(0.5);
    std::sort(bounds.begin(), bounds.end());

    std::vector<double> cuts{-0.5};
    const int density = std::max(512, 64 * tau.degree_bound);
    for (std::size_t s = 0; s + 1 < bounds.size(); ++s) {
        const double lo = bounds[s], hi = bounds[s + 1];
        const int steps = std::max(8, static_cast<int>(std::ceil((hi - lo) * density)));
        double xa = lo, ra = r(lo + 1e-15 * std::max(1.0, std::abs(lo)));
        for (int i = 1; i <= steps; ++i) {
            const double xb = lo + (hi - lo) * i / steps;
            const double rb = r(xb);
            if ((ra < 0.0 && rb > 0.0) || (ra > 0.0 && rb < 0.0)) {
                double a = xa, b = xb, va = ra;
                while (b - a > 1e-13) {
                    const double mid = 0.5 * (a + b), vm = r(mid);
                    if ((va < 0.0) == (vm < 0.0)) { a = mid; va = vm; }
                    else b = mid;
                }
                cuts.push_back(0.5 * (a + b));
            }
            xa = xb;
            ra = rb;
        }
        cuts.push_back(hi);
    }
    std::sort(cuts.begin(), cuts.end());

    double total = 0.0;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        const double a = cuts[i], b = cuts[i + 1];
        if (!(b > a)) continue;
        const double seg = f.integrate(a, b) -
                           (detail::trig_antiderivative(tau, b) - detail::trig_antiderivative(tau, a));
        total += std::abs(seg);
    }
    return total;
}

/// Discretized primal solve: weighted-L1 fit of tau in T_{2n-1} to f on a
/// composite-midpoint grid (uniform cells refined at f's breakpoints and at
/// the best witness's sign changes), followed by exact re-integration of the
/// residual. grid_m >= 8n cells; tol is the certification tolerance.
inline ApproxResult lp_best_approx(const PiecewisePolynomial& f, int n, int grid_m,
                                   double tol) {
    if (n < 1) throw std::invalid_argument("lp_best_approx: n must be >= 1");
    if (grid_m < 8 * n) throw std::invalid_argument("lp_best_approx: grid must have >= 8n cells");
    if (!(tol > 0.0)) throw std::invalid_argument("lp_best_approx: tol must be positive");
    detail::require_period_support(f, "lp_best_approx");

    const auto [dual, witness] = dual_lower_bound(f, n);

    // cell boundaries over one period
    std::vector<double> edges;
    edges.reserve(static_cast<std::size_t>(grid_m) + 16);
    for (int i = 0; i <= grid_m; ++i)
        edges.push_back(-0.5 + static_cast<double>(i) / grid_m);
    for (double t : f.breakpoints())
        if (t > -0.5 && t < 0.5) edges.push_back(t);
    for (double t : witness.sign_changes_in(-0.5, 0.5)) edges.push_back(t);
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end(),
                            [](double x, double y) { return y - x < 1e-13; }),
                edges.end());

    const std::size_t cells = edges.size() - 1;
    const std::size_t p = static_cast<std::size_t>(2 * n - 1);
    std::vector<double> nodes(cells), weights(cells), values(cells);
    std::vector<double> design(cells * p);
    for (std::size_t i = 0; i < cells; ++i) {
        const double x = 0.5 * (edges[i] + edges[i + 1]);
        nodes[i] = x;
        weights[i] = edges[i + 1] - edges[i];
        values[i] = f(x);
        double* row = &design[i * p];
        row[0] = 1.0;
        for (int m = 1; m < n; ++m) {
            row[2 * m - 1] = std::cos(2.0 * M_PI * m * x);
            row[2 * m] = std::sin(2.0 * M_PI * m * x);
        }
    }

    const LadResult lad = solve_weighted_lad(design, cells, p, values, weights, 1e-10);

    TrigPoly tau(n);
    tau.a0 = lad.coefficients[0];
    for (int m = 1; m < n; ++m) {
        tau.a[m - 1] = lad.coefficients[2 * m - 1];
        tau.b[m - 1] = lad.coefficients[2 * m];
    }

    ApproxResult out;
    out.n = n;
    out.approximant = tau;
    out.dual_lower = dual;
    out.witness = witness;
    out.grid_size = grid_m;
    out.m_schedule = {grid_m};
    out.grid_value = lad.objective;
    out.primal_value = exact_l1_error(f, tau);
    out.discretization_error = std::abs(out.primal_value - out.grid_value);
    out.lp_gap = lad.gap;
    out.lp_iterations = lad.iterations;
    out.lp_converged = lad.converged;
    out.gap = out.primal_value - out.dual_lower;
    out.certified = lad.converged && out.gap <= tol;
    return out;
}

/// Full pipeline for f = chi^k_{alpha/(2n)}: grid schedule doubling from 4096
/// until the gap closes or the re-integrated value stabilizes, theorem bound
/// attached. Requires 0 < alpha <= 2n/k so the spline fits in one period.
inline ApproxResult best_approx(int k, int n, double alpha, double tol) {
    if (k < 1) throw std::invalid_argument("best_approx: order must be >= 1");
    if (n < k) throw std::invalid_argument("best_approx: requires k <= n");
    if (!(tol > 0.0)) throw std::invalid_argument("best_approx: tol must be positive");
    if (!(alpha > 0.0) || alpha > 2.0 * n / k + 1e-12)
        throw std::invalid_argument(
            "best_approx: alpha must lie in (0, 2n/k]; wider B-splines do not fit in "
            "[-1/2, 1/2] (support restriction)");

    const double h = alpha / (2.0 * n);
    const PiecewisePolynomial f = bspline(k, h);

    ApproxResult best;
    std::vector<int> schedule;
    double prev_primal = std::numeric_limits<double>::infinity();
    const int m_cap = 1 << 16;
    for (int m = std::max(4096, 8 * n); m <= m_cap; m *= 2) {
        ApproxResult cur = lp_best_approx(f, n, m, tol);
        schedule.push_back(m);
        if (schedule.size() == 1 || cur.primal_value < best.primal_value) {
            const auto keep = schedule;
            best = cur;
            best.m_schedule = keep;
        }
        const double change = std::abs(cur.primal_value - prev_primal);
        prev_primal = cur.primal_value;
        if (best.gap <= tol) break;                       // certified sandwich
        if (change <= std::max(0.25 * tol, 1e-12)) break; // grid-converged
    }
    best.m_schedule = schedule;
    best.k = k;
    best.h = h;
    best.alpha = alpha;
    best.theorem_upper = theorem_bound(k, alpha);
    best.certified = best.lp_converged && best.gap <= tol;
    return best;
}

}  // namespace trigl1
