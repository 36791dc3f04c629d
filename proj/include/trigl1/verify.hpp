#pragma once

#include <chrono>
#include <cmath>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "trigl1/constants.hpp"
#include "trigl1/euler.hpp"
#include "trigl1/l1approx.hpp"
#include "trigl1/report.hpp"
#include "trigl1/sweep.hpp"

namespace trigl1 {

namespace detail {

inline std::string case_id(const char* what, int n, int k, double alpha) {
    std::ostringstream os;
    os << what << " n=" << n << " k=" << k << " alpha=" << alpha;
    return os.str();
}

// j such that alpha = 2j+1 within rounding, or -1.
inline int sharp_index(double alpha) {
    const double j = (alpha - 1.0) / 2.0;
    const double r = std::round(j);
    if (r >= 0.0 && std::abs(j - r) < 1e-9) return static_cast<int>(r);
    return -1;
}

// sup of |t| on the uniform grid over one period, by per-harmonic rotation
// recurrences (drift ~ grid * eps, far below the tolerances used here).
inline double grid_sup_abs(const TrigPoly& t, int grid) {
    std::vector<double> vals(static_cast<std::size_t>(grid), t.a0);
    for (std::size_t m = 1; m < t.a.size() + 1; ++m) {
        const double am = t.a[m - 1], bm = t.b[m - 1];
        if (am == 0.0 && bm == 0.0) continue;
        const double dphi = 2.0 * M_PI * static_cast<double>(m) / grid;
        const double cd = std::cos(dphi), sd = std::sin(dphi);
        double c = 1.0, s = 0.0;
        for (int i = 0; i < grid; ++i) {
            vals[static_cast<std::size_t>(i)] += am * c + bm * s;
            const double cn = c * cd - s * sd;
            s = s * cd + c * sd;
            c = cn;
        }
    }
    double sup = 0.0;
    for (double v : vals) sup = std::max(sup, std::abs(v));
    return sup;
}

}  // namespace detail

/// Theorem sweep: primal <= min(1, F_k/alpha^k) + slack everywhere, and the
/// sharpness sandwich at alpha = 2j+1 with j <= (2n-k)/(2k). Solver failures
/// are recorded as failing cases rather than thrown.
inline VerificationReport verify_theorem(const SweepSpec& spec, int jobs = 1) {
    const auto t0 = std::chrono::steady_clock::now();
    VerificationReport report;
    report.suite = "theorem";
    std::vector<SweepCase> skipped;
    const auto rows = run_sweep(spec, jobs, &skipped);
    for (const auto& row : rows) {
        const auto [n, k, alpha] = row.spec;
        if (!row.solved) {
            report.add_flag(detail::case_id("solve", n, k, alpha) + " [" + row.error + "]",
                            false);
            continue;
        }
        const ApproxResult& r = row.result;
        const double slack = 10.0 * spec.tol + r.discretization_error;
        report.add_upper(detail::case_id("bound", n, k, alpha), r.theorem_upper,
                         r.primal_value, slack);
        const int j = detail::sharp_index(alpha);
        if (j >= 0 && 2 * k * j <= 2 * n - k) {
            const double sharp = bound_constant(k).value / detail::ipow(2.0 * j + 1.0, k);
            report.add(detail::case_id("sharp dual", n, k, alpha), sharp, r.dual_lower, 1e-10);
            report.add(detail::case_id("sharp bound", n, k, alpha), sharp, r.theorem_upper,
                       1e-12);
            report.add(detail::case_id("sharp primal", n, k, alpha), sharp, r.primal_value,
                       slack + 1e-6);
        }
    }
    for (const auto& s : skipped)
        report.add_flag(detail::case_id("skipped (out of range)", s.n, s.k, s.alpha), true);
    report.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return report;
}

/// Property suites of all modules: Favard chain and closed forms, the
/// difference identity and inequality (1) on random trigonometric
/// polynomials, witness orthogonality, B-spline structure, and every Euler
/// spline property the proof uses. tol scales the difference-identity check.
inline VerificationReport verify_identities(double tol = 1e-9,
                                            std::uint64_t seed = 20240901u) {
    if (!(tol > 0.0)) throw std::invalid_argument("verify_identities: tol must be positive");
    const auto t0 = std::chrono::steady_clock::now();
    VerificationReport report;
    report.suite = "identities";

    // Favard constants: closed forms, interleaving chain, bound constants
    report.add("K_0 = 1", 1.0, favard_constant(0, 1e-13).value, 1e-12);
    report.add("K_1 = pi/2", M_PI / 2, favard_constant(1, 1e-13).value, 1e-12);
    report.add("K_2 = pi^2/8", M_PI * M_PI / 8, favard_constant(2, 1e-13).value, 1e-12);
    report.add("K_3 = pi^3/24", std::pow(M_PI, 3) / 24, favard_constant(3, 1e-13).value, 1e-12);
    {
        bool chain = true;
        const double lim = 4.0 / M_PI;
        std::vector<FavardConstant> ks;
        for (int k = 0; k <= 12; ++k) ks.push_back(favard_constant(k, 1e-14));
        for (int k = 0; k <= 12; ++k) {
            const double m = ks[k].abs_error_bound;
            chain = chain && (k % 2 == 0 ? ks[k].value < lim - m : ks[k].value > lim + m);
            if (k + 2 <= 12)
                chain = chain && (k % 2 == 0 ? ks[k].value < ks[k + 2].value - 2 * m
                                             : ks[k].value > ks[k + 2].value + 2 * m);
        }
        report.add_flag("Favard interleaving chain k <= 12", chain);
    }
    report.add("F_1 = 1", 1.0, bound_constant(1).value, 1e-12);
    report.add("F_2 = 1/2", 0.5, bound_constant(2).value, 1e-12);
    report.add("F_3 = 1/3", 1.0 / 3.0, bound_constant(3).value, 1e-12);

    // difference identity and inequality (1) on 100 random samples
    {
        std::mt19937_64 rng(seed);
        std::uniform_real_distribution<double> uc(-1.0, 1.0), uh(0.05, 0.5), ux(-1.0, 1.0);
        double worst_identity = 0.0;
        bool inequality = true;
        const int grid = 10000;
        for (int rep = 0; rep < 100; ++rep) {
            const int n = 2 + static_cast<int>(rng() % 7);
            const int k = 1 + static_cast<int>(rng() % 4);
            TrigPoly t(n);
            t.a0 = uc(rng);
            for (auto& c : t.a) c = uc(rng);
            for (auto& c : t.b) c = uc(rng);
            const double h = uh(rng), x = ux(rng);
            const TrigPoly smoothed = convolve_trig(t, k, h);
            const double lhs = smoothed.derivative(k)(x);
            const double rhs =
                central_difference([&](double u) { return t(u); }, h, k, x) / detail::ipow(h, k);
            worst_identity = std::max(
                worst_identity,
                std::abs(lhs - rhs) / std::max({1.0, std::abs(lhs), std::abs(rhs)}));
            const double sup = detail::grid_sup_abs(t, grid);
            const double dsup = detail::grid_sup_abs(smoothed.derivative(k), grid);
            inequality = inequality && dsup <= detail::ipow(2.0 / h, k) * sup + 1e-6 * sup;
        }
        report.add_upper("difference identity, worst relative residual (100 samples)", 0.0,
                         worst_identity, tol);
        report.add_flag("inequality (1) with slack 1e-6 (100 samples)", inequality);
    }

    // witness orthogonality below the space frequency
    {
        bool ortho = true;
        for (int n : {1, 2, 3, 5, 8})
            for (double theta : {0.0, 1.0 / (4.0 * n), 1.0 / (2.0 * n), 3.0 / (4.0 * n)})
                ortho = ortho && orthogonality_check(SignPattern(n, theta, 1), n, 1e-12);
        report.add_flag("witness patterns orthogonal to T_{2n-1} within 1e-12", ortho);
    }

    // B-spline structure: support, normalization, interior smoothness
    {
        bool support = true, normal = true, smooth = true;
        for (int k = 1; k <= 6; ++k) {
            for (double h : {0.25, 1.0 / 3.0, 0.5}) {
                const auto b = bspline(k, h);
                support = support && std::abs(b.support_min() + k * h / 2) < 1e-12 &&
                          std::abs(b.support_max() - k * h / 2) < 1e-12;
                normal = normal && std::abs(fourier_coefficient(b, 0).real() - 1.0) < 1e-14;
                if (k >= 2) {
                    auto d = b;
                    for (int t2 = 0; t2 < k - 2; ++t2) d = differentiate(d);
                    const auto& bp = d.breakpoints();
                    for (std::size_t i = 1; i + 1 < bp.size(); ++i) {
                        const double left =
                            detail::poly_eval(d.pieces()[i - 1], bp[i] - bp[i - 1]);
                        const double right = detail::poly_eval(d.pieces()[i], 0.0);
                        smooth = smooth &&
                                 std::abs(left - right) < 1e-10 * std::max(1.0, std::abs(left));
                    }
                }
            }
        }
        report.add_flag("B-spline support |supp| = kh, symmetric", support);
        report.add_flag("B-spline normalization (zeroth Fourier coefficient 1)", normal);
        report.add_flag("B-spline C^{k-2} smoothness at interior knots", smooth);
    }

    // Euler spline properties
    {
        bool at_integers = true;
        for (int k : {1, 2, 3, 4, 5}) {
            const auto e = euler_spline(k, 1e-9);
            for (int nu = -3; nu <= 3; ++nu)
                at_integers =
                    at_integers && std::abs(e(nu) - ((nu % 2 == 0) ? 1.0 : -1.0)) < 1e-12;
        }
        report.add_flag("E_k(nu) = (-1)^nu at integers", at_integers);

        double worst_mean = 0.0;
        for (int k : {0, 1, 2, 3}) {
            const auto e = euler_spline(k, 1e-8);
            for (double x : {0.0, 0.37, -0.61, 1.24})
                worst_mean = std::max(worst_mean, std::abs(e.integrate(x - 1.0, x + 1.0)));
        }
        report.add_upper("zero mean over double period", 0.0, worst_mean, 1e-10);

        report.add_upper("relation (7) residual, j=1", 0.0, derivative_relation_residual(1, 16),
                         1e-5);
        report.add_upper("relation (7) residual, j=2", 0.0, derivative_relation_residual(2, 16),
                         1e-5);
        report.add_upper("relation (7) residual, j=3", 0.0, derivative_relation_residual(3, 16),
                         1e-5);

        for (int k : {2, 4, 6}) {
            const double expect = detail::ipow(2.0, k) * ((k / 2 % 2 == 0) ? 1.0 : -1.0);
            std::ostringstream id;
            id << "Delta^" << k << "_{2j+1} E_" << k << "(0) = " << expect;
            report.add(id.str(), expect, euler_central_difference(k, 1, 0.0), 1e-8);
        }

        bool favard_link = true;
        for (int k = 1; k <= 6; ++k) {
            const double lhs = detail::euler_denominator_full(k, std::size_t{1} << 14);
            const double rhs = M_PI / 4.0 * favard_constant(k, 1e-14).value;
            favard_link = favard_link && std::abs(lhs - rhs) < 1e-12;
        }
        report.add_flag("normalization denominator = (pi/4) K_k within 1e-12", favard_link);

        bool even_relation = true;
        const std::size_t terms[] = {0, 0, std::size_t{1} << 21, 0, std::size_t{1} << 12,
                                     0, std::size_t{1} << 10};
        for (int k : {2, 4, 6}) {
            const EulerSpline e(k, terms[k]);
            const double kk = favard_constant(k, 1e-14).value;
            const double sgn = (k / 2 % 2 == 0) ? 1.0 : -1.0;
            for (std::size_t m = 0; m < 32; ++m) {
                const double lhs =
                    e.coefficients()[m] * detail::ipow((2.0 * m + 1.0) * M_PI, k) * sgn;
                const double rhs = detail::ipow(M_PI, k) / kk * sgn * (4.0 / M_PI) *
                                   ((m % 2) ? -1.0 : 1.0) / (2.0 * m + 1.0);
                even_relation = even_relation && std::abs(lhs - rhs) < 1e-12 * std::max(1.0, std::abs(rhs));
            }
        }
        report.add_flag("D^k E_k reproduces (pi^k/K_k)(-1)^{k/2} E_0 termwise", even_relation);
    }

    report.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return report;
}

}  // namespace trigl1
