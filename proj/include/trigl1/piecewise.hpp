#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <vector>

#include "trigl1/sign_pattern.hpp"

namespace trigl1 {

namespace detail {

// Dense polynomial helpers, coefficients in ascending powers.

inline double poly_eval(const std::vector<double>& c, double x) {
    double v = 0.0;
    for (std::size_t i = c.size(); i-- > 0;) v = v * x + c[i];
    return v;
}

inline std::vector<double> poly_derivative(const std::vector<double>& c) {
    if (c.size() <= 1) return {0.0};
    std::vector<double> d(c.size() - 1);
    for (std::size_t i = 1; i < c.size(); ++i) d[i - 1] = c[i] * static_cast<double>(i);
    return d;
}

// Definite integral over [a, b] in the polynomial's own variable.
inline double poly_integral(const std::vector<double>& c, double a, double b) {
    double va = 0.0, vb = 0.0;
    for (std::size_t i = c.size(); i-- > 0;) {
        const double ci = c[i] / static_cast<double>(i + 1);
        va = va * a + ci;
        vb = vb * b + ci;
    }
    return vb * b - va * a;
}

// Rewrite p(y) as q(z) with y = z + d (Taylor shift by Horner).
inline std::vector<double> poly_shift(std::vector<double> c, double d) {
    if (d == 0.0 || c.empty()) return c;
    const std::size_t n = c.size();
    for (std::size_t i = 0; i + 1 < n; ++i)
        for (std::size_t j = n - 1; j > i; --j) c[j - 1] += d * c[j];
    return c;
}

inline void poly_trim(std::vector<double>& c) {
    while (c.size() > 1 && c.back() == 0.0) c.pop_back();
}

}  // namespace detail

/// Compactly supported piecewise polynomial: strictly increasing breakpoints
/// t_0 < ... < t_M, one coefficient list per interval in the local variable
/// (x - t_i), zero outside [t_0, t_M]. Immutable after construction.
class PiecewisePolynomial {
  public:
    PiecewisePolynomial(std::vector<double> breakpoints,
                        std::vector<std::vector<double>> pieces)
        : breakpoints_(std::move(breakpoints)), pieces_(std::move(pieces)) {
        if (pieces_.empty() || breakpoints_.size() != pieces_.size() + 1)
            throw std::invalid_argument("PiecewisePolynomial: need M+1 breakpoints for M pieces");
        for (std::size_t i = 0; i + 1 < breakpoints_.size(); ++i)
            if (!(breakpoints_[i] < breakpoints_[i + 1]))
                throw std::invalid_argument("PiecewisePolynomial: breakpoints must increase");
        for (auto& p : pieces_) {
            if (p.empty()) p = {0.0};
            for (double c : p)
                if (!std::isfinite(c))
                    throw std::invalid_argument("PiecewisePolynomial: nonfinite coefficient");
        }
        max_degree_ = 0;
        for (const auto& p : pieces_)
            max_degree_ = std::max(max_degree_, static_cast<int>(p.size()) - 1);
    }

    const std::vector<double>& breakpoints() const { return breakpoints_; }
    const std::vector<std::vector<double>>& pieces() const { return pieces_; }
    int max_degree() const { return max_degree_; }
    double support_min() const { return breakpoints_.front(); }
    double support_max() const { return breakpoints_.back(); }

    /// Value at x; right-hand piece at interior breakpoints, left piece at t_M.
    double operator()(double x) const {
        if (x < breakpoints_.front() || x > breakpoints_.back()) return 0.0;
        std::size_t i = piece_index(x);
        return detail::poly_eval(pieces_[i], x - breakpoints_[i]);
    }

    /// Exact integral over [a, b] (no periodization; zero outside support).
    double integrate(double a, double b) const {
        if (b < a) return -integrate(b, a);
        a = std::max(a, breakpoints_.front());
        b = std::min(b, breakpoints_.back());
        if (!(a < b)) return 0.0;
        double total = 0.0;
        const std::size_t i0 = piece_index(a);
        for (std::size_t i = i0; i < pieces_.size() && breakpoints_[i] < b; ++i) {
            const double lo = std::max(a, breakpoints_[i]);
            const double hi = std::min(b, breakpoints_[i + 1]);
            if (hi > lo)
                total += detail::poly_integral(pieces_[i], lo - breakpoints_[i],
                                               hi - breakpoints_[i]);
        }
        return total;
    }

    double integral() const { return integrate(support_min(), support_max()); }

  private:
    std::size_t piece_index(double x) const {
        // right-piece convention; x is inside [t_0, t_M]
        auto it = std::upper_bound(breakpoints_.begin(), breakpoints_.end(), x);
        std::size_t i = static_cast<std::size_t>(it - breakpoints_.begin());
        if (i == 0) return 0;
        if (i > pieces_.size()) return pieces_.size() - 1;  // x == t_M
        return i - 1;
    }

    std::vector<double> breakpoints_;
    std::vector<std::vector<double>> pieces_;
    int max_degree_ = 0;
};

inline double evaluate(const PiecewisePolynomial& f, double x) { return f(x); }

/// L1-normalized characteristic function of (-h/2, h/2).
inline PiecewisePolynomial chi(double h) {
    if (!(h > 0.0)) throw std::invalid_argument("chi: width must be positive");
    return PiecewisePolynomial({-h / 2.0, h / 2.0}, {{1.0 / h}});
}

inline PiecewisePolynomial differentiate(const PiecewisePolynomial& f) {
    std::vector<std::vector<double>> d;
    d.reserve(f.pieces().size());
    for (const auto& p : f.pieces()) d.push_back(detail::poly_derivative(p));
    return PiecewisePolynomial(f.breakpoints(), std::move(d));
}

/// Exact convolution of two piecewise polynomials. Output breakpoints are the
/// pairwise sums of input breakpoints (merged within 1e-12 * max(1, |t|));
/// each output piece is the closed-form integral of the polynomial product.
inline PiecewisePolynomial convolve(const PiecewisePolynomial& f,
                                    const PiecewisePolynomial& g) {
    const auto& ta = f.breakpoints();
    const auto& tb = g.breakpoints();
    std::vector<double> sums;
    sums.reserve(ta.size() * tb.size());
    for (double a : ta)
        for (double b : tb) sums.push_back(a + b);
    std::sort(sums.begin(), sums.end());
    std::vector<double> bp;
    for (double s : sums) {
        if (bp.empty() || s - bp.back() > 1e-12 * std::max(1.0, std::abs(s)))
            bp.push_back(s);
    }
    if (bp.size() < 2)
        throw std::invalid_argument("convolve: degenerate support");

    std::vector<std::vector<double>> out_pieces;
    out_pieces.reserve(bp.size() - 1);
    for (std::size_t cell = 0; cell + 1 < bp.size(); ++cell) {
        const double c0 = bp[cell];
        const double xm = 0.5 * (c0 + bp[cell + 1]);
        // (f*g)(x) = sum over piece pairs of int s^p (y-s)^q ds with
        // s = u - a_i and y = x - a_i - b_l; the limits are 0, w_i, y or
        // y - w_l depending on which endpoint is active at this cell.
        std::vector<double> acc{0.0};
        for (std::size_t i = 0; i + 1 < ta.size(); ++i) {
            const double ai = ta[i], wi = ta[i + 1] - ta[i];
            for (std::size_t l = 0; l + 1 < tb.size(); ++l) {
                const double bl = tb[l], wl = tb[l + 1] - tb[l];
                const double ym = xm - ai - bl;
                const double lo_m = std::max(0.0, ym - wl);
                const double hi_m = std::min(wi, ym);
                if (!(lo_m < hi_m)) continue;
                const bool lo_moving = ym - wl > 0.0;   // lower limit is y - w_l
                const bool hi_moving = ym < wi;          // upper limit is y
                const auto& pf = f.pieces()[i];
                const auto& pg = g.pieces()[l];
                // polynomial in y, degree <= deg f + deg g + 1
                std::vector<double> contrib(pf.size() + pg.size() + 1, 0.0);
                for (std::size_t p = 0; p < pf.size(); ++p) {
                    for (std::size_t q = 0; q < pg.size(); ++q) {
                        const double fpgq = pf[p] * pg[q];
                        if (fpgq == 0.0) continue;
                        // int s^p (y-s)^q ds = sum_r C(q,r)(-1)^r y^{q-r} s^{p+r+1}/(p+r+1)
                        double binom = 1.0;
                        for (std::size_t r = 0; r <= q; ++r) {
                            const double coef =
                                fpgq * binom * ((r % 2) ? -1.0 : 1.0) /
                                static_cast<double>(p + r + 1);
                            const std::size_t spow = p + r + 1, ypow = q - r;
                            // evaluate s^spow at the two limits as polynomials in y
                            // upper limit
                            if (hi_moving) {
                                contrib[ypow + spow] += coef;  // (y)^spow * y^ypow
                            } else {
                                double wp = 1.0;
                                for (std::size_t t = 0; t < spow; ++t) wp *= wi;
                                contrib[ypow] += coef * wp;
                            }
                            // lower limit (subtract)
                            if (lo_moving) {
                                // (y - wl)^spow expanded binomially
                                double b2 = 1.0, wpow = 1.0;
                                for (std::size_t t = 0; t <= spow; ++t) {
                                    // term C(spow,t) y^{spow-t} (-wl)^t
                                    contrib[ypow + spow - t] -= coef * b2 * wpow;
                                    wpow *= -wl;
                                    b2 = b2 * static_cast<double>(spow - t) /
                                         static_cast<double>(t + 1);
                                }
                            }
                            // lower limit 0 contributes nothing
                            binom = binom * static_cast<double>(q - r) /
                                    static_cast<double>(r + 1);
                        }
                    }
                }
                // shift from y = x - (a_i + b_l) to local xi = x - c0
                auto local = detail::poly_shift(std::move(contrib), c0 - ai - bl);
                if (acc.size() < local.size()) acc.resize(local.size(), 0.0);
                for (std::size_t t = 0; t < local.size(); ++t) acc[t] += local[t];
            }
        }
        detail::poly_trim(acc);
        out_pieces.push_back(std::move(acc));
    }
    return PiecewisePolynomial(std::move(bp), std::move(out_pieces));
}

/// Normalized B-spline chi_h^k: the (k-1)-fold self-convolution of chi_h.
inline PiecewisePolynomial bspline(int k, double h) {
    if (k < 1) throw std::invalid_argument("bspline: order must be >= 1");
    PiecewisePolynomial box = chi(h);
    PiecewisePolynomial result = box;
    for (int i = 1; i < k; ++i) result = convolve(box, result);
    return result;
}

/// Central difference: sum_{j=0}^k (-1)^j C(k,j) f(x + kh/2 - jh).
template <typename F>
double central_difference(F&& f, double h, int k, double x) {
    if (!(h > 0.0)) throw std::invalid_argument("central_difference: h must be positive");
    if (k < 1) throw std::invalid_argument("central_difference: order must be >= 1");
    double sum = 0.0, binom = 1.0;
    for (int j = 0; j <= k; ++j) {
        const double sign = (j % 2) ? -1.0 : 1.0;
        sum += sign * binom * f(x + 0.5 * k * h - j * h);
        binom = binom * static_cast<double>(k - j) / static_cast<double>(j + 1);
    }
    return sum;
}

namespace detail {

// int_0^w s^p exp(-i omega s) ds, for p = 0..pmax, via the descending-power
// recurrence; Taylor series when |omega w| is small enough to lose digits.
inline std::vector<std::complex<double>> exp_moments(int pmax, double omega, double w) {
    std::vector<std::complex<double>> mom(pmax + 1);
    if (std::abs(omega * w) < 1e-3) {
        for (int p = 0; p <= pmax; ++p) {
            // sum_t (-i omega)^t w^{p+t+1} / (t! (p+t+1))
            std::complex<double> term(0.0, 0.0);
            std::complex<double> pw(1.0, 0.0);
            double fact = 1.0;
            double wpow = w;
            for (int t = 0; t < p; ++t) wpow *= w;  // w^{p+1}
            for (int t = 0; t < 24; ++t) {
                const std::complex<double> add = pw * (wpow / (fact * (p + t + 1)));
                term += add;
                if (std::abs(add) < 1e-20 * std::max(1.0, std::abs(term))) break;
                pw *= std::complex<double>(0.0, -omega);
                fact *= (t + 1.0);
                wpow *= w;
            }
            mom[p] = term;
        }
        return mom;
    }
    const std::complex<double> iw(0.0, omega);
    const std::complex<double> ew = std::exp(std::complex<double>(0.0, -omega * w));
    mom[0] = (1.0 - ew) / iw;
    double wp = 1.0;
    for (int p = 1; p <= pmax; ++p) {
        wp *= w;
        mom[p] = (static_cast<double>(p) * mom[p - 1] - wp * ew) / iw;
    }
    return mom;
}

}  // namespace detail

/// int f(u) exp(-2 pi i m u) du, closed form per piece. Requires the support
/// to fit in one period [-1/2, 1/2].
inline std::complex<double> fourier_coefficient(const PiecewisePolynomial& f, long m) {
    constexpr double kSlack = 1e-9;
    if (f.support_min() < -0.5 - kSlack || f.support_max() > 0.5 + kSlack)
        throw std::domain_error("fourier_coefficient: support must lie within [-1/2, 1/2]");
    if (m == 0) return {f.integral(), 0.0};
    const double omega = 2.0 * M_PI * static_cast<double>(m);
    std::complex<double> total(0.0, 0.0);
    const auto& bp = f.breakpoints();
    for (std::size_t i = 0; i < f.pieces().size(); ++i) {
        const auto& c = f.pieces()[i];
        const double w = bp[i + 1] - bp[i];
        const auto mom = detail::exp_moments(static_cast<int>(c.size()) - 1, omega, w);
        std::complex<double> piece(0.0, 0.0);
        for (std::size_t p = 0; p < c.size(); ++p) piece += c[p] * mom[p];
        total += piece * std::exp(std::complex<double>(0.0, -omega * bp[i]));
    }
    return total;
}

/// Exact integral of f against a square-wave sign pattern: f's pieces are
/// split at the pattern's sign changes and integrated in closed form.
inline double integrate_against_sign(const PiecewisePolynomial& f,
                                     const SignPattern& pattern) {
    const double lo = f.support_min(), hi = f.support_max();
    std::vector<double> cuts{lo};
    for (double t : f.breakpoints())
        if (t > lo && t < hi) cuts.push_back(t);
    for (double t : pattern.sign_changes_in(lo, hi)) cuts.push_back(t);
    cuts.push_back(hi);
    std::sort(cuts.begin(), cuts.end());
    double total = 0.0;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        if (!(cuts[i + 1] > cuts[i])) continue;
        const double mid = 0.5 * (cuts[i] + cuts[i + 1]);
        total += pattern(mid) * f.integrate(cuts[i], cuts[i + 1]);
    }
    return total;
}

}  // namespace trigl1
