#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <stdexcept>
#include <vector>

namespace trigl1 {

/// Outcome of a weighted least-absolute-deviations solve.
struct LadResult {
    std::vector<double> coefficients;  // fitted parameter vector, size p
    double objective = 0.0;            // sum_i w_i |f_i - (A c)_i|
    double dual_objective = 0.0;       // box-feasible dual value; exact lower
                                       // bound when no residual ties are active
    double gap = 0.0;                  // objective - dual_objective
    int iterations = 0;
    bool converged = false;            // edge-descent optimality reached
};

namespace detail {

// Dense LU with partial pivoting. p is tiny here (2n-1 coefficients).
class SquareLu {
  public:
    SquareLu(std::vector<double> a, std::size_t p) : a_(std::move(a)), p_(p), piv_(p) {
        for (std::size_t i = 0; i < p_; ++i) piv_[i] = i;
        for (std::size_t col = 0; col < p_; ++col) {
            std::size_t best = col;
            for (std::size_t r = col + 1; r < p_; ++r)
                if (std::abs(at(r, col)) > std::abs(at(best, col))) best = r;
            if (best != col) {
                for (std::size_t c = 0; c < p_; ++c) std::swap(at(col, c), at(best, c));
                std::swap(piv_[col], piv_[best]);
            }
            const double d = at(col, col);
            if (!(std::abs(d) > 1e-250)) { singular_ = true; return; }
            for (std::size_t r = col + 1; r < p_; ++r) {
                const double m = at(r, col) / d;
                at(r, col) = m;
                for (std::size_t c = col + 1; c < p_; ++c) at(r, c) -= m * at(col, c);
            }
        }
    }

    bool singular() const { return singular_; }

    // A x = b
    void solve(const double* b, double* x) const {
        for (std::size_t i = 0; i < p_; ++i) x[i] = b[piv_[i]];
        for (std::size_t i = 1; i < p_; ++i)
            for (std::size_t j = 0; j < i; ++j) x[i] -= at(i, j) * x[j];
        for (std::size_t i = p_; i-- > 0;) {
            for (std::size_t j = i + 1; j < p_; ++j) x[i] -= at(i, j) * x[j];
            x[i] /= at(i, i);
        }
    }

    // A^T x = b
    void solve_transposed(const double* b, double* x) const {
        std::vector<double> y(b, b + p_);
        for (std::size_t i = 0; i < p_; ++i) {
            for (std::size_t j = 0; j < i; ++j) y[i] -= at(j, i) * y[j];
            y[i] /= at(i, i);
        }
        for (std::size_t i = p_; i-- > 0;)
            for (std::size_t j = i + 1; j < p_; ++j) y[i] -= at(j, i) * y[j];
        for (std::size_t i = 0; i < p_; ++i) x[piv_[i]] = y[i];
    }

  private:
    double& at(std::size_t r, std::size_t c) { return a_[r * p_ + c]; }
    const double& at(std::size_t r, std::size_t c) const { return a_[r * p_ + c]; }
    std::vector<double> a_;
    std::size_t p_;
    std::vector<std::size_t> piv_;
    bool singular_ = false;
};

}  // namespace detail

/// Weighted L1 regression  min_c sum_i w_i |f_i - (A c)_i|  by the classical
/// interpolation-exchange simplex. The iterate interpolates p rows S
/// (A_S c = f_S); the vertex is optimal iff all 2p edge directional
/// derivatives are nonnegative,
///     V'(0+; s, sigma) = w_s - |psi_s| + Z_s >= 0,
/// where psi = A_S^{-T} v, v = sum over off-S rows with nonzero residual of
/// w_i sign(r_i) a_i, and Z_s collects the immediate kink contribution
/// w_i |a_i . d_s| of off-S rows whose residual is zero (active ties).
/// Otherwise the steepest edge is followed with an exact piecewise-linear
/// line search and the blocking row replaces s. A is row-major N x p.
inline LadResult solve_weighted_lad(const std::vector<double>& a_rowmajor,
                                    std::size_t n_rows, std::size_t p,
                                    const std::vector<double>& f,
                                    const std::vector<double>& w,
                                    double rel_tol = 1e-10,
                                    int max_iterations = 0) {
    if (p == 0 || n_rows < p) throw std::invalid_argument("solve_weighted_lad: bad shape");
    if (a_rowmajor.size() != n_rows * p || f.size() != n_rows || w.size() != n_rows)
        throw std::invalid_argument("solve_weighted_lad: size mismatch");
    if (max_iterations <= 0) max_iterations = 200 + 80 * static_cast<int>(p);

    const auto row = [&](std::size_t i) { return &a_rowmajor[i * p]; };
    double fscale = 1.0;
    for (double v : f) fscale = std::max(fscale, std::abs(v));
    const double ztol = 1e-11 * fscale;

    // initial interpolation set: greedy max-volume rows (modified Gram-Schmidt)
    std::vector<std::size_t> s_set;
    {
        std::vector<double> q, tmp(p), best_vec(p);
        std::vector<char> used(n_rows, 0);
        for (std::size_t pick = 0; pick < p; ++pick) {
            double best_norm = -1.0;
            std::size_t best = 0;
            for (std::size_t i = 0; i < n_rows; ++i) {
                if (used[i]) continue;
                for (std::size_t j = 0; j < p; ++j) tmp[j] = row(i)[j];
                for (std::size_t k = 0; k < pick; ++k) {
                    double dot = 0.0;
                    for (std::size_t j = 0; j < p; ++j) dot += tmp[j] * q[k * p + j];
                    for (std::size_t j = 0; j < p; ++j) tmp[j] -= dot * q[k * p + j];
                }
                double nrm = 0.0;
                for (std::size_t j = 0; j < p; ++j) nrm += tmp[j] * tmp[j];
                if (nrm > best_norm) { best_norm = nrm; best = i; best_vec = tmp; }
            }
            if (best_norm <= 1e-24)
                throw std::runtime_error("solve_weighted_lad: rank-deficient design");
            const double inv = 1.0 / std::sqrt(best_norm);
            for (std::size_t j = 0; j < p; ++j) q.push_back(best_vec[j] * inv);
            used[best] = 1;
            s_set.push_back(best);
        }
    }

    std::vector<char> in_s(n_rows, 0);
    for (std::size_t i : s_set) in_s[i] = 1;

    std::vector<double> c(p, 0.0), r(n_rows, 0.0), psi(p), phi_s(p, 0.0), d(p), e(p);
    std::vector<double> best_c;
    double best_obj = std::numeric_limits<double>::infinity();
    double objective = 0.0;
    bool optimal = false;
    int iters = 0, stall_streak = 0;

    struct Crossing { double t; std::size_t row; double gain; };
    std::vector<Crossing> crossings;
    std::vector<std::size_t> zero_rows;

    while (iters < max_iterations) {
        ++iters;
        std::vector<double> asq(p * p), fs(p);
        for (std::size_t j = 0; j < p; ++j) {
            fs[j] = f[s_set[j]];
            for (std::size_t m = 0; m < p; ++m) asq[j * p + m] = row(s_set[j])[m];
        }
        detail::SquareLu lu(std::move(asq), p);
        if (lu.singular())
            throw std::runtime_error("solve_weighted_lad: singular interpolation set");
        lu.solve(fs.data(), c.data());

        objective = 0.0;
        std::vector<double> v(p, 0.0);
        zero_rows.clear();
        for (std::size_t i = 0; i < n_rows; ++i) {
            if (in_s[i]) { r[i] = 0.0; continue; }
            double fit = 0.0;
            const double* ai = row(i);
            for (std::size_t j = 0; j < p; ++j) fit += ai[j] * c[j];
            r[i] = f[i] - fit;
            objective += w[i] * std::abs(r[i]);
            if (std::abs(r[i]) <= ztol) {
                zero_rows.push_back(i);
                continue;
            }
            const double s = (r[i] > 0.0) ? 1.0 : -1.0;
            for (std::size_t j = 0; j < p; ++j) v[j] += w[i] * s * ai[j];
        }
        if (objective < best_obj) { best_obj = objective; best_c = c; }

        lu.solve_transposed(v.data(), psi.data());
        for (std::size_t j = 0; j < p; ++j) phi_s[j] = -psi[j] / w[s_set[j]];

        // tie corrections Z_s: one transposed solve per active zero row
        std::vector<double> z(p, 0.0);
        if (!zero_rows.empty()) {
            std::vector<double> u(p);
            for (std::size_t i : zero_rows) {
                lu.solve_transposed(row(i), u.data());
                for (std::size_t j = 0; j < p; ++j) z[j] += w[i] * std::abs(u[j]);
            }
        }

        // steepest violated edge; Bland-style smallest index after stalls
        const double eps_opt = 1e-12 * (1.0 + objective);
        const bool bland = stall_streak > 50;
        std::size_t worst = p;
        double worst_val = -eps_opt;
        for (std::size_t j = 0; j < p; ++j) {
            const double vprime = w[s_set[j]] - std::abs(psi[j]) + z[j];
            if (vprime >= -eps_opt) continue;
            const bool better = bland ? (worst == p || s_set[j] < s_set[worst])
                                      : (vprime < worst_val);
            if (better) { worst_val = vprime; worst = j; }
        }
        if (worst == p) { optimal = true; break; }
        const double sigma = (psi[worst] > 0.0) ? 1.0 : -1.0;
        // a_worst . d = sigma reduces the objective at rate w_s - |psi_s| + Z_s
        std::fill(e.begin(), e.end(), 0.0);
        e[worst] = sigma;
        lu.solve(e.data(), d.data());

        double slope = w[s_set[worst]];
        crossings.clear();
        for (std::size_t i = 0; i < n_rows; ++i) {
            if (in_s[i]) continue;
            double g = 0.0;
            const double* ai = row(i);
            for (std::size_t j = 0; j < p; ++j) g += ai[j] * d[j];
            if (std::abs(g) < 1e-14) continue;
            const double gain = 2.0 * w[i] * std::abs(g);
            if (std::abs(r[i]) <= ztol) {
                slope += 0.5 * gain;  // active tie ascends immediately
                crossings.push_back({0.0, i, 0.0});
                continue;
            }
            const double t = r[i] / g;
            if (t > 0.0) {
                slope -= 0.5 * gain;
                crossings.push_back({t, i, gain});
            } else {
                slope += 0.5 * gain;
            }
        }
        std::sort(crossings.begin(), crossings.end(), [](const Crossing& x, const Crossing& y) {
            return x.t < y.t || (x.t == y.t && x.row < y.row);
        });

        std::size_t enter = n_rows;
        double step = 0.0;
        if (slope >= 0.0) {
            for (const auto& cr : crossings)
                if (cr.t == 0.0) { enter = cr.row; break; }
        } else {
            for (const auto& cr : crossings) {
                if (cr.t == 0.0) continue;
                slope += cr.gain;
                if (slope >= -1e-15) { enter = cr.row; step = cr.t; break; }
            }
        }
        if (enter == n_rows) { optimal = true; break; }  // numerically flat
        stall_streak = (step <= ztol) ? stall_streak + 1 : 0;

        in_s[s_set[worst]] = 0;
        in_s[enter] = 1;
        s_set[worst] = enter;
    }

    LadResult res;
    res.coefficients = optimal || best_c.empty() ? c : best_c;
    res.iterations = iters;
    double primal = 0.0, dual = 0.0;
    for (std::size_t i = 0; i < n_rows; ++i) {
        double fit = 0.0;
        for (std::size_t j = 0; j < p; ++j) fit += a_rowmajor[i * p + j] * res.coefficients[j];
        const double resid = f[i] - fit;
        primal += w[i] * std::abs(resid);
        double phi = 0.0;
        if (in_s[i]) {
            std::size_t j = 0;
            while (s_set[j] != i) ++j;
            phi = std::clamp(phi_s[j], -1.0, 1.0);
        } else if (std::abs(resid) > ztol) {
            phi = (resid > 0.0) ? 1.0 : -1.0;
        }
        dual += w[i] * f[i] * phi;
    }
    res.objective = primal;
    res.dual_objective = dual;
    res.gap = primal - dual;
    res.converged = optimal;
    (void)rel_tol;
    return res;
}

}  // namespace trigl1
