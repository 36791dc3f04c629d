#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <tuple>
#include <vector>

#include <json.hpp>

#include "trigl1/l1approx.hpp"
#include "trigl1/serialize.hpp"

namespace trigl1 {

enum class OutputFormat { Csv, Json, Svg };

struct SweepSpec {
    std::vector<int> ns;
    std::vector<int> ks;
    std::vector<double> alphas;
    double tol = 1e-6;
    int grid_m = 0;  // 0: adaptive schedule via best_approx
    OutputFormat format = OutputFormat::Csv;
};

struct SweepCase {
    int n = 0, k = 0;
    double alpha = 0.0;
};

struct SweepOutcome {
    SweepCase spec;
    ApproxResult result;
    bool solved = false;
    std::string error;
};

/// Admissible cases (k <= n, 0 < alpha <= 2n/k); the rest land in `skipped`.
inline std::vector<SweepCase> filter_cases(const SweepSpec& spec,
                                           std::vector<SweepCase>* skipped = nullptr) {
    std::vector<SweepCase> cases;
    for (int n : spec.ns)
        for (int k : spec.ks)
            for (double a : spec.alphas) {
                const bool ok = n >= 1 && k >= 1 && k <= n && a > 0.0 &&
                                a <= 2.0 * n / k + 1e-12;
                if (ok) cases.push_back({n, k, a});
                else if (skipped) skipped->push_back({n, k, a});
            }
    std::sort(cases.begin(), cases.end(), [](const SweepCase& x, const SweepCase& y) {
        return std::tie(x.n, x.k, x.alpha) < std::tie(y.n, y.k, y.alpha);
    });
    return cases;
}

/// Run every admissible case, `jobs` at a time; results sorted by (n, k, alpha).
inline std::vector<SweepOutcome> run_sweep(const SweepSpec& spec, int jobs = 1,
                                           std::vector<SweepCase>* skipped = nullptr) {
    const std::vector<SweepCase> cases = filter_cases(spec, skipped);
    std::vector<SweepOutcome> out(cases.size());
    std::atomic<std::size_t> next{0};
    const auto worker = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= cases.size()) return;
            out[i].spec = cases[i];
            try {
                if (spec.grid_m > 0) {
                    const double h = cases[i].alpha / (2.0 * cases[i].n);
                    out[i].result = lp_best_approx(bspline(cases[i].k, h), cases[i].n,
                                                   spec.grid_m, spec.tol);
                    out[i].result.k = cases[i].k;
                    out[i].result.h = h;
                    out[i].result.alpha = cases[i].alpha;
                    out[i].result.theorem_upper = theorem_bound(cases[i].k, cases[i].alpha);
                } else {
                    out[i].result =
                        best_approx(cases[i].k, cases[i].n, cases[i].alpha, spec.tol);
                }
                out[i].solved = true;
            } catch (const std::exception& ex) {
                out[i].error = ex.what();
            }
        }
    };
    jobs = std::max(1, jobs);
    if (jobs == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < jobs; ++t) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }
    return out;
}

inline std::string sweep_csv(const std::vector<SweepOutcome>& rows) {
    std::ostringstream os;
    os << "n,k,alpha,primal,dual,bound,gap,certified\n";
    char buf[320];
    for (const auto& row : rows) {
        if (!row.solved) continue;
        const auto& r = row.result;
        std::snprintf(buf, sizeof buf, "%d,%d,%.12g,%.12g,%.12g,%.12g,%.12g,%d\n", r.n, r.k,
                      r.alpha, r.primal_value, r.dual_lower, r.theorem_upper, r.gap,
                      r.certified ? 1 : 0);
        os << buf;
    }
    return os.str();
}

inline nlohmann::json sweep_json(const std::vector<SweepOutcome>& rows) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& row : rows) {
        if (row.solved) arr.push_back(to_json(row.result));
        else arr.push_back({{"n", row.spec.n}, {"k", row.spec.k}, {"alpha", row.spec.alpha},
                            {"error", row.error}});
    }
    return arr;
}

/// Minimal self-contained SVG: primal values per order k as solid polylines,
/// the theorem bound min(1, F_k/alpha^k) as dashed curves.
inline std::string sweep_svg(const std::vector<SweepOutcome>& rows) {
    constexpr int width = 860, height = 560;
    constexpr double ml = 70, mr = 20, mt = 30, mb = 55;
    double amin = 1e300, amax = -1e300, vmax = 0.0;
    std::vector<int> orders;
    for (const auto& row : rows) {
        if (!row.solved) continue;
        amin = std::min(amin, row.result.alpha);
        amax = std::max(amax, row.result.alpha);
        vmax = std::max({vmax, row.result.primal_value, row.result.theorem_upper});
        if (std::find(orders.begin(), orders.end(), row.result.k) == orders.end())
            orders.push_back(row.result.k);
    }
    if (orders.empty()) throw std::invalid_argument("sweep_svg: no solved cases");
    std::sort(orders.begin(), orders.end());
    if (!(amax > amin)) { amax = amin + 1.0; }
    vmax = std::min(std::max(vmax * 1.05, 1e-6), 2.0);
    const auto px = [&](double a) { return ml + (a - amin) / (amax - amin) * (width - ml - mr); };
    const auto py = [&](double v) { return height - mb - v / vmax * (height - mt - mb); };
    const char* palette[] = {"#1f6fb2", "#c23b22", "#2e8540", "#8031a7", "#b58900", "#3c7a89"};

    std::ostringstream os;
    os << "<svg xmlns='http://www.w3.org/2000/svg' width='" << width << "' height='" << height
       << "' viewBox='0 0 " << width << ' ' << height << "'>\n"
       << "<rect width='100%' height='100%' fill='white'/>\n";
    // axes and ticks
    os << "<line x1='" << ml << "' y1='" << height - mb << "' x2='" << width - mr << "' y2='"
       << height - mb << "' stroke='black'/>\n"
       << "<line x1='" << ml << "' y1='" << mt << "' x2='" << ml << "' y2='" << height - mb
       << "' stroke='black'/>\n";
    char buf[256];
    for (int t = 0; t <= 5; ++t) {
        const double a = amin + (amax - amin) * t / 5.0, x = px(a);
        std::snprintf(buf, sizeof buf,
                      "<line x1='%.1f' y1='%d' x2='%.1f' y2='%d' stroke='black'/>"
                      "<text x='%.1f' y='%d' font-size='12' text-anchor='middle'>%.3g</text>\n",
                      x, height - (int)mb, x, height - (int)mb + 5, x, height - (int)mb + 20, a);
        os << buf;
        const double v = vmax * t / 5.0, y = py(v);
        std::snprintf(buf, sizeof buf,
                      "<line x1='%d' y1='%.1f' x2='%d' y2='%.1f' stroke='black'/>"
                      "<text x='%d' y='%.1f' font-size='12' text-anchor='end'>%.3g</text>\n",
                      (int)ml - 5, y, (int)ml, y, (int)ml - 8, y + 4, v);
        os << buf;
    }
    os << "<text x='" << (ml + width - mr) / 2 << "' y='" << height - 12
       << "' font-size='14' text-anchor='middle'>alpha</text>\n"
       << "<text x='18' y='" << (mt + height - mb) / 2
       << "' font-size='14' text-anchor='middle' transform='rotate(-90 18 "
       << (mt + height - mb) / 2 << ")'>E_n error</text>\n";
    // series
    for (std::size_t ki = 0; ki < orders.size(); ++ki) {
        const int k = orders[ki];
        const char* color = palette[ki % 6];
        std::ostringstream primal, bound;
        for (const auto& row : rows) {
            if (!row.solved || row.result.k != k) continue;
            primal << px(row.result.alpha) << ',' << py(std::min(row.result.primal_value, vmax))
                   << ' ';
            bound << px(row.result.alpha) << ',' << py(std::min(row.result.theorem_upper, vmax))
                  << ' ';
        }
        os << "<polyline fill='none' stroke='" << color << "' stroke-width='1.8' points='"
           << primal.str() << "'/>\n"
           << "<polyline fill='none' stroke='" << color
           << "' stroke-width='1.2' stroke-dasharray='6 4' points='" << bound.str() << "'/>\n";
        std::snprintf(buf, sizeof buf,
                      "<text x='%d' y='%.1f' font-size='13' fill='%s'>k=%d</text>\n",
                      width - (int)mr - 70, mt + 18.0 * (ki + 1), color, k);
        os << buf;
    }
    os << "</svg>\n";
    return os.str();
}

inline void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    out << content;
    if (!out) throw std::runtime_error("write failed: " + path);
}

/// Table/plot emission per the requested format; rows must be nonempty.
inline void emit_table(const SweepSpec& spec, const std::vector<SweepOutcome>& rows,
                       const std::string& path) {
    if (rows.empty()) throw std::invalid_argument("emit_table: no results");
    switch (spec.format) {
        case OutputFormat::Csv: write_file(path, sweep_csv(rows)); break;
        case OutputFormat::Json: write_file(path, sweep_json(rows).dump(2) + "\n"); break;
        case OutputFormat::Svg: write_file(path, sweep_svg(rows)); break;
    }
}

/// Smallest alpha with a nontrivial approximation, located by bisection on
/// primal < 1 - 10 * solver_tol. Probes run at solver tolerance 1e-6, so the
/// threshold sits at 1 - 1e-5; the returned bracket midpoint is within tol.
/// When even alpha = 2n/k stays trivial the right endpoint is returned and
/// *no_transition is set.
inline double find_critical_alpha(int k, int n, double tol, bool* no_transition = nullptr) {
    if (k < 1 || k > n) throw std::invalid_argument("find_critical_alpha: need 1 <= k <= n");
    if (!(tol > 0.0)) throw std::invalid_argument("find_critical_alpha: tol must be positive");
    if (no_transition) *no_transition = false;
    constexpr double solver_tol = 1e-6;
    const double threshold = 1.0 - 10.0 * solver_tol;
    const auto nontrivial = [&](double a) {
        return best_approx(k, n, a, solver_tol).primal_value < threshold;
    };
    double hi = 2.0 * n / k;
    if (!nontrivial(hi)) {
        if (no_transition) *no_transition = true;
        return hi;
    }
    double lo = std::min(0.1, hi / 2.0);
    while (lo > 1e-4 && nontrivial(lo)) lo *= 0.5;  // defensive; 0.1 is already trivial
    while (hi - lo > tol) {
        const double mid = 0.5 * (lo + hi);
        (nontrivial(mid) ? hi : lo) = mid;
    }
    return 0.5 * (lo + hi);
}

}  // namespace trigl1
