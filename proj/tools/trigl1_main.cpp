// trigl1: best L1 approximation of B-splines by trigonometric polynomials,
// with mechanical verification of the sharp bound E_n(chi_h^k)_1 <= F_k/alpha^k.

#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "trigl1/constants.hpp"
#include "trigl1/euler.hpp"
#include "trigl1/l1approx.hpp"
#include "trigl1/serialize.hpp"
#include "trigl1/sweep.hpp"
#include "trigl1/verify.hpp"

namespace {

std::vector<double> parse_alphas(const std::string& text) {
    std::vector<double> out;
    if (text.find(':') != std::string::npos) {
        double start = 0, stop = 0, step = 0;
        if (std::sscanf(text.c_str(), "%lf:%lf:%lf", &start, &stop, &step) != 3 || step <= 0)
            throw CLI::ValidationError("--alphas", "expected START:STOP:STEP with STEP > 0");
        for (double a = start; a <= stop + 1e-12; a += step) out.push_back(a);
    } else {
        std::string item;
        std::istringstream is(text);
        while (std::getline(is, item, ',')) out.push_back(std::stod(item));
    }
    if (out.empty()) throw CLI::ValidationError("--alphas", "empty list");
    return out;
}

void print_report(const trigl1::VerificationReport& r) {
    for (const auto& c : r.cases)
        std::printf("[%s] %s (expected %.12g, actual %.12g, tol %.3g)\n",
                    c.pass ? "PASS" : "FAIL", c.id.c_str(), c.expected, c.actual, c.tolerance);
    std::printf("suite %s: %s (%zu cases, %.2fs)\n", r.suite.c_str(),
                r.overall_pass() ? "PASS" : "FAIL", r.cases.size(), r.seconds);
}

int run_constants(int kmax, const std::string& format) {
    if (format == "json") {
        nlohmann::json arr = nlohmann::json::array();
        for (int k = 0; k <= kmax; ++k) {
            const auto c = trigl1::favard_constant(k, 1e-14);
            nlohmann::json row{{"k", k},
                               {"K", c.value},
                               {"abs_error_bound", c.abs_error_bound},
                               {"at_limit", c.at_limit}};
            if (k >= 1) row["F"] = trigl1::bound_constant(k).value;
            arr.push_back(row);
        }
        std::printf("%s\n", arr.dump(2).c_str());
    } else {
        std::printf("k,K,abs_error_bound,F\n");
        for (int k = 0; k <= kmax; ++k) {
            const auto c = trigl1::favard_constant(k, 1e-14);
            if (k >= 1)
                std::printf("%d,%.16g,%.3g,%.16g\n", k, c.value, c.abs_error_bound,
                            trigl1::bound_constant(k).value);
            else
                std::printf("%d,%.16g,%.3g,\n", k, c.value, c.abs_error_bound);
        }
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"best L1 approximation of B-splines by trigonometric polynomials"};
    app.require_subcommand(1);

    // constants
    auto* c_cmd = app.add_subcommand("constants", "Favard constants K_k and bound constants F_k");
    int c_kmax = 12;
    std::string c_format = "csv";
    c_cmd->add_option("--kmax", c_kmax, "largest order")->check(CLI::Range(0, 64));
    c_cmd->add_option("--format", c_format)->check(CLI::IsMember({"csv", "json"}));

    // bspline
    auto* b_cmd = app.add_subcommand("bspline", "evaluate or transform the B-spline chi_h^k");
    int b_k = 1;
    double b_h = 0.5;
    double b_eval = 0.0;
    long b_fourier = 0;
    bool b_dump = false;
    b_cmd->add_option("--k", b_k, "order")->required()->check(CLI::PositiveNumber);
    b_cmd->add_option("--h", b_h, "width")->required()->check(CLI::PositiveNumber);
    auto* b_eval_opt = b_cmd->add_option("--eval", b_eval, "evaluation point");
    auto* b_fourier_opt = b_cmd->add_option("--fourier", b_fourier, "Fourier coefficient index");
    b_cmd->add_flag("--dump", b_dump, "print the JSON serialization");

    // euler
    auto* e_cmd = app.add_subcommand("euler", "evaluate the Euler spline E_k");
    int e_k = 1;
    double e_x = 0.0, e_tol = 1e-9;
    e_cmd->add_option("--k", e_k, "order")->required()->check(CLI::NonNegativeNumber);
    e_cmd->add_option("--eval", e_x, "evaluation point")->required();
    e_cmd->add_option("--tol", e_tol, "series tolerance")->check(CLI::PositiveNumber);

    // approx
    auto* a_cmd = app.add_subcommand("approx", "best L1 approximation of chi^k_{alpha/(2n)}");
    int a_n = 4, a_k = 1, a_grid = 0;
    double a_alpha = 1.0, a_tol = 1e-6;
    std::string a_format = "json";
    a_cmd->add_option("--n", a_n, "trig degree bound")->required()->check(CLI::PositiveNumber);
    a_cmd->add_option("--k", a_k, "spline order")->required()->check(CLI::PositiveNumber);
    a_cmd->add_option("--alpha", a_alpha, "support parameter alpha = 2nh")->required();
    a_cmd->add_option("--grid", a_grid, "fixed grid size (default: adaptive schedule)");
    a_cmd->add_option("--tol", a_tol, "certification tolerance")->check(CLI::PositiveNumber);
    a_cmd->add_option("--format", a_format)->check(CLI::IsMember({"json", "csv"}));

    // verify
    auto* v_cmd = app.add_subcommand("verify", "run verification suites; exit 0 iff all pass");
    std::string v_suite = "all", v_report;
    std::uint64_t v_seed = 20240901u;
    int v_jobs = 1;
    double v_tol = 1e-9;
    v_cmd->add_option("--suite", v_suite)->check(CLI::IsMember({"theorem", "identities", "all"}));
    v_cmd->add_option("--report", v_report, "write the JSON report here");
    v_cmd->add_option("--seed", v_seed, "seed for randomized property checks");
    v_cmd->add_option("--jobs", v_jobs, "concurrent solves")->check(CLI::PositiveNumber);
    v_cmd->add_option("--tol", v_tol, "difference-identity tolerance")
        ->check(CLI::PositiveNumber);

    // table
    auto* t_cmd = app.add_subcommand("table", "sweep (n, k, alpha) and emit a table");
    std::vector<int> t_ns{3, 5};
    std::vector<int> t_ks{1, 2, 3};
    std::string t_alphas = "0.25:5:0.25", t_out = "table.csv", t_svg, t_format;
    double t_tol = 1e-6;
    int t_grid = 0, t_jobs = 1;
    t_cmd->add_option("--n", t_ns, "degree bounds")->delimiter(',');
    t_cmd->add_option("--k", t_ks, "spline orders")->delimiter(',');
    t_cmd->add_option("--alphas", t_alphas, "START:STOP:STEP or comma list");
    t_cmd->add_option("--out", t_out, "output path (.csv or .json)");
    t_cmd->add_option("--svg", t_svg, "also write an SVG plot here");
    t_cmd->add_option("--format", t_format, "override format: csv|json|svg");
    t_cmd->add_option("--tol", t_tol)->check(CLI::PositiveNumber);
    t_cmd->add_option("--grid", t_grid, "fixed grid size (default: adaptive)");
    t_cmd->add_option("--jobs", t_jobs)->check(CLI::PositiveNumber);

    // critical
    auto* r_cmd = app.add_subcommand("critical",
                                     "bisect the smallest alpha with nontrivial approximation");
    int r_k = 1, r_n = 4;
    double r_tol = 1e-3;
    r_cmd->add_option("--k", r_k)->required()->check(CLI::PositiveNumber);
    r_cmd->add_option("--n", r_n)->required()->check(CLI::PositiveNumber);
    r_cmd->add_option("--tol", r_tol, "bracket width")->check(CLI::PositiveNumber);

    CLI11_PARSE(app, argc, argv);

    try {
        if (*c_cmd) return run_constants(c_kmax, c_format);

        if (*b_cmd) {
            const bool has_eval = b_eval_opt->count() > 0;
            const bool has_fourier = b_fourier_opt->count() > 0;
            const auto f = trigl1::bspline(b_k, b_h);
            if (has_eval) std::printf("%.17g\n", f(b_eval));
            if (has_fourier) {
                const auto c = trigl1::fourier_coefficient(f, b_fourier);
                std::printf("%.17g%+.17gi\n", c.real(), c.imag());
            }
            if (b_dump) std::printf("%s\n", trigl1::to_json(f).dump().c_str());
            if (!has_eval && !has_fourier && !b_dump)
                std::printf("chi_h^k: k=%d h=%.17g support [%.17g, %.17g] degree %d pieces %zu\n",
                            b_k, b_h, f.support_min(), f.support_max(), f.max_degree(),
                            f.pieces().size());
            return 0;
        }

        if (*e_cmd) {
            const auto e = trigl1::euler_spline(e_k, e_tol);
            std::printf("%.17g\n", e(e_x));
            return 0;
        }

        if (*a_cmd) {
            trigl1::ApproxResult res;
            if (a_grid > 0) {
                const double h = a_alpha / (2.0 * a_n);
                res = trigl1::lp_best_approx(trigl1::bspline(a_k, h), a_n, a_grid, a_tol);
                res.k = a_k;
                res.h = h;
                res.alpha = a_alpha;
                res.theorem_upper = trigl1::theorem_bound(a_k, a_alpha);
            } else {
                res = trigl1::best_approx(a_k, a_n, a_alpha, a_tol);
            }
            if (a_format == "csv") {
                std::printf("n,k,alpha,primal,dual,bound,gap,certified\n");
                std::printf("%d,%d,%.12g,%.12g,%.12g,%.12g,%.12g,%d\n", res.n, res.k, res.alpha,
                            res.primal_value, res.dual_lower, res.theorem_upper, res.gap,
                            res.certified ? 1 : 0);
            } else {
                std::printf("%s\n", trigl1::to_json(res).dump(2).c_str());
            }
            return 0;
        }

        if (*v_cmd) {
            bool pass = true;
            nlohmann::json reports = nlohmann::json::array();
            if (v_suite == "identities" || v_suite == "all") {
                const auto r = trigl1::verify_identities(v_tol, v_seed);
                print_report(r);
                reports.push_back(trigl1::to_json(r));
                pass = pass && r.overall_pass();
            }
            if (v_suite == "theorem" || v_suite == "all") {
                trigl1::SweepSpec spec;
                spec.ns = {3, 4};
                spec.ks = {1, 2, 3};
                spec.alphas = {0.5, 1.0, 1.5, 2.0, 2.5, 3.0, 4.0, 5.0};
                spec.tol = 1e-5;
                const auto r = trigl1::verify_theorem(spec, v_jobs);
                print_report(r);
                reports.push_back(trigl1::to_json(r));
                pass = pass && r.overall_pass();
            }
            if (!v_report.empty()) trigl1::write_file(v_report, reports.dump(2) + "\n");
            return pass ? 0 : 1;
        }

        if (*t_cmd) {
            trigl1::SweepSpec spec;
            spec.ns = t_ns;
            spec.ks = t_ks;
            spec.alphas = parse_alphas(t_alphas);
            spec.tol = t_tol;
            spec.grid_m = t_grid;
            std::string fmt = t_format;
            if (fmt.empty()) {
                if (t_out.size() >= 5 && t_out.substr(t_out.size() - 5) == ".json") fmt = "json";
                else if (t_out.size() >= 4 && t_out.substr(t_out.size() - 4) == ".svg") fmt = "svg";
                else fmt = "csv";
            }
            spec.format = fmt == "json" ? trigl1::OutputFormat::Json
                        : fmt == "svg"  ? trigl1::OutputFormat::Svg
                                        : trigl1::OutputFormat::Csv;
            std::vector<trigl1::SweepCase> skipped;
            const auto rows = trigl1::run_sweep(spec, t_jobs, &skipped);
            trigl1::emit_table(spec, rows, t_out);
            if (!t_svg.empty()) trigl1::write_file(t_svg, trigl1::sweep_svg(rows));
            std::printf("wrote %s (%zu cases, %zu skipped)\n", t_out.c_str(), rows.size(),
                        skipped.size());
            return 0;
        }

        if (*r_cmd) {
            bool no_transition = false;
            const double a0 = trigl1::find_critical_alpha(r_k, r_n, r_tol, &no_transition);
            std::printf("%.10g%s\n", a0, no_transition ? " (no transition found)" : "");
            return 0;
        }
    } catch (const std::exception& ex) {
        std::fprintf(stderr, "error: %s\n", ex.what());
        return 1;
    }
    return 0;
}
