#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "oracle.hpp"
#include "trigl1/piecewise.hpp"
#include "trigl1/trig_poly.hpp"

using namespace trigl1;

namespace {

TrigPoly random_trig(int n, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    TrigPoly t(n);
    t.a0 = u(rng);
    for (auto& c : t.a) c = u(rng);
    for (auto& c : t.b) c = u(rng);
    return t;
}

}  // namespace

TEST_CASE("eval_trig basics") {
    TrigPoly z(3);
    CHECK(eval_trig(z, 0.37) == 0.0);
    TrigPoly c1(2);
    c1.a[0] = 1.0;
    CHECK(eval_trig(c1, 0.0) == 1.0);
    TrigPoly s(2);
    s.a0 = 1.0;
    s.a[0] = 1.0;
    CHECK(eval_trig(s, 0.5) == Catch::Approx(0.0).margin(1e-15));  // 1 + cos(pi)
}

TEST_CASE("trig derivative against finite differences") {
    std::mt19937_64 rng(7);
    const TrigPoly t = random_trig(5, rng);
    const TrigPoly d = t.derivative();
    for (double x : {0.0, 0.21, -0.4, 0.77}) {
        const double fd = (t(x + 5e-7) - t(x - 5e-7)) / 1e-6;
        CHECK(d(x) == Catch::Approx(fd).margin(1e-4));
    }
}

TEST_CASE("convolve_trig multiplier structure") {
    TrigPoly t(3);
    t.a0 = 0.7;
    t.a[0] = 1.0;
    t.b[1] = -0.4;
    // m = 0 unchanged
    CHECK(convolve_trig(t, 3, 0.3).a0 == 0.7);
    // a_1 with k=1, h=1: sin(pi)/pi = 0
    const auto g = convolve_trig(t, 1, 1.0);
    CHECK(g.a[0] == Catch::Approx(0.0).margin(1e-15));
    // k=2 multipliers are squares of k=1 multipliers
    const auto g1 = convolve_trig(t, 1, 0.4), g2 = convolve_trig(t, 2, 0.4);
    for (std::size_t i = 0; i < t.a.size(); ++i) {
        const double m1 = (t.a[i] != 0.0) ? g1.a[i] / t.a[i]
                                          : (t.b[i] != 0.0 ? g1.b[i] / t.b[i] : 0.0);
        if (t.a[i] != 0.0) CHECK(g2.a[i] == Catch::Approx(m1 * m1 * t.a[i]).margin(1e-14));
        if (t.b[i] != 0.0) CHECK(g2.b[i] == Catch::Approx(m1 * m1 * t.b[i]).margin(1e-14));
    }
}

TEST_CASE("convolve_trig agrees with pointwise numerical convolution") {
    std::mt19937_64 rng(11);
    for (int rep = 0; rep < 5; ++rep) {
        const int n = 2 + static_cast<int>(rng() % 7);  // degree bound up to 8
        const TrigPoly t = random_trig(n, rng);
        std::uniform_real_distribution<double> uh(0.1, 0.45);
        const double h = uh(rng);
        const int k = 1 + static_cast<int>(rng() % 3);
        const auto smoothed = convolve_trig(t, k, h);
        const auto spline = bspline(k, h);
        std::uniform_real_distribution<double> ux(-0.5, 0.5);
        for (int pt = 0; pt < 4; ++pt) {
            const double x = ux(rng);
            // (tau * chi_h^k)(x) = int tau(x-u) chi_h^k(u) du, split at knots
            double num = 0.0;
            for (std::size_t i = 0; i + 1 < spline.breakpoints().size(); ++i)
                num += oracle::integrate(
                    [&](double u) { return t(x - u) * spline(u); },
                    spline.breakpoints()[i], spline.breakpoints()[i + 1], 0.02);
            CAPTURE(n, h, k, x);
            CHECK(smoothed(x) == Catch::Approx(num).margin(1e-9));
        }
    }
}

TEST_CASE("difference identity D^k(tau * chi_h^k) = h^-k Delta_h^k tau") {
    std::mt19937_64 rng(2024);
    std::uniform_real_distribution<double> uh(0.05, 0.5), ux(-1.0, 1.0);
    for (int rep = 0; rep < 100; ++rep) {
        const int n = 2 + static_cast<int>(rng() % 7);
        const int k = 1 + static_cast<int>(rng() % 4);
        const TrigPoly t = random_trig(n, rng);
        const double h = uh(rng);
        const double x = ux(rng);
        const TrigPoly lhs_poly = convolve_trig(t, k, h).derivative(k);
        const double lhs = lhs_poly(x);
        double hk = 1.0;
        for (int p = 0; p < k; ++p) hk *= h;
        const double rhs = central_difference([&](double y) { return t(y); }, h, k, x) / hk;
        CAPTURE(n, k, h, x);
        CHECK(std::abs(lhs - rhs) <= 1e-9 * std::max({1.0, std::abs(lhs), std::abs(rhs)}));
    }
}

TEST_CASE("inequality |D^k(tau * chi_h^k)| <= (h/2)^-k ||tau||") {
    std::mt19937_64 rng(99);
    std::uniform_real_distribution<double> uh(0.05, 0.5);
    const int grid = 10000;
    for (int rep = 0; rep < 30; ++rep) {
        const int n = 2 + static_cast<int>(rng() % 7);
        const int k = 1 + static_cast<int>(rng() % 4);
        TrigPoly t = random_trig(n, rng);
        const double h = uh(rng);
        // normalize sup norm to 1 on the grid
        double sup = 0.0;
        for (int i = 0; i < grid; ++i) sup = std::max(sup, std::abs(t(i / double(grid))));
        t.a0 /= sup;
        for (auto& c : t.a) c /= sup;
        for (auto& c : t.b) c /= sup;
        const TrigPoly dk = convolve_trig(t, k, h).derivative(k);
        double m = 0.0;
        for (int i = 0; i < grid; ++i) m = std::max(m, std::abs(dk(i / double(grid))));
        double bound = 1.0;
        for (int p = 0; p < k; ++p) bound *= 2.0 / h;
        CAPTURE(n, k, h);
        CHECK(m <= bound + 1e-6);
    }
}
