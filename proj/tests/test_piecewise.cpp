#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "oracle.hpp"
#include "trigl1/piecewise.hpp"

using namespace trigl1;

TEST_CASE("chi is the normalized box") {
    const auto box = chi(0.5);
    CHECK(box(0.0) == 2.0);
    CHECK(box(0.3) == 0.0);
    CHECK(box(-0.3) == 0.0);
    CHECK(box.integral() == Catch::Approx(1.0).margin(1e-15));
    CHECK(chi(2.0).integral() == Catch::Approx(1.0).margin(1e-15));
    CHECK_THROWS_AS(chi(0.0), std::invalid_argument);
    CHECK_THROWS_AS(chi(-1.0), std::invalid_argument);
}

TEST_CASE("evaluate conventions") {
    const auto box = chi(1.0);
    CHECK(box(0.25) == 1.0);              // h/4 -> 1/h
    CHECK(box(0.75) == 0.0);              // right of support
    CHECK(box(-0.5) == 1.0);              // right piece at t_0
    CHECK(box(0.5) == 1.0);               // left piece at t_M, by convention
    const auto hat = bspline(2, 1.0);
    CHECK(hat(0.25) == Catch::Approx(0.75).margin(1e-14));  // 1 - |x|
}

TEST_CASE("convolution of two boxes is the hat") {
    const auto hat = convolve(chi(1.0), chi(1.0));
    CHECK(hat(0.0) == Catch::Approx(1.0).margin(1e-14));
    CHECK(hat(0.5) == Catch::Approx(0.5).margin(1e-14));
    CHECK(hat(-1.0) == Catch::Approx(0.0).margin(1e-14));
    CHECK(hat.support_min() == Catch::Approx(-1.0).margin(1e-14));
    CHECK(hat.support_max() == Catch::Approx(1.0).margin(1e-14));
    // cross-check against numerical convolution on a grid
    const auto f = chi(1.0);
    for (double x : {-0.9, -0.4, 0.1, 0.3, 0.8}) {
        const double num = oracle::convolve_at([&](double u) { return f(u); },
                                               [&](double u) { return f(u); }, x, -0.5, 0.5);
        CHECK(hat(x) == Catch::Approx(num).margin(1e-9));
    }
}

TEST_CASE("bspline values and smoothness") {
    const auto b3 = bspline(3, 1.0);
    CHECK(b3(0.0) == Catch::Approx(0.75).margin(1e-13));
    const auto hat = bspline(2, 0.4);
    CHECK(hat(0.0) == Catch::Approx(2.5).margin(1e-13));
    CHECK(hat(0.4) == Catch::Approx(0.0).margin(1e-13));
    CHECK(hat(-0.4) == Catch::Approx(0.0).margin(1e-13));

    // derivative of the hat has slope -1/h^2 on (0, h)
    const auto dh = differentiate(hat);
    CHECK(dh(0.2) == Catch::Approx(-1.0 / 0.16).margin(1e-12));
    // even symmetry + C^1 at 0 for k = 3
    const auto db3 = differentiate(b3);
    CHECK(db3(0.0) == Catch::Approx(0.0).margin(1e-13));
    const double fd = (b3(1e-6) - b3(-1e-6)) / 2e-6;
    CHECK(fd == Catch::Approx(0.0).margin(1e-5));
}

TEST_CASE("bspline support, normalization, continuity across orders") {
    for (int k : {1, 2, 3, 4, 5, 6}) {
        for (double h : {0.25, 1.0 / 3.0, 0.5, 1.0}) {
            CAPTURE(k, h);
            const auto b = bspline(k, h);
            CHECK(b.support_min() == Catch::Approx(-k * h / 2).margin(1e-12));
            CHECK(b.support_max() == Catch::Approx(k * h / 2).margin(1e-12));
            CHECK(b.integral() == Catch::Approx(1.0).margin(1e-14));
            CHECK(b.max_degree() == k - 1);
            // nonnegative and even on a sample grid
            for (int i = 0; i <= 40; ++i) {
                const double x = -k * h / 2 + i * (k * h / 40.0);
                CHECK(b(x) >= -1e-14);
                CHECK(b(x) == Catch::Approx(b(-x)).margin(1e-12));
            }
            if (k >= 2) {
                // one-sided values of the (k-2)nd derivative agree at breakpoints
                auto d = b;
                for (int t = 0; t < k - 2; ++t) d = differentiate(d);
                const auto& bp = d.breakpoints();
                for (std::size_t i = 1; i + 1 < bp.size(); ++i) {
                    const double left = detail::poly_eval(d.pieces()[i - 1], bp[i] - bp[i - 1]);
                    const double right = detail::poly_eval(d.pieces()[i], 0.0);
                    CHECK(std::abs(left - right) < 1e-10 * std::max(1.0, std::abs(left)));
                }
            }
        }
    }
}

TEST_CASE("convolve is commutative and associative on test triples") {
    const auto a = bspline(2, 0.3);
    const auto b = chi(0.5);
    const auto c = bspline(3, 0.25);
    const auto ab = convolve(a, b), ba = convolve(b, a);
    const auto abc1 = convolve(ab, c), abc2 = convolve(a, convolve(b, c));
    for (int i = -20; i <= 20; ++i) {
        const double x = i * 0.06;
        CHECK(ab(x) == Catch::Approx(ba(x)).margin(1e-10));
        CHECK(abc1(x) == Catch::Approx(abc2(x)).margin(1e-10));
    }
    CHECK(ab.integral() == Catch::Approx(a.integral() * b.integral()).margin(1e-13));
}

TEST_CASE("central differences of simple functions") {
    const double h = 0.37;
    CHECK(central_difference([](double x) { return x; }, h, 1, 1.3) ==
          Catch::Approx(h).margin(1e-14));
    CHECK(central_difference([](double x) { return x * x; }, h, 2, -0.4) ==
          Catch::Approx(2 * h * h).margin(1e-13));
    CHECK(central_difference([](double x) { return std::cos(2 * M_PI * x); }, 0.5, 1, 0.0) ==
          Catch::Approx(0.0).margin(1e-15));
}

TEST_CASE("fourier coefficients of B-splines are sinc powers") {
    const double h = 0.3;
    CHECK(fourier_coefficient(chi(h), 0).real() == Catch::Approx(1.0).margin(1e-14));
    CHECK(fourier_coefficient(chi(h), 0).imag() == 0.0);
    for (int k : {1, 2, 3, 4}) {
        const double hb = 0.2;  // support 0.2k, inside one period
        const auto b = bspline(k, hb);
        for (long m : {1L, 2L, 5L, 11L}) {
            const double s = std::sin(M_PI * m * hb) / (M_PI * m * hb);
            const auto c = fourier_coefficient(b, m);
            CAPTURE(k, m);
            CHECK(c.real() == Catch::Approx(std::pow(s, k)).margin(1e-12));
            CHECK(std::abs(c.imag()) < 1e-12);
            // numerical cross-check of the closed form, split at the knots
            double re_num = 0.0;
            for (std::size_t i = 0; i + 1 < b.breakpoints().size(); ++i)
                re_num += oracle::integrate(
                    [&](double u) { return b(u) * std::cos(2 * M_PI * m * u); },
                    b.breakpoints()[i], b.breakpoints()[i + 1]);
            CHECK(c.real() == Catch::Approx(re_num).margin(1e-10));
        }
    }
    // small-argument branch: tiny piece widths
    const auto narrow = bspline(2, 1e-5);
    CHECK(fourier_coefficient(narrow, 1).real() == Catch::Approx(1.0).margin(1e-8));
    auto wide = chi(1.2);
    CHECK_THROWS_AS(fourier_coefficient(wide, 1), std::domain_error);
}

TEST_CASE("integrate_against_sign reproduces the paper's dual integrals") {
    // int chi_{h_j} (-1)^j sign(c_n) = 1/(2j+1) with h_j = (2j+1)/(2n)
    for (int n : {2, 4, 7}) {
        for (int j = 0; 2 * j + 1 <= n; ++j) {
            const double hj = (2.0 * j + 1.0) / (2.0 * n);
            const double v = integrate_against_sign(chi(hj), SignPattern(n, 0.0, 1));
            const double expect = ((j % 2) ? -1.0 : 1.0) / (2.0 * j + 1.0);
            CAPTURE(n, j);
            CHECK(v == Catch::Approx(expect).margin(1e-14));
        }
    }
    // hat of width h = 1/(2n) against sign(c_n) -> 1/2
    const int n = 4;
    const double v = integrate_against_sign(bspline(2, 1.0 / (2 * n)), SignPattern(n, 0.0, 1));
    CHECK(v == Catch::Approx(0.5).margin(1e-13));
    // linearity in the global sign
    const auto f = bspline(3, 0.2);
    const double plus = integrate_against_sign(f, SignPattern(3, 0.1, 1));
    const double minus = integrate_against_sign(f, SignPattern(3, 0.1, -1));
    CHECK(plus == Catch::Approx(-minus).margin(1e-15));
    // quadrature cross-check on an irrational shift; the oracle splits the
    // integral at independently computed jump locations theta + (2v+1)/(4n)
    const double theta = 0.0723;
    const SignPattern p(3, theta, 1);
    std::vector<double> cuts{f.support_min(), f.support_max()};
    for (int v = -20; v <= 20; ++v) {
        const double x = theta + (2.0 * v + 1.0) / 12.0;
        if (x > cuts.front() && x < cuts[1]) cuts.push_back(x);
    }
    std::sort(cuts.begin(), cuts.end());
    double num = 0.0;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        const double sgn = std::cos(6.0 * M_PI * (0.5 * (cuts[i] + cuts[i + 1]) - theta)) > 0 ? 1.0 : -1.0;
        num += sgn * oracle::integrate([&](double u) { return f(u); }, cuts[i], cuts[i + 1], 0.01);
    }
    CHECK(integrate_against_sign(f, p) == Catch::Approx(num).margin(1e-12));
}

TEST_CASE("piecewise integrate respects bounds and zero extension") {
    const auto b = bspline(2, 0.5);
    CHECK(b.integrate(-5.0, 5.0) == Catch::Approx(1.0).margin(1e-14));
    CHECK(b.integrate(0.0, 5.0) == Catch::Approx(0.5).margin(1e-14));
    CHECK(b.integrate(5.0, 6.0) == 0.0);
    CHECK(b.integrate(0.2, 0.1) == Catch::Approx(-b.integrate(0.1, 0.2)).margin(1e-15));
}

TEST_CASE("constructor validation") {
    CHECK_THROWS_AS(PiecewisePolynomial({0.0}, {}), std::invalid_argument);
    CHECK_THROWS_AS(PiecewisePolynomial({0.0, 0.0}, {{1.0}}), std::invalid_argument);
    CHECK_THROWS_AS(PiecewisePolynomial({1.0, 0.0}, {{1.0}}), std::invalid_argument);
    const double inf = std::numeric_limits<double>::infinity();
    CHECK_THROWS_AS(PiecewisePolynomial({0.0, 1.0}, {{inf}}), std::invalid_argument);
}
