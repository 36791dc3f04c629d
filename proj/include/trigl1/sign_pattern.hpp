#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

namespace trigl1 {

/// Square wave sigma * sign(cos(2 pi n (x - theta))): the dual witness family.
/// Sign changes sit exactly at theta + (2v+1)/(4n), v integer.
struct SignPattern {
    int frequency = 1;       // n
    double shift = 0.0;      // theta
    int sign = 1;            // sigma, +1 or -1

    SignPattern() = default;
    SignPattern(int n, double theta, int sigma)
        : frequency(n), shift(theta), sign(sigma) {
        if (n < 1) throw std::invalid_argument("SignPattern: frequency must be >= 1");
        if (sigma != 1 && sigma != -1)
            throw std::invalid_argument("SignPattern: sign must be +1 or -1");
    }

    double operator()(double x) const {
        const double c = std::cos(2.0 * M_PI * frequency * (x - shift));
        if (c > 0.0) return sign;
        if (c < 0.0) return -sign;
        return 0.0;
    }

    /// All sign-change points in (lo, hi), sorted ascending.
    std::vector<double> sign_changes_in(double lo, double hi) const {
        // theta + (2v+1)/(4n) in (lo, hi)
        const double step = 1.0 / (4.0 * frequency);
        std::vector<double> pts;
        const double v_lo = std::floor(((lo - shift) / step - 1.0) / 2.0) - 1.0;
        for (double v = v_lo;; v += 1.0) {
            const double x = shift + (2.0 * v + 1.0) * step;
            if (x >= hi) break;
            if (x > lo) pts.push_back(x);
        }
        return pts;
    }
};

}  // namespace trigl1
