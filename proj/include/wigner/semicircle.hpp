/*
 * semicircle.hpp — the reference semicircle distribution on [−2, 2] with
 * density (1/2π)·√(4−x²). Even moments are the Catalan numbers; odd
 * moments vanish.
 */

#pragma once

#include <cmath>
#include <stdexcept>

namespace wigner {

struct Semicircle {
    static double density(double x) {
        if (x <= -2.0 || x >= 2.0) return 0.0;
        return 0.15915494309189533576888376337251 * std::sqrt(4.0 - x * x);
    }

    // F(x) = 1/2 + (x·√(4−x²) + 4·asin(x/2)) / (4π), clamped on [−2, 2].
    static double cdf(double x) {
        if (x <= -2.0) return 0.0;
        if (x >= 2.0) return 1.0;
        return 0.5 + (x * std::sqrt(4.0 - x * x) + 4.0 * std::asin(0.5 * x)) *
                         0.079577471545947667884441881686257;
    }

    // ∫ xᵏ dμ_sc = Catalan(k/2) for even k, 0 for odd k.
    static double moment(int k) {
        if (k < 0) throw std::invalid_argument("Semicircle::moment: k < 0");
        if (k % 2 == 1) return 0.0;
        return catalan(k / 2);
    }

    // C_m = binom(2m, m)/(m+1), exact in double for the small m used here.
    static double catalan(int m) {
        double c = 1.0;
        for (int i = 0; i < m; ++i)
            c = c * 2.0 * (2.0 * i + 1.0) / (i + 2.0);
        return c;
    }
};

} // namespace wigner
