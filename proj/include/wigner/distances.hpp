/*
 * distances.hpp — Kolmogorov and Lévy metrics between distribution
 * functions.
 *
 * Both metrics operate on CdfView, a thin adapter exposing the CDF, its
 * left limits, jump points (for step functions) and a probe grid (for
 * continuous functions). With at least one step argument the Kolmogorov
 * supremum is exact over the union of atoms; continuous–continuous pairs
 * add a local ternary refinement around the best grid probe.
 *
 * The Lévy metric inf{ε > 0 : F(x−ε)−ε ≤ G(x) ≤ F(x+ε)+ε ∀x} is computed
 * by bisection on ε to 1e-6, using the equivalent one-sided form
 * feasible(ε) ⇔ sup_y max(F(y)−G(y+ε), G(y)−F(y+ε)) ≤ ε.
 */

#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <utility>
#include <vector>

#include "wigner/measure.hpp"
#include "wigner/semicircle.hpp"

namespace wigner {

struct NormalDist {
    double mu = 0.0;
    double sigma = 1.0;
    double cdf(double x) const {
        return 0.5 * std::erfc(-(x - mu) / sigma *
                               0.70710678118654752440084436210485);
    }
};

inline double normal_cdf(double x) { return NormalDist{}.cdf(x); }

class CdfView {
public:
    static CdfView of(const StepMeasure& m) {
        CdfView v;
        v.cdf_ = [&m](double x) { return m.cdf(x); };
        v.cdf_left_ = [&m](double x) { return m.cdf_left(x); };
        v.atoms_ = m.atoms();
        v.step_ = true;
        return v;
    }

    static CdfView semicircle() {
        CdfView v;
        v.cdf_ = [](double x) { return Semicircle::cdf(x); };
        v.cdf_left_ = v.cdf_;
        v.probes_ = dense_grid(-2.0, 2.0);
        return v;
    }

    static CdfView normal(NormalDist d = {}) {
        CdfView v;
        v.cdf_ = [d](double x) { return d.cdf(x); };
        v.cdf_left_ = v.cdf_;
        v.probes_ = dense_grid(d.mu - 9.0 * d.sigma, d.mu + 9.0 * d.sigma);
        return v;
    }

    double cdf(double x) const { return cdf_(x); }
    double cdf_left(double x) const { return cdf_left_(x); }
    bool is_step() const { return step_; }
    const std::vector<double>& atoms() const { return atoms_; }
    const std::vector<double>& probes() const { return probes_; }

private:
    static std::vector<double> dense_grid(double lo, double hi) {
        const int m = 2048;
        std::vector<double> g(m + 1);
        for (int i = 0; i <= m; ++i) g[i] = lo + (hi - lo) * i / m;
        return g;
    }

    std::function<double(double)> cdf_;
    std::function<double(double)> cdf_left_;
    std::vector<double> atoms_;
    std::vector<double> probes_;
    bool step_ = false;
};

namespace detail {

// sup over probe points of max(|F−G|, |F−G| at left limits), refined locally
// between continuous probes.
inline double sup_abs_diff(const CdfView& f, const CdfView& g) {
    double best = 0.0;
    double best_x = 0.0;
    auto consider = [&](double x) {
        const double a = std::abs(f.cdf(x) - g.cdf(x));
        const double b = std::abs(f.cdf_left(x) - g.cdf_left(x));
        const double v = std::max(a, b);
        if (v > best) { best = v; best_x = x; }
    };
    for (double x : f.atoms()) consider(x);
    for (double x : g.atoms()) consider(x);
    for (double x : f.probes()) consider(x);
    for (double x : g.probes()) consider(x);
    if (!f.is_step() && !g.is_step()) {
        // local ternary refinement around the best probe
        double lo = best_x - 0.02, hi = best_x + 0.02;
        for (int it = 0; it < 120; ++it) {
            const double m1 = lo + (hi - lo) / 3.0, m2 = hi - (hi - lo) / 3.0;
            if (std::abs(f.cdf(m1) - g.cdf(m1)) < std::abs(f.cdf(m2) - g.cdf(m2)))
                lo = m1;
            else
                hi = m2;
        }
        best = std::max(best, std::abs(f.cdf(lo) - g.cdf(lo)));
    }
    return best;
}

// sup_y [A(y) − B(y+eps)] over the candidate set where it can be extremal.
inline double sup_shifted_diff(const CdfView& a, const CdfView& b, double eps) {
    double best = -1.0;
    double best_y = 0.0;
    auto consider = [&](double y) {
        const double v1 = a.cdf(y) - b.cdf(y + eps);
        const double v2 = a.cdf_left(y) - b.cdf_left(y + eps);
        const double v = std::max(v1, v2);
        if (v > best) { best = v; best_y = y; }
    };
    for (double y : a.atoms()) consider(y);
    for (double y : b.atoms()) consider(y - eps);
    for (double y : a.probes()) consider(y);
    for (double y : b.probes()) consider(y - eps);
    if (!a.is_step() && !b.is_step()) {
        double lo = best_y - 0.02, hi = best_y + 0.02;
        for (int it = 0; it < 120; ++it) {
            const double m1 = lo + (hi - lo) / 3.0, m2 = hi - (hi - lo) / 3.0;
            if (a.cdf(m1) - b.cdf(m1 + eps) < a.cdf(m2) - b.cdf(m2 + eps))
                lo = m1;
            else
                hi = m2;
        }
        best = std::max(best, a.cdf(lo) - b.cdf(lo + eps));
    }
    return best;
}

} // namespace detail

inline double kolmogorov_distance(const CdfView& f, const CdfView& g) {
    return detail::sup_abs_diff(f, g);
}

inline double kolmogorov_distance(const StepMeasure& f, const StepMeasure& g) {
    return kolmogorov_distance(CdfView::of(f), CdfView::of(g));
}

inline double levy_distance(const CdfView& f, const CdfView& g,
                            double tol = 1e-6) {
    auto violation = [&](double eps) {
        return std::max(detail::sup_shifted_diff(f, g, eps),
                        detail::sup_shifted_diff(g, f, eps)) -
               eps;
    };
    if (violation(0.0) <= 0.0) return 0.0; // equal on the evaluation set
    double hi = std::min(1.0, kolmogorov_distance(f, g)); // L ≤ D_K ≤ 1
    while (hi < 1.0 && violation(hi) > 0.0) // D_K may sit on the boundary
        hi = std::min(1.0, hi * 1.5 + tol);
    double lo = 0.0;
    while (hi - lo > tol) {
        const double mid = 0.5 * (lo + hi);
        if (violation(mid) <= 0.0)
            hi = mid;
        else
            lo = mid;
    }
    return hi;
}

inline double levy_distance(const StepMeasure& f, const StepMeasure& g) {
    return levy_distance(CdfView::of(f), CdfView::of(g));
}

} // namespace wigner
