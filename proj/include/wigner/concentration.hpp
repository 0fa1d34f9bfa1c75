/*
 * concentration.hpp — inequality checkers and concentration experiments.
 *
 *   rank inequality      sup_x |F_A − F_B| ≤ rank(A−B)/n
 *   perturbation         L(F_A, F_B)³ ≤ (1/n)·tr((A−B)²)   (normalized form,
 *                        as applied in the truncation reduction proof)
 *   Bernstein            P(S ≥ x) ≤ exp(−x²/(2(E S² + x)))
 *   truncation survival  P(#{|wᵢⱼ| > η} ≥ εn) ≤ exp(−εn/8)
 *   spectral measures    P(|∫f dμ_W − E∫f dμ_W| ≥ t) ≤ 2·exp(−nt²/2), TV(f) ≤ 1
 *
 * Monte Carlo frequencies are compared against bounds with a three-standard-
 * error slack.
 */

#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "wigner/distances.hpp"
#include "wigner/spectra.hpp"

namespace wigner {

struct BoundCheck {
    double lhs = 0.0;
    double rhs = 0.0;
    bool satisfied = false;
    std::string context;
};

inline BoundCheck make_bound_check(double lhs, double rhs, std::string context) {
    return {lhs, rhs, lhs <= rhs + 1e-12, std::move(context)};
}

// Numerical rank of the Hermitian difference via its spectrum: singular
// values of a Hermitian matrix are the |eigenvalues|.
inline int numerical_rank_of_difference(const MatrixSample& a,
                                        const MatrixSample& b) {
    const int n = a.n();
    MatrixSample d(n, a.is_real() && b.is_real()
                          ? SymmetryClass::real_symmetric
                          : SymmetryClass::complex_hermitian);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) d.set(i, j, a.at(i, j) - b.at(i, j));
    const auto ev = eigenvalues(d).eigenvalues;
    double top = 0.0;
    for (double v : ev) top = std::max(top, std::abs(v));
    const double tol = n * std::numeric_limits<double>::epsilon() * top;
    int rank = 0;
    for (double v : ev)
        if (std::abs(v) > tol) ++rank;
    return rank;
}

inline BoundCheck rank_bound_check(const MatrixSample& a, const MatrixSample& b) {
    if (a.n() != b.n())
        throw std::invalid_argument("rank_bound_check: dimension mismatch");
    const double lhs = kolmogorov_distance(esd(eigenvalues(a)), esd(eigenvalues(b)));
    const double rhs =
        static_cast<double>(numerical_rank_of_difference(a, b)) / a.n();
    return make_bound_check(lhs, rhs, "rank_inequality");
}

inline BoundCheck levy_perturbation_check(const MatrixSample& a,
                                          const MatrixSample& b) {
    if (a.n() != b.n())
        throw std::invalid_argument("levy_perturbation_check: dimension mismatch");
    const double l = levy_distance(esd(eigenvalues(a)), esd(eigenvalues(b)));
    long double fro = 0.0L;
    for (int i = 0; i < a.n(); ++i)
        for (int j = 0; j < a.n(); ++j) {
            const double dr = a.re(i, j) - b.re(i, j);
            const double di = a.im(i, j) - b.im(i, j);
            fro += dr * dr + di * di;
        }
    const double rhs = static_cast<double>(fro) / a.n();
    return make_bound_check(l * l * l, rhs, "levy_perturbation");
}

inline double bernstein_bound(double x, double s2) {
    if (!(x > 0.0)) throw std::invalid_argument("bernstein_bound: x <= 0");
    if (s2 < 0.0) throw std::invalid_argument("bernstein_bound: s2 < 0");
    return std::exp(-x * x / (2.0 * (s2 + x)));
}

struct TailExperimentRow {
    double eps = 0.0;
    double empirical = 0.0;
    double bound = 0.0;
    double mc_se = 0.0;
    bool satisfied = false;
};

// Frequency of {#(upper-triangular entries with |w| > eta) ≥ εn} over
// independent trials, against exp(−εn/8). Entries are drawn from their laws
// on a dedicated stream (no matrix is materialized).
inline std::vector<TailExperimentRow>
truncation_survival_experiment(const EnsembleSpec& spec, double eta,
                               const std::vector<double>& eps_grid, int trials) {
    if (trials < 1)
        throw std::invalid_argument("truncation_survival_experiment: trials < 1");
    if (!(eta > 0.0))
        throw std::invalid_argument("truncation_survival_experiment: eta <= 0");
    const int n = spec.n();
    std::vector<std::int64_t> counts(trials, 0);
    for (int trial = 0; trial < trials; ++trial) {
        std::int64_t c = 0;
        for (int i = 0; i < n; ++i)
            for (int j = i; j < n; ++j) {
                if (spec.profile(i, j) == 0.0) continue;
                CounterRng rng(spec.seed, Stream::survival,
                               static_cast<std::uint64_t>(trial),
                               static_cast<std::uint64_t>(i),
                               static_cast<std::uint64_t>(j));
                double mag;
                if (spec.symmetry() == SymmetryClass::real_symmetric || i == j)
                    mag = std::abs((i == j ? spec.diagonal_law(i)
                                           : spec.entry_law(i, j))
                                       .sample_real(rng));
                else
                    mag = std::abs(spec.entry_law(i, j).sample_complex(rng));
                if (mag > eta) ++c;
            }
        counts[trial] = c;
    }
    std::vector<TailExperimentRow> rows;
    rows.reserve(eps_grid.size());
    for (double eps : eps_grid) {
        const double threshold = eps * n;
        int hits = 0;
        for (std::int64_t c : counts)
            if (static_cast<double>(c) >= threshold) ++hits;
        TailExperimentRow row;
        row.eps = eps;
        row.empirical = static_cast<double>(hits) / trials;
        row.bound = std::exp(-eps * n / 8.0);
        row.mc_se = std::sqrt(row.empirical * (1.0 - row.empirical) / trials);
        row.satisfied = row.empirical <= row.bound + 3.0 * row.mc_se + 1e-12;
        rows.push_back(row);
    }
    return rows;
}

// Piecewise-linear test function: linear between breakpoints, constant
// outside. Total variation is read off the breakpoint values.
struct PiecewiseLinear {
    std::vector<double> x; // strictly increasing
    std::vector<double> y;

    double operator()(double v) const {
        if (x.empty()) throw std::logic_error("PiecewiseLinear: empty");
        if (v <= x.front()) return y.front();
        if (v >= x.back()) return y.back();
        const auto it = std::upper_bound(x.begin(), x.end(), v);
        const std::size_t k = static_cast<std::size_t>(it - x.begin());
        const double frac = (v - x[k - 1]) / (x[k] - x[k - 1]);
        return y[k - 1] + frac * (y[k] - y[k - 1]);
    }

    double total_variation() const {
        double tv = 0.0;
        for (std::size_t i = 1; i < y.size(); ++i) tv += std::abs(y[i] - y[i - 1]);
        return tv;
    }
};

struct SpectralConcentrationRow {
    double t = 0.0;
    double empirical = 0.0;
    double bound = 0.0;
    double mc_se = 0.0;
    bool satisfied = false;
};

struct SpectralConcentrationResult {
    std::vector<SpectralConcentrationRow> rows;
    double dk_single_vs_mean = 0.0; // a.s.-convergence sanity gap
};

inline SpectralConcentrationResult
spectral_concentration_experiment(const EnsembleSpec& spec,
                                  const PiecewiseLinear& f,
                                  const std::vector<double>& t_grid, int trials,
                                  int threads = 1) {
    if (f.total_variation() > 1.0 + 1e-12)
        throw std::invalid_argument("spectral_concentration: TV(f) > 1");
    if (trials < 1)
        throw std::invalid_argument("spectral_concentration: trials < 1");
    const int n = spec.n();
    std::vector<std::vector<double>> per_trial(trials);
    std::vector<double> integrals(trials, 0.0);
    parallel_for(0, trials, threads, [&](int t) {
        per_trial[t] =
            eigenvalues(sample_matrix(spec, static_cast<std::uint64_t>(t)))
                .eigenvalues;
        const StepMeasure mu = StepMeasure::from_points(per_trial[t]);
        integrals[t] = mu.integrate([&](double v) { return f(v); });
    });
    long double mean = 0.0L;
    for (double v : integrals) mean += v;
    mean /= trials;

    SpectralConcentrationResult out;
    for (double t : t_grid) {
        int hits = 0;
        for (double v : integrals)
            if (std::abs(v - static_cast<double>(mean)) >= t) ++hits;
        SpectralConcentrationRow row;
        row.t = t;
        row.empirical = static_cast<double>(hits) / trials;
        row.bound = 2.0 * std::exp(-0.5 * n * t * t);
        row.mc_se = std::sqrt(row.empirical * (1.0 - row.empirical) / trials);
        row.satisfied = row.empirical <= row.bound + 3.0 * row.mc_se + 1e-12;
        out.rows.push_back(row);
    }

    std::vector<double> pool;
    pool.reserve(static_cast<std::size_t>(trials) * n);
    for (const auto& ev : per_trial) pool.insert(pool.end(), ev.begin(), ev.end());
    out.dk_single_vs_mean =
        kolmogorov_distance(StepMeasure::from_points(per_trial[0]),
                            StepMeasure::from_points(std::move(pool)));
    return out;
}

} // namespace wigner
