/*
 * gauss.hpp — row-sum Gaussian convergence machinery.
 *
 * F_ni is the law of Σⱼ ±|wᵢⱼ| with independent Rademacher signs drawn
 * independently of the matrix. It is estimated by resampling both the row
 * entries and the signs on a dedicated RNG stream, then compared to the
 * standard normal distribution in the Lévy metric. The corollary functional
 * is the per-row average (1/n)·Σᵢ L(F_ni, Φ).
 */

#pragma once

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "wigner/conditions.hpp"
#include "wigner/distances.hpp"
#include "wigner/ensemble.hpp"
#include "wigner/measure.hpp"
#include "wigner/parallel.hpp"

namespace wigner {

// Empirical distribution of Σⱼ ±|wᵢⱼ| over fresh draws of row and signs.
inline StepMeasure row_sum_distribution(const EnsembleSpec& spec, int row,
                                        int resamples) {
    if (resamples < 1)
        throw std::invalid_argument("row_sum_distribution: resamples < 1");
    const int n = spec.n();
    if (row < 0 || row >= n)
        throw std::invalid_argument("row_sum_distribution: row out of range");
    std::vector<double> sums(resamples, 0.0);
    for (int r = 0; r < resamples; ++r) {
        double s = 0.0;
        for (int j = 0; j < n; ++j) {
            if (spec.profile(row, j) == 0.0) continue;
            CounterRng rng(spec.seed, Stream::row_sum,
                           static_cast<std::uint64_t>(r),
                           static_cast<std::uint64_t>(row),
                           static_cast<std::uint64_t>(j));
            double mag;
            if (spec.symmetry() == SymmetryClass::real_symmetric || j == row)
                mag = std::abs((j == row ? spec.diagonal_law(row)
                                         : spec.entry_law(row, j))
                                   .sample_real(rng));
            else
                mag = std::abs(spec.entry_law(row, j).sample_complex(rng));
            s += rng.sign() * mag;
        }
        sums[r] = s;
    }
    return StepMeasure::from_points(std::move(sums));
}

enum class ComplementMode { none, counted_as_one, excluded };

struct RowSumStudy {
    int n = 0;
    int resamples = 0;
    std::vector<int> rows;
    std::vector<double> levy; // L(F̂_ni, Φ) per studied row
    double average = 0.0;
    ComplementMode complement = ComplementMode::none;
};

// (1/n)·Σᵢ L(F_ni, Φ) with F_ni estimated by resampling. A row subset may
// be studied instead of all rows; the complement is then either counted at
// the conservative distance 1 or excluded from the average.
inline RowSumStudy corollary_lhs(const EnsembleSpec& spec, int resamples,
                                 std::vector<int> row_subset = {},
                                 ComplementMode mode = ComplementMode::none,
                                 int threads = 1) {
    const int n = spec.n();
    RowSumStudy study;
    study.n = n;
    study.resamples = resamples;
    if (row_subset.empty()) {
        study.rows.resize(n);
        for (int i = 0; i < n; ++i) study.rows[i] = i;
        study.complement = ComplementMode::none;
    } else {
        study.rows = std::move(row_subset);
        study.complement = mode == ComplementMode::none
                               ? ComplementMode::excluded
                               : mode;
    }
    study.levy.assign(study.rows.size(), 0.0);
    const CdfView phi = CdfView::normal();
    parallel_for(0, static_cast<int>(study.rows.size()), threads, [&](int idx) {
        const StepMeasure f = row_sum_distribution(spec, study.rows[idx], resamples);
        study.levy[idx] = levy_distance(CdfView::of(f), phi);
    });
    long double acc = 0.0L;
    for (double l : study.levy) acc += l;
    if (study.complement == ComplementMode::counted_as_one)
        acc += static_cast<long double>(n - study.rows.size());
    const double denom = study.complement == ComplementMode::excluded
                             ? static_cast<double>(study.rows.size())
                             : static_cast<double>(n);
    study.average = static_cast<double>(acc) / denom;
    return study;
}

struct LindebergFellerRow {
    int n = 0;
    double c_n = 0.0;                  // truncated row variance Σⱼ E[|w|²;|w|≤1]
    std::vector<double> lindeberg_sums; // Σⱼ E[|w|²; ε < |w| ≤ 1] per grid ε
    double ks_to_phi = 0.0;            // KS of the normalized signed sum to Φ
};

struct LindebergFellerReport {
    std::vector<double> eps_grid;
    std::vector<LindebergFellerRow> rows; // one per ensemble size
    std::string trichotomy;               // classification of the c_n trend
};

// For the row `row` of each given ensemble: the truncated row variance c_n,
// the per-ε Lindeberg sums of the signed truncated summands, and the
// empirical KS distance of the normalized sum to Φ. Under convergence the
// trichotomy forces c_n → 1.
inline LindebergFellerReport
lindeberg_feller_check(const std::vector<EnsembleSpec>& specs, int row,
                       int resamples, std::vector<double> eps_grid) {
    LindebergFellerReport rep;
    std::sort(eps_grid.begin(), eps_grid.end());
    rep.eps_grid = eps_grid;
    for (const auto& spec : specs) {
        const int n = spec.n();
        LindebergFellerRow r;
        r.n = n;
        long double c = 0.0L;
        std::vector<long double> lind(eps_grid.size(), 0.0L);
        for (int j = 0; j < n; ++j) {
            const EntryLaw law =
                j == row ? spec.diagonal_law(row) : spec.entry_law(row, j);
            const double t1 = law.truncated_second_moment(1.0);
            c += t1;
            for (std::size_t e = 0; e < eps_grid.size(); ++e) {
                const double eps = std::min(eps_grid[e], 1.0);
                lind[e] += t1 - law.truncated_second_moment(eps);
            }
        }
        r.c_n = static_cast<double>(c);
        r.lindeberg_sums.assign(lind.begin(), lind.end());

        // empirical draw of Σⱼ ±|w|·1{|w| ≤ 1}, normalized by √c_n
        std::vector<double> sums(resamples, 0.0);
        for (int rs = 0; rs < resamples; ++rs) {
            double s = 0.0;
            for (int j = 0; j < n; ++j) {
                if (spec.profile(row, j) == 0.0) continue;
                CounterRng rng(spec.seed, Stream::row_sum,
                               static_cast<std::uint64_t>(rs),
                               static_cast<std::uint64_t>(row),
                               static_cast<std::uint64_t>(j));
                double mag;
                if (spec.symmetry() == SymmetryClass::real_symmetric || j == row)
                    mag = std::abs((j == row ? spec.diagonal_law(row)
                                             : spec.entry_law(row, j))
                                       .sample_real(rng));
                else
                    mag = std::abs(spec.entry_law(row, j).sample_complex(rng));
                if (mag <= 1.0) s += rng.sign() * mag;
            }
            sums[rs] = r.c_n > 0.0 ? s / std::sqrt(r.c_n) : s;
        }
        r.ks_to_phi = kolmogorov_distance(
            CdfView::of(StepMeasure::from_points(std::move(sums))),
            CdfView::normal());
        rep.rows.push_back(std::move(r));
    }
    if (!rep.rows.empty()) {
        const double last = rep.rows.back().c_n;
        if (last < 0.05)
            rep.trichotomy = "c_n -> 0 (incompatible with convergence)";
        else if (std::abs(last - 1.0) <= 0.05)
            rep.trichotomy = "c_n -> 1 (consistent with convergence)";
        else
            rep.trichotomy = "c_n -> c != 1 (limit forced to 1 fails)";
    }
    return rep;
}

} // namespace wigner
