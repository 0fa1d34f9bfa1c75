/*
 * spectra.hpp — eigenvalues of Hermitian samples and spectral measures.
 *
 * The dense symmetric/Hermitian eigensolver is LAPACK's syev/heev driver
 * (Householder tridiagonalization followed by implicit-shift QL/QR), used
 * eigenvalues-only. BLAS threading is pinned to one thread at first use so
 * that results are bit-identical no matter how many trial-level workers run
 * concurrently.
 *
 * A real symmetric matrix stored row-major equals its column-major
 * transpose, and a Hermitian one its conjugate; either way the spectrum is
 * unchanged, so buffers are handed to LAPACK column-major without copies.
 */

#pragma once

#include <complex>
#define lapack_complex_float std::complex<float>
#define lapack_complex_double std::complex<double>
#include <lapacke.h>

#include <algorithm>
#include <cmath>
#include <mutex>
#include <stdexcept>
#include <vector>

#include "wigner/ensemble.hpp"
#include "wigner/measure.hpp"
#include "wigner/parallel.hpp"

extern "C" void openblas_set_num_threads(int) __attribute__((weak));

namespace wigner {

struct SpectralSample {
    int n = 0;
    std::vector<double> eigenvalues; // descending: λ₁ ≥ … ≥ λₙ
};

namespace detail {

inline void pin_blas_single_thread() {
    static std::once_flag flag;
    std::call_once(flag, [] {
        if (openblas_set_num_threads) openblas_set_num_threads(1);
    });
}

} // namespace detail

namespace detail {

struct SampleStats {
    double trace, frobenius_sq, max_abs;
    int n;
};

inline void check_stats(const SampleStats& st, const std::vector<double>& lambda) {
    long double sum = 0.0L, sumsq = 0.0L;
    for (double v : lambda) { sum += v; sumsq += v * v; }
    if (std::abs(static_cast<double>(sum) - st.trace) >
        1e-9 * st.n * std::max(st.max_abs, 1.0))
        throw std::runtime_error("eigensolver: trace identity violated");
    if (std::abs(static_cast<double>(sumsq) - st.frobenius_sq) >
        1e-8 * std::max(st.frobenius_sq, 1e-300))
        throw std::runtime_error("eigensolver: Frobenius identity violated");
}

inline std::vector<double> solve_real(int n, std::vector<double>&& a,
                                      const SampleStats& st) {
    pin_blas_single_thread();
    std::vector<double> lambda(n, 0.0);
    const lapack_int info = LAPACKE_dsyev(LAPACK_COL_MAJOR, 'N', 'L', n,
                                          a.data(), n, lambda.data());
    if (info != 0)
        throw std::runtime_error("eigensolver failed to converge (info=" +
                                 std::to_string(info) + ")");
    std::reverse(lambda.begin(), lambda.end());
    check_stats(st, lambda);
    return lambda;
}

inline std::vector<double> solve_complex(const MatrixSample& m,
                                         const SampleStats& st) {
    pin_blas_single_thread();
    const int n = m.n();
    std::vector<std::complex<double>> a(static_cast<std::size_t>(n) * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            a[static_cast<std::size_t>(i) * n + j] = m.at(i, j);
    std::vector<double> lambda(n, 0.0);
    const lapack_int info = LAPACKE_zheev(LAPACK_COL_MAJOR, 'N', 'L', n,
                                          a.data(), n, lambda.data());
    if (info != 0)
        throw std::runtime_error("eigensolver failed to converge (info=" +
                                 std::to_string(info) + ")");
    std::reverse(lambda.begin(), lambda.end());
    check_stats(st, lambda);
    return lambda;
}

inline SampleStats stats_of(const MatrixSample& m) {
    return {m.trace(), m.frobenius_sq(), m.max_abs_entry(), m.n()};
}

} // namespace detail

// All eigenvalues, with multiplicity, descending.
inline SpectralSample eigenvalues(const MatrixSample& m) {
    const auto st = detail::stats_of(m);
    SpectralSample out;
    out.n = m.n();
    if (m.is_real()) {
        std::vector<double> a = m.real_data(); // syev destroys its input
        out.eigenvalues = detail::solve_real(m.n(), std::move(a), st);
    } else {
        out.eigenvalues = detail::solve_complex(m, st);
    }
    return out;
}

// Consuming overload: reuses the sample's buffer (one n×n allocation total).
inline SpectralSample eigenvalues(MatrixSample&& m) {
    const auto st = detail::stats_of(m);
    SpectralSample out;
    out.n = m.n();
    if (m.is_real()) {
        out.eigenvalues =
            detail::solve_real(m.n(), std::move(m.real_data()), st);
    } else {
        out.eigenvalues = detail::solve_complex(m, st);
    }
    return out;
}

// Empirical spectral distribution: atoms at the eigenvalues, weight 1/n each
// (exact duplicates coalesce).
inline StepMeasure esd(const SpectralSample& s) {
    return StepMeasure::from_points(s.eigenvalues);
}

// Pools trials·n eigenvalues with weight 1/(trials·n): the CDF-unbiased
// estimator of the mean spectral measure. Trials may run in parallel; the
// pool is assembled in trial order, so the result is worker-count
// independent.
inline StepMeasure mean_esd(const EnsembleSpec& spec, int trials,
                            int threads = 1) {
    if (trials < 1) throw std::invalid_argument("mean_esd: trials < 1");
    std::vector<std::vector<double>> per_trial(trials);
    parallel_for(0, trials, threads, [&](int t) {
        per_trial[t] =
            eigenvalues(sample_matrix(spec, static_cast<std::uint64_t>(t)))
                .eigenvalues;
    });
    std::vector<double> pool;
    pool.reserve(static_cast<std::size_t>(trials) * spec.n());
    for (const auto& ev : per_trial)
        pool.insert(pool.end(), ev.begin(), ev.end());
    return StepMeasure::from_points(std::move(pool));
}

} // namespace wigner
