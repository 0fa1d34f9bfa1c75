/*
 * ensemble.hpp — Hermitian/symmetric Wigner matrix samples.
 *
 * Upper-triangular entries are drawn independently from the per-entry laws
 * of an EnsembleSpec; the lower triangle is filled by conjugation, so every
 * sample is exactly Hermitian. Each entry owns a counter-based RNG stream
 * keyed by (seed, trial, i, j): sampling is pure and identical under any
 * trial-level parallel schedule.
 */

#pragma once

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "wigner/profile.hpp"
#include "wigner/rng.hpp"

namespace wigner {

class MatrixSample {
public:
    MatrixSample(int n, SymmetryClass sym)
        : n_(n), sym_(sym),
          re_(static_cast<std::size_t>(n) * n, 0.0),
          im_(sym == SymmetryClass::complex_hermitian
                  ? static_cast<std::size_t>(n) * n
                  : 0,
              0.0) {
        if (n < 1) throw std::invalid_argument("MatrixSample: n < 1");
    }

    // Validating constructor for externally supplied real symmetric data
    // (row-major n×n). Exact symmetry is required.
    static MatrixSample from_dense_real(int n, std::vector<double> data) {
        if (data.size() != static_cast<std::size_t>(n) * n)
            throw std::invalid_argument("from_dense_real: size mismatch");
        MatrixSample m(n, SymmetryClass::real_symmetric);
        m.re_ = std::move(data);
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j)
                if (m.re(i, j) != m.re(j, i))
                    throw std::invalid_argument("from_dense_real: not symmetric");
        return m;
    }

    int n() const { return n_; }
    SymmetryClass symmetry() const { return sym_; }
    bool is_real() const { return sym_ == SymmetryClass::real_symmetric; }

    double re(int i, int j) const { return re_[idx(i, j)]; }
    double im(int i, int j) const { return im_.empty() ? 0.0 : im_[idx(i, j)]; }
    std::complex<double> at(int i, int j) const { return {re(i, j), im(i, j)}; }

    void set(int i, int j, std::complex<double> v) {
        re_[idx(i, j)] = v.real();
        if (!im_.empty()) im_[idx(i, j)] = v.imag();
        else if (v.imag() != 0.0)
            throw std::logic_error("MatrixSample: imaginary entry in a real matrix");
    }

    const std::vector<double>& real_data() const { return re_; }
    std::vector<double>& real_data() { return re_; }
    const std::vector<double>& imag_data() const { return im_; }

    double trace() const {
        long double t = 0.0L;
        for (int i = 0; i < n_; ++i) t += re(i, i);
        return static_cast<double>(t);
    }

    // Σᵢⱼ |wᵢⱼ|²
    double frobenius_sq() const {
        long double t = 0.0L;
        for (std::size_t k = 0; k < re_.size(); ++k) t += re_[k] * re_[k];
        for (std::size_t k = 0; k < im_.size(); ++k) t += im_[k] * im_[k];
        return static_cast<double>(t);
    }

    double max_abs_entry() const {
        double m = 0.0;
        for (int i = 0; i < n_; ++i)
            for (int j = 0; j < n_; ++j) m = std::max(m, std::abs(at(i, j)));
        return m;
    }

    // max row sum of |entries| — a Gershgorin bound on every eigenvalue
    double gershgorin_radius() const {
        double worst = 0.0;
        for (int i = 0; i < n_; ++i) {
            double row = 0.0;
            for (int j = 0; j < n_; ++j) row += std::abs(at(i, j));
            worst = std::max(worst, row);
        }
        return worst;
    }

private:
    std::size_t idx(int i, int j) const {
        return static_cast<std::size_t>(i) * n_ + j;
    }

    int n_;
    SymmetryClass sym_;
    std::vector<double> re_;
    std::vector<double> im_;
};

inline MatrixSample sample_matrix(const EnsembleSpec& spec, std::uint64_t trial) {
    const int n = spec.n();
    MatrixSample m(n, spec.symmetry());
    const bool complex_class = spec.symmetry() == SymmetryClass::complex_hermitian;
    for (int i = 0; i < n; ++i) {
        for (int j = i; j < n; ++j) {
            if (spec.profile(i, j) == 0.0) continue; // zero law, truncated or not
            CounterRng rng(spec.seed, Stream::matrix_entry,
                           trial, static_cast<std::uint64_t>(i),
                           static_cast<std::uint64_t>(j));
            if (i == j) {
                m.set(i, i, spec.diagonal_law(i).sample_real(rng));
            } else if (!complex_class) {
                const double w = spec.entry_law(i, j).sample_real(rng);
                m.set(i, j, w);
                m.set(j, i, w);
            } else {
                const std::complex<double> w = spec.entry_law(i, j).sample_complex(rng);
                m.set(i, j, w);
                m.set(j, i, std::conj(w));
            }
        }
    }
    return m;
}

// Chooses 1/2 ≥ η₁ ≥ η₂ ≥ … from evaluated weak-Lindeberg functionals.
// For each n the candidate is the smallest grid ε whose suffix maximum of
// the LHS is ≤ ε; the result is floored at (1/2)·n^(−1/4), capped at 1/2
// and made nonincreasing by a running minimum.
struct WeakLindebergTable {
    std::vector<double> eps_grid;          // ascending
    std::vector<int> n_values;             // ascending
    std::vector<std::vector<double>> lhs;  // lhs[e][k] at (eps_grid[e], n_values[k])
};

inline std::vector<double> threshold_sequence(const WeakLindebergTable& table) {
    const std::size_t ne = table.eps_grid.size();
    const std::size_t nn = table.n_values.size();
    if (table.lhs.size() != ne)
        throw std::invalid_argument("threshold_sequence: grid/table mismatch");
    for (const auto& row : table.lhs)
        if (row.size() != nn)
            throw std::invalid_argument("threshold_sequence: ragged table");

    // suffix maxima over n for each eps
    std::vector<std::vector<double>> suffix(ne, std::vector<double>(nn, 0.0));
    for (std::size_t e = 0; e < ne; ++e) {
        double run = 0.0;
        for (std::size_t k = nn; k-- > 0;) {
            run = std::max(run, table.lhs[e][k]);
            suffix[e][k] = run;
        }
    }

    std::vector<double> eta(nn);
    double running_min = 0.5;
    for (std::size_t k = 0; k < nn; ++k) {
        double candidate = 0.5;
        for (std::size_t e = 0; e < ne; ++e) { // ascending grid: first hit is smallest
            if (suffix[e][k] <= table.eps_grid[e]) {
                candidate = table.eps_grid[e];
                break;
            }
        }
        const double floor_k = 0.5 * std::pow(static_cast<double>(table.n_values[k]), -0.25);
        double v = std::min(0.5, std::max(candidate, floor_k));
        running_min = std::min(running_min, v);
        eta[k] = running_min;
    }
    return eta;
}

// Scale of the heavy-tail scenario entry: w = c_n·x/sqrt(n·ln n) with c_n
// solved from c²(ln n + ln ln n − 2 ln c) = ln n, so that the truncated row
// sum n·E[w²; |w| ≤ 1] equals 1 exactly.
inline double heavy_tail_entry_scale(int n) {
    if (n < 3) throw std::invalid_argument("heavy_tail_entry_scale: n too small");
    const double L = std::log(static_cast<double>(n));
    const double M = std::log(L);
    double c2 = 1.0;
    for (int it = 0; it < 200; ++it) {
        const double next = L / (L + M - std::log(c2));
        if (std::abs(next - c2) <= 1e-16 * c2) { c2 = next; break; }
        c2 = next;
    }
    return std::sqrt(c2 / (n * L));
}

} // namespace wigner
