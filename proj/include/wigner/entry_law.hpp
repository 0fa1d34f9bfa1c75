/*
 * entry_law.hpp — parametric distributions of a single matrix entry.
 *
 * Families:
 *   gaussian           w = s·g,               E w = 0, E w² = s²
 *   rademacher         w = ±s,                E w² = s²
 *   two_point(a, p)    w ∈ {v₁, v₂},          E w = 0, E w² = s² (asymmetric)
 *   zero               w = 0
 *   heavy_tail_cubic   density s²/|x|³ on |x| > s, E w² = ∞
 *
 * Complex Hermitian entries carry independent real and imaginary parts with
 * half the second moment each; the modulus law has closed forms for the
 * gaussian (Rayleigh), rademacher (constant |w| = s) and zero families.
 *
 * A one-level truncation/centering layer represents the law of
 * w·1{|w| ≤ η} − E[w; |w| ≤ η]; all moment queries stay in closed form
 * (atom enumeration for the discrete families, window identities for the
 * symmetric continuous ones).
 */

#pragma once

#include <cmath>
#include <complex>
#include <limits>
#include <stdexcept>
#include <utility>
#include <vector>

#include "wigner/rng.hpp"

namespace wigner {

enum class LawFamily { gaussian, rademacher, two_point, zero, heavy_tail_cubic };
enum class SymmetryClass { real_symmetric, complex_hermitian };

namespace detail {

inline double std_normal_pdf(double x) {
    return 0.39894228040143267793994605993438 * std::exp(-0.5 * x * x);
}

inline double std_normal_upper_tail(double x) { // Q(x) = P(g > x)
    return 0.5 * std::erfc(x * 0.70710678118654752440084436210485);
}

// E[g²; |g| > x] for standard normal g, x ≥ 0.
inline double std_normal_second_tail(double x) {
    return 2.0 * (x * std_normal_pdf(x) + std_normal_upper_tail(x));
}

} // namespace detail

class EntryLaw {
public:
    static EntryLaw gaussian(double scale,
                             SymmetryClass sym = SymmetryClass::real_symmetric) {
        return EntryLaw(LawFamily::gaussian, scale, sym);
    }

    static EntryLaw rademacher(double scale,
                               SymmetryClass sym = SymmetryClass::real_symmetric) {
        return EntryLaw(LawFamily::rademacher, scale, sym);
    }

    // Mean-zero two-point law: base atoms +a w.p. p and −a·p/(1−p) w.p. 1−p,
    // rescaled so the second moment is scale². Real class only.
    static EntryLaw two_point(double a, double p, double scale) {
        if (!(a > 0.0) || !(p > 0.0) || !(p < 1.0))
            throw std::invalid_argument("two_point: need a > 0 and p in (0,1)");
        EntryLaw law(LawFamily::two_point, scale, SymmetryClass::real_symmetric);
        law.tp_a_ = a;
        law.tp_p_ = p;
        return law;
    }

    static EntryLaw zero(SymmetryClass sym = SymmetryClass::real_symmetric) {
        return EntryLaw(LawFamily::zero, 0.0, sym);
    }

    static EntryLaw heavy_tail_cubic(double scale) {
        return EntryLaw(LawFamily::heavy_tail_cubic, scale,
                        SymmetryClass::real_symmetric);
    }

    LawFamily family() const { return family_; }
    double scale() const { return scale_; }
    SymmetryClass symmetry() const { return sym_; }
    bool truncated() const { return trunc_eta_ > 0.0; }
    double truncation_eta() const { return trunc_eta_; }
    double centering_shift() const { return trunc_shift_; }

    // Real-class version of the same family (used for diagonal entries of
    // complex Hermitian ensembles).
    EntryLaw as_real() const {
        if (truncated()) throw std::logic_error("as_real: truncated law");
        EntryLaw law = *this;
        law.sym_ = SymmetryClass::real_symmetric;
        return law;
    }

    // Same law with the target second moment re-scaled (heavy tail: the
    // density scale). Used to apply a variance profile entrywise.
    EntryLaw with_scale(double scale) const {
        if (truncated())
            throw std::logic_error("with_scale: rescaling a truncated law is not supported");
        EntryLaw law = *this;
        law.scale_ = scale;
        if (scale == 0.0 && family_ != LawFamily::heavy_tail_cubic &&
            family_ != LawFamily::zero) {
            law.family_ = LawFamily::zero; // degenerate entry
        }
        return law;
    }

    bool finite_variance() const { return family_ != LawFamily::heavy_tail_cubic; }

    // E|w|²; +inf for the heavy-tail family.
    double second_moment() const {
        if (truncated()) {
            if (atomic()) return moment_from_atoms(2);
            return base_law().truncated_second_moment(trunc_eta_);
        }
        switch (family_) {
        case LawFamily::zero: return 0.0;
        case LawFamily::gaussian:
        case LawFamily::rademacher:
        case LawFamily::two_point: return scale_ * scale_;
        case LawFamily::heavy_tail_cubic:
            return std::numeric_limits<double>::infinity();
        }
        return 0.0;
    }

    // E[|w|²; |w| ≤ a]
    double truncated_second_moment(double a) const {
        if (a < 0.0) throw std::invalid_argument("truncated_second_moment: a < 0");
        if (truncated()) {
            if (atomic()) return window_moment2_from_atoms(a);
            return base_law().truncated_second_moment(std::min(a, trunc_eta_));
        }
        const double s = scale_;
        switch (family_) {
        case LawFamily::zero: return 0.0;
        case LawFamily::rademacher: // |w| = s for both symmetry classes
            return a >= s ? s * s : 0.0;
        case LawFamily::two_point: return window_moment2_from_atoms(a);
        case LawFamily::gaussian:
            if (s == 0.0) return 0.0;
            if (sym_ == SymmetryClass::real_symmetric)
                return s * s * (1.0 - detail::std_normal_second_tail(a / s));
            // complex: |w|² ~ Exp(mean s²)
            return s * s - (s * s + a * a) * std::exp(-(a * a) / (s * s));
        case LawFamily::heavy_tail_cubic:
            if (a <= s) return 0.0;
            return 2.0 * s * s * std::log(a / s);
        }
        return 0.0;
    }

    // E[w; |w| ≤ a]. Zero for every symmetric law; the real two-point family
    // is the only asymmetric one.
    double truncated_mean(double a) const {
        if (a < 0.0) throw std::invalid_argument("truncated_mean: a < 0");
        if (atomic()) {
            double m = 0.0;
            for (const auto& [v, p] : atoms())
                if (std::abs(v) <= a) m += p * v;
            return m;
        }
        return 0.0; // gaussian / heavy tail, real or complex: symmetric
    }

    // P(|w| > eps)
    double tail_probability(double eps) const {
        if (!(eps > 0.0)) throw std::invalid_argument("tail_probability: eps <= 0");
        if (truncated()) {
            if (atomic()) return tail_from_atoms(eps);
            const EntryLaw base = base_law();
            if (eps >= trunc_eta_) return 0.0;
            return base.tail_probability(eps) - base.tail_probability(trunc_eta_);
        }
        const double s = scale_;
        switch (family_) {
        case LawFamily::zero: return 0.0;
        case LawFamily::rademacher: return eps < s ? 1.0 : 0.0;
        case LawFamily::two_point: return tail_from_atoms(eps);
        case LawFamily::gaussian:
            if (s == 0.0) return 0.0;
            if (sym_ == SymmetryClass::real_symmetric)
                return 2.0 * detail::std_normal_upper_tail(eps / s);
            return std::exp(-(eps * eps) / (s * s));
        case LawFamily::heavy_tail_cubic: {
            const double m = std::max(eps, s);
            return (s * s) / (m * m);
        }
        }
        return 0.0;
    }

    // Least r with P(|w| > r) = 0; +inf if unbounded.
    double support_radius() const {
        if (atomic()) {
            double r = 0.0;
            for (const auto& [v, p] : atoms()) r = std::max(r, std::abs(v));
            return r;
        }
        if (truncated()) return std::min(base_law().support_radius(), trunc_eta_);
        if (family_ == LawFamily::rademacher) return scale_;
        return std::numeric_limits<double>::infinity();
    }

    // True when E[w^m] is available exactly: real atomic laws (possibly
    // truncated/centered).
    bool has_exact_power_moments() const {
        return sym_ == SymmetryClass::real_symmetric && atomic();
    }

    // E[w^m] for real atomic laws.
    double power_moment(int m) const {
        if (!has_exact_power_moments())
            throw std::domain_error("power_moment: law has no exact power moments");
        if (m < 0) throw std::invalid_argument("power_moment: m < 0");
        return moment_from_atoms(m);
    }

    // Atom list (value, probability) for the discrete families.
    bool atomic() const {
        if (family_ == LawFamily::gaussian || family_ == LawFamily::heavy_tail_cubic)
            return false;
        return sym_ == SymmetryClass::real_symmetric ||
               family_ == LawFamily::zero;
    }

    std::vector<std::pair<double, double>> atoms() const {
        if (!atomic()) throw std::domain_error("atoms: continuous law");
        std::vector<std::pair<double, double>> base;
        switch (family_) {
        case LawFamily::zero: base = {{0.0, 1.0}}; break;
        case LawFamily::rademacher:
            base = {{scale_, 0.5}, {-scale_, 0.5}};
            break;
        case LawFamily::two_point: {
            const double b = -tp_a_ * tp_p_ / (1.0 - tp_p_);
            const double m2 = tp_a_ * tp_a_ * tp_p_ + b * b * (1.0 - tp_p_);
            const double f = scale_ / std::sqrt(m2);
            base = {{tp_a_ * f, tp_p_}, {b * f, 1.0 - tp_p_}};
            break;
        }
        default:
            throw std::domain_error("atoms: continuous law");
        }
        if (!truncated()) return base;
        // apply w -> w·1{|w| ≤ η} − shift and merge equal values
        std::vector<std::pair<double, double>> out;
        for (auto [v, p] : base) {
            const double moved = (std::abs(v) <= trunc_eta_ ? v : 0.0) - trunc_shift_;
            bool merged = false;
            for (auto& [ov, op] : out)
                if (ov == moved) { op += p; merged = true; break; }
            if (!merged) out.emplace_back(moved, p);
        }
        return out;
    }

    // One draw of a real entry (used for real ensembles and all diagonals).
    double sample_real(CounterRng& rng) const {
        if (truncated()) {
            const double w = base_law().sample_real(rng);
            return (std::abs(w) <= trunc_eta_ ? w : 0.0) - trunc_shift_;
        }
        switch (family_) {
        case LawFamily::zero: return 0.0;
        case LawFamily::gaussian: return scale_ * rng.normal();
        case LawFamily::rademacher: return scale_ * rng.sign();
        case LawFamily::two_point: {
            const auto at = atoms();
            return rng.u01() < at[0].second ? at[0].first : at[1].first;
        }
        case LawFamily::heavy_tail_cubic: {
            // |X| has CDF 1 − s²/y² on y > s; inverse transform.
            const double mag = scale_ / std::sqrt(rng.u01_pos());
            return rng.sign() * mag;
        }
        }
        return 0.0;
    }

    // One draw of a complex off-diagonal entry: independent components with
    // second moment scale²/2 each.
    std::complex<double> sample_complex(CounterRng& rng) const {
        if (sym_ != SymmetryClass::complex_hermitian)
            throw std::logic_error("sample_complex: real-class law");
        if (truncated()) {
            const std::complex<double> w = base_law().sample_complex(rng);
            return std::abs(w) <= trunc_eta_ ? w : std::complex<double>(0.0, 0.0);
        }
        const double cs = scale_ * 0.70710678118654752440084436210485;
        switch (family_) {
        case LawFamily::zero: return {0.0, 0.0};
        case LawFamily::gaussian: {
            const double re = cs * rng.normal();
            const double im = cs * rng.normal();
            return {re, im};
        }
        case LawFamily::rademacher: {
            const double re = cs * rng.sign();
            const double im = cs * rng.sign();
            return {re, im};
        }
        default:
            throw std::domain_error("sample_complex: unsupported family for complex class");
        }
    }

    friend EntryLaw truncate_center(const EntryLaw& law, double eta);

private:
    EntryLaw(LawFamily family, double scale, SymmetryClass sym)
        : family_(family), scale_(scale), sym_(sym) {
        if (scale < 0.0) throw std::invalid_argument("EntryLaw: negative scale");
        if ((family == LawFamily::two_point || family == LawFamily::heavy_tail_cubic) &&
            sym == SymmetryClass::complex_hermitian)
            throw std::invalid_argument("EntryLaw: family restricted to the real class");
        if (family == LawFamily::heavy_tail_cubic && !(scale > 0.0))
            throw std::invalid_argument("heavy_tail_cubic: scale must be positive");
    }

    EntryLaw base_law() const {
        EntryLaw base = *this;
        base.trunc_eta_ = 0.0;
        base.trunc_shift_ = 0.0;
        return base;
    }

    double moment_from_atoms(int m) const {
        double acc = 0.0;
        for (const auto& [v, p] : atoms()) {
            double pw = 1.0;
            for (int q = 0; q < m; ++q) pw *= v;
            acc += p * pw;
        }
        return acc;
    }

    double window_moment2_from_atoms(double a) const {
        double acc = 0.0;
        for (const auto& [v, p] : atoms())
            if (std::abs(v) <= a) acc += p * v * v;
        return acc;
    }

    double tail_from_atoms(double eps) const {
        double acc = 0.0;
        for (const auto& [v, p] : atoms())
            if (std::abs(v) > eps) acc += p;
        return acc;
    }

    LawFamily family_;
    double scale_;
    SymmetryClass sym_;
    double tp_a_ = 1.0;
    double tp_p_ = 0.5;
    double trunc_eta_ = 0.0;
    double trunc_shift_ = 0.0;
};

// Law of w·1{|w| ≤ eta} − E[w; |w| ≤ eta]. Mean is exactly zero and the
// support radius is at most 2·eta.
inline EntryLaw truncate_center(const EntryLaw& law, double eta) {
    if (!(eta > 0.0)) throw std::invalid_argument("truncate_center: eta <= 0");
    if (law.truncated())
        throw std::logic_error("truncate_center: law already truncated");
    EntryLaw out = law;
    out.trunc_shift_ = law.truncated_mean(eta);
    out.trunc_eta_ = eta;
    if (out.atomic()) {
        // degenerate result (e.g. rademacher with eta < scale) collapses to zero
        const auto at = out.atoms();
        if (at.size() == 1 && at[0].first == 0.0) return EntryLaw::zero(law.symmetry());
    }
    return out;
}

} // namespace wigner
