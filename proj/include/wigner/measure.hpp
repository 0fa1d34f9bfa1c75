/*
 * measure.hpp — finite probability measures on the line (sorted atoms with
 * positive weights summing to one). The representation of empirical and
 * pooled mean spectral distributions.
 */

#pragma once

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace wigner {

class StepMeasure {
public:
    // Equal-weight measure on the given points; exact duplicates coalesce.
    static StepMeasure from_points(std::vector<double> pts) {
        if (pts.empty()) throw std::invalid_argument("StepMeasure: no points");
        std::sort(pts.begin(), pts.end());
        const double w = 1.0 / static_cast<double>(pts.size());
        StepMeasure m;
        m.atoms_.reserve(pts.size());
        m.weights_.reserve(pts.size());
        std::size_t i = 0;
        while (i < pts.size()) {
            std::size_t j = i;
            while (j < pts.size() && pts[j] == pts[i]) ++j;
            m.atoms_.push_back(pts[i]);
            m.weights_.push_back(w * static_cast<double>(j - i));
            i = j;
        }
        m.finalize();
        return m;
    }

    static StepMeasure from_weighted(std::vector<std::pair<double, double>> pts) {
        if (pts.empty()) throw std::invalid_argument("StepMeasure: no points");
        std::sort(pts.begin(), pts.end());
        StepMeasure m;
        std::size_t i = 0;
        while (i < pts.size()) {
            std::size_t j = i;
            double w = 0.0;
            while (j < pts.size() && pts[j].first == pts[i].first) w += pts[j++].second;
            if (!(w > 0.0)) throw std::invalid_argument("StepMeasure: nonpositive weight");
            m.atoms_.push_back(pts[i].first);
            m.weights_.push_back(w);
            i = j;
        }
        m.finalize();
        return m;
    }

    static StepMeasure point_mass(double x) { return from_points({x}); }

    const std::vector<double>& atoms() const { return atoms_; }
    const std::vector<double>& weights() const { return weights_; }
    std::size_t size() const { return atoms_.size(); }

    // Right-continuous distribution function.
    double cdf(double x) const {
        const auto it = std::upper_bound(atoms_.begin(), atoms_.end(), x);
        const std::size_t k = static_cast<std::size_t>(it - atoms_.begin());
        return k == 0 ? 0.0 : cum_[k - 1];
    }

    // Left limit F(x−).
    double cdf_left(double x) const {
        const auto it = std::lower_bound(atoms_.begin(), atoms_.end(), x);
        const std::size_t k = static_cast<std::size_t>(it - atoms_.begin());
        return k == 0 ? 0.0 : cum_[k - 1];
    }

    // ∫ xᵏ dμ with compensated (Kahan) summation.
    double moment(int k) const {
        if (k < 0) throw std::invalid_argument("moment: k < 0");
        double sum = 0.0, comp = 0.0;
        for (std::size_t i = 0; i < atoms_.size(); ++i) {
            double term = weights_[i];
            for (int q = 0; q < k; ++q) term *= atoms_[i];
            const double y = term - comp;
            const double t = sum + y;
            comp = (t - sum) - y;
            sum = t;
        }
        return sum;
    }

    // ∫ f dμ for an arbitrary function of the atom.
    template <class F>
    double integrate(F&& f) const {
        double sum = 0.0, comp = 0.0;
        for (std::size_t i = 0; i < atoms_.size(); ++i) {
            const double term = weights_[i] * f(atoms_[i]);
            const double y = term - comp;
            const double t = sum + y;
            comp = (t - sum) - y;
            sum = t;
        }
        return sum;
    }

private:
    void finalize() {
        long double total = 0.0L;
        cum_.resize(weights_.size());
        for (std::size_t i = 0; i < weights_.size(); ++i) {
            total += weights_[i];
            cum_[i] = static_cast<double>(total);
        }
        if (std::abs(static_cast<double>(total) - 1.0) > 1e-12)
            throw std::invalid_argument("StepMeasure: weights must sum to 1");
        cum_.back() = 1.0;
    }

    std::vector<double> atoms_;
    std::vector<double> weights_;
    std::vector<double> cum_;
};

} // namespace wigner
