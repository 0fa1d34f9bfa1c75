/*
 * profile.hpp — variance profiles σ²ᵢⱼ and the ensemble specification.
 *
 * Built-in kinds (0-based indices i, j; the parity rule below matches the
 * 1-based "i+j even" convention since (i+1)+(j+1) ≡ i+j mod 2):
 *   uniform       σ²ᵢⱼ = v                      (default v = 1/n)
 *   checkerboard  σ²ᵢⱼ = 2/n if i ≡ j (mod 2), else 0
 *   block         σ²ᵢⱼ = 1/n except the off-diagonal entries of the
 *                 bottom-right ⌈n/2⌉×⌈n/2⌉ block, which are 0
 *   custom        dense symmetric array, e.g. loaded from CSV
 *
 * Structured kinds are evaluated lazily so that large n never materializes
 * an n×n array.
 */

#pragma once

#include <cmath>
#include <cstdint>
#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "wigner/entry_law.hpp"

namespace wigner {

enum class ProfileKind { uniform, checkerboard, block, custom };

class VarianceProfile {
public:
    static VarianceProfile uniform(int n, std::optional<double> value = {}) {
        VarianceProfile p(ProfileKind::uniform, n);
        p.value_ = value.value_or(1.0 / n);
        if (p.value_ < 0.0) throw std::invalid_argument("uniform profile: negative value");
        return p;
    }

    static VarianceProfile checkerboard(int n) {
        VarianceProfile p(ProfileKind::checkerboard, n);
        p.value_ = 2.0 / n;
        return p;
    }

    static VarianceProfile block(int n) {
        VarianceProfile p(ProfileKind::block, n);
        p.value_ = 1.0 / n;
        return p;
    }

    static VarianceProfile custom(int n, std::vector<double> sigma2) {
        VarianceProfile p(ProfileKind::custom, n);
        if (sigma2.size() != static_cast<std::size_t>(n) * n)
            throw std::invalid_argument("custom profile: size mismatch");
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                const double v = sigma2[static_cast<std::size_t>(i) * n + j];
                if (!(v >= 0.0) || !std::isfinite(v))
                    throw std::invalid_argument("custom profile: entries must be finite and >= 0");
                if (v != sigma2[static_cast<std::size_t>(j) * n + i])
                    throw std::invalid_argument("custom profile: not symmetric");
            }
        p.dense_ = std::move(sigma2);
        return p;
    }

    // CSV: n rows of n comma-separated nonnegative decimals; exact symmetry
    // required.
    static VarianceProfile load_csv(const std::string& path) {
        std::ifstream in(path);
        if (!in) throw std::runtime_error("cannot open profile file: " + path);
        std::vector<std::vector<double>> rows;
        std::string line;
        while (std::getline(in, line)) {
            if (line.empty()) continue;
            std::vector<double> row;
            std::stringstream ss(line);
            std::string cell;
            while (std::getline(ss, cell, ',')) row.push_back(std::stod(cell));
            rows.push_back(std::move(row));
        }
        const int n = static_cast<int>(rows.size());
        if (n == 0) throw std::runtime_error("profile file is empty: " + path);
        std::vector<double> flat;
        flat.reserve(static_cast<std::size_t>(n) * n);
        for (const auto& row : rows) {
            if (static_cast<int>(row.size()) != n)
                throw std::runtime_error("profile file is not square: " + path);
            flat.insert(flat.end(), row.begin(), row.end());
        }
        return custom(n, std::move(flat));
    }

    int n() const { return n_; }
    ProfileKind kind() const { return kind_; }

    double operator()(int i, int j) const {
        switch (kind_) {
        case ProfileKind::uniform: return value_;
        case ProfileKind::checkerboard: return ((i ^ j) & 1) ? 0.0 : value_;
        case ProfileKind::block: {
            const int top = n_ / 2;
            return (i >= top && j >= top && i != j) ? 0.0 : value_;
        }
        case ProfileKind::custom:
            return dense_[static_cast<std::size_t>(i) * n_ + j];
        }
        return 0.0;
    }

    // Σⱼ σ²ᵢⱼ
    double row_sum(int i) const {
        switch (kind_) {
        case ProfileKind::uniform: return value_ * n_;
        case ProfileKind::checkerboard: {
            const int same_parity = (i & 1) ? n_ / 2 : (n_ + 1) / 2;
            return value_ * same_parity;
        }
        case ProfileKind::block: {
            const int top = n_ / 2;
            return i < top ? value_ * n_ : value_ * (top + 1);
        }
        case ProfileKind::custom: {
            long double acc = 0.0L;
            for (int j = 0; j < n_; ++j)
                acc += dense_[static_cast<std::size_t>(i) * n_ + j];
            return static_cast<double>(acc);
        }
        }
        return 0.0;
    }

    double max_sigma2() const {
        if (kind_ != ProfileKind::custom) return value_;
        double m = 0.0;
        for (double v : dense_) m = std::max(m, v);
        return m;
    }

    double max_row_sum() const {
        double m = 0.0;
        for (int i = 0; i < n_; ++i) m = std::max(m, row_sum(i));
        return m;
    }

    // Class model behind the structured kinds: σ²ᵢⱼ depends only on the
    // classes of i and j (the block profile's diagonal exception is invisible
    // to injective tree maps). Empty for custom profiles.
    struct ClassModel {
        std::vector<std::int64_t> sizes;     // indices per class
        std::vector<double> weight;          // r×r, row-major
        double w(int a, int b) const { return weight[a * sizes.size() + b]; }
    };

    std::optional<ClassModel> class_model() const {
        ClassModel m;
        switch (kind_) {
        case ProfileKind::uniform:
            m.sizes = {n_};
            m.weight = {value_};
            return m;
        case ProfileKind::checkerboard:
            m.sizes = {(n_ + 1) / 2, n_ / 2}; // even, odd 0-based indices
            m.weight = {value_, 0.0, 0.0, value_};
            return m;
        case ProfileKind::block:
            m.sizes = {n_ / 2, n_ - n_ / 2};
            m.weight = {value_, value_, value_, 0.0};
            return m;
        case ProfileKind::custom: return std::nullopt;
        }
        return std::nullopt;
    }

private:
    VarianceProfile(ProfileKind kind, int n) : kind_(kind), n_(n) {
        if (n < 1) throw std::invalid_argument("VarianceProfile: n must be >= 1");
    }

    ProfileKind kind_;
    int n_;
    double value_ = 0.0;
    std::vector<double> dense_;
};

struct ProfileParams {
    std::optional<double> uniform_value;   // uniform only
    std::optional<std::string> csv_path;   // custom only
    std::optional<std::vector<double>> dense; // custom only
};

inline VarianceProfile build_profile(ProfileKind kind, int n,
                                     const ProfileParams& params = {}) {
    switch (kind) {
    case ProfileKind::uniform: return VarianceProfile::uniform(n, params.uniform_value);
    case ProfileKind::checkerboard: return VarianceProfile::checkerboard(n);
    case ProfileKind::block: return VarianceProfile::block(n);
    case ProfileKind::custom:
        if (params.csv_path) return VarianceProfile::load_csv(*params.csv_path);
        if (params.dense) return VarianceProfile::custom(n, *params.dense);
        throw std::invalid_argument("custom profile: no source given");
    }
    throw std::invalid_argument("build_profile: unknown kind");
}

inline ProfileKind profile_kind_from_string(const std::string& s) {
    if (s == "uniform") return ProfileKind::uniform;
    if (s == "checkerboard") return ProfileKind::checkerboard;
    if (s == "block") return ProfileKind::block;
    if (s == "custom") return ProfileKind::custom;
    throw std::invalid_argument("unknown profile kind: " + s);
}

// Full sampling specification: (spec, seed, trial) determines a sample
// bit-exactly. An optional ensemble-level truncation threshold applies the
// reduction w ↦ w·1{|w| ≤ η} − E[w; |w| ≤ η] to every (scaled) entry.
struct EnsembleSpec {
    VarianceProfile profile;
    EntryLaw law;          // untruncated template; per-entry scale from profile
    std::uint64_t seed = 1;
    std::optional<double> truncation_eta;

    int n() const { return profile.n(); }
    SymmetryClass symmetry() const { return law.symmetry(); }

    EntryLaw entry_law(int i, int j) const {
        EntryLaw l = law.with_scale(std::sqrt(profile(i, j)));
        if (truncation_eta) return truncate_center(l, *truncation_eta);
        return l;
    }

    // Diagonal entries are real with second moment σ²ᵢᵢ for both classes.
    EntryLaw diagonal_law(int i) const {
        EntryLaw l = law.as_real().with_scale(std::sqrt(profile(i, i)));
        if (truncation_eta) return truncate_center(l, *truncation_eta);
        return l;
    }
};

} // namespace wigner
