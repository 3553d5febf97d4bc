#pragma once

// Test-only helpers: independent brute-force oracles and random generators.
// Nothing here may call into the code path it is used to check.

#include <cstdlib>
#include <string>
#include <vector>

#include "lef/exterior.hpp"
#include "lef/torus.hpp"

namespace lef::test {

// ---------------------------------------------------------------------------
// Word-based wedge oracle: a monomial is the full ordered list of odd
// generators (dz_i or dz~_i); wedging is concatenation and the sign comes
// from bubble-sorting into canonical order. Independent of merge_indices.
// ---------------------------------------------------------------------------

struct Generator {
    bool bar = false;  // dz~ vs dz
    int index = 0;

    friend bool operator<(const Generator& a, const Generator& b) {
        if (a.bar != b.bar) return !a.bar;  // all dz before all dz~
        return a.index < b.index;
    }
    friend bool operator==(const Generator& a, const Generator& b) {
        return a.bar == b.bar && a.index == b.index;
    }
};

/// Sorts the word in place, returns the permutation sign, or 0 when a
/// generator repeats.
inline int sort_word(std::vector<Generator>& w) {
    int sign = 1;
    for (size_t i = 0; i < w.size(); ++i)
        for (size_t j = 0; j + 1 < w.size() - i; ++j) {
            if (w[j + 1] < w[j]) {
                std::swap(w[j], w[j + 1]);
                sign = -sign;
            } else if (w[j] == w[j + 1]) {
                return 0;
            }
        }
    for (size_t j = 0; j + 1 < w.size(); ++j)
        if (w[j] == w[j + 1]) return 0;
    return sign;
}

inline std::vector<Generator> key_to_word(const BasisKey& key) {
    std::vector<Generator> w;
    for (int i : key.first) w.push_back({false, i});
    for (int j : key.second) w.push_back({true, j});
    return w;
}

inline ExteriorClass<GaussianRational> naive_wedge(const ExteriorClass<GaussianRational>& x,
                                                   const ExteriorClass<GaussianRational>& y) {
    int p = std::min(x.p + y.p, x.n);
    int q = std::min(x.q + y.q, x.n);
    ExteriorClass<GaussianRational> out(x.n, p, q);
    if (x.p + y.p > x.n || x.q + y.q > x.n) return out;
    for (const auto& [kx, cx] : x.coeffs)
        for (const auto& [ky, cy] : y.coeffs) {
            std::vector<Generator> w = key_to_word(kx);
            std::vector<Generator> wy = key_to_word(ky);
            w.insert(w.end(), wy.begin(), wy.end());
            int sign = sort_word(w);
            if (sign == 0) continue;
            MultiIndex I, J;
            for (const Generator& g : w) (g.bar ? J : I).push_back(g.index);
            GaussianRational c = cx * cy;
            if (sign < 0) c = -c;
            out.add_coeff({I, J}, c);
        }
    return out;
}

/// Cofactor-expansion determinant; independent of the elimination path.
inline GaussianRational cofactor_determinant(const Matrix<GaussianRational>& m) {
    const int n = m.rows;
    if (n == 0) return GaussianRational(1);
    if (n == 1) return m(0, 0);
    GaussianRational acc;
    for (int j = 0; j < n; ++j) {
        if (m(0, j).is_zero()) continue;
        Matrix<GaussianRational> minor(n - 1, n - 1);
        for (int r = 1; r < n; ++r) {
            int cc = 0;
            for (int c = 0; c < n; ++c) {
                if (c == j) continue;
                minor(r - 1, cc++) = m(r, c);
            }
        }
        GaussianRational term = m(0, j) * cofactor_determinant(minor);
        if (j % 2 != 0) term = -term;
        acc += term;
    }
    return acc;
}

// ---------------------------------------------------------------------------
// Random generators (exact mode).
// ---------------------------------------------------------------------------

inline GaussianRational random_gauss_int(SplitMix64& rng, long lo = -3, long hi = 3) {
    return {Rat(rng.range(lo, hi)), Rat(rng.range(lo, hi))};
}

inline ExteriorClass<GaussianRational> random_class(SplitMix64& rng, int n, int p, int q,
                                                    int terms = 3) {
    ExteriorClass<GaussianRational> x(n, p, q);
    auto keys = basis(n, p, q);
    for (int t = 0; t < terms; ++t) {
        const BasisKey& k = keys[rng.below(keys.size())];
        x.add_coeff(k, random_gauss_int(rng));
    }
    return x;
}

/// Random bidegree with p + q <= cap.
inline std::pair<int, int> random_bidegree(SplitMix64& rng, int n, int cap) {
    for (;;) {
        int p = static_cast<int>(rng.below(static_cast<uint64_t>(n + 1)));
        int q = static_cast<int>(rng.below(static_cast<uint64_t>(n + 1)));
        if (p + q <= cap) return {p, q};
    }
}

inline std::string env_or(const char* name, const std::string& fallback) {
    const char* v = std::getenv(name);
    return v ? v : fallback;
}

}  // namespace lef::test
