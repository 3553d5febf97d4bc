#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "lef/linalg.hpp"
#include "lef/scalar.hpp"

namespace lef {

/// Strictly increasing subset of {1..n}; indexes the basis form dz_I.
using MultiIndex = std::vector<int>;

inline long binomial(int n, int k) {
    if (k < 0 || k > n) return 0;
    long r = 1;
    for (int i = 0; i < k; ++i) r = r * (n - i) / (i + 1);
    return r;
}

/// All k-subsets of {1..n} in lexicographic order.
inline std::vector<MultiIndex> combinations(int n, int k) {
    std::vector<MultiIndex> out;
    MultiIndex cur;
    auto rec = [&](auto&& self, int start) -> void {
        if (static_cast<int>(cur.size()) == k) {
            out.push_back(cur);
            return;
        }
        for (int v = start; v <= n; ++v) {
            cur.push_back(v);
            self(self, v + 1);
            cur.pop_back();
        }
    };
    rec(rec, 1);
    return out;
}

struct Merge {
    MultiIndex merged;
    int sign = 1;       // permutation sign sorting the concatenation
    bool disjoint = true;
};

/// Merge two sorted multi-indices; sign counts the transpositions needed
/// to sort a ++ b.
inline Merge merge_indices(const MultiIndex& a, const MultiIndex& b) {
    Merge m;
    m.merged.reserve(a.size() + b.size());
    size_t i = 0, j = 0;
    int passed_from_a = static_cast<int>(a.size());
    int inversions = 0;
    while (i < a.size() && j < b.size()) {
        if (a[i] == b[j]) {
            m.disjoint = false;
            return m;
        }
        if (a[i] < b[j]) {
            m.merged.push_back(a[i++]);
            --passed_from_a;
        } else {
            m.merged.push_back(b[j++]);
            inversions += passed_from_a;
        }
    }
    while (i < a.size()) m.merged.push_back(a[i++]);
    while (j < b.size()) m.merged.push_back(b[j++]);
    m.sign = (inversions % 2 == 0) ? 1 : -1;
    return m;
}

using BasisKey = std::pair<MultiIndex, MultiIndex>;

/// Ordered basis of H^{p,q}: pairs (I, J) lexicographic in (I, J).
inline std::vector<BasisKey> basis(int n, int p, int q) {
    if (n < 0 || p < 0 || q < 0 || p > n || q > n)
        throw std::invalid_argument("basis: bidegree out of range");
    std::vector<BasisKey> out;
    out.reserve(static_cast<size_t>(binomial(n, p) * binomial(n, q)));
    for (const auto& I : combinations(n, p))
        for (const auto& J : combinations(n, q)) out.emplace_back(I, J);
    return out;
}

/// n x n matrix A housing the (1,1) class omega_A = i * sum A_jk dz_j dz~_k.
/// PSD <=> nef on the torus.
template <class S>
struct HermitianForm {
    int n = 0;
    Matrix<S> a;

    HermitianForm() = default;
    explicit HermitianForm(int dim) : n(dim), a(dim, dim) {}
    HermitianForm(int dim, Matrix<S> m) : n(dim), a(std::move(m)) {
        if (a.rows != n || a.cols != n) throw std::invalid_argument("HermitianForm: matrix size mismatch");
    }

    static HermitianForm identity(int dim) { return {dim, Matrix<S>::identity(dim)}; }
    static HermitianForm diagonal(const std::vector<long>& d) {
        HermitianForm f(static_cast<int>(d.size()));
        for (size_t i = 0; i < d.size(); ++i) f.a(static_cast<int>(i), static_cast<int>(i)) = scalar_traits<S>::from_int(d[i]);
        return f;
    }

    bool is_hermitian() const {
        for (int i = 0; i < n; ++i)
            for (int j = 0; j <= i; ++j) {
                S d = a(i, j) - scalar_traits<S>::conj(a(j, i));
                if constexpr (scalar_traits<S>::exact) {
                    if (!scalar_traits<S>::is_zero(d)) return false;
                } else {
                    double scale = std::max(scalar_traits<S>::abs(a(i, j)), scalar_traits<S>::abs(a(j, i)));
                    if (scalar_traits<S>::abs(d) > 1e-12 * std::max(scale, 1.0)) return false;
                }
            }
        return true;
    }

    friend HermitianForm operator+(const HermitianForm& x, const HermitianForm& y) {
        if (x.n != y.n) throw std::invalid_argument("HermitianForm: dimension mismatch");
        HermitianForm f(x.n);
        for (int i = 0; i < x.n; ++i)
            for (int j = 0; j < x.n; ++j) f.a(i, j) = x.a(i, j) + y.a(i, j);
        return f;
    }

    HermitianForm scaled(const S& c) const {
        HermitianForm f(n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) f.a(i, j) = c * a(i, j);
        return f;
    }
};

/// Sparse (p,q)-class on an n-torus: coefficients over the dz_I dz~_J basis.
/// Absent key = zero coefficient.
template <class S>
struct ExteriorClass {
    int n = 0;
    int p = 0;
    int q = 0;
    std::map<BasisKey, S> coeffs;

    ExteriorClass() = default;
    ExteriorClass(int n_, int p_, int q_) : n(n_), p(p_), q(q_) {
        if (p < 0 || q < 0 || p > n || q > n) throw std::invalid_argument("ExteriorClass: bidegree out of range");
    }

    static ExteriorClass one(int n_) {
        ExteriorClass c(n_, 0, 0);
        c.coeffs[{{}, {}}] = scalar_traits<S>::one();
        return c;
    }

    bool is_zero() const { return coeffs.empty(); }

    S coeff(const MultiIndex& I, const MultiIndex& J) const {
        auto it = coeffs.find({I, J});
        return it == coeffs.end() ? scalar_traits<S>::zero() : it->second;
    }

    void add_coeff(const BasisKey& key, const S& c) {
        auto it = coeffs.find(key);
        if (it == coeffs.end()) {
            if (!scalar_traits<S>::is_zero(c)) coeffs.emplace(key, c);
            return;
        }
        it->second += c;
        if (scalar_traits<S>::is_zero(it->second)) coeffs.erase(it);
    }

    ExteriorClass scaled(const S& c) const {
        ExteriorClass out(n, p, q);
        if (scalar_traits<S>::is_zero(c)) return out;
        for (const auto& [key, v] : coeffs) {
            S w = c * v;
            if (!scalar_traits<S>::is_zero(w)) out.coeffs.emplace(key, w);
        }
        return out;
    }

    friend ExteriorClass operator+(const ExteriorClass& x, const ExteriorClass& y) {
        if (x.n != y.n || x.p != y.p || x.q != y.q)
            throw std::invalid_argument("ExteriorClass: bidegree mismatch in addition");
        ExteriorClass out = x;
        for (const auto& [key, v] : y.coeffs) out.add_coeff(key, v);
        return out;
    }

    friend bool operator==(const ExteriorClass& x, const ExteriorClass& y) {
        return x.n == y.n && x.p == y.p && x.q == y.q && x.coeffs == y.coeffs;
    }
};

/// The (1,1) class of a Hermitian matrix: coefficient i*A_jk at ({j},{k}).
template <class S>
ExteriorClass<S> from_hermitian(const HermitianForm<S>& A) {
    if (!A.is_hermitian()) throw std::invalid_argument("from_hermitian: matrix is not Hermitian");
    ExteriorClass<S> c(A.n, 1, 1);
    const S i_unit = scalar_traits<S>::i_power(1);
    for (int j = 0; j < A.n; ++j)
        for (int k = 0; k < A.n; ++k) {
            S v = i_unit * A.a(j, k);
            if (!scalar_traits<S>::is_zero(v)) c.coeffs[{{j + 1}, {k + 1}}] = v;
        }
    return c;
}

/// Wedge product. Over-degree products yield the zero class of clipped
/// bidegree so that long (1,1) products compose mechanically.
template <class S>
ExteriorClass<S> wedge(const ExteriorClass<S>& x, const ExteriorClass<S>& y) {
    if (x.n != y.n) throw std::invalid_argument("wedge: dimension mismatch");
    int p = std::min(x.p + y.p, x.n);
    int q = std::min(x.q + y.q, x.n);
    ExteriorClass<S> out(x.n, p, q);
    if (x.p + y.p > x.n || x.q + y.q > x.n) return out;
    const int cross_parity = (x.q * y.p) % 2;  // dz~_J passing dz_K
    for (const auto& [kx, cx] : x.coeffs) {
        for (const auto& [ky, cy] : y.coeffs) {
            Merge mi = merge_indices(kx.first, ky.first);
            if (!mi.disjoint) continue;
            Merge mj = merge_indices(kx.second, ky.second);
            if (!mj.disjoint) continue;
            int sgn = mi.sign * mj.sign * (cross_parity ? -1 : 1);
            S c = cx * cy;
            if (sgn < 0) c = -c;
            out.add_coeff({std::move(mi.merged), std::move(mj.merged)}, c);
        }
    }
    return out;
}

template <class S>
ExteriorClass<S> wedge_all(const std::vector<ExteriorClass<S>>& xs, int n) {
    ExteriorClass<S> acc = ExteriorClass<S>::one(n);
    for (const auto& x : xs) acc = wedge(acc, x);
    return acc;
}

/// Complex conjugation: (p,q) -> (q,p), coefficient c at (I,J) maps to
/// conj(c) * (-1)^{pq} at (J,I).
template <class S>
ExteriorClass<S> conjugate(const ExteriorClass<S>& x) {
    ExteriorClass<S> out(x.n, x.q, x.p);
    const bool flip = (x.p * x.q) % 2 != 0;
    for (const auto& [key, c] : x.coeffs) {
        S v = scalar_traits<S>::conj(c);
        if (flip) v = -v;
        out.coeffs[{key.second, key.first}] = v;
    }
    return out;
}

/// Integration over the torus, normalized so that the wedge of the n
/// standard Kaehler factors i dz_k dz~_k integrates to 1. With this
/// normalization, integrate(omega_A1 ... omega_An) = n! * D(A1,...,An).
template <class S>
S integrate(const ExteriorClass<S>& x) {
    if (x.p != x.n || x.q != x.n) throw std::invalid_argument("integrate: class is not of bidegree (n,n)");
    MultiIndex full;
    for (int i = 1; i <= x.n; ++i) full.push_back(i);
    S c = x.coeff(full, full);
    S factor = scalar_traits<S>::i_power(-x.n);
    if ((static_cast<long>(x.n) * (x.n - 1) / 2) % 2 != 0) factor = -factor;
    return c * factor;
}

}  // namespace lef
