#pragma once

#include <Eigen/Dense>
#include <Eigen/SVD>
#include <optional>
#include <vector>

#include "lef/scalar.hpp"

namespace lef {

template <class S>
struct Matrix {
    int rows = 0;
    int cols = 0;
    std::vector<S> a;

    Matrix() = default;
    Matrix(int r, int c) : rows(r), cols(c), a(static_cast<size_t>(r) * c, scalar_traits<S>::zero()) {}

    S& operator()(int i, int j) { return a[static_cast<size_t>(i) * cols + j]; }
    const S& operator()(int i, int j) const { return a[static_cast<size_t>(i) * cols + j]; }

    static Matrix identity(int n) {
        Matrix m(n, n);
        for (int i = 0; i < n; ++i) m(i, i) = scalar_traits<S>::one();
        return m;
    }

    Matrix conj_transpose() const {
        Matrix m(cols, rows);
        for (int i = 0; i < rows; ++i)
            for (int j = 0; j < cols; ++j) m(j, i) = scalar_traits<S>::conj((*this)(i, j));
        return m;
    }

    friend Matrix operator*(const Matrix& x, const Matrix& y) {
        Matrix m(x.rows, y.cols);
        for (int i = 0; i < x.rows; ++i)
            for (int k = 0; k < x.cols; ++k) {
                if (scalar_traits<S>::is_zero(x(i, k))) continue;
                for (int j = 0; j < y.cols; ++j) m(i, j) += x(i, k) * y(k, j);
            }
        return m;
    }

    friend bool operator==(const Matrix& x, const Matrix& y) {
        return x.rows == y.rows && x.cols == y.cols && x.a == y.a;
    }
};

struct Signature {
    int n_plus = 0;
    int n_minus = 0;
    int n_zero = 0;

    int dim() const { return n_plus + n_minus + n_zero; }
    bool positive_definite() const { return n_minus == 0 && n_zero == 0; }
    friend bool operator==(const Signature& a, const Signature& b) {
        return a.n_plus == b.n_plus && a.n_minus == b.n_minus && a.n_zero == b.n_zero;
    }
    friend bool operator!=(const Signature& a, const Signature& b) { return !(a == b); }
};

// ---------------------------------------------------------------------------
// Exact routines over the Gaussian-rational field.
// ---------------------------------------------------------------------------

using ExactMatrix = Matrix<GaussianRational>;

/// Row-reduce in place; returns pivot column indices.
inline std::vector<int> rref(ExactMatrix& m) {
    std::vector<int> pivots;
    int row = 0;
    for (int col = 0; col < m.cols && row < m.rows; ++col) {
        int piv = -1;
        for (int r = row; r < m.rows; ++r)
            if (!m(r, col).is_zero()) {
                piv = r;
                break;
            }
        if (piv < 0) continue;
        if (piv != row)
            for (int j = 0; j < m.cols; ++j) std::swap(m(row, j), m(piv, j));
        GaussianRational inv = scalar_traits<GaussianRational>::one() / m(row, col);
        for (int j = col; j < m.cols; ++j) m(row, j) *= inv;
        for (int r = 0; r < m.rows; ++r) {
            if (r == row || m(r, col).is_zero()) continue;
            GaussianRational f = m(r, col);
            for (int j = col; j < m.cols; ++j) m(r, j) -= f * m(row, j);
        }
        pivots.push_back(col);
        ++row;
    }
    return pivots;
}

inline int exact_rank(ExactMatrix m) { return static_cast<int>(rref(m).size()); }

/// Basis of the null space of m (as column vectors of length m.cols).
inline std::vector<std::vector<GaussianRational>> exact_kernel(ExactMatrix m) {
    std::vector<int> pivots = rref(m);
    std::vector<bool> is_pivot(m.cols, false);
    for (int c : pivots) is_pivot[c] = true;
    std::vector<std::vector<GaussianRational>> basis;
    for (int free = 0; free < m.cols; ++free) {
        if (is_pivot[free]) continue;
        std::vector<GaussianRational> v(m.cols);
        v[free] = GaussianRational(1);
        for (size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -m(static_cast<int>(r), free);
        basis.push_back(std::move(v));
    }
    return basis;
}

inline GaussianRational exact_determinant(ExactMatrix m) {
    if (m.rows != m.cols) throw std::invalid_argument("determinant: matrix not square");
    GaussianRational det(1);
    for (int col = 0; col < m.cols; ++col) {
        int piv = -1;
        for (int r = col; r < m.rows; ++r)
            if (!m(r, col).is_zero()) {
                piv = r;
                break;
            }
        if (piv < 0) return GaussianRational();
        if (piv != col) {
            for (int j = 0; j < m.cols; ++j) std::swap(m(col, j), m(piv, j));
            det = -det;
        }
        det *= m(col, col);
        GaussianRational inv = scalar_traits<GaussianRational>::one() / m(col, col);
        for (int r = col + 1; r < m.rows; ++r) {
            if (m(r, col).is_zero()) continue;
            GaussianRational f = m(r, col) * inv;
            for (int j = col; j < m.cols; ++j) m(r, j) -= f * m(col, j);
        }
    }
    return det;
}

/// Signature of an exact Hermitian matrix by congruence diagonalization.
/// Symmetric row/column elimination; when the active diagonal vanishes
/// entirely but an off-diagonal entry a_jk survives, the congruence
/// e_j -> e_j + conj(a_jk) e_k creates the positive pivot 2|a_jk|^2.
inline Signature exact_hermitian_signature(ExactMatrix m) {
    if (m.rows != m.cols) throw std::invalid_argument("signature: matrix not square");
    const int n = m.rows;
    Signature sig;
    std::vector<int> active;
    for (int i = 0; i < n; ++i) active.push_back(i);

    auto add_col = [&](int dst, int src, const GaussianRational& c) {
        // column op C_dst += c * C_src and row op R_dst += conj(c) * R_src
        for (int r = 0; r < n; ++r) m(r, dst) += c * m(r, src);
        GaussianRational cc = c.conj();
        for (int j = 0; j < n; ++j) m(dst, j) += cc * m(src, j);
    };

    while (!active.empty()) {
        int piv = -1;
        for (size_t t = 0; t < active.size(); ++t)
            if (!m(active[t], active[t]).is_zero()) {
                piv = static_cast<int>(t);
                break;
            }
        if (piv < 0) {
            // all active diagonal entries vanish
            int j = -1, k = -1;
            for (size_t s = 0; s < active.size() && j < 0; ++s)
                for (size_t t = s + 1; t < active.size(); ++t)
                    if (!m(active[s], active[t]).is_zero()) {
                        j = active[s];
                        k = active[t];
                        break;
                    }
            if (j < 0) {
                sig.n_zero += static_cast<int>(active.size());
                break;
            }
            add_col(j, k, m(j, k).conj());
            continue;
        }
        int pcol = active[piv];
        GaussianRational d = m(pcol, pcol);
        if (!d.is_real()) throw std::logic_error("signature: non-real diagonal on Hermitian input");
        if (d.re > 0)
            ++sig.n_plus;
        else
            ++sig.n_minus;
        active.erase(active.begin() + piv);
        for (int i : active) {
            GaussianRational f = m(i, pcol);
            if (f.is_zero()) continue;
            add_col(i, pcol, -(f / d).conj());
        }
    }
    return sig;
}

// ---------------------------------------------------------------------------
// Float routines (Eigen-backed), with the tolerance policy:
// rank cutoff at sigma < kRankRelTol * sigma_max; any decision quantity
// within a factor kIndeterminateBand of the cutoff is "indeterminate".
// ---------------------------------------------------------------------------

inline constexpr double kRankRelTol = 1e-9;
inline constexpr double kIndeterminateBand = 10.0;

using FloatMatrix = Matrix<Cplx>;

inline Eigen::MatrixXcd to_eigen(const FloatMatrix& m) {
    Eigen::MatrixXcd e(m.rows, m.cols);
    for (int i = 0; i < m.rows; ++i)
        for (int j = 0; j < m.cols; ++j) e(i, j) = m(i, j);
    return e;
}

struct FloatRankResult {
    int rank = 0;
    bool indeterminate = false;
    double sigma_max = 0.0;
    double sigma_min = 0.0;
    std::vector<std::vector<Cplx>> kernel;  // right singular vectors below cutoff
};

inline FloatRankResult float_rank_kernel(const FloatMatrix& m) {
    FloatRankResult res;
    if (m.rows == 0 || m.cols == 0) {
        res.rank = 0;
        for (int j = 0; j < m.cols; ++j) {
            std::vector<Cplx> v(m.cols, Cplx(0, 0));
            v[j] = Cplx(1, 0);
            res.kernel.push_back(std::move(v));
        }
        return res;
    }
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(to_eigen(m), Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    res.sigma_max = sv.size() ? sv(0) : 0.0;
    res.sigma_min = sv.size() ? sv(sv.size() - 1) : 0.0;
    double cutoff = kRankRelTol * res.sigma_max;
    for (int i = 0; i < sv.size(); ++i) {
        if (sv(i) > cutoff) ++res.rank;
        if (res.sigma_max > 0 && sv(i) > cutoff / kIndeterminateBand && sv(i) < cutoff * kIndeterminateBand)
            res.indeterminate = true;
    }
    for (int j = res.rank; j < m.cols; ++j) {
        std::vector<Cplx> v(m.cols);
        for (int i = 0; i < m.cols; ++i) v[i] = svd.matrixV()(i, j);
        res.kernel.push_back(std::move(v));
    }
    return res;
}

struct FloatSignatureResult {
    Signature sig;
    bool indeterminate = false;
    double min_abs_eigenvalue = 0.0;
    double max_abs_eigenvalue = 0.0;
};

inline FloatSignatureResult float_hermitian_signature(const FloatMatrix& m) {
    FloatSignatureResult res;
    if (m.rows == 0) return res;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(to_eigen(m), Eigen::EigenvaluesOnly);
    const auto& ev = es.eigenvalues();
    double amax = 0.0;
    for (int i = 0; i < ev.size(); ++i) amax = std::max(amax, std::abs(ev(i)));
    res.max_abs_eigenvalue = amax;
    double cutoff = kRankRelTol * amax;
    double amin = std::numeric_limits<double>::infinity();
    for (int i = 0; i < ev.size(); ++i) {
        double v = ev(i);
        amin = std::min(amin, std::abs(v));
        if (std::abs(v) <= cutoff)
            ++res.sig.n_zero;
        else if (v > 0)
            ++res.sig.n_plus;
        else
            ++res.sig.n_minus;
        if (amax > 0 && std::abs(v) > cutoff / kIndeterminateBand && std::abs(v) < cutoff * kIndeterminateBand)
            res.indeterminate = true;
    }
    res.min_abs_eigenvalue = std::isfinite(amin) ? amin : 0.0;
    return res;
}

}  // namespace lef
