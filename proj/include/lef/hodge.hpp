#pragma once

#include <string>
#include <vector>

#include "lef/exterior.hpp"
#include "lef/linalg.hpp"

namespace lef {

enum class Verdict { holds, fails, indeterminate };

inline const char* to_string(Verdict v) {
    switch (v) {
        case Verdict::holds: return "holds";
        case Verdict::fails: return "fails";
        default: return "indeterminate";
    }
}

/// c_{p,q} = i^{q-p} * (-1)^{(p+q)(p+q+1)/2}, always a unit.
template <class S>
S c_constant(int p, int q) {
    if (p < 0 || q < 0) throw std::invalid_argument("c_constant: negative bidegree");
    S v = scalar_traits<S>::i_power(q - p);
    long e = static_cast<long>(p + q) * (p + q + 1) / 2;
    if (e % 2 != 0) v = -v;
    return v;
}

template <class S>
std::vector<S> class_to_vector(const ExteriorClass<S>& x, const std::vector<BasisKey>& basis_keys) {
    std::vector<S> v(basis_keys.size(), scalar_traits<S>::zero());
    for (size_t i = 0; i < basis_keys.size(); ++i) v[i] = x.coeff(basis_keys[i].first, basis_keys[i].second);
    return v;
}

template <class S>
ExteriorClass<S> vector_to_class(const std::vector<S>& v, int n, int p, int q) {
    auto keys = basis(n, p, q);
    ExteriorClass<S> x(n, p, q);
    for (size_t i = 0; i < keys.size(); ++i)
        if (!scalar_traits<S>::is_zero(v[i])) x.coeffs[keys[i]] = v[i];
    return x;
}

/// Matrix of phi -> Omega ^ phi from H^{p,q} to H^{p+dp,q+dq} in basis order.
/// If the target degree overflows n, the map is the zero map into a
/// zero-dimensional space (0 x dim matrix).
template <class S>
Matrix<S> multiplication_matrix(const ExteriorClass<S>& omega, int n, int p, int q) {
    auto src = basis(n, p, q);
    int tp = p + omega.p;
    int tq = q + omega.q;
    if (tp > n || tq > n) return Matrix<S>(0, static_cast<int>(src.size()));
    auto dst = basis(n, tp, tq);
    Matrix<S> m(static_cast<int>(dst.size()), static_cast<int>(src.size()));
    for (size_t j = 0; j < src.size(); ++j) {
        ExteriorClass<S> bj(n, p, q);
        bj.coeffs[src[j]] = scalar_traits<S>::one();
        ExteriorClass<S> img = wedge(omega, bj);
        for (size_t i = 0; i < dst.size(); ++i) {
            S c = img.coeff(dst[i].first, dst[i].second);
            if (!scalar_traits<S>::is_zero(c)) m(static_cast<int>(i), static_cast<int>(j)) = c;
        }
    }
    return m;
}

/// Multiplication by Omega = omega_{A_1} ... omega_{A_k}, k = n - p - q,
/// as a square matrix H^{p,q} -> H^{n-q,n-p}.
template <class S>
struct LefschetzOperator {
    int n = 0;
    int p = 0;
    int q = 0;
    std::vector<HermitianForm<S>> factors;
    Matrix<S> matrix;
};

template <class S>
ExteriorClass<S> product_class(const std::vector<HermitianForm<S>>& factors, int n) {
    ExteriorClass<S> omega = ExteriorClass<S>::one(n);
    for (const auto& f : factors) {
        if (f.n != n) throw std::invalid_argument("product_class: factor dimension mismatch");
        omega = wedge(omega, from_hermitian(f));
    }
    return omega;
}

template <class S>
LefschetzOperator<S> lefschetz_operator(const std::vector<HermitianForm<S>>& factors, int n, int p, int q) {
    if (p < 0 || q < 0 || p + q > n) throw std::invalid_argument("lefschetz_operator: bidegree out of range");
    if (static_cast<int>(factors.size()) != n - p - q)
        throw std::invalid_argument("lefschetz_operator: factor count must equal n - p - q");
    LefschetzOperator<S> op;
    op.n = n;
    op.p = p;
    op.q = q;
    op.factors = factors;
    op.matrix = multiplication_matrix(product_class(factors, n), n, p, q);
    return op;
}

template <class S>
struct HlResult {
    Verdict verdict = Verdict::fails;
    std::vector<S> kernel_witness;  // nonzero kernel vector on failure
    double sigma_min = 0.0;         // float mode only
    double sigma_max = 0.0;
};

template <class S>
HlResult<S> hl_check(const LefschetzOperator<S>& op) {
    HlResult<S> res;
    if constexpr (scalar_traits<S>::exact) {
        auto ker = exact_kernel(op.matrix);
        if (ker.empty()) {
            res.verdict = Verdict::holds;
        } else {
            res.verdict = Verdict::fails;
            res.kernel_witness = ker.front();
        }
    } else {
        FloatRankResult fr = float_rank_kernel(op.matrix);
        res.sigma_min = fr.sigma_min;
        res.sigma_max = fr.sigma_max;
        if (fr.indeterminate) {
            res.verdict = Verdict::indeterminate;
        } else if (fr.rank == op.matrix.cols) {
            res.verdict = Verdict::holds;
        } else {
            res.verdict = Verdict::fails;
            if (!fr.kernel.empty()) res.kernel_witness = fr.kernel.front();
        }
    }
    return res;
}

/// Gram matrix of Q(phi, psi) = c_{p,q} integral(Omega ^ phi ^ conj(psi)).
template <class S>
struct HRGram {
    int n = 0;
    int p = 0;
    int q = 0;
    Matrix<S> gram;  // gram(a,b) = Q(basis_a, basis_b)
};

template <class S>
HRGram<S> hr_gram(const std::vector<HermitianForm<S>>& factors, int n, int p, int q) {
    if (static_cast<int>(factors.size()) != n - p - q)
        throw std::invalid_argument("hr_gram: factor count must equal n - p - q");
    auto keys = basis(n, p, q);
    const int d = static_cast<int>(keys.size());
    ExteriorClass<S> omega = product_class(factors, n);
    S c = c_constant<S>(p, q);

    HRGram<S> g;
    g.n = n;
    g.p = p;
    g.q = q;
    g.gram = Matrix<S>(d, d);

    std::vector<ExteriorClass<S>> omega_ba(d);
    std::vector<ExteriorClass<S>> conj_bb(d);
    for (int a = 0; a < d; ++a) {
        ExteriorClass<S> ba(n, p, q);
        ba.coeffs[keys[a]] = scalar_traits<S>::one();
        omega_ba[a] = wedge(omega, ba);
        conj_bb[a] = conjugate(ba);
    }
    for (int a = 0; a < d; ++a)
        for (int b = 0; b < d; ++b) g.gram(a, b) = c * integrate(wedge(omega_ba[a], conj_bb[b]));

    // Hermitianity check (construction invariant)
    for (int a = 0; a < d; ++a)
        for (int b = 0; b <= a; ++b) {
            S diff = g.gram(a, b) - scalar_traits<S>::conj(g.gram(b, a));
            if constexpr (scalar_traits<S>::exact) {
                if (!scalar_traits<S>::is_zero(diff)) throw std::logic_error("hr_gram: gram is not Hermitian");
            } else {
                double scale = std::max({scalar_traits<S>::abs(g.gram(a, b)), scalar_traits<S>::abs(g.gram(b, a)), 1.0});
                if (scalar_traits<S>::abs(diff) > 1e-10 * scale) throw std::logic_error("hr_gram: gram is not Hermitian");
            }
        }
    return g;
}

/// Basis of prim^{p,q} = ker(Omega * omega_M : H^{p,q} -> H^{n-q+1,n-p+1}).
/// When the target degree overflows n the map is zero and the whole space
/// is primitive.
template <class S>
std::vector<std::vector<S>> primitive_subspace(const std::vector<HermitianForm<S>>& factors,
                                               const HermitianForm<S>& M, int n, int p, int q) {
    if (static_cast<int>(factors.size()) != n - p - q)
        throw std::invalid_argument("primitive_subspace: factor count must equal n - p - q");
    ExteriorClass<S> omega_m = wedge(product_class(factors, n), from_hermitian(M));
    Matrix<S> t = multiplication_matrix(omega_m, n, p, q);
    if constexpr (scalar_traits<S>::exact) {
        return exact_kernel(t);
    } else {
        return float_rank_kernel(t).kernel;
    }
}

/// Q restricted to the span of the given coefficient vectors:
/// R(a,b) = Q(w_a, w_b) = w_a^T G conj(w_b).
template <class S>
Matrix<S> restrict_gram(const Matrix<S>& gram, const std::vector<std::vector<S>>& vectors) {
    const int k = static_cast<int>(vectors.size());
    const int d = gram.rows;
    Matrix<S> r(k, k);
    for (int a = 0; a < k; ++a)
        for (int b = 0; b < k; ++b) {
            S acc = scalar_traits<S>::zero();
            for (int i = 0; i < d; ++i) {
                if (scalar_traits<S>::is_zero(vectors[a][i])) continue;
                for (int j = 0; j < d; ++j)
                    acc += vectors[a][i] * gram(i, j) * scalar_traits<S>::conj(vectors[b][j]);
            }
            r(a, b) = acc;
        }
    return r;
}

struct HrCheckResult {
    Signature signature;               // of Q on the primitive subspace
    Verdict positive_definite = Verdict::fails;
    int dim_primitive = 0;
    double min_abs_eigenvalue = 0.0;   // float mode only
    double max_abs_eigenvalue = 0.0;
};

template <class S>
HrCheckResult hr_check(const std::vector<HermitianForm<S>>& factors, const HermitianForm<S>& M,
                       int n, int p, int q) {
    auto prim = primitive_subspace(factors, M, n, p, q);
    HRGram<S> g = hr_gram(factors, n, p, q);
    Matrix<S> r = restrict_gram(g.gram, prim);
    HrCheckResult res;
    res.dim_primitive = static_cast<int>(prim.size());
    if constexpr (scalar_traits<S>::exact) {
        res.signature = exact_hermitian_signature(r);
        res.positive_definite = res.signature.positive_definite() ? Verdict::holds : Verdict::fails;
    } else {
        FloatSignatureResult fs = float_hermitian_signature(r);
        res.signature = fs.sig;
        res.min_abs_eigenvalue = fs.min_abs_eigenvalue;
        res.max_abs_eigenvalue = fs.max_abs_eigenvalue;
        if (fs.indeterminate)
            res.positive_definite = Verdict::indeterminate;
        else
            res.positive_definite = res.signature.positive_definite() ? Verdict::holds : Verdict::fails;
    }
    return res;
}

struct DecompositionReport {
    int dim_total = 0;
    int dim_primitive = 0;
    int dim_image = 0;
    int dim_image_expected = 0;  // h^{p-1,q-1}
    bool dims_sum = false;
    bool image_full = false;
    bool trivial_intersection = false;
    bool q_orthogonal = false;
    bool holds = false;
};

/// Verifies H^{p,q} = prim^{p,q} + omega_M ^ H^{p-1,q-1} as a Q-orthogonal
/// direct sum. H^{p-1,q-1} is {0} when p = 0 or q = 0.
template <class S>
DecompositionReport orthogonal_decomposition_check(const std::vector<HermitianForm<S>>& factors,
                                                   const HermitianForm<S>& M, int n, int p, int q) {
    DecompositionReport rep;
    auto prim = primitive_subspace(factors, M, n, p, q);
    HRGram<S> g = hr_gram(factors, n, p, q);
    const int d = g.gram.rows;
    rep.dim_total = d;
    rep.dim_primitive = static_cast<int>(prim.size());

    std::vector<std::vector<S>> image_cols;
    if (p >= 1 && q >= 1) {
        rep.dim_image_expected = static_cast<int>(binomial(n, p - 1) * binomial(n, q - 1));
        Matrix<S> mmat = multiplication_matrix(from_hermitian(M), n, p - 1, q - 1);
        for (int j = 0; j < mmat.cols; ++j) {
            std::vector<S> col(d);
            for (int i = 0; i < d; ++i) col[i] = mmat(i, j);
            image_cols.push_back(std::move(col));
        }
    }

    // column-space dimension of the image and of prim + image
    auto stack = [&](const std::vector<std::vector<S>>& a, const std::vector<std::vector<S>>& b) {
        Matrix<S> m(d, static_cast<int>(a.size() + b.size()));
        for (size_t j = 0; j < a.size(); ++j)
            for (int i = 0; i < d; ++i) m(i, static_cast<int>(j)) = a[j][i];
        for (size_t j = 0; j < b.size(); ++j)
            for (int i = 0; i < d; ++i) m(i, static_cast<int>(a.size() + j)) = b[j][i];
        return m;
    };
    auto rank_of = [&](const Matrix<S>& m) {
        if constexpr (scalar_traits<S>::exact)
            return exact_rank(m);
        else
            return float_rank_kernel(m).rank;
    };
    rep.dim_image = rank_of(stack(image_cols, {}));
    int joint = rank_of(stack(prim, image_cols));

    rep.dims_sum = (rep.dim_primitive + rep.dim_image == rep.dim_total);
    rep.image_full = (rep.dim_image == rep.dim_image_expected);
    rep.trivial_intersection = (joint == rep.dim_primitive + rep.dim_image);

    rep.q_orthogonal = true;
    for (const auto& u : prim) {
        for (const auto& v : image_cols) {
            S acc = scalar_traits<S>::zero();
            for (int i = 0; i < d; ++i) {
                if (scalar_traits<S>::is_zero(u[i])) continue;
                for (int j = 0; j < d; ++j) acc += u[i] * g.gram(i, j) * scalar_traits<S>::conj(v[j]);
            }
            if constexpr (scalar_traits<S>::exact) {
                if (!scalar_traits<S>::is_zero(acc)) rep.q_orthogonal = false;
            } else {
                if (scalar_traits<S>::abs(acc) > 1e-8) rep.q_orthogonal = false;
            }
        }
    }
    rep.holds = rep.dims_sum && rep.image_full && rep.trivial_intersection && rep.q_orthogonal;
    return rep;
}

template <class S>
struct ScanPoint {
    S t;
    HrCheckResult check;
};

template <class S>
struct ScanResult {
    std::vector<ScanPoint<S>> points;      // t descending, t = 0 last
    bool signature_constant_positive_t = false;
    bool t0_matches = false;
};

/// Perturbation scan: replaces every factor and M by (. + tA) along the
/// given positive-t values (descending) and finally at t = 0, which is
/// always computed directly.
template <class S>
ScanResult<S> hr_limit_scan(const std::vector<HermitianForm<S>>& factors, const HermitianForm<S>& M,
                            const HermitianForm<S>& A, int n, int p, int q, std::vector<S> t_values) {
    if constexpr (scalar_traits<S>::exact) {
        Signature s = exact_hermitian_signature(A.a);
        if (!s.positive_definite()) throw std::invalid_argument("hr_limit_scan: A must be positive definite");
    } else {
        FloatSignatureResult s = float_hermitian_signature(A.a);
        if (!s.sig.positive_definite()) throw std::invalid_argument("hr_limit_scan: A must be positive definite");
    }
    t_values.push_back(scalar_traits<S>::zero());
    ScanResult<S> res;
    for (const S& t : t_values) {
        std::vector<HermitianForm<S>> ft;
        ft.reserve(factors.size());
        for (const auto& f : factors) ft.push_back(f + A.scaled(t));
        HermitianForm<S> mt = M + A.scaled(t);
        ScanPoint<S> pt;
        pt.t = t;
        pt.check = hr_check(ft, mt, n, p, q);
        res.points.push_back(std::move(pt));
    }
    res.signature_constant_positive_t = true;
    for (size_t i = 0; i + 2 < res.points.size(); ++i)
        if (res.points[i].check.signature != res.points[i + 1].check.signature)
            res.signature_constant_positive_t = false;
    res.t0_matches = res.points.size() < 2 ||
                     res.points.back().check.signature == res.points.front().check.signature;
    return res;
}

}  // namespace lef
