#pragma once

#include <atomic>
#include <cstdint>
#include <optional>
#include <thread>
#include <vector>

#include "lef/hodge.hpp"

namespace lef {

/// Deterministic 64-bit generator; identical stream on every platform.
struct SplitMix64 {
    uint64_t state;
    explicit SplitMix64(uint64_t seed) : state(seed) {}
    uint64_t next() {
        uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }
    /// uniform in [0, bound)
    uint64_t below(uint64_t bound) { return next() % bound; }
    /// uniform in [lo, hi] inclusive
    long range(long lo, long hi) { return lo + static_cast<long>(below(static_cast<uint64_t>(hi - lo + 1))); }
};

inline uint64_t derive_seed(uint64_t seed, uint64_t index) {
    SplitMix64 g(seed ^ (0xa0761d6478bd642fULL * (index + 1)));
    return g.next();
}

/// nd(omega_A) = rank(A) for a nef (PSD) class. Rejects non-PSD input.
template <class S>
int numerical_dimension(const HermitianForm<S>& A) {
    if (!A.is_hermitian()) throw std::invalid_argument("numerical_dimension: matrix is not Hermitian");
    if constexpr (scalar_traits<S>::exact) {
        Signature s = exact_hermitian_signature(A.a);
        if (s.n_minus > 0) throw std::domain_error("numerical_dimension: matrix is not PSD (nef hypothesis violated)");
        return s.n_plus;
    } else {
        FloatSignatureResult s = float_hermitian_signature(A.a);
        if (s.sig.n_minus > 0) throw std::domain_error("numerical_dimension: matrix is not PSD (nef hypothesis violated)");
        return s.sig.n_plus;
    }
}

struct SubsetReport {
    bool passes = true;
    std::optional<MultiIndex> failing_subset;  // subset of [n-p-q], 1-based
    int required_rank = 0;
    int actual_rank = 0;
};

/// Theorem-A rank test: rank(sum_{i in I} A_i) >= |I| + p + q for every
/// nonempty I subset of [n-p-q]. First failing I in lexicographic order.
template <class S>
SubsetReport subset_criterion(const std::vector<HermitianForm<S>>& factors, int n, int p, int q) {
    if (static_cast<int>(factors.size()) != n - p - q)
        throw std::invalid_argument("subset_criterion: factor count must equal n - p - q");
    for (const auto& f : factors) numerical_dimension(f);  // PSD precondition
    const int k = static_cast<int>(factors.size());
    SubsetReport rep;
    MultiIndex cur;
    auto rank_of_sum = [&](const MultiIndex& idx) {
        HermitianForm<S> sum(n);
        for (int i : idx) sum = sum + factors[static_cast<size_t>(i - 1)];
        if constexpr (scalar_traits<S>::exact)
            return exact_rank(sum.a);
        else
            return float_rank_kernel(sum.a).rank;
    };
    auto rec = [&](auto&& self, int start) -> bool {
        if (!cur.empty()) {
            int required = static_cast<int>(cur.size()) + p + q;
            int actual = rank_of_sum(cur);
            if (actual < required) {
                rep.passes = false;
                rep.failing_subset = cur;
                rep.required_rank = required;
                rep.actual_rank = actual;
                return false;
            }
        }
        for (int v = start; v <= k; ++v) {
            cur.push_back(v);
            if (!self(self, v + 1)) return false;
            cur.pop_back();
        }
        return true;
    };
    rec(rec, 1);
    return rep;
}

/// D(A_1,...,A_n) by polarization of the determinant:
/// D = (1/n!) sum over nonempty S of (-1)^{n-|S|} det(sum_{i in S} A_i).
/// Normalized so D(A,...,A) = det A.
inline GaussianRational mixed_discriminant(const std::vector<HermitianForm<GaussianRational>>& a_list) {
    if (a_list.empty()) throw std::invalid_argument("mixed_discriminant: empty argument list");
    const int n = a_list.front().n;
    if (static_cast<int>(a_list.size()) != n)
        throw std::invalid_argument("mixed_discriminant: need exactly n matrices of size n");
    for (const auto& a : a_list)
        if (a.n != n) throw std::invalid_argument("mixed_discriminant: dimension mismatch");
    GaussianRational acc;
    for (uint64_t mask = 1; mask < (1ULL << n); ++mask) {
        HermitianForm<GaussianRational> sum(n);
        int card = 0;
        for (int i = 0; i < n; ++i)
            if (mask & (1ULL << i)) {
                sum = sum + a_list[static_cast<size_t>(i)];
                ++card;
            }
        GaussianRational det = exact_determinant(sum.a);
        if ((n - card) % 2 != 0) det = -det;
        acc += det;
    }
    Rat fact = 1;
    for (int i = 2; i <= n; ++i) fact *= i;
    return acc / GaussianRational(fact);
}

struct AfReport {
    GaussianRational lhs;  // D(A,B,rest)^2
    GaussianRational rhs;  // D(A,A,rest) * D(B,B,rest)
    bool holds = false;
};

/// Alexandrov-Fenchel-type inequality D(A,B,rest)^2 >= D(A,A,rest)*D(B,B,rest)
/// for PSD arguments; exact comparison.
inline AfReport af_inequality_check(const HermitianForm<GaussianRational>& A,
                                    const HermitianForm<GaussianRational>& B,
                                    const std::vector<HermitianForm<GaussianRational>>& rest) {
    numerical_dimension(A);
    numerical_dimension(B);
    for (const auto& r : rest) numerical_dimension(r);
    auto args = [&](const HermitianForm<GaussianRational>& x, const HermitianForm<GaussianRational>& y) {
        std::vector<HermitianForm<GaussianRational>> v{x, y};
        v.insert(v.end(), rest.begin(), rest.end());
        return v;
    };
    AfReport rep;
    GaussianRational dab = mixed_discriminant(args(A, B));
    rep.lhs = dab * dab;
    rep.rhs = mixed_discriminant(args(A, A)) * mixed_discriminant(args(B, B));
    if (!rep.lhs.is_real() || !rep.rhs.is_real())
        throw std::logic_error("af_inequality_check: non-real mixed discriminant");
    rep.holds = rep.lhs.re >= rep.rhs.re;
    return rep;
}

/// Real basis of the n^2-dimensional space of Hermitian matrices:
/// E_jj, then for j < k the symmetric and antisymmetric combinations.
template <class S>
std::vector<HermitianForm<S>> hermitian_basis(int n) {
    std::vector<HermitianForm<S>> out;
    for (int j = 0; j < n; ++j) {
        HermitianForm<S> h(n);
        h.a(j, j) = scalar_traits<S>::one();
        out.push_back(std::move(h));
    }
    for (int j = 0; j < n; ++j)
        for (int k = j + 1; k < n; ++k) {
            HermitianForm<S> hs(n);
            hs.a(j, k) = scalar_traits<S>::one();
            hs.a(k, j) = scalar_traits<S>::one();
            out.push_back(std::move(hs));
            HermitianForm<S> ha(n);
            ha.a(j, k) = scalar_traits<S>::i_power(1);
            ha.a(k, j) = scalar_traits<S>::i_power(-1);
            out.push_back(std::move(ha));
        }
    return out;
}

/// Signature of (alpha, beta) -> integral(Omega ^ omega_alpha ^ omega_beta)
/// on the real (1,1) subspace, before the c_{1,1} sign normalization.
/// Expected (1, n^2 - 1, 0) when the subset criterion holds at (1,1).
template <class S>
Signature hodge_index_signature(const std::vector<HermitianForm<S>>& factors, int n) {
    if (static_cast<int>(factors.size()) != n - 2)
        throw std::invalid_argument("hodge_index_signature: need n - 2 factors");
    ExteriorClass<S> omega = product_class(factors, n);
    auto hb = hermitian_basis<S>(n);
    const int d = static_cast<int>(hb.size());
    std::vector<ExteriorClass<S>> classes;
    classes.reserve(hb.size());
    for (const auto& h : hb) classes.push_back(from_hermitian(h));
    Matrix<S> gram(d, d);
    for (int a = 0; a < d; ++a)
        for (int b = a; b < d; ++b) {
            S v = integrate(wedge(wedge(omega, classes[static_cast<size_t>(a)]), classes[static_cast<size_t>(b)]));
            gram(a, b) = v;
            gram(b, a) = v;  // real symmetric
        }
    if constexpr (scalar_traits<S>::exact) {
        return exact_hermitian_signature(gram);
    } else {
        return float_hermitian_signature(gram).sig;
    }
}

// ---------------------------------------------------------------------------
// Randomized Theorem-A harness.
// ---------------------------------------------------------------------------

struct InstanceSpec {
    int n = 0;
    int p = 0;
    int q = 0;
    std::vector<int> factor_ranks;  // length n - p - q
    uint64_t seed = 0;
};

/// PSD matrix of prescribed rank: A = B B^* with B an n x r matrix of small
/// Gaussian integers, resampled until B has full column rank.
inline HermitianForm<GaussianRational> random_psd(int n, int rank, SplitMix64& rng) {
    if (rank < 0 || rank > n) throw std::invalid_argument("random_psd: rank out of range");
    if (rank == 0) return HermitianForm<GaussianRational>(n);
    for (;;) {
        Matrix<GaussianRational> b(n, rank);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < rank; ++j)
                b(i, j) = GaussianRational(Rat(rng.range(-2, 2)), Rat(rng.range(-2, 2)));
        if (exact_rank(b) != rank) continue;
        Matrix<GaussianRational> a = b * b.conj_transpose();
        return HermitianForm<GaussianRational>(n, std::move(a));
    }
}

struct TrialRecord {
    int trial = 0;
    int n = 0, p = 0, q = 0;
    std::vector<int> ranks;
    bool criterion_pass = false;
    bool hl_pass = false;
    bool agree = false;
};

inline TrialRecord run_theorem_a_trial(const InstanceSpec& spec, int trial_index) {
    SplitMix64 rng(derive_seed(spec.seed, static_cast<uint64_t>(trial_index)));
    TrialRecord rec;
    rec.trial = trial_index;
    rec.n = spec.n;
    rec.p = spec.p;
    rec.q = spec.q;
    rec.ranks = spec.factor_ranks;
    std::vector<HermitianForm<GaussianRational>> factors;
    for (int r : spec.factor_ranks) factors.push_back(random_psd(spec.n, r, rng));
    rec.criterion_pass = subset_criterion(factors, spec.n, spec.p, spec.q).passes;
    rec.hl_pass = hl_check(lefschetz_operator(factors, spec.n, spec.p, spec.q)).verdict == Verdict::holds;
    rec.agree = (rec.criterion_pass == rec.hl_pass);
    return rec;
}

struct TheoremAReport {
    int trials = 0;
    int agreements = 0;
    std::vector<TrialRecord> records;
    bool all_agree() const { return agreements == trials; }
};

/// Fixed-spec harness: `trials` independent draws with prescribed ranks.
inline TheoremAReport theorem_a_verify(const InstanceSpec& spec, int trials) {
    if (trials < 1) throw std::invalid_argument("theorem_a_verify: trials must be >= 1");
    TheoremAReport rep;
    rep.trials = trials;
    rep.records.resize(static_cast<size_t>(trials));
    for (int t = 0; t < trials; ++t) rep.records[static_cast<size_t>(t)] = run_theorem_a_trial(spec, t);
    for (const auto& r : rep.records)
        if (r.agree) ++rep.agreements;
    return rep;
}

/// Sweep harness: per trial, draw n from n_values and random valid (p,q)
/// and factor ranks. Trials are independent with per-index sub-seeds, so
/// the report does not depend on the thread count.
inline TheoremAReport theorem_a_sweep(const std::vector<int>& n_values, int trials, uint64_t seed,
                                      int threads = 1) {
    if (trials < 1) throw std::invalid_argument("theorem_a_sweep: trials must be >= 1");
    if (n_values.empty()) throw std::invalid_argument("theorem_a_sweep: empty n_values");
    TheoremAReport rep;
    rep.trials = trials;
    rep.records.resize(static_cast<size_t>(trials));

    auto run_one = [&](int t) {
        SplitMix64 pick(derive_seed(seed ^ 0x5bf03635ULL, static_cast<uint64_t>(t)));
        InstanceSpec spec;
        spec.n = n_values[static_cast<size_t>(pick.below(n_values.size()))];
        // uniform over valid (p,q) with p + q <= n
        do {
            spec.p = static_cast<int>(pick.below(static_cast<uint64_t>(spec.n + 1)));
            spec.q = static_cast<int>(pick.below(static_cast<uint64_t>(spec.n + 1)));
        } while (spec.p + spec.q > spec.n);
        for (int i = 0; i < spec.n - spec.p - spec.q; ++i)
            spec.factor_ranks.push_back(static_cast<int>(pick.below(static_cast<uint64_t>(spec.n + 1))));
        spec.seed = seed;
        rep.records[static_cast<size_t>(t)] = run_theorem_a_trial(spec, t);
    };

    if (threads <= 1) {
        for (int t = 0; t < trials; ++t) run_one(t);
    } else {
        std::vector<std::thread> pool;
        std::atomic<int> next{0};
        for (int w = 0; w < threads; ++w)
            pool.emplace_back([&] {
                for (;;) {
                    int t = next.fetch_add(1);
                    if (t >= trials) return;
                    run_one(t);
                }
            });
        for (auto& th : pool) th.join();
    }
    for (const auto& r : rep.records)
        if (r.agree) ++rep.agreements;
    return rep;
}

}  // namespace lef
