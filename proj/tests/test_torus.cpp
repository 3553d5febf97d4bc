#include <doctest.h>

#include "lef/torus.hpp"
#include "support.hpp"

using namespace lef;
using GR = GaussianRational;
using HF = HermitianForm<GR>;

TEST_CASE("numerical_dimension") {
    CHECK(numerical_dimension(HF::diagonal({1, 1, 0})) == 2);
    CHECK(numerical_dimension(HF(3)) == 0);

    // B B^* of a full-column-rank 4x2 factor has rank 2
    SplitMix64 rng(11);
    auto a = random_psd(4, 2, rng);
    CHECK(numerical_dimension(a) == 2);

    CHECK_THROWS_AS(numerical_dimension(HF::diagonal({1, -1})), std::domain_error);
}

TEST_CASE("subset_criterion examples") {
    auto pass = subset_criterion<GR>({HF::identity(3)}, 3, 1, 1);
    CHECK(pass.passes);

    auto fail = subset_criterion<GR>({HF::diagonal({1, 1, 0})}, 3, 1, 1);
    CHECK(!fail.passes);
    REQUIRE(fail.failing_subset.has_value());
    CHECK(*fail.failing_subset == MultiIndex{1});
    CHECK(fail.required_rank == 3);
    CHECK(fail.actual_rank == 2);

    auto pair = subset_criterion<GR>({HF::diagonal({1, 1, 1, 0}), HF::diagonal({0, 1, 1, 1})}, 4, 1, 1);
    CHECK(pair.passes);
}

TEST_CASE("mixed_discriminant values") {
    std::vector<HF> ids{HF::identity(3), HF::identity(3), HF::identity(3)};
    CHECK(mixed_discriminant(ids) == GR(1));

    std::vector<HF> cross{HF::diagonal({1, 0}), HF::diagonal({0, 1})};
    CHECK(mixed_discriminant(cross) == GR(Rat(1, 2)));

    std::vector<HF> ex{HF::diagonal({2, 1}), HF::diagonal({1, 3})};
    CHECK(mixed_discriminant(ex) == GR(Rat(7, 2)));

    CHECK_THROWS_AS(mixed_discriminant({HF::identity(3), HF::identity(3)}), std::invalid_argument);
}

TEST_CASE("mixed_discriminant symmetry and multilinearity") {
    SplitMix64 rng(1234);
    for (int trial = 0; trial < 60; ++trial) {
        int n = static_cast<int>(rng.range(2, 3));
        std::vector<HF> args;
        for (int i = 0; i < n; ++i)
            args.push_back(random_psd(n, static_cast<int>(rng.below(static_cast<uint64_t>(n + 1))), rng));
        GR base = mixed_discriminant(args);

        auto perm = args;
        std::swap(perm[0], perm[static_cast<size_t>(rng.below(static_cast<uint64_t>(n)))]);
        CHECK(mixed_discriminant(perm) == base);

        // multilinearity in the first slot
        auto extra = random_psd(n, n, rng);
        GR lambda(Rat(rng.range(0, 4)));
        auto mixed = args;
        mixed[0] = args[0] + extra.scaled(lambda);
        auto with_extra = args;
        with_extra[0] = extra;
        CHECK(mixed_discriminant(mixed) == base + lambda * mixed_discriminant(with_extra));

        // non-negative on PSD arguments
        CHECK(base.is_real());
        CHECK(base.re >= 0);
    }
}

TEST_CASE("oracle identity: integrate equals n! times the mixed discriminant") {
    SplitMix64 rng(31337);
    for (int trial = 0; trial < 120; ++trial) {
        int n = static_cast<int>(rng.range(1, 4));
        std::vector<HF> args;
        std::vector<ExteriorClass<GR>> classes;
        for (int i = 0; i < n; ++i) {
            // arbitrary Hermitian (not necessarily PSD): H = C + C^*
            Matrix<GR> c(n, n);
            for (int r = 0; r < n; ++r)
                for (int s = 0; s < n; ++s) c(r, s) = test::random_gauss_int(rng, -2, 2);
            Matrix<GR> h = c;
            for (int r = 0; r < n; ++r)
                for (int s = 0; s < n; ++s) h(r, s) = c(r, s) + c(s, r).conj();
            HF f(n, h);
            args.push_back(f);
            classes.push_back(from_hermitian(f));
        }
        GR lhs = integrate(wedge_all(classes, n));
        Rat fact = 1;
        for (int i = 2; i <= n; ++i) fact *= i;
        CHECK(lhs == GR(fact) * mixed_discriminant(args));
    }
}

TEST_CASE("af_inequality_check") {
    // equality at A = B
    SplitMix64 rng(5);
    auto a3 = random_psd(3, 3, rng);
    auto r3 = random_psd(3, 2, rng);
    auto eq = af_inequality_check(a3, a3, {r3});
    CHECK(eq.holds);
    CHECK(eq.lhs == eq.rhs);

    // worked n=2 example: (7/2)^2 >= 2*3
    auto ex = af_inequality_check(HF::diagonal({2, 1}), HF::diagonal({1, 3}), {});
    CHECK(ex.lhs == GR(Rat(49, 4)));
    CHECK(ex.rhs == GR(6));
    CHECK(ex.holds);

    // random PSD draws
    for (int trial = 0; trial < 120; ++trial) {
        int n = static_cast<int>(rng.range(3, 4));
        auto a = random_psd(n, static_cast<int>(rng.range(1, n)), rng);
        auto b = random_psd(n, static_cast<int>(rng.range(1, n)), rng);
        std::vector<HF> rest;
        for (int i = 0; i < n - 2; ++i) rest.push_back(random_psd(n, static_cast<int>(rng.range(0, n)), rng));
        CHECK(af_inequality_check(a, b, rest).holds);
    }

    CHECK_THROWS_AS(af_inequality_check(HF::diagonal({1, -1}), HF::identity(2), {}), std::domain_error);
}

TEST_CASE("hodge_index_signature") {
    CHECK(hodge_index_signature<GR>({}, 2) == Signature{1, 3, 0});
    CHECK(hodge_index_signature<GR>({HF::identity(3)}, 3) == Signature{1, 8, 0});

    auto degen = hodge_index_signature<GR>({HF::diagonal({1, 1, 0})}, 3);
    CHECK(degen.n_zero > 0);
}

TEST_CASE("three-way positivity agreement at p = q = 0") {
    SplitMix64 rng(2718);
    for (int trial = 0; trial < 80; ++trial) {
        int n = static_cast<int>(rng.range(2, 4));
        std::vector<HF> factors;
        std::vector<ExteriorClass<GR>> classes;
        for (int i = 0; i < n; ++i) {
            auto f = random_psd(n, static_cast<int>(rng.below(static_cast<uint64_t>(n + 1))), rng);
            factors.push_back(f);
            classes.push_back(from_hermitian(f));
        }
        GR vol = integrate(wedge_all(classes, n));
        REQUIRE(vol.is_real());
        bool positive = vol.re > 0;
        bool criterion = subset_criterion(factors, n, 0, 0).passes;
        bool hl = hl_check(lefschetz_operator(factors, n, 0, 0)).verdict == Verdict::holds;
        CHECK(positive == criterion);
        CHECK(criterion == hl);
    }
}

TEST_CASE("theorem_a_verify agreement") {
    InstanceSpec spec;
    spec.n = 3;
    spec.p = 1;
    spec.q = 1;
    spec.factor_ranks = {2};
    spec.seed = 9;
    auto rep = theorem_a_verify(spec, 40);
    CHECK(rep.all_agree());
    // rank 2 < 1 + p + q = 3: the criterion always fails, and so must HL
    for (const auto& r : rep.records) {
        CHECK(!r.criterion_pass);
        CHECK(!r.hl_pass);
    }

    // all-definite factors: both sides always pass
    InstanceSpec kahler;
    kahler.n = 3;
    kahler.p = 0;
    kahler.q = 1;
    kahler.factor_ranks = {3, 3};
    kahler.seed = 10;
    auto rep2 = theorem_a_verify(kahler, 40);
    CHECK(rep2.all_agree());
    for (const auto& r : rep2.records) {
        CHECK(r.criterion_pass);
        CHECK(r.hl_pass);
    }
}

TEST_CASE("theorem_a_sweep is deterministic and thread-count independent") {
    auto one = theorem_a_sweep({2, 3}, 30, 42, 1);
    auto two = theorem_a_sweep({2, 3}, 30, 42, 4);
    REQUIRE(one.records.size() == two.records.size());
    for (size_t i = 0; i < one.records.size(); ++i) {
        CHECK(one.records[i].n == two.records[i].n);
        CHECK(one.records[i].p == two.records[i].p);
        CHECK(one.records[i].q == two.records[i].q);
        CHECK(one.records[i].ranks == two.records[i].ranks);
        CHECK(one.records[i].criterion_pass == two.records[i].criterion_pass);
        CHECK(one.records[i].hl_pass == two.records[i].hl_pass);
    }
    CHECK(one.all_agree());
}
