#include <doctest.h>

#include "lef/semismall.hpp"
#include "lef/torus.hpp"

using namespace lef::semismall;

namespace {

Stratification blowup_surface() { return {2, 2, {{0, 2}, {1, 0}}}; }

}  // namespace

TEST_CASE("validate accepts the blow-up of a surface point") {
    CHECK(validate(blowup_surface()).empty());
}

TEST_CASE("validate names the violations") {
    // two strata of dimension dim_Y with clashing generic fibers
    Stratification s1{2, 2, {{0, 2}, {1, 2}}};
    auto v1 = validate(s1);
    REQUIRE(!v1.empty());
    bool found = false;
    for (const auto& m : v1)
        if (m.find("generic fiber") != std::string::npos) found = true;
    CHECK(found);

    // preimage dimension overflow
    Stratification s2{2, 2, {{0, 2}, {2, 1}}};
    auto v2 = validate(s2);
    bool overflow = false;
    for (const auto& m : v2)
        if (m.find("exceeds dim_X") != std::string::npos) overflow = true;
    CHECK(overflow);

    // duplicate fiber dimension
    Stratification s3{3, 3, {{0, 3}, {1, 1}, {1, 0}}};
    auto v3 = validate(s3);
    bool dup = false;
    for (const auto& m : v3)
        if (m.find("duplicate fiber dimension") != std::string::npos) dup = true;
    CHECK(dup);
}

TEST_CASE("defect worked examples") {
    CHECK(defect(blowup_surface()) == 0);  // semismall

    Stratification flop{3, 3, {{0, 3}, {2, 0}}};
    CHECK(defect(flop) == 1);
    CHECK(lef_level(flop).exact_lef == 2);

    Stratification finite{4, 4, {{0, 4}}};
    CHECK(defect(finite) == 0);

    Stratification invalid{2, 2, {{0, 2}, {2, 1}}};
    CHECK_THROWS_AS(defect(invalid), std::invalid_argument);
    CHECK(defect(invalid, /*force=*/true) == 3);  // raw maximum, flagged by the caller
}

TEST_CASE("is_m_lef") {
    CHECK(is_m_lef(blowup_surface(), 2));  // semismall <=> dim X lef

    Stratification flop{3, 3, {{0, 3}, {2, 0}}};
    CHECK(is_m_lef(flop, 2));
    CHECK(!is_m_lef(flop, 3));
    CHECK(is_m_lef(flop, 0));

    CHECK_THROWS_AS(is_m_lef(flop, 4), std::invalid_argument);
    CHECK_THROWS_AS(is_m_lef(flop, -1), std::invalid_argument);
}

TEST_CASE("lef_of_sum") {
    CHECK(lef_of_sum(2, 3) == 3);
    CHECK(lef_of_sum(0, 0) == 0);
    CHECK(lef_of_sum(5, 5) == 5);
    CHECK_THROWS_AS(lef_of_sum(-1, 2), std::invalid_argument);
}

TEST_CASE("nd_lower_bound dominates the exact lef level") {
    CHECK(nd_lower_bound(blowup_surface()) == 2);
    CHECK(lef_level(blowup_surface()).exact_lef <= 2);

    Stratification fib{3, 2, {{1, 2}, {2, 0}}};
    CHECK(nd_lower_bound(fib) == 2);
    CHECK(defect(fib) == 1);
    CHECK(lef_level(fib).exact_lef == 2);

    Stratification constant{3, 0, {{3, 0}}};
    CHECK(nd_lower_bound(constant) == 0);
    CHECK(lef_level(constant).exact_lef == 0);
}

TEST_CASE("randomized invariants") {
    lef::SplitMix64 rng(77);
    int done = 0;
    for (int trial = 0; trial < 400 && done < 100; ++trial) {
        Stratification s;
        s.dim_x = static_cast<int>(rng.range(1, 6));
        s.dim_y = static_cast<int>(rng.range(0, s.dim_x));
        s.strata.push_back({s.dim_x - s.dim_y, s.dim_y});  // generic stratum
        int extras = static_cast<int>(rng.range(0, 3));
        for (int e = 0; e < extras; ++e) {
            int fiber = static_cast<int>(rng.range(0, s.dim_x));
            int dim = static_cast<int>(rng.range(0, s.dim_y));
            s.strata.push_back({fiber, dim});
        }
        if (!validate(s).empty()) continue;
        ++done;

        int r = defect(s);
        CHECK(r >= s.dim_x - s.dim_y);
        CHECK(r <= s.dim_x);
        CHECK(lef_level(s).exact_lef <= nd_lower_bound(s));

        // monotone in m
        bool prev = true;
        for (int m = 0; m <= s.dim_x; ++m) {
            bool cur = is_m_lef(s, m);
            CHECK((prev || !cur));  // once false, stays false
            prev = cur;
        }

        // adding a stratum never decreases the defect
        Stratification bigger = s;
        int fiber = static_cast<int>(rng.range(0, s.dim_x));
        int dim = static_cast<int>(rng.range(0, std::min(s.dim_y, s.dim_x - fiber)));
        bigger.strata.push_back({fiber, dim});
        CHECK(defect(bigger, /*force=*/true) >= r);

        // removing a non-binding stratum leaves the defect unchanged
        if (s.strata.size() > 1) {
            int binding = 0;
            for (size_t i = 1; i < s.strata.size(); ++i)
                if (s.strata[i].stratum_dim + 2 * s.strata[i].fiber_dim >
                    s.strata[static_cast<size_t>(binding)].stratum_dim +
                        2 * s.strata[static_cast<size_t>(binding)].fiber_dim)
                    binding = static_cast<int>(i);
            Stratification smaller = s;
            for (size_t i = 0; i < smaller.strata.size(); ++i) {
                if (static_cast<int>(i) == binding) continue;
                Stratification cut = s;
                cut.strata.erase(cut.strata.begin() + static_cast<long>(i));
                if (defect(cut, /*force=*/true) != r) {
                    // only the binding stratum may change the maximum; ties allowed
                    CHECK(defect(cut, true) <= r);
                }
            }
        }
    }
    CHECK(done >= 100);
}

TEST_CASE("composition comparison") {
    // blow-up followed by a collapse: r(f) <= r(g)
    Stratification f = blowup_surface();
    Stratification g{2, 0, {{2, 0}}};
    CHECK(defect_composition_ok(f, g));
    CHECK(!defect_composition_ok(g, f));
}
