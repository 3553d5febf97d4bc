#pragma once

#include <string>
#include <vector>

namespace lef::semismall {

/// One fiber-dimension stratum Y^i: all points of Y whose fiber has
/// dimension exactly fiber_dim. Empty strata are simply omitted.
struct Stratum {
    int fiber_dim = 0;
    int stratum_dim = 0;
};

/// Stratification by fiber dimension of a proper surjective map f: X -> Y.
struct Stratification {
    int dim_x = 0;
    int dim_y = 0;
    std::vector<Stratum> strata;
};

struct LefLevel {
    int defect = 0;     // r(f)
    int exact_lef = 0;  // dim X - r(f)
};

/// Named well-formedness violations; empty means valid.
std::vector<std::string> validate(const Stratification& s);

/// r(f) = max over strata of (stratum_dim + 2 * fiber_dim) - dim X.
/// Throws std::invalid_argument on invalid input unless force is set.
int defect(const Stratification& s, bool force = false);

LefLevel lef_level(const Stratification& s, bool force = false);

/// r(f) <= dim X - m.
bool is_m_lef(const Stratification& s, int m, bool force = false);

/// Guaranteed lef level of a sum of a k-lef and an l-lef free bundle.
int lef_of_sum(int k, int l);

/// dim Y: the numerical-dimension lower bound witnessed by the generic
/// fiber; always >= exact_lef on a valid stratification.
int nd_lower_bound(const Stratification& s);

/// For g = pi . f with pi proper surjective: checks r(f) <= r(g) given
/// both stratifications (the inequality cannot be derived from one side
/// alone without a geometry backend).
bool defect_composition_ok(const Stratification& f, const Stratification& g);

}  // namespace lef::semismall
