#include "lef/semismall.hpp"

#include <algorithm>
#include <limits>
#include <set>
#include <sstream>
#include <stdexcept>

namespace lef::semismall {

std::vector<std::string> validate(const Stratification& s) {
    std::vector<std::string> v;
    auto msg = [&](const std::string& m) { v.push_back(m); };

    if (s.dim_x < 0) msg("dim_X is negative");
    if (s.dim_y < 0) msg("dim_Y is negative");
    if (s.dim_y > s.dim_x) msg("dim_Y exceeds dim_X");
    if (s.strata.empty()) msg("no strata given");

    std::set<int> fiber_dims;
    bool generic_seen = false;
    bool cover_seen = false;
    for (size_t idx = 0; idx < s.strata.size(); ++idx) {
        const Stratum& st = s.strata[idx];
        std::ostringstream where;
        where << "stratum " << idx << " (fiber " << st.fiber_dim << ", dim " << st.stratum_dim << ")";
        if (st.fiber_dim < 0) msg(where.str() + ": negative fiber dimension");
        if (st.stratum_dim < 0) msg(where.str() + ": negative stratum dimension");
        if (!fiber_dims.insert(st.fiber_dim).second)
            msg(where.str() + ": duplicate fiber dimension");
        if (st.stratum_dim > s.dim_y) msg(where.str() + ": stratum dimension exceeds dim_Y");
        if (st.stratum_dim + st.fiber_dim > s.dim_x)
            msg(where.str() + ": preimage dimension exceeds dim_X");
        if (st.stratum_dim == s.dim_y) {
            generic_seen = true;
            if (st.fiber_dim != s.dim_x - s.dim_y)
                msg(where.str() + ": generic fiber dimension must be dim_X - dim_Y");
        }
        if (st.stratum_dim + st.fiber_dim == s.dim_x) cover_seen = true;
    }
    if (!s.strata.empty() && !generic_seen) msg("no stratum of dimension dim_Y");
    if (!s.strata.empty() && !cover_seen) msg("preimages do not cover X (no stratum with d + i = dim_X)");
    return v;
}

static void require_valid(const Stratification& s, bool force) {
    if (force) return;
    auto v = validate(s);
    if (v.empty()) return;
    std::ostringstream os;
    os << "invalid stratification:";
    for (const auto& m : v) os << " [" << m << "]";
    throw std::invalid_argument(os.str());
}

int defect(const Stratification& s, bool force) {
    require_valid(s, force);
    int best = std::numeric_limits<int>::min();
    for (const Stratum& st : s.strata)
        best = std::max(best, st.stratum_dim + 2 * st.fiber_dim - s.dim_x);
    return best;
}

LefLevel lef_level(const Stratification& s, bool force) {
    int r = defect(s, force);
    return {r, s.dim_x - r};
}

bool is_m_lef(const Stratification& s, int m, bool force) {
    if (m < 0 || m > s.dim_x) throw std::invalid_argument("is_m_lef: m out of range [0, dim_X]");
    return defect(s, force) <= s.dim_x - m;
}

int lef_of_sum(int k, int l) {
    if (k < 0 || l < 0) throw std::invalid_argument("lef_of_sum: negative lef level");
    return std::max(k, l);
}

int nd_lower_bound(const Stratification& s) {
    require_valid(s, false);
    return s.dim_y;
}

bool defect_composition_ok(const Stratification& f, const Stratification& g) {
    return defect(f) <= defect(g);
}

}  // namespace lef::semismall
