#pragma once

#include <json.hpp>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "lef/exterior.hpp"
#include "lef/semismall.hpp"

namespace lef::io {

/// Input diagnostics carry the offending field path.
struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class Mode { exact, floating };

inline const char* to_string(Mode m) { return m == Mode::exact ? "exact" : "float"; }

template <class S>
struct Instance {
    int n = 0;
    int p = 0;
    int q = 0;
    std::vector<HermitianForm<S>> factors;
    std::optional<HermitianForm<S>> m_form;
    std::optional<HermitianForm<S>> a_form;
    std::vector<S> t_values;  // real scalars

    friend bool operator==(const Instance& x, const Instance& y) {
        auto eq_form = [](const std::optional<HermitianForm<S>>& a, const std::optional<HermitianForm<S>>& b) {
            if (a.has_value() != b.has_value()) return false;
            return !a || (a->n == b->n && a->a == b->a);
        };
        if (x.n != y.n || x.p != y.p || x.q != y.q) return false;
        if (x.factors.size() != y.factors.size()) return false;
        for (size_t i = 0; i < x.factors.size(); ++i)
            if (!(x.factors[i].a == y.factors[i].a)) return false;
        return eq_form(x.m_form, y.m_form) && eq_form(x.a_form, y.a_form) && x.t_values == y.t_values;
    }
};

/// True when every matrix entry and t value parses exactly (integers and
/// rational strings only); a floating literal forces float mode.
bool entries_all_exact(const nlohmann::json& j);

Instance<GaussianRational> parse_exact_instance(const nlohmann::json& j);
Instance<Cplx> parse_float_instance(const nlohmann::json& j);

nlohmann::ordered_json emit_instance(const Instance<GaussianRational>& inst);

struct StratificationFile {
    semismall::Stratification strat;
    std::optional<int> m;  // optional m-lef query level
};

StratificationFile parse_stratification(const nlohmann::json& j);

nlohmann::json load_json_file(const std::string& path);

}  // namespace lef::io
