#include "lef/instance_io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace lef::io {

using nlohmann::json;

namespace {

bool scalar_entry_exact(const json& e) {
    if (e.is_number_integer() || e.is_number_unsigned() || e.is_string()) return true;
    if (e.is_number_float()) {
        double v = e.get<double>();
        return v == std::floor(v) && std::abs(v) < 1e15;
    }
    if (e.is_array() && e.size() == 2) return scalar_entry_exact(e[0]) && scalar_entry_exact(e[1]);
    return false;
}

Rat parse_exact_part(const json& e, const std::string& where) {
    if (e.is_number_integer()) return Rat(e.get<long long>());
    if (e.is_number_unsigned()) return Rat(e.get<unsigned long long>());
    if (e.is_number_float()) {
        double v = e.get<double>();
        if (v == std::floor(v) && std::abs(v) < 1e15) return Rat(static_cast<long long>(v));
        throw IoError(where + ": non-integer literal in exact mode");
    }
    if (e.is_string()) {
        try {
            return parse_rational(e.get<std::string>());
        } catch (const std::exception& ex) {
            throw IoError(where + ": " + ex.what());
        }
    }
    throw IoError(where + ": expected number or rational string");
}

GaussianRational parse_exact_entry(const json& e, const std::string& where) {
    if (e.is_array()) {
        if (e.size() != 2) throw IoError(where + ": complex entry must be a [re, im] pair");
        return {parse_exact_part(e[0], where + "[0]"), parse_exact_part(e[1], where + "[1]")};
    }
    return {parse_exact_part(e, where), Rat(0)};
}

double parse_float_part(const json& e, const std::string& where) {
    if (e.is_number()) return e.get<double>();
    if (e.is_string()) {
        try {
            return to_double(parse_rational(e.get<std::string>()));
        } catch (const std::exception& ex) {
            throw IoError(where + ": " + ex.what());
        }
    }
    throw IoError(where + ": expected number or rational string");
}

Cplx parse_float_entry(const json& e, const std::string& where) {
    if (e.is_array()) {
        if (e.size() != 2) throw IoError(where + ": complex entry must be a [re, im] pair");
        return {parse_float_part(e[0], where + "[0]"), parse_float_part(e[1], where + "[1]")};
    }
    return {parse_float_part(e, where), 0.0};
}

template <class S, class EntryParser>
HermitianForm<S> parse_matrix(const json& j, int n, const std::string& where, EntryParser parse_entry) {
    if (!j.is_array() || static_cast<int>(j.size()) != n)
        throw IoError(where + ": expected " + std::to_string(n) + " rows");
    HermitianForm<S> f(n);
    for (int i = 0; i < n; ++i) {
        const json& row = j[static_cast<size_t>(i)];
        std::string rw = where + "[" + std::to_string(i) + "]";
        if (!row.is_array() || static_cast<int>(row.size()) != n)
            throw IoError(rw + ": expected " + std::to_string(n) + " entries");
        for (int k = 0; k < n; ++k)
            f.a(i, k) = parse_entry(row[static_cast<size_t>(k)], rw + "[" + std::to_string(k) + "]");
    }
    if (!f.is_hermitian()) throw IoError(where + ": matrix is not Hermitian");
    return f;
}

int get_int(const json& j, const std::string& key, std::optional<int> fallback = std::nullopt) {
    if (!j.contains(key)) {
        if (fallback) return *fallback;
        throw IoError("missing required field \"" + key + "\"");
    }
    if (!j[key].is_number_integer() && !j[key].is_number_unsigned())
        throw IoError("field \"" + key + "\": expected an integer");
    return j[key].get<int>();
}

template <class S, class EntryParser, class RealParser>
Instance<S> parse_instance_impl(const json& j, EntryParser entry, RealParser real_part) {
    if (!j.is_object()) throw IoError("instance file: top level must be an object");
    Instance<S> inst;
    inst.n = get_int(j, "n");
    if (inst.n < 1) throw IoError("field \"n\": must be positive");
    inst.p = get_int(j, "p", 0);
    inst.q = get_int(j, "q", 0);
    if (inst.p < 0 || inst.q < 0 || inst.p > inst.n || inst.q > inst.n || inst.p + inst.q > inst.n)
        throw IoError("fields \"p\"/\"q\": bidegree out of range for n");
    if (j.contains("factors")) {
        if (!j["factors"].is_array()) throw IoError("field \"factors\": expected a list of matrices");
        for (size_t i = 0; i < j["factors"].size(); ++i)
            inst.factors.push_back(parse_matrix<S>(j["factors"][i], inst.n,
                                                   "factors[" + std::to_string(i) + "]", entry));
    }
    if (j.contains("M")) inst.m_form = parse_matrix<S>(j["M"], inst.n, "M", entry);
    if (j.contains("A")) inst.a_form = parse_matrix<S>(j["A"], inst.n, "A", entry);
    if (j.contains("t_values")) {
        if (!j["t_values"].is_array()) throw IoError("field \"t_values\": expected a list");
        for (size_t i = 0; i < j["t_values"].size(); ++i) {
            S t = S(real_part(j["t_values"][i], "t_values[" + std::to_string(i) + "]"));
            inst.t_values.push_back(t);
        }
    }
    return inst;
}

}  // namespace

bool entries_all_exact(const json& j) {
    if (!j.is_object()) return false;
    auto matrix_exact = [](const json& m) {
        if (!m.is_array()) return false;
        for (const auto& row : m) {
            if (!row.is_array()) return false;
            for (const auto& e : row)
                if (!scalar_entry_exact(e)) return false;
        }
        return true;
    };
    if (j.contains("factors") && j["factors"].is_array())
        for (const auto& m : j["factors"])
            if (!matrix_exact(m)) return false;
    for (const char* key : {"M", "A"})
        if (j.contains(key) && !matrix_exact(j[key])) return false;
    if (j.contains("t_values") && j["t_values"].is_array())
        for (const auto& t : j["t_values"])
            if (!scalar_entry_exact(t)) return false;
    return true;
}

Instance<GaussianRational> parse_exact_instance(const json& j) {
    return parse_instance_impl<GaussianRational>(
        j, parse_exact_entry,
        [](const json& e, const std::string& where) { return parse_exact_part(e, where); });
}

Instance<Cplx> parse_float_instance(const json& j) {
    return parse_instance_impl<Cplx>(
        j, parse_float_entry,
        [](const json& e, const std::string& where) { return parse_float_part(e, where); });
}

nlohmann::ordered_json emit_instance(const Instance<GaussianRational>& inst) {
    nlohmann::ordered_json out;
    out["n"] = inst.n;
    out["p"] = inst.p;
    out["q"] = inst.q;
    auto rat_str = [](const Rat& r) {
        std::ostringstream os;
        os << r;
        return os.str();
    };
    auto emit_matrix = [&](const HermitianForm<GaussianRational>& f) {
        nlohmann::ordered_json m = nlohmann::ordered_json::array();
        for (int i = 0; i < f.n; ++i) {
            nlohmann::ordered_json row = nlohmann::ordered_json::array();
            for (int k = 0; k < f.n; ++k)
                row.push_back({rat_str(f.a(i, k).re), rat_str(f.a(i, k).im)});
            m.push_back(row);
        }
        return m;
    };
    out["factors"] = nlohmann::ordered_json::array();
    for (const auto& f : inst.factors) out["factors"].push_back(emit_matrix(f));
    if (inst.m_form) out["M"] = emit_matrix(*inst.m_form);
    if (inst.a_form) out["A"] = emit_matrix(*inst.a_form);
    if (!inst.t_values.empty()) {
        out["t_values"] = nlohmann::ordered_json::array();
        for (const auto& t : inst.t_values) out["t_values"].push_back(rat_str(t.re));
    }
    return out;
}

StratificationFile parse_stratification(const json& j) {
    if (!j.is_object()) throw IoError("stratification file: top level must be an object");
    StratificationFile out;
    out.strat.dim_x = get_int(j, "dim_X");
    out.strat.dim_y = get_int(j, "dim_Y");
    if (!j.contains("strata") || !j["strata"].is_array())
        throw IoError("field \"strata\": expected a list of [fiber_dim, stratum_dim] pairs");
    for (size_t i = 0; i < j["strata"].size(); ++i) {
        const json& st = j["strata"][i];
        std::string where = "strata[" + std::to_string(i) + "]";
        if (!st.is_array() || st.size() != 2 || !st[0].is_number_integer() || !st[1].is_number_integer())
            throw IoError(where + ": expected a [fiber_dim, stratum_dim] integer pair");
        out.strat.strata.push_back({st[0].get<int>(), st[1].get<int>()});
    }
    if (j.contains("m")) out.m = get_int(j, "m");
    return out;
}

json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open file: " + path);
    json j;
    try {
        in >> j;
    } catch (const std::exception& ex) {
        throw IoError(std::string("JSON parse error in ") + path + ": " + ex.what());
    }
    return j;
}

}  // namespace lef::io
