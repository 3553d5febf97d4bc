// lefcheck: command-line driver for Hard Lefschetz / Hodge-Riemann checks
// on complex tori and the semismallness calculator.

#include <CLI11.hpp>
#include <chrono>
#include <cstdlib>
#include <iostream>
#include <json.hpp>

#include "lef/hodge.hpp"
#include "lef/instance_io.hpp"
#include "lef/semismall.hpp"
#include "lef/torus.hpp"

using nlohmann::ordered_json;
using namespace lef;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInputError = 1;
constexpr int kExitIndeterminate = 2;

struct Options {
    std::string mode;  // "", "exact", "float"
    bool json_out = false;
    bool text_out = false;
    bool force = false;
    uint64_t seed = 0;
    int trials = 200;
    int threads = 1;
    std::vector<int> n_values{2, 3, 4};
};

std::string rat_str(const Rat& r) {
    std::ostringstream os;
    os << r;
    return os.str();
}

ordered_json scalar_json(const GaussianRational& z) {
    return ordered_json::array({rat_str(z.re), rat_str(z.im)});
}

ordered_json scalar_json(const Cplx& z) { return ordered_json::array({z.real(), z.imag()}); }

template <class S>
ordered_json vector_json(const std::vector<S>& v) {
    ordered_json out = ordered_json::array();
    for (const auto& x : v) out.push_back(scalar_json(x));
    return out;
}

ordered_json signature_json(const Signature& s) {
    return ordered_json{{"n_plus", s.n_plus}, {"n_minus", s.n_minus}, {"n_zero", s.n_zero}};
}

io::Mode resolve_mode(const Options& opt, const nlohmann::json& file) {
    std::string m = opt.mode;
    if (m.empty()) {
        const char* env = std::getenv("LEFCHECK_MODE");
        if (env) m = env;
    }
    if (m == "exact") return io::Mode::exact;
    if (m == "float") return io::Mode::floating;
    if (!m.empty()) throw io::IoError("unknown mode \"" + m + "\" (expected exact or float)");
    return io::entries_all_exact(file) ? io::Mode::exact : io::Mode::floating;
}

void emit(const Options& opt, const ordered_json& report, const std::string& text_summary,
          double elapsed_ms) {
    if (opt.json_out || !opt.text_out) {
        // JSON reports omit wall-clock time so identical inputs give
        // byte-identical output.
        std::cout << report.dump(2) << "\n";
    } else {
        std::cout << text_summary;
        std::cout << "elapsed: " << elapsed_ms << " ms\n";
    }
}

template <class S>
int run_check_hl(const io::Instance<S>& inst, io::Mode mode, const Options& opt,
                 std::chrono::steady_clock::time_point start) {
    auto op = lefschetz_operator(inst.factors, inst.n, inst.p, inst.q);
    auto res = hl_check(op);
    ordered_json rep;
    rep["command"] = "check-hl";
    rep["mode"] = io::to_string(mode);
    rep["n"] = inst.n;
    rep["p"] = inst.p;
    rep["q"] = inst.q;
    rep["verdict"] = to_string(res.verdict);
    if (res.verdict == Verdict::fails) rep["kernel_witness"] = vector_json(res.kernel_witness);
    if constexpr (!scalar_traits<S>::exact) {
        rep["sigma_min"] = res.sigma_min;
        rep["sigma_max"] = res.sigma_max;
    }
    std::ostringstream text;
    text << "check-hl (" << io::to_string(mode) << "): HL property " << to_string(res.verdict) << "\n";
    double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    emit(opt, rep, text.str(), ms);
    return res.verdict == Verdict::indeterminate ? kExitIndeterminate : kExitOk;
}

template <class S>
int run_check_hr(const io::Instance<S>& inst, io::Mode mode, const Options& opt,
                 std::chrono::steady_clock::time_point start) {
    if (!inst.m_form) throw io::IoError("check-hr requires field \"M\"");
    auto res = hr_check(inst.factors, *inst.m_form, inst.n, inst.p, inst.q);
    auto dec = orthogonal_decomposition_check(inst.factors, *inst.m_form, inst.n, inst.p, inst.q);
    ordered_json rep;
    rep["command"] = "check-hr";
    rep["mode"] = io::to_string(mode);
    rep["n"] = inst.n;
    rep["p"] = inst.p;
    rep["q"] = inst.q;
    rep["positive_definite"] = to_string(res.positive_definite);
    rep["signature_on_primitive"] = signature_json(res.signature);
    rep["dim_primitive"] = res.dim_primitive;
    if constexpr (!scalar_traits<S>::exact) {
        rep["min_abs_eigenvalue"] = res.min_abs_eigenvalue;
        rep["max_abs_eigenvalue"] = res.max_abs_eigenvalue;
    }
    rep["decomposition"] = ordered_json{{"dim_total", dec.dim_total},
                                        {"dim_primitive", dec.dim_primitive},
                                        {"dim_image", dec.dim_image},
                                        {"dim_image_expected", dec.dim_image_expected},
                                        {"dims_sum", dec.dims_sum},
                                        {"image_full", dec.image_full},
                                        {"trivial_intersection", dec.trivial_intersection},
                                        {"q_orthogonal", dec.q_orthogonal},
                                        {"holds", dec.holds}};
    std::ostringstream text;
    text << "check-hr (" << io::to_string(mode) << "): HR positive definite on primitive: "
         << to_string(res.positive_definite) << ", signature (" << res.signature.n_plus << ","
         << res.signature.n_minus << "," << res.signature.n_zero << "), decomposition "
         << (dec.holds ? "holds" : "fails") << "\n";
    double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    emit(opt, rep, text.str(), ms);
    return res.positive_definite == Verdict::indeterminate ? kExitIndeterminate : kExitOk;
}

template <class S>
int run_criterion(const io::Instance<S>& inst, io::Mode mode, const Options& opt,
                  std::chrono::steady_clock::time_point start) {
    auto res = subset_criterion(inst.factors, inst.n, inst.p, inst.q);
    ordered_json rep;
    rep["command"] = "criterion";
    rep["mode"] = io::to_string(mode);
    rep["n"] = inst.n;
    rep["p"] = inst.p;
    rep["q"] = inst.q;
    rep["passes"] = res.passes;
    if (!res.passes) {
        rep["failing_subset"] = *res.failing_subset;
        rep["required_rank"] = res.required_rank;
        rep["actual_rank"] = res.actual_rank;
    }
    std::ostringstream text;
    if (res.passes) {
        text << "criterion (" << io::to_string(mode) << "): passes\n";
    } else {
        text << "criterion (" << io::to_string(mode) << "): fails, I={";
        for (size_t i = 0; i < res.failing_subset->size(); ++i)
            text << (i ? "," : "") << (*res.failing_subset)[i];
        text << "}, required " << res.required_rank << ", actual " << res.actual_rank << "\n";
    }
    double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    emit(opt, rep, text.str(), ms);
    return kExitOk;
}

int run_verify_theorem_a(const Options& opt, std::chrono::steady_clock::time_point start) {
    auto rep_data = theorem_a_sweep(opt.n_values, opt.trials, opt.seed, opt.threads);
    ordered_json rep;
    rep["command"] = "verify-theorem-a";
    rep["mode"] = "exact";
    rep["seed"] = opt.seed;
    rep["trials"] = rep_data.trials;
    rep["agreements"] = rep_data.agreements;
    rep["all_agree"] = rep_data.all_agree();
    ordered_json recs = ordered_json::array();
    for (const auto& r : rep_data.records) {
        recs.push_back(ordered_json{{"trial", r.trial},
                                    {"n", r.n},
                                    {"p", r.p},
                                    {"q", r.q},
                                    {"ranks", r.ranks},
                                    {"criterion", r.criterion_pass},
                                    {"hl", r.hl_pass},
                                    {"agree", r.agree}});
    }
    rep["records"] = std::move(recs);
    std::ostringstream text;
    text << "verify-theorem-a (exact, seed " << opt.seed << "): " << rep_data.agreements << "/"
         << rep_data.trials << " trials agree"
         << (rep_data.all_agree() ? "" : "  ** DISAGREEMENT: implementation bug **") << "\n";
    double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    emit(opt, rep, text.str(), ms);
    return kExitOk;
}

int run_defect(const nlohmann::json& file, const Options& opt,
               std::chrono::steady_clock::time_point start) {
    io::StratificationFile sf = io::parse_stratification(file);
    auto violations = semismall::validate(sf.strat);
    ordered_json rep;
    rep["command"] = "defect";
    rep["dim_X"] = sf.strat.dim_x;
    rep["dim_Y"] = sf.strat.dim_y;
    rep["violations"] = violations;
    std::ostringstream text;
    if (!violations.empty() && !opt.force) {
        rep["valid"] = false;
        text << "defect: invalid stratification\n";
        for (const auto& v : violations) text << "  violation: " << v << "\n";
        double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
        emit(opt, rep, text.str(), ms);
        return kExitInputError;
    }
    rep["valid"] = violations.empty();
    if (!violations.empty()) rep["forced"] = true;
    auto level = semismall::lef_level(sf.strat, opt.force);
    rep["defect"] = level.defect;
    rep["exact_lef"] = level.exact_lef;
    rep["semismall"] = (level.defect == 0);
    if (violations.empty()) rep["nd_lower_bound"] = semismall::nd_lower_bound(sf.strat);
    if (sf.m) {
        rep["m"] = *sf.m;
        rep["is_m_lef"] = semismall::is_m_lef(sf.strat, *sf.m, opt.force);
    }
    text << "defect: r(f) = " << level.defect << ", exact " << level.exact_lef << "-lef"
         << (level.defect == 0 ? " (semismall)" : "");
    if (!violations.empty()) text << "  [FORCED: input failed validation]";
    text << "\n";
    if (sf.m)
        text << "is " << *sf.m << "-lef: " << (semismall::is_m_lef(sf.strat, *sf.m, opt.force) ? "yes" : "no")
             << "\n";
    double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    emit(opt, rep, text.str(), ms);
    return kExitOk;
}

int run_af(const io::Instance<GaussianRational>& inst, const Options& opt,
           std::chrono::steady_clock::time_point start) {
    if (inst.factors.size() < 2) throw io::IoError("af requires at least two matrices in \"factors\"");
    if (static_cast<int>(inst.factors.size()) != inst.n)
        throw io::IoError("af requires exactly n matrices in \"factors\"");
    HermitianForm<GaussianRational> a = inst.factors[0];
    HermitianForm<GaussianRational> b = inst.factors[1];
    std::vector<HermitianForm<GaussianRational>> rest(inst.factors.begin() + 2, inst.factors.end());
    auto res = af_inequality_check(a, b, rest);
    ordered_json rep;
    rep["command"] = "af";
    rep["mode"] = "exact";
    rep["n"] = inst.n;
    rep["lhs"] = rat_str(res.lhs.re);
    rep["rhs"] = rat_str(res.rhs.re);
    rep["holds"] = res.holds;
    rep["equality"] = (res.lhs == res.rhs);
    std::ostringstream text;
    text << "af (exact): D(A,B,rest)^2 = " << rat_str(res.lhs.re) << " "
         << (res.holds ? ">=" : "<") << " " << rat_str(res.rhs.re) << " = D(A,A,rest)*D(B,B,rest)\n";
    double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    emit(opt, rep, text.str(), ms);
    return kExitOk;
}

template <class S>
int run_scan(const io::Instance<S>& inst, io::Mode mode, const Options& opt,
             std::chrono::steady_clock::time_point start) {
    if (!inst.m_form) throw io::IoError("scan requires field \"M\"");
    if (!inst.a_form) throw io::IoError("scan requires field \"A\"");
    if (inst.t_values.empty()) throw io::IoError("scan requires field \"t_values\"");
    auto res = hr_limit_scan(inst.factors, *inst.m_form, *inst.a_form, inst.n, inst.p, inst.q,
                             inst.t_values);
    ordered_json rep;
    rep["command"] = "scan";
    rep["mode"] = io::to_string(mode);
    rep["n"] = inst.n;
    rep["p"] = inst.p;
    rep["q"] = inst.q;
    ordered_json pts = ordered_json::array();
    bool indeterminate = false;
    std::ostringstream text;
    text << "scan (" << io::to_string(mode) << "):\n";
    for (const auto& pt : res.points) {
        ordered_json pj;
        if constexpr (scalar_traits<S>::exact)
            pj["t"] = rat_str(pt.t.re);
        else
            pj["t"] = pt.t.real();
        pj["signature"] = signature_json(pt.check.signature);
        pj["dim_primitive"] = pt.check.dim_primitive;
        pj["positive_definite"] = to_string(pt.check.positive_definite);
        if (pt.check.positive_definite == Verdict::indeterminate) indeterminate = true;
        pts.push_back(std::move(pj));
        text << "  t=" << pj["t"].dump() << " signature (" << pt.check.signature.n_plus << ","
             << pt.check.signature.n_minus << "," << pt.check.signature.n_zero << ")\n";
    }
    rep["points"] = std::move(pts);
    rep["signature_constant_positive_t"] = res.signature_constant_positive_t;
    rep["t0_matches"] = res.t0_matches;
    text << "  constant over t>0: " << (res.signature_constant_positive_t ? "yes" : "no")
         << ", t=0 matches: " << (res.t0_matches ? "yes" : "no") << "\n";
    double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    emit(opt, rep, text.str(), ms);
    return indeterminate ? kExitIndeterminate : kExitOk;
}

template <class Fn>
int with_instance(const std::string& path, const Options& opt, Fn&& fn) {
    nlohmann::json file = io::load_json_file(path);
    io::Mode mode = resolve_mode(opt, file);
    if (mode == io::Mode::exact) {
        return fn(io::parse_exact_instance(file), mode);
    } else {
        return fn(io::parse_float_instance(file), mode);
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Hard Lefschetz / Hodge-Riemann verification on complex tori"};
    app.require_subcommand(1);
    Options opt;
    app.add_option("--mode", opt.mode, "arithmetic mode: exact|float (default: exact when all entries are rational)");
    app.add_flag("--json", opt.json_out, "emit the JSON report (default)");
    app.add_flag("--text", opt.text_out, "emit the human-readable report");

    std::string file;
    auto* hl = app.add_subcommand("check-hl", "Hard Lefschetz check for a product of nef (1,1) classes");
    hl->add_option("file", file, "instance JSON")->required();
    auto* hr = app.add_subcommand("check-hr", "Hodge-Riemann check on the primitive subspace");
    hr->add_option("file", file, "instance JSON")->required();
    auto* crit = app.add_subcommand("criterion", "subset rank criterion nd(a_I) >= |I|+p+q");
    crit->add_option("file", file, "instance JSON")->required();
    auto* verify = app.add_subcommand("verify-theorem-a", "randomized criterion <-> HL equivalence harness");
    verify->add_option("--trials", opt.trials, "number of random instances");
    verify->add_option("--seed", opt.seed, "RNG seed");
    verify->add_option("--threads", opt.threads, "worker threads");
    verify->add_option("--n", opt.n_values, "torus dimensions to draw from");
    auto* def = app.add_subcommand("defect", "defect of semismallness from stratification data");
    def->add_option("file", file, "stratification JSON")->required();
    def->add_flag("--force", opt.force, "compute the raw maximum even for invalid input");
    auto* af = app.add_subcommand("af", "Alexandrov-Fenchel inequality for mixed discriminants");
    af->add_option("file", file, "instance JSON (factors = [A, B, rest...])")->required();
    auto* scan = app.add_subcommand("scan", "perturbation scan of the HR signature along t");
    scan->add_option("file", file, "instance JSON")->required();

    CLI11_PARSE(app, argc, argv);
    auto start = std::chrono::steady_clock::now();

    try {
        if (hl->parsed())
            return with_instance(file, opt, [&](const auto& inst, io::Mode mode) {
                return run_check_hl(inst, mode, opt, start);
            });
        if (hr->parsed())
            return with_instance(file, opt, [&](const auto& inst, io::Mode mode) {
                return run_check_hr(inst, mode, opt, start);
            });
        if (crit->parsed())
            return with_instance(file, opt, [&](const auto& inst, io::Mode mode) {
                return run_criterion(inst, mode, opt, start);
            });
        if (verify->parsed()) return run_verify_theorem_a(opt, start);
        if (def->parsed()) return run_defect(io::load_json_file(file), opt, start);
        if (af->parsed()) {
            nlohmann::json j = io::load_json_file(file);
            if (resolve_mode(opt, j) != io::Mode::exact)
                throw io::IoError("af requires exact-mode input (rational entries)");
            return run_af(io::parse_exact_instance(j), opt, start);
        }
        if (scan->parsed())
            return with_instance(file, opt, [&](const auto& inst, io::Mode mode) {
                return run_scan(inst, mode, opt, start);
            });
    } catch (const io::IoError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kExitInputError;
    } catch (const std::invalid_argument& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kExitInputError;
    } catch (const std::domain_error& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kExitInputError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInputError;
    }
    return kExitOk;
}
