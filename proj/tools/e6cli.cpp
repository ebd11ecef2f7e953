// e6cli: run the verification suite, tabulate (f, g) from OPS data, iterate the map.
#include "e6/suite.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <iostream>
#include <sstream>

using namespace e6;

namespace {

struct Common {
    std::string config, out, precision, truncation, tol, seed;
    bool json = false, timing = false;
};

RunConfig load(const Common& o) {
    ConfigMap kv;
    if (!o.config.empty()) kv = read_config_file(o.config);
    if (!o.precision.empty()) kv["run.precision"] = o.precision;
    if (!o.truncation.empty()) kv["run.truncation"] = o.truncation;
    if (!o.tol.empty()) kv["run.tol"] = o.tol;
    if (!o.seed.empty()) kv["run.seed"] = o.seed;
    RunConfig cfg = make_run_config(kv);
    cfg.timing = o.timing;
    return cfg;
}

void emit(const Common& o, const std::string& text) {
    if (o.out.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(o.out);
    if (!f) throw Error(ErrorKind::ConfigError, "cannot write " + o.out);
    f << text;
}

std::string text_report(const Report& r) {
    std::ostringstream s;
    for (const auto& c : r.checks) {
        s << (c.pass ? "PASS " : "FAIL ") << c.id << "  residual "
          << (c.note.empty() ? c.residual.str(3, std::ios_base::scientific) : "error") << "  tol "
          << c.tol.str(1, std::ios_base::scientific);
        if (!c.note.empty()) s << "  (" << c.note << ")";
        s << "\n";
    }
    s << (r.pass() ? "all checks passed" : "some checks failed") << " (seed " << r.seed << ")\n";
    return s.str();
}

int report(const Common& o, const Report& r) {
    emit(o, o.json ? r.json(o.timing) : text_report(r));
    return r.pass() ? 0 : 1;
}

std::string num(const Real& v) { return v.str(25, std::ios_base::scientific); }

// One row per time index; residuals need the neighbouring rows.
int derive_fg(const Common& o, const RunConfig& cfg, int n, const std::vector<int>& times) {
    OPSSystem sys(cfg.params, cfg.truncation);
    Real tol = default_tol();
    std::ostringstream s;
    s << "t,re_f,im_f,re_g,im_g,first_residual,second_residual,status\n";
    bool ok = true;
    for (int k : times) {
        s << sys.time(k).re.str(25, std::ios_base::scientific);
        try {
            Params p = sys.params(n, k);
            auto prev = extract_fg(sys, n, k - 1, tol);
            auto cur = extract_fg(sys, n, k, tol);
            auto next = extract_fg(sys, n, k + 1, tol);
            Real r1 = first_residual(prev.f, cur.f, cur.g, p.t, p);
            Real r2 = second_residual(cur.f, cur.g, next.g, p.t, p);
            s << "," << num(cur.f.re) << "," << num(cur.f.im) << "," << num(cur.g.re) << ","
              << num(cur.g.im) << "," << num(r1) << "," << num(r2) << ",ok\n";
        } catch (const Error& e) {
            ok = false;
            s << ",,,,,,," << kind_name(e.kind()) << "\n";
            std::cerr << "row k=" << k << ": " << e.what() << "\n";
        }
    }
    emit(o, s.str());
    return ok ? 0 : 1;
}

int evolve(const Common& o, const RunConfig& cfg, const std::string& f0, const std::string& g0,
           int steps) {
    const Params& p = cfg.params;
    auto value = [](const char* what, const std::string& v) {
        try {
            return Scalar::parse(v);
        } catch (const std::exception& e) {
            throw Error(ErrorKind::ConfigError, std::string(what) + ": " + e.what());
        }
    };
    PainleveState seed{value("--f0", f0), value("--g0", g0), p.t};
    std::vector<PainleveState> path{seed};
    int status = 0;
    int count = steps < 0 ? -steps : steps;
    for (int i = 0; i < count; ++i) {
        try {
            path.push_back(steps > 0 ? step_forward(path.back(), p) : step_backward(path.back(), p));
        } catch (const Error& e) {
            std::cerr << kind_name(e.kind()) << ": " << e.detail() << " at step " << i + 1 << "\n";
            status = 1;
            break;
        }
    }
    // Order the rows by increasing t.
    if (steps < 0) std::reverse(path.begin(), path.end());
    std::ostringstream s;
    s << "step,t,re_f,im_f,re_g,im_g,first_residual,second_residual,round_trip\n";
    for (std::size_t i = 0; i < path.size(); ++i) {
        const auto& st = path[i];
        int label = steps < 0 ? int(i) - int(path.size() - 1) : int(i);
        s << label << "," << num(st.t.re) << "," << num(st.f.re) << "," << num(st.f.im) << ","
          << num(st.g.re) << "," << num(st.g.im) << ",";
        if (i > 0) s << num(first_residual(path[i - 1].f, st.f, st.g, st.t, p));
        s << ",";
        if (i + 1 < path.size()) s << num(second_residual(st.f, st.g, path[i + 1].g, st.t, p));
        s << ",";
        // forward then backward from this row, compared with the row itself
        if (i + 1 < path.size()) {
            try {
                auto back = step_backward(path[i + 1], p);
                s << num(std::max(rel_diff(back.f, st.f), rel_diff(back.g, st.g)));
            } catch (const Error&) {
                s << "nan";
            }
        }
        s << "\n";
    }
    emit(o, s.str());
    return status;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"E6(1) q-Painleve Lax pair verification"};
    app.require_subcommand(1);
    Common o;
    auto common = [&](CLI::App* sc) {
        sc->add_option("--config", o.config, "TOML config file")->check(CLI::ExistingFile);
        sc->add_option("--precision", o.precision, "mantissa bits");
        sc->add_option("--truncation", o.truncation, "q-integral truncation S");
        sc->add_option("--tol", o.tol, "tolerance for every check");
        sc->add_option("--seed", o.seed, "sample point seed");
        sc->add_option("--out", o.out, "write output here instead of stdout");
        sc->add_flag("--json", o.json, "JSON report");
        sc->add_flag("--timing", o.timing, "add wall time per check (breaks bit-identity)");
    };

    auto* self = app.add_subcommand("selftest", "run every check");
    common(self);

    auto* lax = app.add_subcommand("verify-lax", "spectral/deformation matrix checks");
    common(lax);

    std::string target;
    auto* corr = app.add_subcommand("correspond", "Sakai or Yamada correspondence checks");
    common(corr);
    corr->add_option("--target", target, "sakai | yamada")
        ->required()
        ->check(CLI::IsMember({"sakai", "yamada"}));

    int n = 1;
    std::string times = "0,1,2";
    auto* dfg = app.add_subcommand("derive-fg", "(f, g) from OPS data as CSV");
    common(dfg);
    dfg->add_option("--n", n, "polynomial index")->check(CLI::Range(1, 4));
    dfg->add_option("--times", times, "comma-separated time indices k, t_k = t q^k");

    std::string f0, g0;
    int steps = 5;
    auto* evo = app.add_subcommand("evolve", "iterate the map from (f0, g0) at t");
    common(evo);
    evo->add_option("--f0", f0, "initial f")->required();
    evo->add_option("--g0", g0, "initial g")->required();
    evo->add_option("--steps", steps, "steps, negative goes backward");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        RunConfig cfg = load(o);
        if (self->parsed()) return report(o, run_suite(cfg, all_criteria()));
        if (lax->parsed()) return report(o, run_suite(cfg, {3, 4, 5, 6}));
        if (corr->parsed()) return report(o, run_suite(cfg, {target == "sakai" ? 8 : 9}));
        if (dfg->parsed()) {
            std::vector<int> ks;
            std::stringstream ss(times);
            for (std::string tok; std::getline(ss, tok, ',');) {
                if (tok.empty()) continue;
                try {
                    ks.push_back(std::stoi(tok));
                } catch (const std::exception&) {
                    throw Error(ErrorKind::ConfigError, "--times: bad index '" + tok + "'");
                }
            }
            return derive_fg(o, cfg, n, ks);
        }
        if (evo->parsed()) return evolve(o, cfg, f0, g0, steps);
    } catch (const Error& e) {
        std::cerr << e.what() << "\n";
        return e.kind() == ErrorKind::ConfigError || e.kind() == ErrorKind::InvalidParams ? 2 : 1;
    } catch (const std::exception& e) {
        std::cerr << e.what() << "\n";
        return 1;
    }
    return 2;
}
