#include "e6/suite.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <fstream>
#include <functional>
#include <set>
#include <sstream>

namespace e6 {

// ---- configuration --------------------------------------------------------------

ConfigMap read_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorKind::ConfigError, "cannot open config file " + path);
    std::vector<CLI::ConfigItem> items;
    try {
        items = CLI::ConfigTOML().from_config(in);
    } catch (const CLI::Error& e) {
        throw Error(ErrorKind::ConfigError, path + ": " + e.what());
    }
    ConfigMap kv;
    for (const auto& it : items) {
        if (it.name == "++" || it.name == "--") continue;  // section markers
        std::string key;
        for (const auto& p : it.parents) key += p + ".";
        key += it.name;
        if (it.inputs.size() != 1)
            throw Error(ErrorKind::ConfigError, key + ": expected a single value");
        kv[key] = it.inputs.front();
    }
    return kv;
}

namespace {

const std::set<std::string> kKnownKeys = {
    "params.q",  "params.t",  "params.b1",      "params.b2",       "params.b3", "params.b4",
    "params.b6", "params.n",  "run.precision", "run.truncation", "run.tol",   "run.seed"};

long parse_int(const std::string& key, const std::string& v, long lo, long hi) {
    std::size_t used = 0;
    long r = 0;
    try {
        r = std::stol(v, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used != v.size() || v.empty() || r < lo || r > hi)
        throw Error(ErrorKind::ConfigError,
                    key + ": expected an integer in [" + std::to_string(lo) + ", " +
                        std::to_string(hi) + "], got '" + v + "'");
    return r;
}

Scalar parse_num(const std::string& key, const std::string& v) {
    try {
        return Scalar::parse(v);
    } catch (const std::exception& e) {
        throw Error(ErrorKind::ConfigError, key + ": " + e.what());
    }
}

}  // namespace

RunConfig make_run_config(const ConfigMap& kv) {
    for (const auto& [k, v] : kv)
        if (!kKnownKeys.count(k)) throw Error(ErrorKind::ConfigError, "unknown key " + k);
    auto get = [&](const std::string& k) -> const std::string* {
        auto it = kv.find(k);
        return it == kv.end() ? nullptr : &it->second;
    };
    RunConfig cfg;
    if (auto v = get("run.precision")) cfg.precision = int(parse_int("run.precision", *v, 64, 4096));
    set_precision_bits(unsigned(cfg.precision));
    if (auto v = get("run.truncation"))
        cfg.truncation = int(parse_int("run.truncation", *v, 10, 100000));
    if (auto v = get("run.seed"))
        cfg.seed = std::uint64_t(parse_int("run.seed", *v, 0, std::numeric_limits<long>::max()));
    if (auto v = get("run.tol")) {
        Scalar t = parse_num("run.tol", *v);
        if (t.im != 0 || t.re <= 0) throw Error(ErrorKind::ConfigError, "run.tol: must be positive");
        cfg.tol = t.re;
    }

    Params d = Params::defaults();
    auto num = [&](const char* k, const Scalar& fallback) {
        auto v = get(std::string("params.") + k);
        return v ? parse_num(std::string("params.") + k, *v) : fallback;
    };
    int n = d.n;
    if (auto v = get("params.n")) n = int(parse_int("params.n", *v, 0, 64));
    try {
        if (get("params.b4"))
            cfg.params = Params::make(num("q", d.q), num("t", d.t), num("b1", d.b1), num("b2", d.b2),
                                      num("b3", d.b3), num("b4", d.b4), num("b6", d.b6), n);
        else
            cfg.params = Params::make(num("q", d.q), num("t", d.t), num("b1", d.b1), num("b2", d.b2),
                                      num("b3", d.b3), num("b6", d.b6), n);
    } catch (const Error& e) {
        if (e.kind() == ErrorKind::ConfigError) throw;
        throw Error(ErrorKind::ConfigError, "params: " + e.detail());
    }
    return cfg;
}

// ---- report ---------------------------------------------------------------------

bool Report::pass() const {
    return std::all_of(checks.begin(), checks.end(), [](const CheckRecord& c) { return c.pass; });
}

bool Report::criterion_present(int c) const {
    return std::any_of(checks.begin(), checks.end(),
                       [c](const CheckRecord& r) { return r.criterion == c; });
}

bool Report::criterion_pass(int c) const {
    bool any = false;
    for (const auto& r : checks) {
        if (r.criterion != c) continue;
        any = true;
        if (!r.pass) return false;
    }
    return any;
}

Real Report::criterion_margin(int c) const {
    Real worst = 0;
    for (const auto& r : checks)
        if (r.criterion == c && r.tol > 0) worst = std::max(worst, Real(r.residual / r.tol));
    return worst;
}

namespace {

std::string fmt(const Real& v) { return v.str(6, std::ios_base::scientific); }

}  // namespace

std::string Report::json(bool with_timing) const {
    nlohmann::ordered_json j;
    j["seed"] = seed;
    j["precision"] = precision;
    j["truncation"] = truncation;
    j["params"] = params;
    auto arr = nlohmann::ordered_json::array();
    for (const auto& c : checks) {
        nlohmann::ordered_json r;
        r["id"] = c.id;
        r["criterion"] = c.criterion;
        r["residual"] = c.note.empty() ? fmt(c.residual) : "error";
        r["tol"] = fmt(c.tol);
        r["pass"] = c.pass;
        if (!c.note.empty()) r["error"] = c.note;
        if (with_timing) r["seconds"] = c.seconds;
        arr.push_back(r);
    }
    j["checks"] = arr;
    auto crit = nlohmann::ordered_json::array();
    for (int c : all_criteria())
        if (criterion_present(c)) crit.push_back({{"criterion", c}, {"pass", criterion_pass(c)}});
    j["criteria"] = crit;
    j["pass"] = pass();
    return j.dump(2) + "\n";
}

std::vector<int> all_criteria() { return {1, 2, 3, 4, 5, 6, 7, 8, 9}; }

const char* criterion_title(int c) {
    switch (c) {
        case 1: return "weight structure";
        case 2: return "orthogonal polynomials";
        case 3: return "spectral matrix";
        case 4: return "index recurrences";
        case 5: return "deformation matrix";
        case 6: return "compatibility";
        case 7: return "dynamics";
        case 8: return "Sakai correspondence";
        case 9: return "Yamada correspondence";
        case 10: return "determinism";
        default: return "?";
    }
}

// ---- the checks -----------------------------------------------------------------

namespace {

std::uint64_t fnv1a(const std::string& s) {
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char ch : s) {
        h ^= ch;
        h *= 1099511628211ULL;
    }
    return h;
}

// Determinant by elimination with partial pivoting.
Scalar det(std::vector<std::vector<Scalar>> m) {
    const std::size_t n = m.size();
    Scalar d(1);
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t piv = c;
        for (std::size_t r = c + 1; r < n; ++r)
            if (abs(m[r][c]) > abs(m[piv][c])) piv = r;
        if (m[piv][c].is_exact_zero()) return Scalar(0);
        if (piv != c) {
            std::swap(m[piv], m[c]);
            d = -d;
        }
        d *= m[c][c];
        for (std::size_t r = c + 1; r < n; ++r) {
            Scalar f = m[r][c] / m[c][c];
            for (std::size_t k = c; k < n; ++k) m[r][k] -= f * m[c][k];
        }
    }
    return d;
}

class Runner {
public:
    Runner(const RunConfig& cfg, Report& rep) : cfg_(cfg), rep_(rep) {}

    void add(const std::string& id, int criterion, int tol_exp,
             const std::function<Real(Sampler&)>& fn) {
        CheckRecord r;
        r.id = id;
        r.criterion = criterion;
        r.tol = cfg_.tol ? *cfg_.tol : Real("1e-" + std::to_string(tol_exp));
        Sampler s(cfg_.seed ^ fnv1a(id));
        auto t0 = std::chrono::steady_clock::now();
        try {
            r.residual = fn(s);
            r.pass = r.residual < r.tol;
        } catch (const std::exception& e) {
            r.note = e.what();
            r.pass = false;
        }
        if (cfg_.timing)
            r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        rep_.checks.push_back(std::move(r));
    }

private:
    const RunConfig& cfg_;
    Report& rep_;
};

std::string tag(int n) { return "[n=" + std::to_string(n) + "]"; }

// Generic sample points: real and imaginary parts in [1/5, 2).
std::vector<Scalar> points(Sampler& s, int count) {
    std::vector<Scalar> xs;
    for (int i = 0; i < count; ++i) xs.push_back(s.uniform_complex(Scalar::ratio(1, 5), Scalar(2)));
    return xs;
}

struct Ctx {
    const RunConfig& cfg;
    OPSSystem sys;
    Real tol;
    int n;  // primary index
    Ctx(const RunConfig& c)
        : cfg(c), sys(c.params, c.truncation), tol(default_tol()), n(std::max(1, c.params.n)) {}
    Params p(int idx, int k = 0) const { return sys.params(idx, k); }
    const OPSData& data(int k = 0) const { return sys.at(k).data; }
};

void weight_checks(Ctx& c, Runner& run) {
    const Params p = c.p(c.n);
    const Scalar &t = p.t, &q = p.q;
    run.add("weight.semiclassical_ratio", 1, 30, [&](Sampler& s) {
        SpectralData sd = spectral_data(p, t);
        Real worst = 0;
        for (const auto& x : points(s, 10))
            worst = std::max(worst, rel_diff(weight_eval(q * x, t, p) / weight_eval(x, t, p),
                                             sd.w_plus(x) / sd.w_minus(x)));
        return worst;
    });
    run.add("weight.deformation_ratio", 1, 30, [&](Sampler& s) {
        DeformData dd = deformation_data(p, t);
        Real worst = 0;
        for (const auto& x : points(s, 10))
            worst = std::max(worst, rel_diff(weight_eval(x, q * t, p) / weight_eval(x, t, p),
                                             dd.r_plus(x) / dd.r_minus(x)));
        return worst;
    });
    run.add("weight.wv_rs", 1, 30, [&](Sampler& s) {
        Real worst = 0;
        for (int i = 0; i < 10; ++i) {
            Scalar x = s.uniform_complex(Scalar::ratio(1, 5), Scalar(2));
            Scalar tt = s.uniform(Scalar::ratio(1, 5), Scalar::ratio(3, 5));
            worst = std::max(worst, check_wv_rs(p, tt, x));
        }
        return worst;
    });
    run.add("weight.chi_forms", 1, 30, [&](Sampler& s) {
        Real worst = 0;
        for (const auto& x : points(s, 10)) {
            Scalar v = chi(x, t, p);
            worst = std::max({worst, rel_diff(v, chi_plus_form(x, t, p)),
                              rel_diff(v, chi_minus_form(x, t, p))});
        }
        return worst;
    });
}

void ops_checks(Ctx& c, Runner& run) {
    const Params p = c.p(c.n);
    const auto& slice = c.sys.at(0);
    const OPSData& d = slice.data;
    run.add("ops.orthogonality", 2, 25, [&](Sampler&) {
        const int top = 5;
        std::vector<std::vector<Scalar>> G(top + 1, std::vector<Scalar>(top + 1));
        for (std::size_t i = 0; i < slice.measure.nodes.size(); ++i) {
            auto ps = eval_p_all(top, slice.measure.nodes[i], d);
            for (int a = 0; a <= top; ++a)
                for (int b = a; b <= top; ++b) G[a][b] += slice.measure.masses[i] * ps[a] * ps[b];
        }
        Real worst = 0;
        for (int a = 0; a <= top; ++a)
            for (int b = a; b <= top; ++b)
                worst = std::max(worst, abs(G[a][b] - Scalar(a == b ? 1 : 0)));
        return worst;
    });
    run.add("ops.casoratian", 2, 25, [&](Sampler& s) {
        Real worst = 0;
        for (int n = 0; n <= 3; ++n)
            for (const auto& x : points(s, 5)) {
                SMat Y = y_matrix(n, x, d, slice.measure, p, c.tol);
                worst = std::max(worst, abs(d.a_at(n) * weight_eval(x, d.t, p) * Y.det() - Scalar(1)));
            }
        return worst;
    });
    // Monic p_n from the Heine determinant against the sums of recurrence data.
    run.add("ops.expansion", 2, 25, [&](Sampler&) {
        const auto& m = d.moments;
        Real worst = 0;
        for (int n = 2; n <= 3; ++n) {
            auto minor = [&](int drop) {
                std::vector<std::vector<Scalar>> a(n);
                for (int i = 0; i < n; ++i)
                    for (int j = 0; j <= n; ++j)
                        if (j != drop) a[i].push_back(m[i + j]);
                return det(a);
            };
            Scalar dn = minor(n);
            auto monic = [&](int k) { return ((n + k) % 2 ? Scalar(-1) : Scalar(1)) * minor(k) / dn; };
            Scalar sb(0), e2(0), sa(0);
            for (int i = 0; i < n; ++i) {
                sb += d.b_at(i);
                for (int j = i + 1; j < n; ++j) e2 += d.b_at(i) * d.b_at(j);
            }
            for (int i = 1; i < n; ++i) sa += d.a_at(i) * d.a_at(i);
            worst = std::max({worst, rel_diff(monic(n - 1), -sb), rel_diff(monic(n - 2), e2 - sa)});
            Scalar dn1 = hankel_det(m, n + 1);
            worst = std::max(worst, rel_diff(d.gamma_at(n) * d.gamma_at(n), dn / dn1));
        }
        return worst;
    });
    run.add("ops.stieltjes_equation", 2, 25, [&](Sampler& s) {
        auto f = [&](const Scalar& x) { return stieltjes(x, slice.measure, c.tol); };
        Poly U = compute_U(p, d.t, f, complex_nodes(5), c.tol);
        SpectralData sd = spectral_data(p, d.t);
        Real worst = 0;
        for (const auto& x : points(s, 5)) {
            Scalar fq = f(p.q * x), f0 = f(x);
            Scalar Dx = (fq - f0) / ((p.q - Scalar(1)) * x);
            Scalar Mx = (fq + f0) / Scalar(2);
            Scalar lhs = sd.W(x) * Dx - Scalar(2) * sd.V(x) * Mx;
            worst = std::max(worst, rel_diff(lhs, U(x)));
        }
        return worst;
    });
}

void spectral_checks(Ctx& c, Runner& run) {
    for (int n : {0, c.n, c.n + 1}) {
        run.add("laxpair.det_identity" + tag(n), 3, 25, [&, n](Sampler&) {
            return det_identity_residual(astar_numeric(c.sys, n, 0, c.tol), c.p(n));
        });
        run.add("laxpair.leading_diagonal" + tag(n), 3, 30, [&, n](Sampler&) {
            auto A = astar_numeric(c.sys, n, 0, c.tol);
            Params p = c.p(n);
            return std::max(rel_diff(A.wp.coeff(3), kappa_plus(p)),
                            rel_diff(A.wm.coeff(3), kappa_minus(p)));
        });
    }
    for (int n : {c.n, c.n + 1}) {
        run.add("laxpair.quad" + tag(n), 3, 25, [&, n](Sampler&) {
            auto A = astar_numeric(c.sys, n, 0, c.tol);
            return abs(quad_residual(extract_lambda_mu_nu(A, c.p(n), c.tol), c.p(n)));
        });
        for (int form : {1, 2})
            run.add("laxpair.closed_form_" + std::to_string(form) + tag(n), 3, 25,
                    [&, n, form](Sampler&) {
                        auto A = astar_numeric(c.sys, n, 0, c.tol);
                        auto Ap = astar_numeric(c.sys, n - 1, 0, c.tol);
                        auto fg = extract_fg(c.sys, n, 0, c.tol);
                        ClosedInput in{fg.f, fg.g, poly_root_of_linear_factor(Ap.tp, c.tol),
                                       c.data().a_at(n)};
                        return mat_distance(astar_closed_form(in, c.p(n), form, c.tol).mat(),
                                            A.mat());
                    });
        run.add("laxpair.f_two_routes" + tag(n), 3, 25, [&, n](Sampler&) {
            auto fg = extract_fg(c.sys, n, 0, c.tol);
            return rel_diff(fg.f, fg.f_alt);
        });
        run.add("laxpair.scalar_equation" + tag(n), 3, 25, [&, n](Sampler& s) {
            auto A = astar_numeric(c.sys, n, 0, c.tol);
            const OPSData& d = c.data();
            auto pn = [&](const Scalar& x) { return eval_p(n, x, d); };
            Real worst = 0;
            for (const auto& x : points(s, 5)) worst = std::max(worst, lsodde_residual(A, c.p(n), pn, x));
            return worst;
        });
    }
    run.add("laxpair.initial_theta", 3, 25, [&](Sampler&) {
        const auto& slice = c.sys.at(0);
        Params p = c.p(0);
        auto f = [&](const Scalar& x) { return stieltjes(x, slice.measure, c.tol); };
        Poly U = compute_U(p, slice.t, f, complex_nodes(5), c.tol);
        auto A = astar_numeric(c.sys, 0, 0, c.tol);
        const OPSData& d = slice.data;
        Scalar g0 = d.gamma_at(0);
        Poly target = Poly::monomial(-(p.q - Scalar(1)) * d.a_at(0) * g0 * g0, 1) * U;
        return coeff_distance(A.tp, target);
    });
}

void recurrence_checks(Ctx& c, Runner& run) {
    auto coeffs = [&](int n) {
        return spectral_coeffs(astar_numeric(c.sys, n, 0, c.tol), n, c.p(n), c.data().a_at(n));
    };
    const Params p = c.p(c.n);
    const Scalar& q = p.q;
    const OPSData& d = c.data();
    Poly dy2 = Poly::monomial((q - Scalar(1)) * (q - Scalar(1)), 2);
    Poly V = spectral_data(p, d.t).V;
    Poly W = spectral_data(p, d.t).W;
    auto Mx = [&](int n) {
        return Poly(std::vector<Scalar>{-d.b_at(n), (q + Scalar(1)) / Scalar(2)});
    };
    Scalar quarter = Scalar::ratio(1, 4);
    for (int n : {0, 1}) {
        run.add("recurrence.w" + tag(n), 4, 25, [&, n](Sampler&) {
            auto a = coeffs(n), b = coeffs(n + 1);
            return coeff_distance(b.W, a.W + quarter * dy2 * a.Theta);
        });
        run.add("recurrence.omega" + tag(n), 4, 25, [&, n](Sampler&) {
            auto a = coeffs(n), b = coeffs(n + 1);
            return coeff_distance(b.Omega + a.Omega + Scalar(2) * V, Mx(n) * a.Theta);
        });
        run.add("recurrence.bilinear" + tag(n), 4, 25, [&, n](Sampler&) {
            auto a = coeffs(n), b = coeffs(n + 1);
            Scalar an = d.a_at(n), an1 = d.a_at(n + 1);
            Poly lhs = (a.W * b.Omega - b.W * a.Omega) * Mx(n);
            Poly rhs = -quarter * dy2 * b.Omega * a.Omega + a.W * b.W +
                       (an1 * an1) * a.W * b.Theta - (an * an) * b.W * a.Theta_prev;
            return coeff_distance(lhs, rhs);
        });
        run.add("recurrence.recurrence_conjugation" + tag(n), 4, 25, [&, n](Sampler& s) {
            auto An = astar_numeric(c.sys, n, 0, c.tol), An1 = astar_numeric(c.sys, n + 1, 0, c.tol);
            Real worst = 0;
            for (const auto& x : points(s, 5))
                worst = std::max(worst, mat_distance(k_matrix(n, q * x, d) * An.at(x),
                                                     An1.at(x) * k_matrix(n, x, d)));
            return worst;
        });
    }
    for (int n : {0, 1, 2})
        run.add("recurrence.determinant" + tag(n), 4, 25, [&, n](Sampler&) {
            auto a = coeffs(n);
            Scalar an = d.a_at(n);
            Poly dm = a.Omega * (-a.Omega - Scalar(2) * V) + (an * an) * a.Theta * a.Theta_prev;
            return coeff_distance(a.W * (a.W - W), -quarter * dy2 * dm);
        });
    for (int n : {1, 2})
        run.add("recurrence.leading_orders" + tag(n), 4, 25, [&, n](Sampler&) {
            auto a = coeffs(n);
            SpectralData sd = spectral_data(c.p(n), d.t);
            Scalar up = sd.w_plus.coeff(3) * pow(q, n), dn = sd.w_minus.coeff(3) / pow(q, n);
            Scalar qm1 = q - Scalar(1);
            Scalar w3 = sd.W.coeff(3) / Scalar(2) + (up + dn) / Scalar(4);
            Scalar th1 = (up - dn / q) / qm1;
            Scalar om2 = (up - dn) / (Scalar(2) * qm1);
            return std::max({rel_diff(a.W.coeff(3), w3), rel_diff(a.Theta.coeff(1), th1),
                             rel_diff(a.Omega.coeff(2) + V.coeff(2), om2)});
        });
}

void deformation_checks(Ctx& c, Runner& run) {
    for (int n : {c.n, c.n + 1}) {
        auto an = [&, n](int k) { return c.data(k).a_at(n); };
        run.add("deform.det_identity" + tag(n), 5, 25, [&, n, an](Sampler&) {
            auto B = bstar_numeric(c.sys, n, 0, c.tol).B;
            Params p = c.p(n);
            DeformData dd = deformation_data(p, p.t);
            return coeff_distance(B.det(), (an(0) / an(1)) * dd.r_plus * dd.r_minus);
        });
        run.add("deform.off_diagonal" + tag(n), 5, 25, [&, n, an](Sampler&) {
            auto B = bstar_numeric(c.sys, n, 0, c.tol).B;
            Scalar r1p = B.rp.coeff(1), r1m = B.rm.coeff(1);
            return std::max(rel_diff(B.pp, -an(1) * r1m + an(0) * r1p),
                            rel_diff(B.pm, -an(0) * r1m + an(1) * r1p));
        });
        run.add("deform.closed_form" + tag(n), 5, 25, [&, n, an](Sampler&) {
            auto B = bstar_numeric(c.sys, n, 0, c.tol).B;
            auto fg = extract_fg(c.sys, n, 0, c.tol);
            BstarInput in{fg.f, fg.g, an(0), gamma_ratios(c.sys, n, 0)};
            return mat_distance(bstar_closed_form(in, c.p(n)).mat(), B.mat());
        });
        run.add("deform.residues" + tag(n), 5, 25, [&, n](Sampler&) {
            auto A = astar_numeric(c.sys, n, 0, c.tol), Aq = astar_numeric(c.sys, n, 1, c.tol);
            auto B = bstar_numeric(c.sys, n, 0, c.tol).B;
            auto r = residue_checks(A, Aq, B, c.p(n));
            return *std::max_element(r.begin(), r.end());
        });
        run.add("deform.constant_terms" + tag(n), 5, 25, [&, n](Sampler&) {
            Params p = c.p(n);
            auto B = bstar_numeric(c.sys, n, 0, c.tol).B;
            auto fg = extract_fg(c.sys, n, 0, c.tol);
            auto lh = extract_lambda_mu_nu(astar_numeric(c.sys, n, 1, c.tol), c.p(n, 1), c.tol);
            Scalar e = Scalar(1) - p.b5 * p.b5;
            return std::max(
                rel_diff(B.rp.coeff(0) / B.rp.coeff(1) * e, r0_ratio_plus(fg.f, fg.g, lh.lambda, p)),
                rel_diff(B.rm.coeff(0) / B.rm.coeff(1) * e, r0_ratio_minus(fg.f, fg.g, lh.lambda, p)));
        });
    }
    run.add("deform.index_shift" + tag(c.n), 5, 25, [&](Sampler&) {
        auto B = bstar_numeric(c.sys, c.n, 0, c.tol).B;
        auto B1 = bstar_numeric(c.sys, c.n + 1, 0, c.tol).B;
        const OPSData& d = c.data();
        return rel_diff(B1.pm * d.a_at(c.n), d.a_at(c.n + 1) * B.pp);
    });
}

void compatibility_checks(Ctx& c, Runner& run) {
    for (int n : {c.n, c.n + 1})
        run.add("compat.d_schlesinger" + tag(n), 6, 25, [&, n](Sampler& s) {
            auto A = astar_numeric(c.sys, n, 0, c.tol), Aq = astar_numeric(c.sys, n, 1, c.tol);
            auto B = bstar_numeric(c.sys, n, 0, c.tol).B;
            return verify_compatibility(A, Aq, B, c.p(n), points(s, 8));
        });
}

void dynamics_checks(Ctx& c, Runner& run) {
    for (int n : {c.n, c.n + 1}) {
        auto fgs = [&, n]() {
            std::vector<FGPair> v;
            for (int k = 0; k <= 2; ++k) v.push_back(extract_fg(c.sys, n, k, c.tol));
            return v;
        };
        auto t = [&](int k) { return c.sys.time(k); };
        run.add("painleve.first_equation" + tag(n), 7, 20, [&, n, fgs, t](Sampler&) {
            auto v = fgs();
            Params p = c.p(n);
            return std::max(first_residual(v[0].f, v[1].f, v[1].g, t(1), p),
                            first_residual(v[1].f, v[2].f, v[2].g, t(2), p));
        });
        run.add("painleve.second_equation" + tag(n), 7, 20, [&, n, fgs, t](Sampler&) {
            auto v = fgs();
            Params p = c.p(n);
            return std::max(second_residual(v[0].f, v[0].g, v[1].g, t(0), p),
                            second_residual(v[1].f, v[1].g, v[2].g, t(1), p));
        });
        run.add("painleve.step_matches_ops" + tag(n), 7, 20, [&, n, fgs, t](Sampler&) {
            auto v = fgs();
            Real worst = 0;
            for (int k = 0; k < 2; ++k) {
                auto s = step_forward({v[k].f, v[k].g, t(k)}, c.p(n));
                worst = std::max({worst, rel_diff(s.f, v[k + 1].f), rel_diff(s.g, v[k + 1].g),
                                  rel_diff(s.t, t(k + 1))});
            }
            return worst;
        });
        run.add("painleve.normalisation" + tag(n), 7, 20, [&, n](Sampler&) {
            auto fg = extract_fg(c.sys, n, 0, c.tol);
            Scalar r = gamma_ratios(c.sys, n, 0).r1p;
            return rel_diff(gamma_ratio_sq(fg.f, c.sys.time(0), c.p(n)), r * r);
        });
        run.add("painleve.round_trip" + tag(n), 7, 25, [&, n](Sampler& s) {
            Params p = c.p(n);
            auto fg = extract_fg(c.sys, n, 0, c.tol);
            std::vector<PainleveState> seeds{{fg.f, fg.g, p.t}};
            seeds.push_back({s.uniform_complex(Scalar::ratio(1, 5), Scalar(2)),
                             s.uniform_complex(Scalar::ratio(1, 5), Scalar(2)), p.t});
            Real worst = 0;
            for (const auto& seed : seeds) {
                auto fwd = orbit(seed, 5, p);
                auto back = orbit(fwd.back(), -5, p);
                const auto& e = back.back();
                worst = std::max({worst, rel_diff(e.f, seed.f), rel_diff(e.g, seed.g),
                                  rel_diff(e.t, seed.t)});
            }
            return worst;
        });
    }
}

void sakai_checks(Ctx& c, Runner& run) {
    const int n = c.n;
    const Params p = c.p(n), pq = c.p(n, 1);
    struct Data {
        SpectralMatrix A;
        SakaiMatrix S, Sq;
        ZPair z;
        Scalar w_next_b;
    };
    auto build = [&]() {
        Data D;
        D.A = astar_numeric(c.sys, n, 0, c.tol);
        auto Aq = astar_numeric(c.sys, n, 1, c.tol);
        auto l = extract_lambda_mu_nu(D.A, p, c.tol), lq = extract_lambda_mu_nu(Aq, pq, c.tol);
        D.z = zpm_from_mu_nu(l, p);
        ZPair zq = zpm_from_mu_nu(lq, pq);
        D.S = sakai_build(l.lambda, D.z, sakai_w(c.data().a_at(n), p), p);
        Scalar wn = sakai_w_next_a(D.S, p);
        D.Sq = sakai_build(lq.lambda, zq, wn, pq);
        D.w_next_b = sakai_w_next_b(D.S.d.w, lq.lambda, D.Sq.d.z1, p);
        return D;
    };
    run.add("sakai.matches_astar" + tag(n), 8, 25, [&](Sampler&) {
        auto D = build();
        return mat_distance(D.S.A, D.A.mat());
    });
    run.add("sakai.properties" + tag(n), 8, 25, [&](Sampler&) {
        auto D = build();
        auto r = sakai_properties(D.S, D.z, p);
        return std::max({r.det, r.top, r.bottom, r.root, r.lower});
    });
    run.add("sakai.residue_routes" + tag(n), 8, 20, [&](Sampler&) {
        auto D = build();
        return rel_diff(D.Sq.d.w, D.w_next_b);
    });
    run.add("sakai.b0_entries" + tag(n), 8, 20, [&](Sampler&) {
        auto D = build();
        SMat B0 = sakai_b0(D.S, D.Sq, p);
        Scalar r12 = p.q * (D.Sq.d.w - D.S.d.w) / (Scalar(1) - p.q * p.b5 * p.b5);
        return std::max(rel_diff(B0.e12, r12), rel_diff(B0.e22, sakai_r22(D.Sq, p)));
    });
    run.add("sakai.compatibility" + tag(n), 8, 20, [&](Sampler& s) {
        auto D = build();
        return sakai_compat_residual(D.S, D.Sq, sakai_b0(D.S, D.Sq, p), p, points(s, 6));
    });
    run.add("sakai.dictionary" + tag(n), 8, 20, [&](Sampler& s) {
        auto A = astar_numeric(c.sys, n, 0, c.tol);
        auto fg = extract_fg(c.sys, n, 0, c.tol);
        auto M = murata_from_fg(fg.f, fg.g, c.data().a_at(n), Scalar::ratio(3, 7), p);
        Real worst = 0;
        for (const auto& x : points(s, 5)) worst = std::max(worst, mat_distance(M.frakA(x), A.at(x)));
        return worst;
    });
    run.add("sakai.evolution" + tag(n), 8, 20, [&](Sampler&) {
        auto f0 = extract_fg(c.sys, n, 0, c.tol), f1 = extract_fg(c.sys, n, 1, c.tol);
        auto fm = extract_fg(c.sys, n, -1, c.tol);
        Scalar one(1);
        auto r = sakai_evolution_residual(one / f0.g, f0.f, one / f1.g, fm.f, p);
        return std::max(r[0], r[1]);
    });
}

void yamada_checks(Ctx& c, Runner& run) {
    const int n = c.n;
    const Params p = c.p(n);
    const Scalar& q = p.q;
    auto an = [&]() { return c.data().a_at(n); };
    run.add("yamada.coefficients" + tag(n), 9, 20, [&](Sampler& s) {
        auto A = astar_numeric(c.sys, n, 0, c.tol);
        auto fg = extract_fg(c.sys, n, 0, c.tol);
        Real worst = 0;
        for (const auto& z : points(s, 6)) {
            auto a = yamada_coeffs_direct(z, fg.f, fg.g, p);
            auto b = yamada_coeffs_from_lax(z, A, an(), p);
            worst = std::max({worst, rel_diff(a.plus, b.plus), rel_diff(a.zero, b.zero),
                              rel_diff(a.minus, b.minus)});
        }
        return worst;
    });
    run.add("yamada.combination_displays" + tag(n), 9, 20, [&](Sampler& s) {
        auto A = astar_numeric(c.sys, n, 0, c.tol);
        auto fg = extract_fg(c.sys, n, 0, c.tol);
        Real worst = 0;
        for (const auto& x : points(s, 6)) {
            auto r = lax_combination_displays(x, A, fg.f, fg.g, an(), p);
            worst = std::max({worst, r[0], r[1], r[2]});
        }
        return worst;
    });
    run.add("yamada.second_order_pullback" + tag(n), 9, 20, [&](Sampler& s) {
        auto fg = extract_fg(c.sys, n, 0, c.tol);
        auto y = to_yamada(fg.f, fg.g, p);
        Real worst = 0;
        for (const auto& z : points(s, 6)) {
            auto d = yamada_coeffs_direct(z, fg.f, fg.g, p);
            auto l = yamada_lp_a(y, q / z);
            Scalar r0 = l[0] / d.plus;
            worst = std::max({worst, rel_diff(l[1] / d.zero, r0), rel_diff(l[2] / d.minus, r0)});
        }
        return worst;
    });
    run.add("yamada.mixed_pullback" + tag(n), 9, 20, [&](Sampler& s) {
        auto fg = extract_fg(c.sys, n, 0, c.tol);
        auto y = to_yamada(fg.f, fg.g, p);
        Real worst = 0;
        for (const auto& z : points(s, 6)) {
            auto l = yamada_lp_b(y, q / z);
            auto m = mixed_target(z, fg.f, fg.g, p);
            for (int i = 0; i < 3; ++i) worst = std::max(worst, rel_diff(l[i], m[i]));
        }
        return worst;
    });
    run.add("yamada.first_order_pullback", 9, 25, [&](Sampler& s) {
        Real worst = 0;
        for (int i = 0; i < 10; ++i) {
            Scalar t = s.uniform(Scalar::ratio(1, 5), Scalar::ratio(3, 5));
            Params pt = p.with_t(t);
            PainleveState st{s.uniform_complex(Scalar::ratio(1, 5), Scalar(2)),
                             s.uniform_complex(Scalar::ratio(1, 5), Scalar(2)), t};
            auto up = step_forward(st, pt), down = step_backward(st, pt);
            auto y = to_yamada(st.f, st.g, pt);
            worst = std::max({worst, yamada_qp_a(y, Scalar(1) / up.g),
                              yamada_qp_b(y, Scalar(1) / down.f)});
        }
        return worst;
    });
    run.add("mixed.relation" + tag(n), 9, 20, [&](Sampler& s) {
        auto A = astar_numeric(c.sys, n, 0, c.tol);
        auto Bn = bstar_numeric(c.sys, n, 0, c.tol);
        const OPSData &d = c.data(0), &dq = c.data(1);
        auto pt = [&](const Scalar& x) { return eval_p(n, x, d); };
        auto pq = [&](const Scalar& x) { return eval_p(n, x, dq); };
        Real worst = 0;
        for (const auto& x : points(s, 6))
            worst = std::max(worst, mixed_dde_residual(A, Bn.B, Bn.c, p, pt, pq, x));
        return worst;
    });
    run.add("mixed.coefficients" + tag(n), 9, 20, [&](Sampler& s) {
        auto A = astar_numeric(c.sys, n, 0, c.tol);
        auto B = bstar_numeric(c.sys, n, 0, c.tol).B;
        auto fg = extract_fg(c.sys, n, 0, c.tol);
        Scalar gr = c.data(1).gamma_at(n) / c.data(0).gamma_at(n);
        Real worst = 0;
        for (const auto& x : points(s, 6)) {
            auto r = mixed_coefficient_displays(x, A, B, fg.f, fg.g, an(), gr, p);
            worst = std::max({worst, r[0], r[1], r[2]});
        }
        return worst;
    });
    run.add("gauge.ratios" + tag(n), 9, 25, [&](Sampler& s) {
        auto fg = extract_fg(c.sys, n, 0, c.tol);
        Scalar c0 = bstar_numeric(c.sys, n, 0, c.tol).c;
        Scalar gr = c.data(1).gamma_at(n) / c.data(0).gamma_at(n);
        Scalar Cq = gauge_c_step(gr, fg.f, fg.g, c0, p);
        const Scalar& t = p.t;
        Scalar one(1);
        Real worst = 0;
        for (const auto& x : points(s, 6)) {
            Scalar F = gauge_F(x, t, one, p);
            worst = std::max({worst, rel_diff(gauge_F(q * x, t, one, p) / F, gauge_ratio_up(x, t, p)),
                              rel_diff(gauge_F(x / q, t, one, p) / F, gauge_ratio_down(x, t, p)),
                              rel_diff(gauge_F(q * x, q * t, Cq, p) / gauge_F(q * x, t, one, p),
                                       (one - p.b6 * x / t) / (q * q * x * x) * Cq)});
        }
        return worst;
    });
    // U-form along three steps, with C carried by its own recursion from C(t0) = 1.
    run.add("gauge.u_form" + tag(n), 9, 20, [&](Sampler& s) {
        Scalar C(1);
        Real worst = 0;
        auto xs = points(s, 4);
        for (int k = 0; k < 3; ++k) {
            Params pk = c.p(n, k);
            auto fg = extract_fg(c.sys, n, k, c.tol);
            Scalar cc = bstar_numeric(c.sys, n, k, c.tol).c;
            Scalar gr = c.data(k + 1).gamma_at(n) / c.data(k).gamma_at(n);
            Scalar Cn = C * gauge_c_step(gr, fg.f, fg.g, cc, pk);
            if (!Cn.is_finite() || abs(Cn) <= c.tol)
                throw Error(ErrorKind::DenominatorZero, "gauge constant degenerate at step " +
                                                            std::to_string(k));
            const OPSData &d = c.data(k), &dq = c.data(k + 1);
            auto pt = [&](const Scalar& x) { return eval_p(n, x, d); };
            auto pq = [&](const Scalar& x) { return eval_p(n, x, dq); };
            for (const auto& x : xs)
                worst = std::max(worst, u_form_residual(x, fg.f, fg.g, C, Cn, pk, pt, pq));
            C = Cn;
        }
        return worst;
    });
}

}  // namespace

Report run_suite(const RunConfig& cfg, const std::vector<int>& criteria) {
    Report rep;
    rep.seed = cfg.seed;
    rep.precision = int(precision_bits());
    rep.truncation = cfg.truncation;
    const Params& p = cfg.params;
    rep.params = "q=" + p.q.str(12) + " t=" + p.t.str(12) + " b1=" + p.b1.str(12) +
                 " b2=" + p.b2.str(12) + " b3=" + p.b3.str(12) + " b4=" + p.b4.str(12) +
                 " b6=" + p.b6.str(12) + " n=" + std::to_string(p.n);
    Runner run(cfg, rep);
    Ctx ctx(cfg);
    using Fn = void (*)(Ctx&, Runner&);
    const std::map<int, Fn> table = {{1, weight_checks},       {2, ops_checks},
                                     {3, spectral_checks},     {4, recurrence_checks},
                                     {5, deformation_checks},  {6, compatibility_checks},
                                     {7, dynamics_checks},     {8, sakai_checks},
                                     {9, yamada_checks}};
    for (int c : criteria) {
        auto it = table.find(c);
        if (it == table.end()) throw Error(ErrorKind::ConfigError, "no criterion " + std::to_string(c));
        // A failure while building shared data is recorded, not propagated.
        try {
            it->second(ctx, run);
        } catch (const std::exception& e) {
            CheckRecord r;
            r.id = std::string("setup.") + criterion_title(c);
            r.criterion = c;
            r.note = e.what();
            rep.checks.push_back(r);
        }
    }
    return rep;
}

}  // namespace e6
