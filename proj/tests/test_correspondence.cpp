#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "e6/correspondence.hpp"

using namespace e6;

namespace {
Real tiny() { return Real("1e-50"); }
Real tol() { return default_tol(); }

OPSSystem& sys() {
    static OPSSystem s(Params::defaults());
    return s;
}

struct Fixture {
    Params p = sys().params(1, 0), pq = sys().params(1, 1);
    SpectralMatrix A = astar_numeric(sys(), 1, 0, tol());
    SpectralMatrix Aq = astar_numeric(sys(), 1, 1, tol());
    LambdaMuNu l = extract_lambda_mu_nu(A, p, tol());
    LambdaMuNu lq = extract_lambda_mu_nu(Aq, pq, tol());
    ZPair z = zpm_from_mu_nu(l, p), zq = zpm_from_mu_nu(lq, pq);
    Scalar a = sys().at(0).data.a_at(1);
    FGPair fg = extract_fg(sys(), 1, 0, tol());
};

const Fixture& fx() {
    static Fixture f;
    return f;
}
}  // namespace

TEST_CASE("Sakai matrix equals A*") {
    const auto& F = fx();
    auto S = sakai_build(F.l.lambda, F.z, sakai_w(F.a, F.p), F.p);
    CHECK(mat_distance(S.A, F.A.mat()) < tiny());
    auto pr = sakai_properties(S, F.z, F.p);
    CHECK(pr.det < tiny());
    CHECK(pr.top < tiny());
    CHECK(pr.bottom < tiny());
    CHECK(pr.root < tiny());
    CHECK(pr.lower < tiny());
}

TEST_CASE("the two residue routes agree only on solutions") {
    const auto& F = fx();
    auto S = sakai_build(F.l.lambda, F.z, sakai_w(F.a, F.p), F.p);
    Scalar wa = sakai_w_next_a(S, F.p);
    auto Sq = sakai_build(F.lq.lambda, F.zq, wa, F.pq);
    CHECK(rel_diff(wa, sakai_w_next_b(S.d.w, F.lq.lambda, Sq.d.z1, F.p)) < tiny());
    // f(qt) off its true value: z+ at qt moves and the routes split
    ZPair bent = F.zq;
    bent.plus += Scalar::ratio(1, 1000);
    auto Sb = sakai_build(F.lq.lambda, bent, wa, F.pq);
    CHECK(rel_diff(wa, sakai_w_next_b(S.d.w, F.lq.lambda, Sb.d.z1, F.p)) > Real("1e-8"));

    SMat B0 = sakai_b0(S, Sq, F.p);
    CHECK(sakai_compat_residual(S, Sq, B0, F.p, complex_nodes(6)) < tiny());
    CHECK(rel_diff(B0.e22, sakai_r22(Sq, F.p)) < tiny());
    Scalar r12 = F.p.q * (Sq.d.w - S.d.w) / (Scalar(1) - F.p.q * F.p.b5 * F.p.b5);
    CHECK(rel_diff(B0.e12, r12) < tiny());
    CHECK(sakai_compat_residual(S, Sb, sakai_b0(S, Sb, F.p), F.p, complex_nodes(6)) > Real("1e-8"));
}

TEST_CASE("Murata transformation reproduces A*") {
    const auto& F = fx();
    for (const char* gs : {"3/7", "-2"}) {
        auto M = murata_from_fg(F.fg.f, F.fg.g, F.a, Scalar::parse(gs), F.p);
        for (const auto& x : complex_nodes(5)) CHECK(mat_distance(M.frakA(x), F.A.at(x)) < tiny());
        // frakA at small x is b6 t times the identity, and frakA/x^3 at large x is diagonal (kappa)
        Scalar eps(Real("1e-30"));
        CHECK(mat_distance(M.frakA(eps), scale(identity2(), F.p.b6 * F.p.t)) < Real("1e-25"));
        Scalar big(Real("1e30"));
        SMat top = scale(M.frakA(big), Scalar(1) / (big * big * big));
        CHECK(mat_distance(top, SMat{kappa_plus(F.p), 0, 0, kappa_minus(F.p)}) < Real("1e-25"));
    }
}

TEST_CASE("evolution in Sakai variables") {
    const auto& F = fx();
    auto f1 = extract_fg(sys(), 1, 1, tol()), fm = extract_fg(sys(), 1, -1, tol());
    Scalar one(1);
    auto r = sakai_evolution_residual(one / F.fg.g, F.fg.f, one / f1.g, fm.f, F.p);
    CHECK(r[0] < tiny());
    CHECK(r[1] < tiny());
    auto bad = sakai_evolution_residual(one / F.fg.g, F.fg.f + Scalar::ratio(1, 1000), one / f1.g, fm.f, F.p);
    CHECK(std::max(bad[0], bad[1]) > Real("1e-8"));
    // nu = lambda at lambda = a1 makes both sides of the first equation vanish
    auto z = sakai_evolution_residual(F.p.b1, F.p.b1, one / f1.g, Scalar::ratio(5, 3), F.p);
    CHECK(z[0] < tiny());
}

TEST_CASE("Yamada coefficients") {
    const auto& F = fx();
    const Params& p = F.p;
    Scalar f = F.fg.f, g = F.fg.g;
    CHECK(abs(yamada_coeffs_direct(Scalar(1) / p.b1, f, g, p).plus) < tiny());
    CHECK(abs(yamada_coeffs_direct(p.b6 * p.q * p.t, f, g, p).minus) < tiny());
    for (const auto& z : complex_nodes(6)) {
        auto d = yamada_coeffs_direct(z, f, g, p);
        auto l = yamada_coeffs_from_lax(z, F.A, F.a, p);
        CHECK(rel_diff(d.plus, l.plus) < tiny());
        CHECK(rel_diff(d.zero, l.zero) < tiny());
        CHECK(rel_diff(d.minus, l.minus) < tiny());
        auto disp = lax_combination_displays(z, F.A, f, g, F.a, p);
        for (const auto& v : disp) CHECK(v < tiny());
    }
}

TEST_CASE("Yamada's own equations pull back") {
    const auto& F = fx();
    const Params& p = F.p;
    auto y = to_yamada(F.fg.f, F.fg.g, p);
    CHECK(y.b[4] == Scalar(1) / p.b6);
    CHECK(y.b[6] == p.q * p.b5);
    for (const auto& z : complex_nodes(4)) {
        auto d = yamada_coeffs_direct(z, F.fg.f, F.fg.g, p);
        auto la = yamada_lp_a(y, p.q / z);
        Scalar r = la[0] / d.plus;
        CHECK(rel_diff(la[1] / d.zero, r) < tiny());
        CHECK(rel_diff(la[2] / d.minus, r) < tiny());
        auto lb = yamada_lp_b(y, p.q / z);
        auto mt = mixed_target(z, F.fg.f, F.fg.g, p);
        for (int i = 0; i < 3; ++i) CHECK(rel_diff(lb[i], mt[i]) < tiny());
    }
    PainleveState s{Scalar(Real("0.7"), Real("0.3")), Scalar(Real("1.2"), Real("0.5")), p.t};
    auto up = step_forward(s, p), down = step_backward(s, p);
    auto ys = to_yamada(s.f, s.g, p);
    CHECK(yamada_qp_a(ys, Scalar(1) / up.g) < tiny());
    CHECK(yamada_qp_b(ys, Scalar(1) / down.f) < tiny());
    CHECK(yamada_qp_a(ys, Scalar(1) / up.g + Scalar::ratio(1, 1000)) > Real("1e-8"));
}

TEST_CASE("mixed relation and gauge factor") {
    const auto& F = fx();
    const Params& p = F.p;
    auto Bn = bstar_numeric(sys(), 1, 0, tol());
    const OPSData &d = sys().at(0).data, &dq = sys().at(1).data;
    auto pt = [&](const Scalar& x) { return eval_p(1, x, d); };
    auto pq = [&](const Scalar& x) { return eval_p(1, x, dq); };
    Scalar gr = dq.gamma_at(1) / d.gamma_at(1);
    Scalar Cq = gauge_c_step(gr, F.fg.f, F.fg.g, Bn.c, p);
    for (const auto& x : complex_nodes(4)) {
        CHECK(mixed_dde_residual(F.A, Bn.B, Bn.c, p, pt, pq, x) < tiny());
        // the sign of c matters
        CHECK(mixed_dde_residual(F.A, Bn.B, -Bn.c, p, pt, pq, x) > Real("1e-8"));
        auto m = mixed_coefficient_displays(x, F.A, Bn.B, F.fg.f, F.fg.g, F.a, gr, p);
        for (const auto& v : m) CHECK(v < tiny());
        CHECK(u_form_residual(x, F.fg.f, F.fg.g, Scalar(1), Cq, p, pt, pq) < tiny());
        Scalar F0 = gauge_F(x, p.t, 1, p);
        CHECK(rel_diff(gauge_F(p.q * x, p.t, 1, p) / F0, gauge_ratio_up(x, p.t, p)) < tiny());
        CHECK(rel_diff(gauge_F(x / p.q, p.t, 1, p) / F0, gauge_ratio_down(x, p.t, p)) < tiny());
    }
}
