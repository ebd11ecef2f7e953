#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "e6/laxpair.hpp"

using namespace e6;

namespace {
Real tiny() { return Real("1e-50"); }
Real tol() { return default_tol(); }

OPSSystem& sys() {
    static OPSSystem s(Params::defaults());
    return s;
}
}  // namespace

TEST_CASE("interpolation nodes avoid the support lattices") {
    Params p = Params::defaults();
    auto xs = interpolation_nodes(8);
    CHECK(xs.size() == 8u);
    CHECK(xs[0] == Scalar::ratio(11, 10));
    for (const auto& x : xs)
        for (const auto& z : {Scalar(1) / p.b2, Scalar(1) / p.b3})
            for (int k = 0; k < 80; ++k) CHECK(rel_diff(x, z * pow(p.q, k)) > Real("1e-6"));
    auto cs = complex_nodes(8);
    CHECK(cs[0] == xs[0] * Scalar(Real(3) / 5, Real(4) / 5));
}

TEST_CASE("spectral matrix structure") {
    for (int n = 0; n <= 2; ++n) {
        CAPTURE(n);
        Params p = sys().params(n, 0);
        auto A = astar_numeric(sys(), n, 0, tol());
        CHECK(A.wp.degree() == 3);
        CHECK(A.tp.degree() == 2);
        CHECK(abs(A.tp.coeff(0)) < tiny());
        CHECK(abs(A.tm.coeff(0)) < tiny());
        CHECK(det_identity_residual(A, p) < tiny());
        CHECK(rel_diff(A.wp.coeff(3), kappa_plus(p)) < tiny());
        CHECK(rel_diff(A.wm.coeff(3), kappa_minus(p)) < tiny());
    }
    // n = 0: p_{-1} = 0 leaves the lower off-diagonal entry empty
    auto A0 = astar_numeric(sys(), 0, 0, tol());
    CHECK(A0.tm.norm() < tiny());
}

TEST_CASE("extraction and closed forms") {
    for (int n = 1; n <= 2; ++n) {
        CAPTURE(n);
        Params p = sys().params(n, 0);
        auto A = astar_numeric(sys(), n, 0, tol());
        auto l = extract_lambda_mu_nu(A, p, tol());
        CHECK(abs(quad_residual(l, p)) < tiny());
        auto z = zpm_from_mu_nu(l, p);
        auto back = mu_nu_from_zpm(l.lambda, z, p);
        CHECK(rel_diff(back.mu, l.mu) < tiny());
        CHECK(rel_diff(back.nu, l.nu) < tiny());
        auto fg = extract_fg(sys(), n, 0, tol());
        CHECK(rel_diff(fg.f, fg.f_alt) < tiny());
        CHECK(rel_diff(fg.g, l.lambda) < tiny());
        auto Ap = astar_numeric(sys(), n - 1, 0, tol());
        ClosedInput in{fg.f, fg.g, poly_root_of_linear_factor(Ap.tp, tol()), sys().at(0).data.a_at(n)};
        for (int form = 1; form <= 2; ++form) {
            CHECK(mat_distance(astar_closed_form(in, p, form, tol()).mat(), A.mat()) < tiny());
            Scalar x(Real("0.9"), Real("0.35"));
            CHECK(rel_diff(wplus_closed(x, in, p, form), A.wp(x)) < tiny());
            CHECK(rel_diff(wminus_closed(x, in, p, form), A.wm(x)) < tiny());
        }
        // a wrong g breaks the closed form
        ClosedInput off = in;
        off.g += Scalar::ratio(1, 1000);
        CHECK(mat_distance(astar_closed_form(off, p, 1, tol()).mat(), A.mat()) > Real("1e-8"));
    }
}

TEST_CASE("default instance values") {
    auto fg = extract_fg(sys(), 1, 0, tol());
    CHECK(abs(fg.f - Scalar(Real("1.71900506642731"))) < Real("1e-13"));
    CHECK(abs(fg.g - Scalar(Real("0.637921907768900"))) < Real("1e-13"));
}

TEST_CASE("deformation matrix") {
    for (int n = 1; n <= 2; ++n) {
        CAPTURE(n);
        Params p = sys().params(n, 0);
        auto Bn = bstar_numeric(sys(), n, 0, tol());
        const auto& B = Bn.B;
        CHECK(B.rp.degree() == 1);
        CHECK(abs(Bn.c + Scalar(1)) < tiny());
        Scalar a = sys().at(0).data.a_at(n), ah = sys().at(1).data.a_at(n);
        DeformData dd = deformation_data(p, p.t);
        CHECK(coeff_distance(B.det(), (a / ah) * dd.r_plus * dd.r_minus) < tiny());
        auto g = gamma_ratios(sys(), n, 0);
        CHECK(rel_diff(B.rp.coeff(1), g.r1p) < tiny());
        CHECK(rel_diff(B.rm.coeff(1), g.r1m) < tiny());
        CHECK(rel_diff(B.pp, a * (g.r1p - Scalar(1) / g.r1p)) < tiny());
        auto fg = extract_fg(sys(), n, 0, tol());
        BstarInput in{fg.f, fg.g, a, g};
        CHECK(mat_distance(bstar_closed_form(in, p).mat(), B.mat()) < tiny());
        auto A = astar_numeric(sys(), n, 0, tol());
        auto Aq = astar_numeric(sys(), n, 1, tol());
        CHECK(verify_compatibility(A, Aq, B, p, complex_nodes(8)) < tiny());
        auto r = residue_checks(A, Aq, B, p);
        for (const auto& v : r) CHECK(v < tiny());
        // compatibility is sensitive to B
        DeformMatrix Bad = B;
        Bad.pp += Scalar::ratio(1, 1000);
        CHECK(verify_compatibility(A, Aq, Bad, p, complex_nodes(8)) > Real("1e-8"));
    }
}

TEST_CASE("scalar equation for p_n") {
    Params p = sys().params(1, 0);
    auto A = astar_numeric(sys(), 1, 0, tol());
    const OPSData& d = sys().at(0).data;
    auto p1 = [&](const Scalar& x) { return eval_p(1, x, d); };
    auto p2 = [&](const Scalar& x) { return eval_p(2, x, d); };
    for (const auto& x : complex_nodes(4)) {
        CHECK(lsodde_residual(A, p, p1, x) < tiny());
        CHECK(lsodde_residual(A, p, p2, x) > Real("1e-8"));
    }
}
