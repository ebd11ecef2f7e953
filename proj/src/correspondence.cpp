#include "e6/correspondence.hpp"

#include <algorithm>

namespace e6 {

namespace {

Real rel_sum(std::initializer_list<Scalar> terms) {
    Scalar s(0);
    Real big = 1;
    for (const auto& v : terms) {
        s += v;
        big = std::max(big, abs(v));
    }
    return abs(s) / big;
}

Real rel(const Scalar& a, const Scalar& b) { return rel_sum({a, -b}); }

void nonzero(const Scalar& v, const char* what) {
    if (abs(v) <= default_tol()) throw Error(ErrorKind::ExcludedValue, what);
}

Scalar prod_one_minus(const Params& p, const Scalar& x) {
    Scalar one(1);
    return (one - p.b1 * x) * (one - p.b2 * x) * (one - p.b3 * x) * (one - p.b4 * x);
}

Scalar e2_b(const Params& p) {
    return p.b1 * p.b2 + p.b1 * p.b3 + p.b1 * p.b4 + p.b2 * p.b3 + p.b2 * p.b4 + p.b3 * p.b4;
}

Scalar elem_sym(const std::array<Scalar, 6>& r, int k) {
    // e_0..e_6 by the usual one-pass update.
    std::array<Scalar, 7> e{};
    e[0] = Scalar(1);
    for (const auto& v : r)
        for (int j = 6; j >= 1; --j) e[j] += e[j - 1] * v;
    return e[k];
}

}  // namespace

// ---- Sakai ----------------------------------------------------------------------

Scalar sakai_w(const Scalar& a_n, const Params& p) {
    return (Scalar(1) - p.q * p.b5 * p.b5) * a_n / p.q;
}

SakaiMatrix sakai_build(const Scalar& lambda, const ZPair& z, const Scalar& w, const Params& p) {
    const Scalar &t = p.t, &b5 = p.b5, &b6 = p.b6, &lam = lambda;
    Scalar one(1);
    Scalar b52 = b5 * b5, d = one - b52, sig = one / b6 + b6;
    Scalar sb = p.sum_inv_b(), sB = p.sum_b(), e2 = e2_b(p);
    nonzero(lam, "lambda = 0");
    nonzero(d, "b5^2 = 1");
    nonzero(w, "w = 0");
    SakaiData s;
    s.lambda = lam;
    s.w = w;
    s.z1 = z.plus + t / (b5 * lam);
    s.z2 = z.minus + t * b5 / lam;
    Scalar mid = -sB * b5 * t / lam - b5 * sig / lam + b52 * s.z1 / lam + s.z2 / lam;
    s.alpha = (sb + sig * t + mid - Scalar(2) * lam) / d;
    s.beta = (-sb * b52 - sig * b52 * t - mid + Scalar(2) * b52 * lam) / d;
    const Scalar &al = s.alpha, &be = s.beta;
    s.gamma = -e2 - sb * sig * t - t * t + al * be + s.z1 + s.z2 + Scalar(2) * (al + be) * lam +
              lam * lam;
    s.delta = sB + (e2 * sig - (one / b5 + b5)) * t + sb * t * t - s.z1 * (be + lam) -
              s.z2 * (al + lam) + (Scalar(-2) * al * be + s.gamma) * lam - (al + be) * lam * lam;

    Poly x = Poly::x();
    Poly xl = x * Poly(std::vector<Scalar>{-lam, one});  // x (x - lambda)
    auto quad = [&](const Scalar& zz, const Scalar& root) {
        return Poly::constant(zz) + Poly::from_roots({root, lam});
    };
    Poly tb6 = Poly::constant(t * b6);
    SakaiMatrix S;
    S.d = s;
    S.t = t;
    S.A.e11 = tb6 - (b5 * b6) * (x * quad(s.z1, al));
    S.A.e12 = xl * (-b6 * w / b5);
    S.A.e21 = (x * Poly(std::vector<Scalar>{s.delta, s.gamma})) * (-b5 * b6 / w);
    S.A.e22 = tb6 - (b6 / b5) * (x * quad(s.z2, be));
    return S;
}

SakaiProperties sakai_properties(const SakaiMatrix& S, const ZPair& z, const Params& p) {
    const Scalar &t = p.t, &b5 = p.b5, &b6 = p.b6;
    Scalar one(1);
    SakaiProperties r;
    Poly target = Poly::constant(b6);
    for (const auto& b : p.bs()) target *= Poly(std::vector<Scalar>{-one, b});
    target *= Poly(std::vector<Scalar>{-b6 * t, one});
    target *= Poly(std::vector<Scalar>{-t, b6});
    r.det = coeff_distance(S.A.det(), target);

    auto coeff_mat = [&](int k) {
        return SMat{S.A.e11.coeff(k), S.A.e12.coeff(k), S.A.e21.coeff(k), S.A.e22.coeff(k)};
    };
    r.top = mat_distance(coeff_mat(3), SMat{kappa_plus(p), Scalar(0), Scalar(0), kappa_minus(p)});
    r.bottom = mat_distance(coeff_mat(0), scale(identity2(), t * b6));
    const Scalar& lam = S.d.lambda;
    SMat at = eval(S.A, lam);
    r.root = abs(at.e12) / std::max(Real(1), norm(at));
    r.lower = mat_distance(at, SMat{-b5 * b6 * lam * z.plus, Scalar(0), at.e21,
                                    -b6 * lam * z.minus / b5});
    return r;
}

Scalar sakai_w_next_a(const SakaiMatrix& S, const Params& p) {
    const Scalar &t = p.t, &q = p.q, &b5 = p.b5, &b6 = p.b6;
    const Scalar &lam = S.d.lambda, &w = S.d.w;
    Scalar one(1);
    Scalar u = (b6 * t - lam) * (t - b6 * lam);
    Scalar den = t * b5 - t * b6 * S.d.z2 + b5 * b6 * (b6 * t - lam) + t * u;
    nonzero(den, "residue denominator vanishes");
    Scalar r12 = -q * t * w * u / den;
    return w + r12 * (one - q * b5 * b5) / q;
}

Scalar sakai_w_next_b(const Scalar& w, const Scalar& lambda_next, const Scalar& z1_next,
                      const Params& p) {
    const Scalar &t = p.t, &q = p.q, &b5 = p.b5, &b6 = p.b6, &lh = lambda_next;
    Scalar one(1), qt = q * t;
    Scalar e = one - q * b5 * b5;
    Scalar den = b5 * (qt * (one - b5 * b6 * z1_next) +
                       (qt * b6 - lh) * (b6 + qt * b5 * (qt - b6 * lh)));
    nonzero(den, "residue denominator vanishes");
    Scalar K = -qt * (qt * b6 - lh) * (qt - b6 * lh) / den;
    Scalar rest = q / e - K;
    nonzero(rest, "w(qt) undetermined");
    return q * w / e / rest;
}

SMat sakai_b0(const SakaiMatrix& S_t, const SakaiMatrix& S_qt, const Params& p) {
    const Scalar &q = p.q, &t = p.t, &b6 = p.b6;
    Scalar one(1), sig = b6 + one / b6;
    Scalar kap[2] = {kappa_plus(p), kappa_minus(p)};
    const Poly* at[2][2] = {{&S_t.A.e11, &S_t.A.e12}, {&S_t.A.e21, &S_t.A.e22}};
    const Poly* aq[2][2] = {{&S_qt.A.e11, &S_qt.A.e12}, {&S_qt.A.e21, &S_qt.A.e22}};
    Scalar b[2][2];
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            Scalar rhs = -q * (at[i][j]->coeff(2) - aq[i][j]->coeff(2));
            if (i == j) rhs += q * (q - one) * sig * t * kap[i];
            Scalar den = kap[j] - q * kap[i];
            nonzero(den, "kappa_j = q kappa_i");
            b[i][j] = rhs / den;
        }
    return {b[0][0], b[0][1], b[1][0], b[1][1]};
}

Scalar sakai_r22(const SakaiMatrix& S_qt, const Params& p) {
    const Scalar &q = p.q, &b5 = p.b5, &b6 = p.b6;
    const Scalar& qt = S_qt.t;
    const Scalar &lh = S_qt.d.lambda, &alh = S_qt.d.alpha, &z1h = S_qt.d.z1;
    Scalar one(1), bb = one + b6 * b6;
    Scalar u = (b6 * qt - lh) * (qt - b6 * lh);
    Scalar num = b6 + qt * qt * b5 * bb - b5 * b6 * qt * (alh + lh);
    Scalar den = b6 * b6 * (lh - b6 * qt) - b6 * qt + b5 * b6 * b6 * qt * z1h - b5 * b6 * qt * u;
    nonzero(den, "r22 denominator vanishes");
    (void)q;
    return lh - qt * bb / b6 - u * num / den;
}

Real sakai_compat_residual(const SakaiMatrix& S_t, const SakaiMatrix& S_qt, const SMat& B0,
                           const Params& p, const std::vector<Scalar>& xs) {
    const Scalar &q = p.q, &b6 = p.b6;
    Scalar qt = q * p.t;
    auto Bt = [&](const Scalar& x) {
        Scalar den = (x - b6 * qt) * (x - qt / b6);
        if (abs(den) <= default_tol()) throw Error(ErrorKind::PoleHit, "B~ pole");
        return scale(identity2() * SMat{x, Scalar(0), Scalar(0), x} + B0, x / den);
    };
    Real worst = 0;
    for (const auto& x : xs) {
        SMat lhs = Bt(q * x) * eval(S_t.A, x);
        SMat rhs = eval(S_qt.A, x) * Bt(x);
        worst = std::max(worst, mat_distance(lhs, rhs));
    }
    return worst;
}

// ---- Murata --------------------------------------------------------------------

SMat MurataSystem::A(const Scalar& x) const {
    Scalar l = x - lambda;
    Scalar P6(1);
    for (const auto& r : roots) P6 *= x - r;
    Scalar e1 = elem_sym(roots, 1);
    Scalar Z = mu2 + l * (delta2 + x * x + x * (gammaS + lambda));
    Scalar W = mu1 + l * (delta1 + x * x + x * (-gammaS - e1 + lambda));
    if (abs(l) <= default_tol()) throw Error(ErrorKind::PoleHit, "x = lambda");
    Scalar X = (W * Z - P6) / l;
    return {kappa1 * W, kappa2 * wS * l, kappa1 / wS * X, kappa2 * Z};
}

SMat MurataSystem::S(const Scalar& x) const { return {Scalar(1), Scalar(0), s1 + s2 * x, x}; }

SMat MurataSystem::calA(const Scalar& x) const { return mat2_inv(S(qS * x)) * A(x) * S(x); }

SMat MurataSystem::frakA(const Scalar& x) const {
    return scale(calA(Scalar(1) / x), t * x * x * x);
}

MurataSystem murata_from_fg(const Scalar& f, const Scalar& g, const Scalar& a_n,
                            const Scalar& gammaS, const Params& p) {
    const Scalar &q = p.q, &t = p.t, &b5 = p.b5, &b6 = p.b6;
    Scalar one(1);
    MurataSystem m;
    m.t = t;
    m.qS = one / q;
    m.tau = one / t;
    m.kappa1 = b6;
    m.kappa2 = m.qS * b6;
    m.a = {p.b1, p.b2, p.b3, p.b4, one / b6, b6};
    m.theta1 = -b5 * b6;
    m.theta2 = -b6 / (q * b5);
    m.roots = {m.a[0], m.a[1], m.a[2], m.a[3], m.a[4] * m.tau, m.a[5] * m.tau};
    nonzero(g, "g = 0");
    nonzero(g * f - one, "fg = 1");
    m.nu_prev = (one + rhs_first(g, t, p) / (g * f - one)) / g;
    m.lambda = one / g;
    const Scalar &lam = m.lambda, &nuc = m.nu_prev;
    nonzero(lam - nuc, "lambda = previous nu");
    Scalar P4 = (lam - m.a[0]) * (lam - m.a[1]) * (lam - m.a[2]) * (lam - m.a[3]);
    m.mu2 = P4 / (lam - nuc);
    m.mu1 = (lam - m.roots[4]) * (lam - m.roots[5]) * (lam - nuc);
    m.gammaS = gammaS;
    m.wS = g * (one - q * b5 * b5) * a_n / (b5 * t);
    Scalar e1 = elem_sym(m.roots, 1), e2 = elem_sym(m.roots, 2), e5 = elem_sym(m.roots, 5);
    const Scalar &k1 = m.kappa1, &k2 = m.kappa2, &th1 = m.theta1, &th2 = m.theta2, &tau = m.tau;
    Scalar G = gammaS * (gammaS + e1) + Scalar(2) * lam * lam - lam * e1 + e2;
    Scalar h = (k1 * m.mu1 + k2 * m.mu2 - th1 * tau - th2 * tau) / lam;
    m.delta1 = (h - k2 * G) / (k1 - k2);
    m.delta2 = (-h + k1 * G) / (k1 - k2);
    const Scalar& qS = m.qS;
    nonzero(qS * th1 - th2, "q theta1 = theta2");
    m.s1 = ((th2 - th1) * tau + k1 * (m.mu1 - qS * m.mu2 + (qS * m.delta2 - m.delta1) * lam)) /
           (Scalar(2) * qS * k1 * m.wS * lam);
    m.s2 = ((Scalar(2) * th1 * th2 / k1 * tau - qS * th1 * m.mu2 - th2 * m.mu1) / (lam * lam) -
            qS * k1 * e5 / tau / lam - e1 * th2 + (qS * th1 - th2) * gammaS +
            (qS * th1 + th2) * lam) /
           (qS * (qS * th1 - th2) * m.wS);
    return m;
}

std::array<Real, 2> sakai_evolution_residual(const Scalar& lambda, const Scalar& nu,
                                             const Scalar& lambda_next, const Scalar& nu_prev,
                                             const Params& p) {
    Scalar one(1);
    Scalar qS = one / p.q, tau = one / p.t, k1 = p.b6;
    Scalar a5 = one / p.b6, a6 = p.b6;
    Scalar th1 = -p.b5 * p.b6, th2 = -p.b6 / (p.q * p.b5);
    const Scalar &lam = lambda, &lh = lambda_next;
    std::array<Scalar, 4> a = {p.b1, p.b2, p.b3, p.b4};
    Scalar d1 = (lam - a5 * tau) * (lam - a6 * tau);
    if (abs(d1) <= default_tol()) throw Error(ErrorKind::DenominatorZero, "lambda on a5 tau, a6 tau");
    Scalar P4l(1), P4n(1);
    for (const auto& v : a) {
        P4l *= lam - v;
        P4n *= nu - v;
    }
    Scalar aa = a5 * a6;
    Scalar d2 = (aa * tau * nu + th1 / (qS * k1)) * (aa * tau * nu + th2 / (qS * k1));
    if (abs(d2) <= default_tol() || abs(lh) <= default_tol())
        throw Error(ErrorKind::DenominatorZero, "second equation denominator");
    std::array<Real, 2> r{};
    r[0] = rel((lam - nu_prev) * (lam - nu), P4l / d1);
    r[1] = rel((one - nu / lh) * (one - nu / lam), aa / qS * P4n / d2);
    return r;
}

// ---- Yamada -------------------------------------------------------------------

YamadaCoeffs yamada_coeffs_direct(const Scalar& z, const Scalar& f, const Scalar& g,
                                  const Params& p) {
    const Scalar &t = p.t, &q = p.q, &b5 = p.b5, &b6 = p.b6;
    Scalar one(1), qt = q * t;
    Scalar P4 = prod_one_minus(p, z);
    Scalar Pf = p.prod_x_minus_b(f);  // equal to prod (b_j - f)
    Scalar d1 = z * (z - g), d2 = z * (z - q * g);
    if (abs(d1) <= default_tol() || abs(d2) <= default_tol() || abs(one - f * z) <= default_tol())
        throw Error(ErrorKind::PoleHit, "Yamada coefficient pole at z = " + z.str());
    YamadaCoeffs c;
    c.plus = P4 / (t * t * d1);
    c.zero = -P4 / (d1 * (one - f * z)) + z * Pf / (f * (one - f * g) * (one - f * z)) -
             z * (f - b5 * qt) * (b5 * f - t) / (b5 * q * t * t * f) -
             (z - b6 * qt) * (b6 * z - qt) * (q - f * z) / (b6 * q * t * t * d2);
    c.minus = (z - b6 * qt) * (b6 * z - qt) / (b6 * d2);
    return c;
}

YamadaCoeffs yamada_coeffs_from_lax(const Scalar& x, const SpectralMatrix& A, const Scalar& a_n,
                                    const Params& p) {
    const Scalar &t = p.t, &q = p.q, &b6 = p.b6;
    SpectralData sd = spectral_data(p, t);
    Scalar xd = x / q;
    Scalar tp = A.tp(x), tpd = A.tp(xd);
    if (abs(tp) <= default_tol() || abs(tpd) <= default_tol())
        throw Error(ErrorKind::ZeroTheta, "T+ vanishes at x = " + x.str());
    Scalar s = (q - Scalar(1)) * u1(p) * a_n / (b6 * t);
    YamadaCoeffs c;
    c.plus = s * sd.w_plus(x) / tp * gauge_ratio_up(x, t, p);
    c.zero = -s * (A.wp(x) / tp + A.wm(xd) / tpd);
    c.minus = s * sd.w_minus(xd) / tpd * gauge_ratio_down(x, t, p);
    return c;
}

std::array<Real, 3> lax_combination_displays(const Scalar& x, const SpectralMatrix& A,
                                             const Scalar& f, const Scalar& g, const Scalar& a_n,
                                             const Params& p) {
    const Scalar &t = p.t, &q = p.q, &b6 = p.b6;
    SpectralData sd = spectral_data(p, t);
    Scalar xd = x / q, qt = q * t;
    Scalar pre = Scalar(1) / ((q - Scalar(1)) * u1(p) * a_n);
    std::array<Real, 3> r{};
    r[0] = rel(sd.w_plus(x) / A.tp(x) * gauge_ratio_up(x, t, p),
               pre * b6 / t * prod_one_minus(p, x) / (x * (x - g)));
    r[1] = rel(sd.w_minus(xd) / A.tp(xd) * gauge_ratio_down(x, t, p),
               pre * t * (x - b6 * qt) * (b6 * x - qt) / (x * (x - q * g)));
    Scalar mid = -(A.wp(x) / (x * (x - g)) + A.wm(xd) / (xd * (xd - g))) / (b6 * t);
    r[2] = rel(mid, yamada_coeffs_direct(x, f, g, p).zero);
    return r;
}

YamadaVars to_yamada(const Scalar& f, const Scalar& g, const Params& p) {
    Scalar one(1);
    nonzero(f, "f = 0");
    nonzero(g, "g = 0");
    YamadaVars y;
    y.q = p.q;
    y.t = one / p.t;
    y.f = one / g;
    y.g = one / f;
    y.b = {p.b1, p.b2, p.b3, p.b4, one / p.b6, p.b6, p.q * p.b5, one / p.b5};
    return y;
}

Real yamada_qp_a(const YamadaVars& y, const Scalar& f_bar) {
    Scalar one(1);
    const Scalar &f = y.f, &g = y.g, &t = y.t;
    const auto& b = y.b;
    Scalar lhs = (f * g - one) * (f_bar * g - one) / (f * f_bar);
    Scalar rhs = y.q * (b[0] * g - one) * (b[1] * g - one) * (b[2] * g - one) * (b[3] * g - one) /
                 (b[4] * b[5] * (b[6] * g - t) * (b[7] * g - t));
    return rel(lhs, rhs);
}

Real yamada_qp_b(const YamadaVars& y, const Scalar& g_under) {
    Scalar one(1);
    const Scalar &f = y.f, &g = y.g, &t = y.t;
    const auto& b = y.b;
    Scalar lhs = (f * g_under - one) * (f * g - one) / (g * g_under);
    Scalar rhs = (b[0] - f) * (b[1] - f) * (b[2] - f) * (b[3] - f) /
                 ((f - b[4] * t) * (f - b[5] * t));
    return rel(lhs, rhs);
}

std::array<Scalar, 3> yamada_lp_a(const YamadaVars& y, const Scalar& z) {
    Scalar one(1);
    const Scalar &f = y.f, &g = y.g, &t = y.t, &q = y.q;
    const auto& b = y.b;
    Scalar t2 = t * t, z2 = z * z;
    Scalar L1 = (b[0] * q - z) * (b[1] * q - z) * (b[2] * q - z) * (b[3] * q - z) * t2 /
                (q * (q * f - z) * z2 * z2);
    Scalar L3 = (b[4] * t - z) * (b[5] * t - z) / (t2 * z2 * (f - z));
    Scalar Pg = (b[0] * g - one) * (b[1] * g - one) * (b[2] * g - one) * (b[3] * g - one);
    Scalar M = -L1 * g * z / (t2 * (g * z - q)) +
               q * Pg / (g * (f * g - one) * z2 * (g * z - q)) -
               b[4] * b[5] * (b[6] * g - t) * (b[7] * g - t) / (f * g * z2 * z) -
               L3 * t2 * (g * z - one) / (g * z);
    return {L1, M, L3};
}

std::array<Scalar, 3> yamada_lp_b(const YamadaVars& y, const Scalar& z) {
    const Scalar &f = y.f, &g = y.g, &t = y.t, &q = y.q;
    return {g * z / (t * t), q - g * z, -g * z * (q * f - z) / (q * q)};
}

std::array<Scalar, 3> mixed_target(const Scalar& z, const Scalar& f, const Scalar& g,
                                   const Params& p) {
    Scalar one(1);
    const Scalar &q = p.q, &t = p.t;
    return {q * t * t / (f * z), -q * (one - f * z) / (f * z), -(z - g) / (f * g * z * z)};
}

// ---- mixed relation and gauge -----------------------------------------------------

Real mixed_dde_residual(const SpectralMatrix& A, const DeformMatrix& B, const Scalar& c,
                        const Params& p, const std::function<Scalar(const Scalar&)>& pn_t,
                        const std::function<Scalar(const Scalar&)>& pn_qt, const Scalar& x) {
    SpectralData sd = spectral_data(p, p.t);
    Poly rp = deformation_data(p, p.t).r_plus;
    Scalar qx = p.q * x;
    Scalar wm = sd.w_minus(x), r = rp(qx), tp = A.tp(x);
    if (abs(wm) <= default_tol() || abs(r) <= default_tol())
        throw Error(ErrorKind::PoleHit, "mixed relation pole at x = " + x.str());
    return rel_sum({-c * tp / wm * pn_qt(qx),
                    (tp * B.rp(qx) + B.pp * A.wm(x)) / (wm * r) * pn_t(qx),
                    -B.pp / r * pn_t(x)});
}

std::array<Real, 3> mixed_coefficient_displays(const Scalar& x, const SpectralMatrix& A,
                                               const DeformMatrix& B, const Scalar& f,
                                               const Scalar& g, const Scalar& a_n,
                                               const Scalar& gamma_ratio, const Params& p) {
    const Scalar &t = p.t, &q = p.q, &b5 = p.b5, &b6 = p.b6;
    Scalar one(1), qx = q * x;
    SpectralData sd = spectral_data(p, t);
    Poly rp = deformation_data(p, t).r_plus;
    Scalar e = (one - q * b5 * b5) / b5;
    Scalar k = a_n / gamma_ratio * b6 * e / (b5 * q * t - f);
    std::array<Real, 3> r{};
    r[0] = rel(-rp(qx) * A.tp(x), a_n * e * x * (x - b6 * t) * (x - g));
    r[1] = rel(-sd.w_minus(x) * B.pp,
               k * t * (one - p.b2 * x) * (one - p.b3 * x) * (x - b6 * t));
    r[2] = rel(A.tp(x) * B.rp(qx) + B.pp * A.wm(x),
               k * (x - b6 * t) * (b6 * x - t) * (one - f * x));
    return r;
}

Scalar gauge_F(const Scalar& x, const Scalar& t, const Scalar& C, const Params& p) {
    const Scalar& q = p.q;
    Scalar den = qpoch_inf(p.b2 * x, q) * qpoch_inf(p.b3 * x, q);
    if (abs(den) <= default_tol()) throw Error(ErrorKind::PoleHit, "gauge factor pole");
    return e_qt(x, t * t, q) * qpoch_inf(p.b6 * x / t, q) / den * C;
}

Scalar gauge_ratio_up(const Scalar& x, const Scalar& t, const Params& p) {
    Scalar one(1);
    return (one - p.b2 * x) * (one - p.b3 * x) / (t * (t - p.b6 * x));
}

Scalar gauge_ratio_down(const Scalar& x, const Scalar& t, const Params& p) {
    Scalar one(1), xd = x / p.q;
    return t * (t - p.b6 * xd) / ((one - p.b2 * xd) * (one - p.b3 * xd));
}

Scalar gauge_c_step(const Scalar& gamma_ratio, const Scalar& f, const Scalar& g, const Scalar& c,
                    const Params& p) {
    const Scalar &t = p.t, &q = p.q;
    Scalar den = g * (f - p.b5 * q * t) * gamma_ratio;
    if (abs(den) <= default_tol()) throw Error(ErrorKind::DenominatorZero, "C recursion");
    return c * p.b6 * q * t / den;
}

Real u_form_residual(const Scalar& x, const Scalar& f, const Scalar& g, const Scalar& C_t,
                     const Scalar& C_qt, const Params& p,
                     const std::function<Scalar(const Scalar&)>& pn_t,
                     const std::function<Scalar(const Scalar&)>& pn_qt) {
    const Scalar &t = p.t, &q = p.q;
    Scalar one(1), qx = q * x, qt = q * t;
    Scalar U_x = pn_t(x) / gauge_F(x, t, C_t, p);
    Scalar U_qx = pn_t(qx) / gauge_F(qx, t, C_t, p);
    Scalar U_qx_qt = pn_qt(qx) / gauge_F(qx, qt, C_qt, p);
    return rel_sum({t * t * U_x, -(one - f * x) * U_qx, -(x - g) / (q * g * x) * U_qx_qt});
}

}  // namespace e6
