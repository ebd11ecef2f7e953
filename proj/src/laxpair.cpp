#include "e6/laxpair.hpp"

#include <algorithm>

namespace e6 {

namespace {

void nonzero(const Scalar& v, const char* what) {
    if (abs(v) <= default_tol()) throw Error(ErrorKind::ExcludedValue, what);
}

Scalar prod_one_minus(const Params& p, const Scalar& x) {
    Scalar one(1);
    return (one - p.b1 * x) * (one - p.b2 * x) * (one - p.b3 * x) * (one - p.b4 * x);
}

Scalar prod_t_minus_bb5(const Params& p) {
    const Scalar& t = p.t;
    return (t - p.b1 * p.b5) * (t - p.b2 * p.b5) * (t - p.b3 * p.b5) * (t - p.b4 * p.b5);
}

Real rel_sum(std::initializer_list<Scalar> terms) {
    Scalar s(0);
    Real big = 1;
    for (const auto& v : terms) {
        s += v;
        big = std::max(big, abs(v));
    }
    return abs(s) / big;
}

// Interpolate a scalar function of x with a fixed degree bound on the complex nodes.
Poly interp_fn(const std::function<Scalar(const Scalar&)>& fn, int degree, const Real& tol) {
    std::vector<std::pair<Scalar, Scalar>> s;
    for (const auto& x : complex_nodes(degree + 5)) s.emplace_back(x, fn(x));
    return poly_interpolate(s, degree, tol);
}

}  // namespace

std::vector<Scalar> interpolation_nodes(int count) {
    std::vector<Scalar> xs;
    Scalar x = Scalar::ratio(11, 10);
    for (int j = 0; j < count; ++j) {
        xs.push_back(x);
        x *= Scalar::ratio(9, 8);
    }
    return xs;
}

std::vector<Scalar> complex_nodes(int count) {
    Scalar rot(Real(3) / 5, Real(4) / 5);
    std::vector<Scalar> xs = interpolation_nodes(count);
    for (auto& x : xs) x *= rot;
    return xs;
}

Scalar kappa_plus(const Params& p) { return -p.b5 * p.b6; }
Scalar kappa_minus(const Params& p) { return -p.b6 / p.b5; }

Scalar u1(const Params& p) {
    Scalar one(1);
    return -p.b6 * (one - p.q * p.b5 * p.b5) / (p.q * (one - p.q) * p.b5);
}

SpectralMatrix astar_numeric(const OPSSystem& sys, int n, int k, const Real& tol) {
    Params p = sys.params(n, k);
    Poly wp = spectral_data(p, p.t).w_plus;
    auto fn = [&](const Scalar& x) {
        SMat yx = sys.y(n, k, x);
        if (abs(yx.det()) <= tol * norm(yx) * norm(yx))
            throw Error(ErrorKind::SingularY, "Y_n singular at x = " + x.str());
        return scale(sys.y(n, k, p.q * x) * mat2_inv(yx), wp(x));
    };
    PMat m = interpolate_matrix(fn, interpolation_nodes(8), 3, 2, 2, 3, tol);
    return {m.e11, m.e22, -m.e12, m.e21};
}

Real det_identity_residual(const SpectralMatrix& A, const Params& p) {
    SpectralData sd = spectral_data(p, p.t);
    return coeff_distance(A.det(), sd.w_plus * sd.w_minus);
}

SpectralCoeffs spectral_coeffs(const SpectralMatrix& A, int /*n*/, const Params& p,
                               const Scalar& a_n) {
    SpectralData sd = spectral_data(p, p.t);
    Scalar one(1), half = Scalar::ratio(1, 2);
    SpectralCoeffs c;
    // (wp + wm)/2 = 2 W_n - W
    c.W = ((A.wp + A.wm) * half + sd.W) * half;
    Scalar inv_dy = one / (Scalar(2) * (p.q - one));
    c.Omega = (A.wp - A.wm).div_x() * inv_dy - sd.V;
    Scalar th = one / ((p.q - one) * a_n);
    c.Theta = A.tp.div_x() * th;
    c.Theta_prev = A.tm.div_x() * th;
    return c;
}

Scalar wplus_closed(const Scalar& x, const ClosedInput& in, const Params& p, int form) {
    const Scalar &f = in.f, &g = in.g, &t = p.t, &b5 = p.b5, &b6 = p.b6;
    Scalar one(1);
    Scalar b52 = b5 * b5, d = one - b52, bb = (one + b6 * b6) / b6;
    nonzero(f, "f = 0");
    nonzero(g, "g = 0");
    nonzero(one - f * g, "fg = 1");
    nonzero(d, "b5^2 = 1");
    nonzero(x - g, "x = g");
    Scalar r;
    if (form == 1) {
        r = -x * b5 * b6 + b6 / d * (-b52 / t + b5 * p.sum_inv_b()) -
            b6 * (b5 * f - t) / (d * t) * (g * (t - f * b5) / f + t * b5 * bb) +
            b6 * t / d *
                (b52 / (g * g) - d / (x * g) - p.sum_b() * b52 / g + b52 * f / g - g / f +
                 prod_one_minus(p, g) * (g - x * b52) / ((one - f * g) * g * g * (x - g)));
    } else {
        nonzero(one - f * x, "fx = 1");
        Scalar Pf = p.prod_x_minus_b(f);
        r = -b6 * t / d * Pf * (one - b52 * f * x) / (f * f * (one - f * g) * (one - f * x)) +
            b6 * t * prod_one_minus(p, x) / (x * (one - x * f) * (x - g)) -
            b6 * (b5 * f - t) / f * x -
            b6 * (b5 * f - t) / (b5 * d * t) *
                (b52 * bb * t + b5 * g / f * (t - b5 * f) +
                 b5 / (f * f) * (t + b5 * f - t * f * p.sum_inv_b()));
    }
    return r * x * (x - g);
}

Scalar wminus_closed(const Scalar& x, const ClosedInput& in, const Params& p, int form) {
    const Scalar &f = in.f, &g = in.g, &t = p.t, &b5 = p.b5, &b6 = p.b6;
    Scalar one(1);
    Scalar b52 = b5 * b5, d = one - b52, bb = (one + b6 * b6) / b6;
    nonzero(f, "f = 0");
    nonzero(g, "g = 0");
    nonzero(one - f * g, "fg = 1");
    nonzero(d, "b5^2 = 1");
    nonzero(x - g, "x = g");
    Scalar lead = (one - x * f) * (x - b6 * t) * (x * b6 - t) / (x * (x - g));
    Scalar r;
    if (form == 1) {
        nonzero(t * g - b5, "tg = b5");
        r = lead - b6 / d * prod_t_minus_bb5(p) / (b5 * (t * g - b5)) +
            b6 * (b5 * f - t) / (b5 * d) *
                (d * x - t * t / g - g * b52 + b52 * bb * t -
                 b5 * t * t * prod_one_minus(p, g) / (g * (one - f * g) * (t * g - b5)));
    } else {
        r = lead + b6 * t * t / d * p.prod_x_minus_b(f) / (f * f * (one - f * g)) +
            b6 * (b5 * f - t) / (b5 * d) *
                (d * x + b52 * bb * t + b5 * g / f * (t - b5 * f) +
                 b5 / (f * f) * (t + b5 * f - t * f * p.sum_inv_b()));
    }
    return r * x * (x - g) / t;
}

SpectralMatrix astar_closed_form(const ClosedInput& in, const Params& p, int form, const Real& tol) {
    Scalar one(1);
    Scalar c = p.b6 / p.b5 * in.a_n;
    SpectralMatrix A;
    A.wp = interp_fn([&](const Scalar& x) { return wplus_closed(x, in, p, form); }, 3, tol);
    A.wm = interp_fn([&](const Scalar& x) { return wminus_closed(x, in, p, form); }, 3, tol);
    A.tp = Poly::from_roots({Scalar(0), in.g}, c * (one / p.q - p.b5 * p.b5));
    A.tm = Poly::from_roots({Scalar(0), in.g_prev}, c * (one - p.b5 * p.b5 / p.q));
    return A;
}

LambdaMuNu extract_lambda_mu_nu(const SpectralMatrix& A, const Params& p, const Real& tol) {
    LambdaMuNu l;
    l.lambda = poly_root_of_linear_factor(A.tp, tol);
    if (l.lambda.is_exact_zero()) throw Error(ErrorKind::ZeroLambda, "lambda = 0");
    Scalar wp = A.wp(l.lambda), wm = A.wm(l.lambda);
    l.nu = (wp + wm) / Scalar(2);
    l.mu = (wp - wm) / (Scalar(2) * (p.q - Scalar(1)) * l.lambda);
    return l;
}

Scalar quad_residual(const LambdaMuNu& l, const Params& p) {
    Scalar one(1);
    const Scalar& lam = l.lambda;
    Scalar dq = one - p.q;
    return l.nu * l.nu - dq * dq * lam * lam * l.mu * l.mu -
           p.b6 * p.prod_bx_minus_1(lam) * (lam - p.t * p.b6) * (p.b6 * lam - p.t);
}

ZPair zpm_from_mu_nu(const LambdaMuNu& l, const Params& p) {
    if (abs(l.lambda) <= default_tol()) throw Error(ErrorKind::ZeroLambda, "lambda = 0");
    Scalar base = l.nu / l.lambda, shift = (p.q - Scalar(1)) * l.mu;
    return {(base + shift) / kappa_plus(p), (base - shift) / kappa_minus(p)};
}

LambdaMuNu mu_nu_from_zpm(const Scalar& lambda, const ZPair& z, const Params& p) {
    Scalar kp = kappa_plus(p) * z.plus, km = kappa_minus(p) * z.minus;
    LambdaMuNu l;
    l.lambda = lambda;
    l.nu = lambda * (kp + km) / Scalar(2);
    l.mu = (kp - km) / (Scalar(2) * (p.q - Scalar(1)));
    return l;
}

FGPair extract_fg(const OPSSystem& sys, int n, int k, const Real& tol) {
    Params p = sys.params(n, k);
    Params ph = sys.params(n, k + 1);
    LambdaMuNu l = extract_lambda_mu_nu(astar_numeric(sys, n, k, tol), p, tol);
    LambdaMuNu lh = extract_lambda_mu_nu(astar_numeric(sys, n, k + 1, tol), ph, tol);
    ZPair zh = zpm_from_mu_nu(lh, ph);
    const Scalar &gh = lh.lambda, &t = p.t, &q = p.q, &b5 = p.b5, &b6 = p.b6;
    Scalar one(1), qt = q * t;
    Scalar d1 = (gh - b6 * qt) * (b6 * gh - qt);
    if (abs(d1) <= tol || abs(gh) <= tol)
        throw Error(ErrorKind::SingularConfiguration, "g(qt) on an excluded value");
    FGPair r;
    r.g = l.lambda;
    r.f = (one + q * b5 * b6 * t * gh * zh.plus / d1) / gh;
    if (abs(zh.minus) <= tol) throw Error(ErrorKind::SingularConfiguration, "z-(qt) vanishes");
    r.f_alt = (q * b5 * t * p.prod_bx_minus_1(gh) / (gh * zh.minus) + one) / gh;
    return r;
}

BstarNumeric bstar_numeric(const OPSSystem& sys, int n, int k, const Real& tol) {
    Params p = sys.params(n, k);
    Poly rp = deformation_data(p, p.t).r_plus;
    auto fn = [&](const Scalar& x) {
        SMat yx = sys.y(n, k, x);
        if (abs(yx.det()) <= tol * norm(yx) * norm(yx))
            throw Error(ErrorKind::SingularY, "Y_n singular at x = " + x.str());
        return scale(sys.y(n, k + 1, x) * mat2_inv(yx), rp(x));
    };
    PMat m = interpolate_matrix(fn, interpolation_nodes(6), 1, 0, 0, 1, tol);
    GammaRatios gr = gamma_ratios(sys, n, k);
    Scalar lead = m.e11.coeff(1);
    if (abs(lead) <= tol) throw Error(ErrorKind::SingularConfiguration, "[x] of B*_11 vanishes");
    BstarNumeric b;
    b.c = gr.r1p / lead;
    b.B = {m.e11 * b.c, m.e22 * b.c, -m.e12.coeff(0) * b.c, m.e21.coeff(0) * b.c};
    return b;
}

GammaRatios gamma_ratios(const OPSSystem& sys, int n, int k) {
    const OPSData& d = sys.at(k).data;
    const OPSData& dh = sys.at(k + 1).data;
    const Scalar& b6 = sys.base().b6;
    GammaRatios r;
    r.r1p = dh.gamma_at(n) / (b6 * d.gamma_at(n));
    // gamma_{-1} does not exist; the n = 0 value is never read by the closed forms.
    r.r1m = n >= 1 ? b6 * d.gamma_at(n - 1) / dh.gamma_at(n - 1) : Scalar(1);
    return r;
}

DeformMatrix bstar_closed_form(const BstarInput& in, const Params& p) {
    const Scalar &f = in.f, &g = in.g, &t = p.t, &q = p.q, &b5 = p.b5, &b6 = p.b6;
    Scalar one(1);
    Scalar b52 = b5 * b5, d = one - b52, bb = one + b6 * b6;
    nonzero(g, "g = 0");
    nonzero(t * g - b5, "tg = b5");
    nonzero(f * b5 - t, "f b5 = t");
    nonzero(f * g - one, "fg = 1");
    nonzero(d, "b5^2 = 1");
    Scalar pg = q * t * t * b5 * prod_one_minus(p, g) / (g * (f * g - one) * (t * g - b5));
    Scalar pt = q * prod_t_minus_bb5(p) / ((t * g - b5) * (f * b5 - t));
    Scalar c0p = (-q * (t * t * b6 + g * g * b52 * b6 - t * g * b52 * bb) / (g * b6) + pg - pt) / d;
    Scalar c0m = (q * (t * t * b6 + g * g * b52 * b6 - t * g * bb) / (g * b6) - pg + pt) / d;
    DeformMatrix B;
    B.rp = Poly(std::vector<Scalar>{c0p, one}) * in.r.r1p;
    B.rm = Poly(std::vector<Scalar>{c0m, one}) * in.r.r1m;
    B.pp = in.a_n * (in.r.r1p - one / in.r.r1p);
    B.pm = in.a_n * (one / in.r.r1m - in.r.r1m);
    return B;
}

Scalar r0_ratio_plus(const Scalar& f, const Scalar& g, const Scalar& g_next, const Params& p) {
    const Scalar &t = p.t, &q = p.q, &b5 = p.b5, &b6 = p.b6;
    Scalar one(1);
    nonzero(f, "f = 0");
    return q * b5 * (t / f - b5) * g + (b5 * q * t / f - one) * g_next +
           (one + q * b5 * b5 - b5 * p.sum_inv_b() * q * t) / f +
           (one + b6 * b6) / b6 * b5 * b5 * q * t;
}

Scalar r0_ratio_minus(const Scalar& f, const Scalar& g, const Scalar& g_next, const Params& p) {
    const Scalar &t = p.t, &q = p.q, &b5 = p.b5, &b6 = p.b6;
    Scalar one(1);
    nonzero(f, "f = 0");
    return q * b5 * (b5 - t / f) * g + (one - b5 * q * t / f) * g_next +
           (b5 * p.sum_inv_b() * q * t - q * b5 * b5 - one) / f - (one + b6 * b6) / b6 * q * t;
}

Real verify_compatibility(const SpectralMatrix& A_t, const SpectralMatrix& A_qt,
                          const DeformMatrix& B, const Params& p, const std::vector<Scalar>& xs) {
    Real worst = 0;
    for (const auto& x : xs) {
        Scalar c = chi(x, p.t, p);
        SMat lhs = scale(B.at(p.q * x) * A_t.at(x), c);
        SMat rhs = A_qt.at(x) * B.at(x);
        worst = std::max(worst, mat_distance(lhs, rhs));
    }
    return worst;
}

std::array<Real, 4> residue_checks(const SpectralMatrix& A_t, const SpectralMatrix& A_qt,
                                   const DeformMatrix& B, const Params& p) {
    const Scalar &t = p.t, &q = p.q, &b6 = p.b6;
    Scalar qt = q * t;
    std::array<Real, 4> r{};
    Scalar up[2] = {b6 * qt, qt / b6};
    for (int i = 0; i < 2; ++i) {
        const Scalar& x = up[i];
        r[i] = rel_sum({B.rm(x), A_qt.wp(x) / A_qt.tp(x) * B.pp});
    }
    Scalar dn[2] = {b6 * t, t / b6};
    for (int i = 0; i < 2; ++i) {
        const Scalar& x = dn[i];
        r[2 + i] = rel_sum({B.rp(q * x), A_t.wm(x) / A_t.tp(x) * B.pp});
    }
    return r;
}

Real lsodde_residual(const SpectralMatrix& A, const Params& p,
                     const std::function<Scalar(const Scalar&)>& pn, const Scalar& x) {
    SpectralData sd = spectral_data(p, p.t);
    Scalar xd = x / p.q;
    Scalar tp = A.tp(x), tpd = A.tp(xd);
    if (abs(tp) <= default_tol() || abs(tpd) <= default_tol())
        throw Error(ErrorKind::ZeroTheta, "T+ vanishes at a sample point");
    return rel_sum({sd.w_plus(x) / tp * pn(p.q * x),
                    -(A.wp(x) / tp + A.wm(xd) / tpd) * pn(x),
                    sd.w_minus(xd) / tpd * pn(xd)});
}

}  // namespace e6
