// Sakai's and Yamada's Lax pairs rebuilt from (lambda, z, w) and (f, g), and the
// maps tying them to A*_n, B*_n and the scalar equations on p_n.
#pragma once

#include "e6/laxpair.hpp"
#include "e6/painleve.hpp"

#include <array>

namespace e6 {

// ---- Sakai form ------------------------------------------------------------

struct SakaiData {
    Scalar lambda, z1, z2, alpha, beta, gamma, delta, w;
};

struct SakaiMatrix {
    PMat A;
    SakaiData d;
    Scalar t;
};

// w for the A*_n gauge: (1 - q b5^2) a_n / q
Scalar sakai_w(const Scalar& a_n, const Params& p);
SakaiMatrix sakai_build(const Scalar& lambda, const ZPair& z, const Scalar& w, const Params& p);

struct SakaiProperties {
    Real det;      // det = b6 prod(b_j x - 1)(x - b6 t)(b6 x - t), coefficientwise
    Real top;      // x^3 coefficient is diag(-b5 b6, -b6/b5)
    Real bottom;   // x^0 coefficient is b6 t times identity
    Real root;     // (1,2) entry vanishes at lambda
    Real lower;    // value at lambda is lower triangular with the stated diagonal
};
SakaiProperties sakai_properties(const SakaiMatrix& S, const ZPair& z, const Params& p);

// w(qt) from the residue of the (1,2) entry at t (route a) and at qt (route b).
Scalar sakai_w_next_a(const SakaiMatrix& S, const Params& p);
Scalar sakai_w_next_b(const Scalar& w, const Scalar& lambda_next, const Scalar& z1_next,
                      const Params& p);

// B0 in B~(x) = x (x I + B0) / ((x - b6 q t)(x - q t/b6)), from the x^5 coefficient
// of the compatibility numerator.
SMat sakai_b0(const SakaiMatrix& S_t, const SakaiMatrix& S_qt, const Params& p);
// The closed expression for the (2,2) entry of B0.
Scalar sakai_r22(const SakaiMatrix& S_qt, const Params& p);
Real sakai_compat_residual(const SakaiMatrix& S_t, const SakaiMatrix& S_qt, const SMat& B0,
                           const Params& p, const std::vector<Scalar>& xs);

// ---- Murata's form and the transformation to A* -----------------------------

struct MurataSystem {
    Scalar qS, tau, kappa1, kappa2, theta1, theta2;
    std::array<Scalar, 6> a;
    std::array<Scalar, 6> roots;  // a1..a4, a5 tau, a6 tau
    Scalar lambda, nu_prev, mu1, mu2, gammaS, wS, delta1, delta2, s1, s2;
    Scalar t;

    SMat A(const Scalar& x) const;
    SMat S(const Scalar& x) const;
    // S(qS x)^{-1} A(x) S(x)
    SMat calA(const Scalar& x) const;
    // t x^3 calA(1/x)
    SMat frakA(const Scalar& x) const;
};

// Dictionary: qS = 1/q, tau = 1/t, lambda = 1/g, the previous nu is f(t/q),
// kappa1 = b6, a = (b1..b4, 1/b6, b6), theta1 = -b5 b6, theta2 = -b6/(q b5).
// gammaS is free; the transformation does not depend on it.
MurataSystem murata_from_fg(const Scalar& f, const Scalar& g, const Scalar& a_n,
                            const Scalar& gammaS, const Params& p);

// Residuals of the two evolution equations in Sakai's variables.
std::array<Real, 2> sakai_evolution_residual(const Scalar& lambda, const Scalar& nu,
                                             const Scalar& lambda_next, const Scalar& nu_prev,
                                             const Params& p);

// ---- Yamada form -------------------------------------------------------------

struct YamadaCoeffs {
    Scalar plus, zero, minus;
};

YamadaCoeffs yamada_coeffs_direct(const Scalar& z, const Scalar& f, const Scalar& g,
                                  const Params& p);
// From A*_n via the scalar equation for p_n and the gauge ratios.
YamadaCoeffs yamada_coeffs_from_lax(const Scalar& z, const SpectralMatrix& A, const Scalar& a_n,
                                    const Params& p);
// Residuals of the three combination displays (plus, minus, middle).
std::array<Real, 3> lax_combination_displays(const Scalar& x, const SpectralMatrix& A,
                                             const Scalar& f, const Scalar& g, const Scalar& a_n,
                                             const Params& p);

// Yamada's variables: t_Y = 1/t, f_Y = 1/g, g_Y = 1/f, and his eight parameters.
struct YamadaVars {
    Scalar q, t, f, g;
    std::array<Scalar, 8> b;
};
YamadaVars to_yamada(const Scalar& f, const Scalar& g, const Params& p);

// Residuals of his coupled first-order system. f_bar is f_Y at t_Y/q, g_under is
// g_Y at q t_Y.
Real yamada_qp_a(const YamadaVars& y, const Scalar& f_bar);
Real yamada_qp_b(const YamadaVars& y, const Scalar& g_under);

// Coefficients of his second-order equation at z_Y, as multipliers of
// (Y(z_Y/q), Y(z_Y), Y(q z_Y)).
std::array<Scalar, 3> yamada_lp_a(const YamadaVars& y, const Scalar& zY);
// Coefficients of his mixed equation at z_Y, as multipliers of
// (Y(z_Y), Y(z_Y/q), Ybar(z_Y/q)).
std::array<Scalar, 3> yamada_lp_b(const YamadaVars& y, const Scalar& zY);
// Coefficients of our mixed equation in Y~(z/q; t), Y~(z; t), Y~(z; qt).
std::array<Scalar, 3> mixed_target(const Scalar& z, const Scalar& f, const Scalar& g,
                                   const Params& p);

// ---- Mixed relation on p_n and the gauge factor --------------------------------

// Relative residual of the three-term relation in p_n(qx; qt), p_n(qx; t), p_n(x; t).
// c is the B* normalization constant returned by bstar_numeric.
Real mixed_dde_residual(const SpectralMatrix& A, const DeformMatrix& B, const Scalar& c,
                        const Params& p, const std::function<Scalar(const Scalar&)>& pn_t,
                        const std::function<Scalar(const Scalar&)>& pn_qt, const Scalar& x);
// The three coefficient displays of that relation in terms of (f, g).
// gamma_ratio is gamma_n(qt)/gamma_n(t).
std::array<Real, 3> mixed_coefficient_displays(const Scalar& x, const SpectralMatrix& A,
                                               const DeformMatrix& B, const Scalar& f,
                                               const Scalar& g, const Scalar& a_n,
                                               const Scalar& gamma_ratio, const Params& p);

// F(x, t) = e_{q,t^2}(x) (b6 x/t; q)_inf / (b2 x, b3 x; q)_inf * C
Scalar gauge_F(const Scalar& x, const Scalar& t, const Scalar& C, const Params& p);
Scalar gauge_ratio_up(const Scalar& x, const Scalar& t, const Params& p);
Scalar gauge_ratio_down(const Scalar& x, const Scalar& t, const Params& p);
// C(qt)/C(t); gamma_ratio is gamma_n(qt)/gamma_n(t), c as in mixed_dde_residual.
Scalar gauge_c_step(const Scalar& gamma_ratio, const Scalar& f, const Scalar& g, const Scalar& c,
                    const Params& p);
// Relative residual of t^2 U(x;t) - (1 - f x) U(qx;t) - (x - g)/(q g x) U(qx;qt)
// with U = p_n / F.
Real u_form_residual(const Scalar& x, const Scalar& f, const Scalar& g, const Scalar& C_t,
                     const Scalar& C_qt, const Params& p,
                     const std::function<Scalar(const Scalar&)>& pn_t,
                     const std::function<Scalar(const Scalar&)>& pn_qt);

}  // namespace e6
