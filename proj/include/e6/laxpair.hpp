// Spectral matrix A*_n and deformation matrix B*_n, numerically from Y_n and
// from the closed (f, g) formulas, plus the extraction of (lambda, mu, nu, f, g).
#pragma once

#include "e6/ops.hpp"

#include <array>

namespace e6 {

// x_j = 11/10 (9/8)^j. Off both support lattices for the default instance.
std::vector<Scalar> interpolation_nodes(int count = 8);
// The same nodes rotated by (3+4i)/5, so real poles of closed forms are never hit.
std::vector<Scalar> complex_nodes(int count = 8);

// A* = [[Wp, -Tp], [Tm, Wm]]
struct SpectralMatrix {
    Poly wp, wm, tp, tm;

    PMat mat() const { return {wp, -tp, tm, wm}; }
    SMat at(const Scalar& x) const { return eval(mat(), x); }
    Poly det() const { return wp * wm + tp * tm; }
};

// B* = [[Rp, -Pp], [Pm, Rm]]
struct DeformMatrix {
    Poly rp, rm;
    Scalar pp, pm;

    PMat mat() const { return {rp, Poly::constant(-pp), Poly::constant(pm), rm}; }
    SMat at(const Scalar& x) const { return eval(mat(), x); }
    Poly det() const { return rp * rm + Poly::constant(pp * pm); }
};

Scalar kappa_plus(const Params& p);   // -b5 b6
Scalar kappa_minus(const Params& p);  // -b6/b5
// Leading coefficient of Theta_n.
Scalar u1(const Params& p);

// (W + Dy V)(x) Y_n(qx) Y_n(x)^{-1} at time index k, entries interpolated with
// degree profile (3,2;2,3).
SpectralMatrix astar_numeric(const OPSSystem& sys, int n, int k, const Real& tol);
// Coefficientwise distance between det A* and W^2 - Dy^2 V^2.
Real det_identity_residual(const SpectralMatrix& A, const Params& p);

// W_n, Omega_n, Theta_n, Theta_{n-1} read off A*_n.
struct SpectralCoeffs {
    Poly W, Omega, Theta, Theta_prev;
};
SpectralCoeffs spectral_coeffs(const SpectralMatrix& A, int n, const Params& p, const Scalar& a_n);

struct ClosedInput {
    Scalar f, g;
    Scalar g_prev;  // root of T- (zero of Theta_{n-1})
    Scalar a_n;
};
// The two displayed variants of each diagonal entry, evaluated at x.
Scalar wplus_closed(const Scalar& x, const ClosedInput& in, const Params& p, int form);
Scalar wminus_closed(const Scalar& x, const ClosedInput& in, const Params& p, int form);
SpectralMatrix astar_closed_form(const ClosedInput& in, const Params& p, int form, const Real& tol);

struct LambdaMuNu {
    Scalar lambda, nu, mu;
};
LambdaMuNu extract_lambda_mu_nu(const SpectralMatrix& A, const Params& p, const Real& tol);
Scalar quad_residual(const LambdaMuNu& l, const Params& p);

struct ZPair {
    Scalar plus, minus;
};
ZPair zpm_from_mu_nu(const LambdaMuNu& l, const Params& p);
// Inverse of the above: (nu, mu) from (lambda, z+, z-).
LambdaMuNu mu_nu_from_zpm(const Scalar& lambda, const ZPair& z, const Params& p);

struct FGPair {
    Scalar f, g;
    Scalar f_alt;  // f recovered through z- instead of z+
};
// g from A*_n at t_k, f from lambda and z+ of A*_n at t_{k+1}.
FGPair extract_fg(const OPSSystem& sys, int n, int k, const Real& tol);

struct BstarNumeric {
    DeformMatrix B;
    Scalar c;  // B = c * (R + Du S)(x) Y_n(x; qt) Y_n(x; t)^{-1}
};
BstarNumeric bstar_numeric(const OPSSystem& sys, int n, int k, const Real& tol);

struct GammaRatios {
    Scalar r1p;  // gamma_n(qt) / (b6 gamma_n(t))
    Scalar r1m;  // b6 gamma_{n-1}(t) / gamma_{n-1}(qt)
};
GammaRatios gamma_ratios(const OPSSystem& sys, int n, int k);

struct BstarInput {
    Scalar f, g, a_n;
    GammaRatios r;
};
DeformMatrix bstar_closed_form(const BstarInput& in, const Params& p);
// (1 - b5^2) r0/r1 for each diagonal entry, in the forms that use g(qt).
Scalar r0_ratio_plus(const Scalar& f, const Scalar& g, const Scalar& g_next, const Params& p);
Scalar r0_ratio_minus(const Scalar& f, const Scalar& g, const Scalar& g_next, const Params& p);

// max over x of the relative mismatch in chi B*(qx) A*_t(x) = A*_{qt}(x) B*(x).
Real verify_compatibility(const SpectralMatrix& A_t, const SpectralMatrix& A_qt,
                          const DeformMatrix& B, const Params& p, const std::vector<Scalar>& xs);
// Residue relations at x in {b6 qt, qt/b6} and {b6 t, t/b6}; relative residuals.
std::array<Real, 4> residue_checks(const SpectralMatrix& A_t, const SpectralMatrix& A_qt,
                                   const DeformMatrix& B, const Params& p);

// Relative residual of the three-term equation in x satisfied by p_n.
Real lsodde_residual(const SpectralMatrix& A, const Params& p,
                     const std::function<Scalar(const Scalar&)>& pn, const Scalar& x);

}  // namespace e6
