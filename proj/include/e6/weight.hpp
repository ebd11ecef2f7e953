// The deformed big q-Jacobi weight, its parameters and data polynomials.
#pragma once

#include "e6/algebra.hpp"
#include "e6/qcalculus.hpp"

#include <functional>
#include <vector>

namespace e6 {

struct Params {
    Scalar q, t;
    Scalar b1, b2, b3, b4, b5, b6;
    int n = 1;

    // b4 = 1/(b1 b2 b3) and b5 = q^n b1 b4 b6 are derived, then every
    // constraint is validated. Throws InvalidParams naming the failed condition.
    static Params make(const Scalar& q, const Scalar& t, const Scalar& b1, const Scalar& b2,
                       const Scalar& b3, const Scalar& b6, int n);
    // Same, but with b4 supplied; the product constraint is then checked.
    static Params make(const Scalar& q, const Scalar& t, const Scalar& b1, const Scalar& b2,
                       const Scalar& b3, const Scalar& b4, const Scalar& b6, int n);
    // q = 1/2, n = 1, b1 = 3/2, b2 = 4/5, b3 = 5/7, b6 = 2/3, t = 1/3.
    static Params defaults();

    Params with_n(int n) const;
    Params with_t(const Scalar& t) const;

    QLattice lattice() const { return {q}; }
    std::vector<Scalar> bs() const { return {b1, b2, b3, b4}; }
    Scalar sum_b() const { return b1 + b2 + b3 + b4; }
    Scalar sum_inv_b() const;
    // prod_j (b_j x - 1)
    Scalar prod_bx_minus_1(const Scalar& x) const;
    // prod_j (x - b_j)
    Scalar prod_x_minus_b(const Scalar& x) const;
};

struct SpectralData {
    Poly w_plus;   // W + Dy V
    Poly w_minus;  // W - Dy V
    Poly W, V;
};

struct DeformData {
    Poly r_plus;   // R + Du S
    Poly r_minus;  // R - Du S
};

Scalar weight_eval(const Scalar& x, const Scalar& t, const Params& p);
SpectralData spectral_data(const Params& p, const Scalar& t);
DeformData deformation_data(const Params& p, const Scalar& t);

// Relative mismatch of the two sides of the spectral/deformation compatibility
// relation at (x, t). Throws FactorVanishes near a zero of any factor.
Real check_wv_rs(const Params& p, const Scalar& t, const Scalar& x);

// (x - q b6 t)(b6 x - q t) / (q (x - b6 t)(b6 x - t))
Scalar chi(const Scalar& x, const Scalar& t, const Params& p);
// The two defining quotient forms, built from the data polynomials.
Scalar chi_plus_form(const Scalar& x, const Scalar& t, const Params& p);
Scalar chi_minus_form(const Scalar& x, const Scalar& t, const Params& p);

// U = W Dx f - 2 V Mx f recovered as a linear polynomial from the Stieltjes
// evaluator at the given off-lattice nodes (at least three; extras are holdouts).
Poly compute_U(const Params& p, const Scalar& t,
               const std::function<Scalar(const Scalar&)>& stieltjes,
               const std::vector<Scalar>& nodes, const Real& tol);

}  // namespace e6
