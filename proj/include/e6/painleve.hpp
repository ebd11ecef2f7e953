// The E6(1) q-Painleve map in (f, g): forward and backward steps in t.
#pragma once

#include "e6/weight.hpp"

#include <vector>

namespace e6 {

struct PainleveState {
    Scalar f, g, t;
};

// t^2 prod_j (b_j g - 1) / ((g - b6 t)(g - t/b6))
Scalar rhs_first(const Scalar& g, const Scalar& t, const Params& p);
// Same quotient written with prod_j (g - 1/b_j); equal when b1 b2 b3 b4 = 1.
Scalar rhs_first_alt(const Scalar& g, const Scalar& t, const Params& p);
// q t^2 prod_j (f - b_j) / ((f - b5 q t)(f - t/b5))
Scalar rhs_second(const Scalar& f, const Scalar& t, const Params& p);
// q b5 t^2 prod_j (f - b_j) / ((f - q b5 t)(b5 f - t))
Scalar rhs_second_alt(const Scalar& f, const Scalar& t, const Params& p);

// Residuals |lhs - rhs| / max(1, |lhs|, |rhs|) of the two evolution equations:
// (f(t/q) g - 1)(f g - 1) = rhs_first(g, t) and (f g(qt) - 1)(f g - 1) = rhs_second(f, t).
Real first_residual(const Scalar& f_prev, const Scalar& f, const Scalar& g, const Scalar& t,
                    const Params& p);
Real second_residual(const Scalar& f, const Scalar& g, const Scalar& g_next, const Scalar& t,
                     const Params& p);

// Guard threshold for excluded loci: 10^6 * default tolerance.
Real guard_tol();

PainleveState step_forward(const PainleveState& s, const Params& p);
PainleveState step_backward(const PainleveState& s, const Params& p);

// (gamma_n(qt) / (b6 gamma_n(t)))^2 = (f - t/b5) / (f - b5 q t)
Scalar gamma_ratio_sq(const Scalar& f, const Scalar& t, const Params& p);

// steps > 0 goes forward, steps < 0 backward; the seed is the first entry.
std::vector<PainleveState> orbit(const PainleveState& s, int steps, const Params& p);

}  // namespace e6
