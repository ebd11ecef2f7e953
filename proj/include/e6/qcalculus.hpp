// q-linear lattice calculus: divided differences, means, q-products, the
// Thomae-Jackson sum and the theta-type prefactors.
#pragma once

#include "e6/algebra.hpp"

#include <functional>

namespace e6 {

// The q-linear lattice: iota_+(x) = qx, iota_-(x) = x, Delta y(x) = (q-1)x.
struct QLattice {
    Scalar q;

    Scalar up(const Scalar& x) const { return q * x; }
    const Scalar& down(const Scalar& x) const { return x; }
    Scalar dy(const Scalar& x) const { return (q - Scalar(1)) * x; }
};

// Values of f at the two lattice neighbours of x.
struct LatticePair {
    Scalar at_up;    // f(qx)
    Scalar at_down;  // f(x)
};

Scalar ddo(const LatticePair& f, const Scalar& x, const QLattice& lat);
Scalar mean_op(const LatticePair& f);

// (a;q)_n. n < 0 means the infinite product; it stops once |a q^j| drops
// below 2^(-precision-16).
Scalar qpochhammer(const Scalar& a, const Scalar& q, int n);
inline Scalar qpoch_inf(const Scalar& a, const Scalar& q) { return qpochhammer(a, q, -1); }

struct QIntegralSpec {
    Scalar upper;  // d
    Scalar lower;  // c
    int truncation = 200;
};

struct QIntegralResult {
    Scalar value;
    Real tail_bound;  // |q|^S times the largest integrand term seen
};

// (1-q) sum_{s<S} q^s [d f(d q^s) - c f(c q^s)]
QIntegralResult qintegral(const std::function<Scalar(const Scalar&)>& f, const QIntegralSpec& spec,
                          const Scalar& q);

// theta_q(z) = (q, -qz, -1/z; q)_inf
Scalar theta_q(const Scalar& z, const Scalar& q);
// e_{q,t}(z) = theta_q(z) theta_q(1/t) / theta_q(z/t)
Scalar e_qt(const Scalar& z, const Scalar& t, const Scalar& q);

}  // namespace e6
