#include "e6/qcalculus.hpp"

namespace e6 {

Scalar ddo(const LatticePair& f, const Scalar& x, const QLattice& lat) {
    if (x.is_exact_zero()) throw Error(ErrorKind::ZeroNode, "divided difference at x = 0");
    if (lat.q == Scalar(1)) throw Error(ErrorKind::DegenerateBase, "q = 1");
    return (f.at_up - f.at_down) / lat.dy(x);
}

Scalar mean_op(const LatticePair& f) { return (f.at_up + f.at_down) / Scalar(2); }

Scalar qpochhammer(const Scalar& a, const Scalar& q, int n) {
    Scalar p(1);
    if (n >= 0) {
        Scalar term = a;
        for (int j = 0; j < n; ++j) {
            p *= Scalar(1) - term;
            term *= q;
        }
        return p;
    }
    if (abs(q) >= 1) throw Error(ErrorKind::DivergentBase, "|q| >= 1 in an infinite product");
    Real cutoff = boost::multiprecision::pow(Real(2), -static_cast<int>(precision_bits()) - 16);
    Scalar term = a;
    // The first factor is always taken so that (1;q)_inf is exactly zero.
    do {
        p *= Scalar(1) - term;
        term *= q;
    } while (abs(term) >= cutoff);
    return p;
}

QIntegralResult qintegral(const std::function<Scalar(const Scalar&)>& f, const QIntegralSpec& spec,
                          const Scalar& q) {
    Scalar sum(0);
    Scalar qs(1);
    Real biggest = 0;
    for (int s = 0; s < spec.truncation; ++s) {
        Scalar fu = f(spec.upper * qs);
        Scalar fl = f(spec.lower * qs);
        if (!fu.is_finite() || !fl.is_finite())
            throw Error(ErrorKind::NonFiniteIntegrand, "integrand not finite at lattice index " +
                                                           std::to_string(s));
        Scalar term = qs * (spec.upper * fu - spec.lower * fl);
        biggest = std::max(biggest, abs(term));
        sum += term;
        qs *= q;
    }
    QIntegralResult r;
    r.value = (Scalar(1) - q) * sum;
    r.tail_bound = abs(qs) * biggest / std::max(Real(1) - abs(q), Real(1) / 1024);
    return r;
}

Scalar theta_q(const Scalar& z, const Scalar& q) {
    if (z.is_exact_zero()) throw Error(ErrorKind::ZeroArgument, "theta_q at z = 0");
    return qpoch_inf(q, q) * qpoch_inf(-q * z, q) * qpoch_inf(-Scalar(1) / z, q);
}

Scalar e_qt(const Scalar& z, const Scalar& t, const Scalar& q) {
    if (z.is_exact_zero() || t.is_exact_zero())
        throw Error(ErrorKind::ZeroArgument, "e_qt needs z, t nonzero");
    Scalar den = theta_q(z / t, q);
    if (abs(den) <= default_tol()) throw Error(ErrorKind::PoleHit, "theta_q(z/t) vanishes");
    return theta_q(z, q) * theta_q(Scalar(1) / t, q) / den;
}

}  // namespace e6
