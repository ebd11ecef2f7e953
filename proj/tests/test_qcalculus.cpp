#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "e6/qcalculus.hpp"

using namespace e6;

namespace {
Real tiny() { return Real("1e-60"); }
const Scalar q = Scalar::ratio(1, 2);
}  // namespace

TEST_CASE("divided difference and mean on the q-linear lattice") {
    QLattice lat{q};
    Scalar x = Scalar::ratio(3, 5);
    // f = x^2: D f = (q + 1) x, M f = (q^2 + 1) x^2 / 2
    LatticePair f{lat.up(x) * lat.up(x), x * x};
    CHECK(abs(ddo(f, x, lat) - (q + Scalar(1)) * x) < tiny());
    CHECK(abs(mean_op(f) - (q * q + Scalar(1)) * x * x / Scalar(2)) < tiny());
    CHECK(lat.dy(x) == (q - Scalar(1)) * x);
    CHECK_THROWS_AS(ddo(f, Scalar(0), lat), Error);
    CHECK_THROWS_AS(ddo(f, x, QLattice{Scalar(1)}), Error);
}

TEST_CASE("q-Pochhammer symbols") {
    Scalar a = Scalar::ratio(2, 3);
    Scalar expect = (Scalar(1) - a) * (Scalar(1) - a * q) * (Scalar(1) - a * q * q);
    CHECK(abs(qpochhammer(a, q, 3) - expect) < tiny());
    CHECK(qpochhammer(a, q, 0) == Scalar(1));
    CHECK(abs(qpoch_inf(Scalar(0), q) - Scalar(1)) < tiny());
    CHECK(abs(qpoch_inf(Scalar(1), q)) < tiny());
    // (a; q)_inf = (1 - a) (aq; q)_inf
    CHECK(abs(qpoch_inf(a, q) - (Scalar(1) - a) * qpoch_inf(a * q, q)) < tiny());
    CHECK_THROWS_AS(qpoch_inf(a, Scalar(2)), Error);
}

TEST_CASE("Jackson integral of x from 0 to d is d^2/(1+q)") {
    Scalar d = Scalar::ratio(5, 4);
    auto r = qintegral([](const Scalar& x) { return x; }, {d, Scalar(0), 400}, q);
    CHECK(abs(r.value - d * d / (Scalar(1) + q)) < Real("1e-80"));
    CHECK(r.tail_bound < Real("1e-100"));
}

TEST_CASE("theta and e_qt quasi-periodicity") {
    Scalar z(Real("0.3"), Real("0.7"));
    Scalar t = Scalar::ratio(1, 3);
    // theta(qz) = theta(z)/(qz), hence e_{q,t}(qz) = e_{q,t}(z)/t
    CHECK(abs(theta_q(q * z, q) - theta_q(z, q) / (q * z)) < tiny());
    CHECK(abs(e_qt(q * z, t, q) - e_qt(z, t, q) / t) < tiny());
    CHECK_THROWS_AS(theta_q(Scalar(0), q), Error);
}
