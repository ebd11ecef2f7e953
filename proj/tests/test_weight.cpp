#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "e6/ops.hpp"

using namespace e6;

namespace {
Real tiny() { return Real("1e-60"); }

ErrorKind kind_of(const std::function<void()>& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.kind();
    }
    FAIL("no error raised");
    return ErrorKind::ConfigError;
}

std::string message_of(const std::function<void()>& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.what();
    }
    return "";
}
}  // namespace

TEST_CASE("default instance") {
    Params p = Params::defaults();
    CHECK(p.b4 == Scalar::ratio(7, 6));
    CHECK(abs(p.b5 - Scalar::ratio(7, 12)) < tiny());
    CHECK(p.n == 1);
    CHECK(abs(p.b1 * p.b2 * p.b3 * p.b4 - Scalar(1)) < tiny());
    Params p2 = p.with_n(2);
    CHECK(abs(p2.b5 - Scalar::ratio(7, 24)) < tiny());
}

TEST_CASE("parameter validation names the constraint") {
    Params d = Params::defaults();
    auto bad_product = [&] { Params::make(d.q, d.t, d.b1, d.b2, d.b3, Scalar(2), d.b6, 1); };
    CHECK(kind_of(bad_product) == ErrorKind::InvalidParams);
    CHECK(message_of(bad_product).find("b1 b2 b3 b4") != std::string::npos);
    auto q_one = [&] { Params::make(Scalar(1), d.t, d.b1, d.b2, d.b3, d.b6, 1); };
    CHECK(kind_of(q_one) == ErrorKind::InvalidParams);
    CHECK(message_of(q_one).find("q must differ from 1") != std::string::npos);
    auto zero_t = [&] { Params::make(d.q, Scalar(0), d.b1, d.b2, d.b3, d.b6, 1); };
    CHECK(kind_of(zero_t) == ErrorKind::InvalidParams);
    // b2 = q b3 puts 1/b2 on the lattice of 1/b3
    auto lattice = [&] {
        Params::make(d.q, d.t, d.b1, d.q * d.b3, d.b3, d.b6, 1);
    };
    CHECK(kind_of(lattice) == ErrorKind::InvalidParams);
}

TEST_CASE("weight values") {
    Params p = Params::defaults();
    CHECK(abs(weight_eval(Scalar(0), p.t, p) - Scalar(1)) < tiny());
    CHECK(abs(weight_eval(Scalar(1) / p.b2, p.t, p)) < tiny());
    CHECK(kind_of([&] { weight_eval(Scalar(1) / p.b1, p.t, p); }) == ErrorKind::WeightPole);
}

TEST_CASE("data polynomials") {
    Params p = Params::defaults();
    SpectralData s = spectral_data(p, p.t);
    CHECK(abs(s.w_plus.coeff(3) + p.b1 * p.b4 * p.b6 * p.b6) < tiny());
    CHECK(abs(s.w_plus.coeff(0) - p.b6 * p.t) < tiny());
    CHECK(s.W.degree() == 3);
    CHECK(s.V.degree() == 2);
    DeformData r = deformation_data(p, p.t);
    CHECK(abs(r.r_plus(p.b6 * p.q * p.t)) < tiny());
    CHECK(abs(r.r_minus(p.q * p.t / p.b6)) < tiny());
    CHECK(r.r_plus.degree() == 1);
}

TEST_CASE("semi-classical and deformation ratios at random points") {
    Params p = Params::defaults();
    Sampler s(5);
    SpectralData sd = spectral_data(p, p.t);
    DeformData dd = deformation_data(p, p.t);
    for (int i = 0; i < 5; ++i) {
        Scalar x = s.uniform_complex(Scalar(-2), Scalar(2));
        Scalar w = weight_eval(x, p.t, p);
        CHECK(rel_diff(weight_eval(p.q * x, p.t, p) / w, sd.w_plus(x) / sd.w_minus(x)) < tiny());
        CHECK(rel_diff(weight_eval(x, p.q * p.t, p) / w, dd.r_plus(x) / dd.r_minus(x)) < tiny());
        // the swapped orientation is wrong
        CHECK(rel_diff(weight_eval(p.q * x, p.t, p) / w, sd.w_minus(x) / sd.w_plus(x)) > Real("1e-3"));
    }
}

TEST_CASE("WV-RS compatibility") {
    Params p = Params::defaults();
    Sampler s(6);
    for (int i = 0; i < 3; ++i) {
        Scalar x = s.uniform_complex(Scalar(-2), Scalar(2));
        Scalar t = s.uniform(Scalar::ratio(1, 5), Scalar(1));
        CHECK(check_wv_rs(p, t, x) < tiny());
    }
    CHECK(kind_of([&] { check_wv_rs(p, p.t, Scalar(1) / p.b2); }) == ErrorKind::FactorVanishes);
}

TEST_CASE("chi") {
    Params p = Params::defaults();
    const Scalar &q = p.q, &t = p.t;
    CHECK(abs(chi(q * p.b6 * t, t, p)) < tiny());
    CHECK(kind_of([&] { chi(p.b6 * t, t, p); }) == ErrorKind::PoleHit);
    Scalar x(Real("0.4"), Real("1.1"));
    CHECK(rel_diff(chi(x, t, p), chi_plus_form(x, t, p)) < tiny());
    CHECK(rel_diff(chi(x, t, p), chi_minus_form(x, t, p)) < tiny());
}

TEST_CASE("U is linear and checked on holdouts") {
    Params p = Params::defaults();
    OPSSystem sys(p);
    const auto& sl = sys.at(0);
    auto f = [&](const Scalar& x) { return stieltjes(x, sl.measure, default_tol()); };
    std::vector<Scalar> nodes = {Scalar(Real("1.3"), Real("0.2")), Scalar(Real("0.7"), Real("-0.4")),
                                 Scalar(Real("2.1"), Real("0.9")), Scalar(Real("-0.6"), Real("0.3"))};
    Poly U = compute_U(p, sl.t, f, nodes, default_tol());
    CHECK(U.degree() == 1);
    // a perturbed Stieltjes function is no longer compatible with a linear U
    auto g = [&](const Scalar& x) { return f(x) + x * x * Scalar::ratio(1, 1000); };
    CHECK(kind_of([&] { compute_U(p, sl.t, g, nodes, default_tol()); }) == ErrorKind::HoldoutMismatch);
}
