#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "e6/algebra.hpp"

using namespace e6;

namespace {
Real tiny() { return Real("1e-60"); }
}

TEST_CASE("rational literals are exact at working precision") {
    Scalar a = Scalar::parse("3/2");
    CHECK(a == Scalar::ratio(3, 2));
    CHECK(Scalar::parse("-7") == Scalar(-7));
    CHECK(Scalar::parse("0.125") == Scalar::ratio(1, 8));
    CHECK(abs(Scalar::parse("1/3") * Scalar(3) - Scalar(1)) < tiny());
}

TEST_CASE("malformed literals are configuration errors") {
    for (const char* bad : {"", "1/", "abc", "1/0", "2//3"}) {
        CAPTURE(bad);
        try {
            Scalar::parse(bad);
            FAIL("accepted");
        } catch (const Error& e) {
            CHECK(e.kind() == ErrorKind::ConfigError);
        }
    }
}

TEST_CASE("complex arithmetic") {
    Scalar i(Real(0), Real(1));
    CHECK(i * i == Scalar(-1));
    Scalar z(Real(3), Real(4));
    CHECK(abs(z) == Real(5));
    CHECK(abs(sqrt(z) * sqrt(z) - z) < tiny());
    CHECK(abs(z / z - Scalar(1)) < tiny());
    CHECK(pow(z, -2) * pow(z, 2) == Scalar(1));
}

TEST_CASE("polynomials") {
    Poly p = Poly::from_roots({Scalar(1), Scalar(2)}, Scalar(3));  // 3x^2 - 9x + 6
    CHECK(p.degree() == 2);
    CHECK(p.coeff(0) == Scalar(6));
    CHECK(p.coeff(1) == Scalar(-9));
    CHECK(p.coeff(5) == Scalar(0));
    CHECK(p(Scalar(2)).is_exact_zero());
    CHECK(coeff_distance(p.scaled_arg(Scalar(2)), Poly(std::vector<Scalar>{6, -18, 12})) == 0);
    Poly q = Poly::x() * p;
    CHECK(coeff_distance(q.div_x(), p) == 0);
    CHECK((p - p).is_zero());
    CHECK((p - p).degree() == -1);
}

TEST_CASE("interpolation recovers a polynomial and rejects holdout mismatch") {
    Poly p(std::vector<Scalar>{Scalar::ratio(1, 3), Scalar(-2), Scalar(0), Scalar(5)});
    std::vector<std::pair<Scalar, Scalar>> s;
    for (int j = 1; j <= 6; ++j) s.push_back({Scalar::ratio(j, 7), p(Scalar::ratio(j, 7))});
    CHECK(coeff_distance(poly_interpolate(s, 3), p) < tiny());
    s.back().second += Scalar::ratio(1, 1000);
    CHECK_THROWS_AS(poly_interpolate(s, 3), Error);
    try {
        poly_interpolate(s, 3);
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::HoldoutMismatch);
    }
}

TEST_CASE("duplicate interpolation nodes") {
    std::vector<std::pair<Scalar, Scalar>> s = {{1, 1}, {2, 2}, {1, 1}};
    try {
        poly_interpolate(s, 1);
        FAIL("accepted");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::DuplicateNode);
    }
}

TEST_CASE("linear factor root") {
    Poly p = Poly::from_roots({Scalar(0), Scalar::ratio(2, 5)}, Scalar(7));
    CHECK(abs(poly_root_of_linear_factor(p) - Scalar::ratio(2, 5)) < tiny());
    Poly l = Poly::from_roots({Scalar::ratio(-3, 4)}, Scalar(2));
    CHECK(abs(poly_root_of_linear_factor(l) + Scalar::ratio(3, 4)) < tiny());
}

TEST_CASE("2x2 matrices") {
    SMat m{2, 1, 7, 4};
    SMat prod = m * mat2_inv(m);
    CHECK(mat_distance(prod, identity2()) < tiny());
    SMat sing{1, 2, 2, 4};
    CHECK_THROWS_AS(mat2_inv(sing), Error);
    PMat pm{Poly::x(), Poly::constant(1), Poly::constant(0), Poly::x()};
    CHECK(eval(pm, Scalar(3)).det() == Scalar(9));
}

TEST_CASE("rational function pole") {
    RatFun r(Poly::constant(1), Poly::from_roots({Scalar(2)}));
    CHECK(r(Scalar(3)) == Scalar(1));
    CHECK_THROWS_AS(r(Scalar(2)), Error);
}

TEST_CASE("sampler is reproducible and seed dependent") {
    Sampler a(11), b(11), c(12);
    Scalar x = a.uniform_complex(Scalar(0), Scalar(1));
    Scalar y = b.uniform_complex(Scalar(0), Scalar(1));
    Scalar z = c.uniform_complex(Scalar(0), Scalar(1));
    CHECK(x == y);
    CHECK(x != z);
    Scalar u = a.uniform(Scalar(2), Scalar(3));
    CHECK(u.re >= 2);
    CHECK(u.re < 3);
    CHECK(u.im == 0);
}

TEST_CASE("default tolerance follows precision") {
    CHECK(precision_bits() == 256u);
    CHECK(default_tol() < Real("1e-38"));
    CHECK(default_tol() > Real("1e-39"));
}
