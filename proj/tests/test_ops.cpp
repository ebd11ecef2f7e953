#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "e6/ops.hpp"

using namespace e6;

namespace {
Real tiny() { return Real("1e-50"); }

OPSSystem& sys() {
    static OPSSystem s(Params::defaults());
    return s;
}

ErrorKind kind_of(const std::function<void()>& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.kind();
    }
    FAIL("no error raised");
    return ErrorKind::ConfigError;
}
}  // namespace

TEST_CASE("support terminals are the numerator zeros") {
    Params p = Params::defaults();
    auto s = SupportSpec::for_params(p);
    CHECK(s.upper == Scalar(1) / p.b2);
    CHECK(s.lower == Scalar(1) / p.b3);
    CHECK(s.truncation == 200);
}

TEST_CASE("initial values and normalisation") {
    const auto& sl = sys().at(0);
    const OPSData& d = sl.data;
    Scalar x = Scalar::ratio(13, 10);
    CHECK(eval_p(0, x, d) == d.gamma_at(0));
    CHECK(eval_p(-1, x, d).is_exact_zero());
    CHECK(d.a_at(0) == Scalar(1));
    // one recurrence step: a_1 p_1 = (x - b_0) p_0
    CHECK(rel_diff(d.a_at(1) * eval_p(1, x, d), (x - d.b_at(0)) * d.gamma_at(0)) < tiny());
    // a_n = gamma_{n-1}/gamma_n with h_n = 1
    for (int n = 1; n <= 4; ++n) CHECK(rel_diff(d.a_at(n), d.gamma_at(n - 1) / d.gamma_at(n)) < tiny());
    CHECK(rel_diff(d.gamma_at(0) * d.gamma_at(0) * d.moments[0], Scalar(1)) < tiny());
    CHECK(kind_of([&] { eval_p(d.N + 5, x, d); }) == ErrorKind::IndexOutOfRange);
    CHECK(kind_of([&] { d.a_at(-3); }) == ErrorKind::IndexOutOfRange);
}

TEST_CASE("orthonormality on the lattice measure") {
    const auto& sl = sys().at(0);
    const int top = 5;
    for (int m = 0; m <= top; ++m)
        for (int n = m; n <= top; ++n) {
            Scalar s(0);
            for (std::size_t i = 0; i < sl.measure.nodes.size(); ++i)
                s += sl.measure.masses[i] * eval_p(m, sl.measure.nodes[i], sl.data) *
                     eval_p(n, sl.measure.nodes[i], sl.data);
            CHECK(abs(s - Scalar(m == n ? 1 : 0)) < tiny());
        }
}

TEST_CASE("Y_n transfer and Casoratian") {
    Params p = Params::defaults();
    const auto& sl = sys().at(0);
    const OPSData& d = sl.data;
    Sampler s(3);
    for (int i = 0; i < 3; ++i) {
        Scalar x = s.uniform_complex(Scalar::ratio(1, 5), Scalar(2));
        for (int n = 0; n <= 3; ++n) {
            SMat Y = y_matrix(n, x, d, sl.measure, p, default_tol());
            SMat Y1 = y_matrix(n + 1, x, d, sl.measure, p, default_tol());
            SMat K = k_matrix(n, x, d);
            CHECK(mat_distance(Y1, K * Y) < tiny());
            CHECK(rel_diff(K.det(), d.a_at(n) / d.a_at(n + 1)) < tiny());
            CHECK(abs(d.a_at(n) * weight_eval(x, d.t, p) * Y.det() - Scalar(1)) < tiny());
        }
        SMat Y0 = y_matrix(0, x, d, sl.measure, p, default_tol());
        CHECK(Y0.e21.is_exact_zero());
    }
}

TEST_CASE("second-kind functions") {
    const auto& sl = sys().at(0);
    const OPSData& d = sl.data;
    Real tol = default_tol();
    Scalar x(Real("1.7"), Real("0.4"));
    CHECK(rel_diff(eval_q(-1, x, d, sl.measure, tol), Scalar(1) / (d.a_at(0) * d.gamma_at(0))) < tiny());
    CHECK(rel_diff(eval_q(0, x, d, sl.measure, tol), d.gamma_at(0) * stieltjes(x, sl.measure, tol)) < tiny());
    for (int n = 0; n <= 2; ++n)
        CHECK(rel_diff(eval_q(n, x, d, sl.measure, tol), eval_q_direct(n, x, d, sl.measure, tol)) < tiny());
    // x^{n+1} q_n(x) -> 1/gamma_n as |x| grows
    Scalar big(1000);
    for (int n = 0; n <= 2; ++n)
        CHECK(rel_diff(pow(big, n + 1) * eval_q(n, big, d, sl.measure, tol), Scalar(1) / d.gamma_at(n)) <
              Real("1e-2"));
    CHECK(rel_diff(big * stieltjes(big, sl.measure, tol), d.moments[0]) < Real("1e-2"));
    CHECK(kind_of([&] { stieltjes(sl.measure.nodes[3], sl.measure, tol); }) == ErrorKind::OnSupportLattice);
}

TEST_CASE("Hankel determinants") {
    std::vector<Scalar> m = {1, 2, 5, 14, 42, 132};  // Catalan: all Hankel determinants 1
    for (int n = 1; n <= 3; ++n) CHECK(abs(hankel_det(m, n) - Scalar(1)) < tiny());
    std::vector<Scalar> flat(20, Scalar(1));  // rank one
    CHECK(kind_of([&] { recurrence_from_moments(flat, 3, Scalar(1), default_tol()); }) ==
          ErrorKind::DegenerateHankel);
    CHECK(kind_of([&] { recurrence_from_moments(m, 6, Scalar(1), default_tol()); }) ==
          ErrorKind::IndexOutOfRange);
}

TEST_CASE("moments truncate with a small tail") {
    Params p = Params::defaults();
    auto mu = discretize(p, p.t, SupportSpec::for_params(p));
    CHECK(mu.tail_bound < Real("1e-55"));
    auto ms = moments(mu, 4);
    CHECK(ms.m.size() == 5u);
    // truncation at S = 200 and S = 260 agree
    auto mu2 = discretize(p, p.t, SupportSpec::for_params(p, 260));
    auto ms2 = moments(mu2, 4);
    for (int k = 0; k <= 4; ++k) CHECK(rel_diff(ms.m[k], ms2.m[k]) < tiny());
}

TEST_CASE("time slices") {
    OPSSystem& s = sys();
    CHECK(s.time(0) == Params::defaults().t);
    CHECK(abs(s.time(2) - Params::defaults().t * Scalar::ratio(1, 4)) < tiny());
    CHECK(abs(s.params(2, 1).b5 - Scalar::ratio(7, 24)) < tiny());
    CHECK(&s.at(1) == &s.at(1));
}
