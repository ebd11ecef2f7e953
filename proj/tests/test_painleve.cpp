#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "e6/laxpair.hpp"
#include "e6/painleve.hpp"

using namespace e6;

namespace {
Real tiny() { return Real("1e-50"); }

ErrorKind kind_of(const std::function<void()>& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.kind();
    }
    FAIL("no error raised");
    return ErrorKind::ConfigError;
}

PainleveState generic(const Params& p) {
    return {Scalar(Real("0.83"), Real("0.21")), Scalar(Real("1.37"), Real("-0.45")), p.t};
}
}  // namespace

TEST_CASE("equivalent right-hand sides") {
    Params p = Params::defaults();
    Scalar x(Real("0.6"), Real("0.9"));
    CHECK(rel_diff(rhs_first(x, p.t, p), rhs_first_alt(x, p.t, p)) < tiny());
    CHECK(rel_diff(rhs_second(x, p.t, p), rhs_second_alt(x, p.t, p)) < tiny());
    CHECK(kind_of([&] { rhs_first(p.b6 * p.t, p.t, p); }) == ErrorKind::DenominatorZero);
    CHECK(kind_of([&] { rhs_second(p.b5 * p.q * p.t, p.t, p); }) == ErrorKind::DenominatorZero);
    // g = 1/b1 zeroes the first right-hand side
    CHECK(abs(rhs_first(Scalar(1) / p.b1, p.t, p)) < tiny());
}

TEST_CASE("a step satisfies both equations") {
    Params p = Params::defaults();
    auto s = generic(p);
    auto f = step_forward(s, p);
    auto b = step_backward(s, p);
    CHECK(rel_diff(f.t, p.q * p.t) < tiny());
    CHECK(second_residual(s.f, s.g, f.g, s.t, p) < tiny());
    CHECK(first_residual(s.f, f.f, f.g, f.t, p) < tiny());
    CHECK(first_residual(b.f, s.f, s.g, s.t, p) < tiny());
    // perturbation is visible
    CHECK(second_residual(s.f, s.g, f.g + Scalar::ratio(1, 1000), s.t, p) > Real("1e-6"));
}

TEST_CASE("forward then backward is the identity") {
    Params p = Params::defaults();
    auto s = generic(p);
    auto fwd = orbit(s, 5, p);
    CHECK(fwd.size() == 6u);
    auto back = orbit(fwd.back(), -5, p);
    CHECK(rel_diff(back.back().f, s.f) < tiny());
    CHECK(rel_diff(back.back().g, s.g) < tiny());
    CHECK(rel_diff(back.back().t, s.t) < tiny());
    CHECK(orbit(s, 0, p).size() == 1u);
}

TEST_CASE("excluded loci stop the map") {
    Params p = Params::defaults();
    PainleveState on{Scalar(2), Scalar::ratio(1, 2), p.t};  // f g = 1
    CHECK(kind_of([&] { step_forward(on, p); }) == ErrorKind::SingularStep);
    try {
        orbit(on, 3, p);
        FAIL("no error");
    } catch (const Error& e) {
        CHECK(std::string(e.what()).find("at step 1") != std::string::npos);
        CHECK(std::string(e.what()).find("fg = 1") != std::string::npos);
    }
    PainleveState zero_g{Scalar::ratio(3, 2), Scalar(0), p.t};
    CHECK(kind_of([&] { step_backward(zero_g, p); }) == ErrorKind::SingularStep);
}

TEST_CASE("OPS data evolves under the map") {
    OPSSystem sys(Params::defaults());
    for (int n = 1; n <= 2; ++n) {
        CAPTURE(n);
        Params p = sys.params(n, 0);
        auto a = extract_fg(sys, n, 0, default_tol());
        auto b = extract_fg(sys, n, 1, default_tol());
        auto s = step_forward({a.f, a.g, sys.time(0)}, p);
        CHECK(rel_diff(s.f, b.f) < tiny());
        CHECK(rel_diff(s.g, b.g) < tiny());
        Scalar r = gamma_ratios(sys, n, 0).r1p;
        CHECK(rel_diff(gamma_ratio_sq(a.f, sys.time(0), p), r * r) < tiny());
    }
}
