#include "e6/painleve.hpp"

#include <algorithm>

namespace e6 {

namespace {

void denom(const Scalar& v, const char* what) {
    if (abs(v) <= default_tol()) throw Error(ErrorKind::DenominatorZero, what);
}

void guard(const Scalar& v, const std::string& what) {
    if (abs(v) <= guard_tol()) throw Error(ErrorKind::SingularStep, what);
}

Real rel(const Scalar& lhs, const Scalar& rhs) {
    Real big = std::max({Real(1), abs(lhs), abs(rhs)});
    return abs(lhs - rhs) / big;
}

}  // namespace

Real guard_tol() { return default_tol() * 1000000; }

Scalar rhs_first(const Scalar& g, const Scalar& t, const Params& p) {
    Scalar den = (g - p.b6 * t) * (g - t / p.b6);
    denom(den, "g on {b6 t, t/b6}");
    return t * t * p.prod_bx_minus_1(g) / den;
}

Scalar rhs_first_alt(const Scalar& g, const Scalar& t, const Params& p) {
    Scalar one(1);
    Scalar den = (g - p.b6 * t) * (g - t / p.b6);
    denom(den, "g on {b6 t, t/b6}");
    Scalar num = (g - one / p.b1) * (g - one / p.b2) * (g - one / p.b3) * (g - one / p.b4);
    return t * t * num / den;
}

Scalar rhs_second(const Scalar& f, const Scalar& t, const Params& p) {
    Scalar den = (f - p.b5 * p.q * t) * (f - t / p.b5);
    denom(den, "f on {b5 q t, t/b5}");
    return p.q * t * t * p.prod_x_minus_b(f) / den;
}

Scalar rhs_second_alt(const Scalar& f, const Scalar& t, const Params& p) {
    Scalar den = (f - p.q * p.b5 * t) * (p.b5 * f - t);
    denom(den, "f on {b5 q t, t/b5}");
    return p.q * p.b5 * t * t * p.prod_x_minus_b(f) / den;
}

Real first_residual(const Scalar& f_prev, const Scalar& f, const Scalar& g, const Scalar& t,
                    const Params& p) {
    Scalar one(1);
    return rel((f_prev * g - one) * (f * g - one), rhs_first(g, t, p));
}

Real second_residual(const Scalar& f, const Scalar& g, const Scalar& g_next, const Scalar& t,
                     const Params& p) {
    Scalar one(1);
    return rel((f * g_next - one) * (f * g - one), rhs_second(f, t, p));
}

PainleveState step_forward(const PainleveState& s, const Params& p) {
    Scalar one(1);
    const Scalar &f = s.f, &g = s.g, &t = s.t, &q = p.q;
    Scalar qt = q * t;
    guard(f * g - one, "fg = 1");
    guard(f, "f = 0");
    guard(f - p.b5 * qt, "f = b5 q t");
    guard(f - t / p.b5, "f = t/b5");
    Scalar gh = (one + rhs_second(f, t, p) / (f * g - one)) / f;
    guard(gh, "g(qt) = 0");
    guard(gh - p.b6 * qt, "g(qt) = b6 q t");
    guard(gh - qt / p.b6, "g(qt) = q t/b6");
    guard(gh * f - one, "g(qt) f = 1");
    Scalar fh = (one + rhs_first(gh, qt, p) / (gh * f - one)) / gh;
    return {fh, gh, qt};
}

PainleveState step_backward(const PainleveState& s, const Params& p) {
    Scalar one(1);
    const Scalar &f = s.f, &g = s.g, &t = s.t, &q = p.q;
    Scalar tq = t / q;
    guard(g * f - one, "gf = 1");
    guard(g, "g = 0");
    guard(g - p.b6 * t, "g = b6 t");
    guard(g - t / p.b6, "g = t/b6");
    Scalar fc = (one + rhs_first(g, t, p) / (g * f - one)) / g;
    guard(fc, "f(t/q) = 0");
    guard(fc - p.b5 * q * tq, "f(t/q) = b5 t");
    guard(fc - tq / p.b5, "f(t/q) = t/(q b5)");
    guard(fc * g - one, "f(t/q) g = 1");
    Scalar gc = (one + rhs_second(fc, tq, p) / (fc * g - one)) / fc;
    return {fc, gc, tq};
}

Scalar gamma_ratio_sq(const Scalar& f, const Scalar& t, const Params& p) {
    Scalar den = f - p.b5 * p.q * t;
    denom(den, "f = b5 q t");
    return (f - t / p.b5) / den;
}

std::vector<PainleveState> orbit(const PainleveState& s, int steps, const Params& p) {
    std::vector<PainleveState> out{s};
    int count = steps < 0 ? -steps : steps;
    for (int i = 0; i < count; ++i) {
        try {
            out.push_back(steps > 0 ? step_forward(out.back(), p) : step_backward(out.back(), p));
        } catch (const Error& e) {
            throw Error(e.kind(), e.detail() + " at step " + std::to_string(i + 1));
        }
    }
    return out;
}

}  // namespace e6
