// High-precision complex scalars and the small polynomial / 2x2 matrix algebra
// that every other module computes in.
#pragma once

#include <boost/multiprecision/mpfr.hpp>

#include <cstdint>
#include <functional>
#include <random>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace e6 {

namespace bmp = boost::multiprecision;
using Real = bmp::number<bmp::mpfr_float_backend<0>, bmp::et_off>;

enum class ErrorKind {
    DuplicateNode,
    HoldoutMismatch,
    SingularMatrix,
    ProfileMismatch,
    ZeroNode,
    DegenerateBase,
    DivergentBase,
    NonFiniteIntegrand,
    ZeroArgument,
    PoleHit,
    WeightPole,
    FactorVanishes,
    DegenerateHankel,
    IndexOutOfRange,
    OnSupportLattice,
    WeightZero,
    SingularY,
    ExcludedValue,
    ZeroLambda,
    SingularConfiguration,
    DenominatorZero,
    SingularStep,
    ZeroTheta,
    InvalidParams,
    ConfigError,
};

const char* kind_name(ErrorKind k);

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what);
    ErrorKind kind() const noexcept { return kind_; }
    // The message without the kind prefix.
    const std::string& detail() const noexcept { return detail_; }

private:
    ErrorKind kind_;
    std::string detail_;
};

// Working precision. Real values created after the call use `bits` of mantissa.
void set_precision_bits(unsigned bits);
unsigned precision_bits();
// 2^(-bits/2); the single tolerance knob used unless a call overrides it.
Real default_tol();

class Scalar {
public:
    Real re, im;

    Scalar() : re(0), im(0) {}
    Scalar(int v) : re(v), im(0) {}          // NOLINT(google-explicit-constructor)
    Scalar(long v) : re(v), im(0) {}         // NOLINT
    Scalar(const Real& r) : re(r), im(0) {}  // NOLINT
    Scalar(Real r, Real i) : re(std::move(r)), im(std::move(i)) {}

    // Exact rational or decimal literal: "3/2", "-7", "0.125", "1/3".
    static Scalar parse(const std::string& text);
    static Scalar ratio(long num, long den);

    Scalar& operator+=(const Scalar& o);
    Scalar& operator-=(const Scalar& o);
    Scalar& operator*=(const Scalar& o);
    Scalar& operator/=(const Scalar& o);

    bool is_finite() const;
    bool is_exact_zero() const { return re == 0 && im == 0; }
    std::string str(int digits = 20) const;
};

Scalar operator+(Scalar a, const Scalar& b);
Scalar operator-(Scalar a, const Scalar& b);
Scalar operator*(Scalar a, const Scalar& b);
Scalar operator/(Scalar a, const Scalar& b);
Scalar operator-(const Scalar& a);
bool operator==(const Scalar& a, const Scalar& b);
inline bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }

Real abs(const Scalar& z);
Scalar conj(const Scalar& z);
Scalar sqrt(const Scalar& z);  // principal branch
Scalar pow(const Scalar& z, int k);

// |a - b| <= tol * max(1, |a|, |b|)
bool near(const Scalar& a, const Scalar& b, const Real& tol);
Real rel_diff(const Scalar& a, const Scalar& b);

// Dense univariate polynomial, lowest degree first.
class Poly {
public:
    Poly() = default;
    explicit Poly(std::vector<Scalar> coeffs);
    static Poly constant(const Scalar& c);
    static Poly monomial(const Scalar& c, int k);
    static Poly from_roots(const std::vector<Scalar>& roots, const Scalar& lead = Scalar(1));
    static Poly x() { return monomial(Scalar(1), 1); }

    const std::vector<Scalar>& coeffs() const { return c_; }
    // Coefficient of x^k, zero past the end.
    Scalar coeff(int k) const;
    int degree() const;  // -1 for the zero polynomial
    bool is_zero() const { return c_.empty(); }

    Scalar operator()(const Scalar& x) const;
    // p(s x)
    Poly scaled_arg(const Scalar& s) const;
    // p(x)/x with the constant term dropped; the caller checks it is negligible.
    Poly div_x() const;
    // Largest coefficient modulus.
    Real norm() const;

    Poly& operator+=(const Poly& o);
    Poly& operator-=(const Poly& o);
    Poly& operator*=(const Poly& o);
    Poly& operator*=(const Scalar& s);

private:
    void trim();
    std::vector<Scalar> c_;
};

Poly operator+(Poly a, const Poly& b);
Poly operator-(Poly a, const Poly& b);
Poly operator-(const Poly& a);
Poly operator*(Poly a, const Poly& b);
Poly operator*(Poly a, const Scalar& s);
Poly operator*(const Scalar& s, Poly a);

// max_k |a_k - b_k| / max(1, |a|, |b|)
Real coeff_distance(const Poly& a, const Poly& b);

class RatFun {
public:
    RatFun(Poly num, Poly den);
    const Poly& num() const { return num_; }
    const Poly& den() const { return den_; }
    // Throws PoleHit when |den(x)| <= tol * max(1, norm of den).
    Scalar operator()(const Scalar& x, const Real& tol) const;
    Scalar operator()(const Scalar& x) const { return (*this)(x, default_tol()); }

private:
    Poly num_, den_;
};

template <class T>
struct Mat2 {
    T e11, e12, e21, e22;

    T det() const { return e11 * e22 - e12 * e21; }
};

using SMat = Mat2<Scalar>;
using PMat = Mat2<Poly>;

template <class T>
Mat2<T> operator*(const Mat2<T>& a, const Mat2<T>& b) {
    return {a.e11 * b.e11 + a.e12 * b.e21, a.e11 * b.e12 + a.e12 * b.e22,
            a.e21 * b.e11 + a.e22 * b.e21, a.e21 * b.e12 + a.e22 * b.e22};
}
template <class T>
Mat2<T> operator+(const Mat2<T>& a, const Mat2<T>& b) {
    return {a.e11 + b.e11, a.e12 + b.e12, a.e21 + b.e21, a.e22 + b.e22};
}
template <class T>
Mat2<T> operator-(const Mat2<T>& a, const Mat2<T>& b) {
    return {a.e11 - b.e11, a.e12 - b.e12, a.e21 - b.e21, a.e22 - b.e22};
}
template <class T, class S>
Mat2<T> scale(const Mat2<T>& a, const S& s) {
    return {a.e11 * s, a.e12 * s, a.e21 * s, a.e22 * s};
}

SMat identity2();
SMat eval(const PMat& m, const Scalar& x);
SMat mat2_inv(const SMat& m, const Real& tol);
inline SMat mat2_inv(const SMat& m) { return mat2_inv(m, default_tol()); }
// Largest entry modulus.
Real norm(const SMat& m);
// max entry |a-b| / max(1, |a|, |b|)
Real mat_distance(const SMat& a, const SMat& b);
Real mat_distance(const PMat& a, const PMat& b);

// Unique polynomial of degree <= degree_bound through the first degree_bound+1
// samples. Remaining samples are holdouts and must agree to tol (relative to
// max(1, |y|)), otherwise HoldoutMismatch.
Poly poly_interpolate(const std::vector<std::pair<Scalar, Scalar>>& samples, int degree_bound,
                      const Real& tol);
inline Poly poly_interpolate(const std::vector<std::pair<Scalar, Scalar>>& samples,
                             int degree_bound) {
    return poly_interpolate(samples, degree_bound, default_tol());
}

// Entrywise interpolation of a matrix-valued function at the given nodes.
PMat interpolate_matrix(const std::function<SMat(const Scalar&)>& fn,
                        const std::vector<Scalar>& nodes, int d11, int d12, int d21, int d22,
                        const Real& tol);

// Root lambda of c*x*(x - lambda) (known root 0 deflated) or of c*(x - lambda).
Scalar poly_root_of_linear_factor(const Poly& p, const Real& tol);
inline Scalar poly_root_of_linear_factor(const Poly& p) {
    return poly_root_of_linear_factor(p, default_tol());
}

// Deterministic sample generator. The same seed gives the same points on every
// platform: values are built from 53-bit integers, never from doubles.
class Sampler {
public:
    explicit Sampler(std::uint64_t seed) : rng_(seed) {}
    // Uniform on [lo, hi) with 53-bit resolution.
    Scalar uniform(const Scalar& lo, const Scalar& hi);
    // Real and imaginary parts drawn independently from [lo, hi).
    Scalar uniform_complex(const Scalar& lo, const Scalar& hi);

private:
    std::mt19937_64 rng_;
};

}  // namespace e6
