#include "e6/algebra.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace e6 {

const char* kind_name(ErrorKind k) {
    switch (k) {
        case ErrorKind::DuplicateNode: return "DuplicateNode";
        case ErrorKind::HoldoutMismatch: return "HoldoutMismatch";
        case ErrorKind::SingularMatrix: return "SingularMatrix";
        case ErrorKind::ProfileMismatch: return "ProfileMismatch";
        case ErrorKind::ZeroNode: return "ZeroNode";
        case ErrorKind::DegenerateBase: return "DegenerateBase";
        case ErrorKind::DivergentBase: return "DivergentBase";
        case ErrorKind::NonFiniteIntegrand: return "NonFiniteIntegrand";
        case ErrorKind::ZeroArgument: return "ZeroArgument";
        case ErrorKind::PoleHit: return "PoleHit";
        case ErrorKind::WeightPole: return "WeightPole";
        case ErrorKind::FactorVanishes: return "FactorVanishes";
        case ErrorKind::DegenerateHankel: return "DegenerateHankel";
        case ErrorKind::IndexOutOfRange: return "IndexOutOfRange";
        case ErrorKind::OnSupportLattice: return "OnSupportLattice";
        case ErrorKind::WeightZero: return "WeightZero";
        case ErrorKind::SingularY: return "SingularY";
        case ErrorKind::ExcludedValue: return "ExcludedValue";
        case ErrorKind::ZeroLambda: return "ZeroLambda";
        case ErrorKind::SingularConfiguration: return "SingularConfiguration";
        case ErrorKind::DenominatorZero: return "DenominatorZero";
        case ErrorKind::SingularStep: return "SingularStep";
        case ErrorKind::ZeroTheta: return "ZeroTheta";
        case ErrorKind::InvalidParams: return "InvalidParams";
        case ErrorKind::ConfigError: return "ConfigError";
    }
    return "Unknown";
}

Error::Error(ErrorKind kind, const std::string& what)
    : std::runtime_error(std::string(kind_name(kind)) + ": " + what), kind_(kind), detail_(what) {}

namespace {
unsigned g_bits = 256;
}

void set_precision_bits(unsigned bits) {
    if (bits < 64) throw Error(ErrorKind::ConfigError, "precision must be at least 64 bits");
    g_bits = bits;
    // boost takes decimal digits; round up so the mantissa is never short.
    auto digits10 = static_cast<unsigned>(std::ceil(bits * 0.30102999566398120)) + 1;
    Real::default_precision(digits10);
}

unsigned precision_bits() { return g_bits; }

Real default_tol() {
    Real two(2);
    return boost::multiprecision::pow(two, -static_cast<int>(g_bits / 2));
}

namespace {
struct DefaultPrecision {
    DefaultPrecision() { set_precision_bits(256); }
} const g_default_precision;
}  // namespace

// ---- Scalar ---------------------------------------------------------------

Scalar Scalar::parse(const std::string& text) {
    std::string s;
    for (char ch : text)
        if (!std::isspace(static_cast<unsigned char>(ch))) s.push_back(ch);
    if (s.empty()) throw Error(ErrorKind::ConfigError, "empty number");
    auto slash = s.find('/');
    auto to_real = [&](const std::string& part) {
        if (part.empty()) throw Error(ErrorKind::ConfigError, "malformed number '" + text + "'");
        for (char ch : part)
            if (!(std::isdigit(static_cast<unsigned char>(ch)) || ch == '-' || ch == '+' ||
                  ch == '.' || ch == 'e' || ch == 'E'))
                throw Error(ErrorKind::ConfigError, "malformed number '" + text + "'");
        return Real(part);
    };
    if (slash == std::string::npos) return Scalar(to_real(s));
    Real num = to_real(s.substr(0, slash));
    Real den = to_real(s.substr(slash + 1));
    if (den == 0) throw Error(ErrorKind::ConfigError, "zero denominator in '" + text + "'");
    return Scalar(Real(num / den));
}

Scalar Scalar::ratio(long num, long den) { return Scalar(Real(Real(num) / Real(den))); }

Scalar& Scalar::operator+=(const Scalar& o) {
    re += o.re;
    im += o.im;
    return *this;
}
Scalar& Scalar::operator-=(const Scalar& o) {
    re -= o.re;
    im -= o.im;
    return *this;
}
Scalar& Scalar::operator*=(const Scalar& o) {
    Real r = re * o.re - im * o.im;
    Real i = re * o.im + im * o.re;
    re = std::move(r);
    im = std::move(i);
    return *this;
}
Scalar& Scalar::operator/=(const Scalar& o) {
    // Smith's algorithm keeps the intermediate magnitudes sane.
    if (o.re == 0 && o.im == 0) {
        re = re / Real(0);
        im = im / Real(0);
        return *this;
    }
    if (boost::multiprecision::abs(o.re) >= boost::multiprecision::abs(o.im)) {
        Real r = o.im / o.re;
        Real d = o.re + o.im * r;
        Real nr = (re + im * r) / d;
        Real ni = (im - re * r) / d;
        re = std::move(nr);
        im = std::move(ni);
    } else {
        Real r = o.re / o.im;
        Real d = o.re * r + o.im;
        Real nr = (re * r + im) / d;
        Real ni = (im * r - re) / d;
        re = std::move(nr);
        im = std::move(ni);
    }
    return *this;
}

bool Scalar::is_finite() const {
    return boost::multiprecision::isfinite(re) && boost::multiprecision::isfinite(im);
}

std::string Scalar::str(int digits) const {
    std::ostringstream os;
    os.precision(digits);
    os << re;
    if (im != 0) os << (im < 0 ? " - " : " + ") << boost::multiprecision::abs(im) << "i";
    return os.str();
}

Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }
Scalar operator-(const Scalar& a) { return Scalar(Real(-a.re), Real(-a.im)); }
bool operator==(const Scalar& a, const Scalar& b) { return a.re == b.re && a.im == b.im; }

Real abs(const Scalar& z) { return boost::multiprecision::hypot(z.re, z.im); }
Scalar conj(const Scalar& z) { return Scalar(z.re, Real(-z.im)); }

Scalar sqrt(const Scalar& z) {
    if (z.im == 0) {
        if (z.re >= 0) return Scalar(Real(boost::multiprecision::sqrt(z.re)), Real(0));
        return Scalar(Real(0), Real(boost::multiprecision::sqrt(Real(-z.re))));
    }
    Real r = abs(z);
    Real a = boost::multiprecision::sqrt(Real((r + z.re) / 2));
    Real b = boost::multiprecision::sqrt(Real((r - z.re) / 2));
    if (z.im < 0) b = -b;
    return Scalar(a, b);
}

Scalar pow(const Scalar& z, int k) {
    if (k < 0) return Scalar(1) / pow(z, -k);
    Scalar out(1), base = z;
    while (k) {
        if (k & 1) out *= base;
        base *= base;
        k >>= 1;
    }
    return out;
}

Real rel_diff(const Scalar& a, const Scalar& b) {
    Real scale = 1;
    scale = std::max(scale, abs(a));
    scale = std::max(scale, abs(b));
    return abs(a - b) / scale;
}

bool near(const Scalar& a, const Scalar& b, const Real& tol) { return rel_diff(a, b) <= tol; }

// ---- Poly -----------------------------------------------------------------

Poly::Poly(std::vector<Scalar> coeffs) : c_(std::move(coeffs)) { trim(); }

Poly Poly::constant(const Scalar& c) { return Poly(std::vector<Scalar>{c}); }

Poly Poly::monomial(const Scalar& c, int k) {
    std::vector<Scalar> v(static_cast<size_t>(k) + 1);
    v[static_cast<size_t>(k)] = c;
    return Poly(std::move(v));
}

Poly Poly::from_roots(const std::vector<Scalar>& roots, const Scalar& lead) {
    Poly p = constant(lead);
    for (const auto& r : roots) p *= Poly(std::vector<Scalar>{-r, Scalar(1)});
    return p;
}

void Poly::trim() {
    while (!c_.empty() && c_.back().is_exact_zero()) c_.pop_back();
}

Scalar Poly::coeff(int k) const {
    if (k < 0 || k >= static_cast<int>(c_.size())) return Scalar(0);
    return c_[static_cast<size_t>(k)];
}

int Poly::degree() const { return static_cast<int>(c_.size()) - 1; }

Scalar Poly::operator()(const Scalar& x) const {
    Scalar s(0);
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) s = s * x + *it;
    return s;
}

Poly Poly::scaled_arg(const Scalar& s) const {
    std::vector<Scalar> v = c_;
    Scalar f(1);
    for (auto& c : v) {
        c *= f;
        f *= s;
    }
    return Poly(std::move(v));
}

Poly Poly::div_x() const {
    if (c_.size() <= 1) return Poly();
    return Poly(std::vector<Scalar>(c_.begin() + 1, c_.end()));
}

Real Poly::norm() const {
    Real m = 0;
    for (const auto& c : c_) m = std::max(m, abs(c));
    return m;
}

Poly& Poly::operator+=(const Poly& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
    for (size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
    trim();
    return *this;
}
Poly& Poly::operator-=(const Poly& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
    for (size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
    trim();
    return *this;
}
Poly& Poly::operator*=(const Poly& o) {
    if (c_.empty() || o.c_.empty()) {
        c_.clear();
        return *this;
    }
    std::vector<Scalar> r(c_.size() + o.c_.size() - 1);
    for (size_t i = 0; i < c_.size(); ++i)
        for (size_t j = 0; j < o.c_.size(); ++j) r[i + j] += c_[i] * o.c_[j];
    c_ = std::move(r);
    trim();
    return *this;
}
Poly& Poly::operator*=(const Scalar& s) {
    for (auto& c : c_) c *= s;
    trim();
    return *this;
}

Poly operator+(Poly a, const Poly& b) { return a += b; }
Poly operator-(Poly a, const Poly& b) { return a -= b; }
Poly operator-(const Poly& a) { return a * Scalar(-1); }
Poly operator*(Poly a, const Poly& b) { return a *= b; }
Poly operator*(Poly a, const Scalar& s) { return a *= s; }
Poly operator*(const Scalar& s, Poly a) { return a *= s; }

Real coeff_distance(const Poly& a, const Poly& b) {
    Real scale = 1;
    scale = std::max(scale, a.norm());
    scale = std::max(scale, b.norm());
    Real m = 0;
    int d = std::max(a.degree(), b.degree());
    for (int k = 0; k <= d; ++k) m = std::max(m, abs(a.coeff(k) - b.coeff(k)));
    return m / scale;
}

// ---- RatFun ---------------------------------------------------------------

RatFun::RatFun(Poly num, Poly den) : num_(std::move(num)), den_(std::move(den)) {
    if (den_.is_zero()) throw Error(ErrorKind::PoleHit, "rational function with zero denominator");
}

Scalar RatFun::operator()(const Scalar& x, const Real& tol) const {
    Scalar d = den_(x);
    Real scale = std::max(Real(1), den_.norm());
    if (abs(d) <= tol * scale) throw Error(ErrorKind::PoleHit, "denominator vanishes at " + x.str());
    return num_(x) / d;
}

// ---- Mat2 -----------------------------------------------------------------

SMat identity2() { return {Scalar(1), Scalar(0), Scalar(0), Scalar(1)}; }

SMat eval(const PMat& m, const Scalar& x) { return {m.e11(x), m.e12(x), m.e21(x), m.e22(x)}; }

Real norm(const SMat& m) {
    return std::max(std::max(abs(m.e11), abs(m.e12)), std::max(abs(m.e21), abs(m.e22)));
}

SMat mat2_inv(const SMat& m, const Real& tol) {
    Scalar d = m.det();
    Real scale = std::max(Real(1), norm(m));
    if (abs(d) <= tol * scale * scale) throw Error(ErrorKind::SingularMatrix, "determinant below threshold");
    return {m.e22 / d, -m.e12 / d, -m.e21 / d, m.e11 / d};
}

Real mat_distance(const SMat& a, const SMat& b) {
    return std::max(std::max(rel_diff(a.e11, b.e11), rel_diff(a.e12, b.e12)),
                    std::max(rel_diff(a.e21, b.e21), rel_diff(a.e22, b.e22)));
}

Real mat_distance(const PMat& a, const PMat& b) {
    return std::max(std::max(coeff_distance(a.e11, b.e11), coeff_distance(a.e12, b.e12)),
                    std::max(coeff_distance(a.e21, b.e21), coeff_distance(a.e22, b.e22)));
}

// ---- interpolation ----------------------------------------------------------

Poly poly_interpolate(const std::vector<std::pair<Scalar, Scalar>>& samples, int degree_bound,
                      const Real& tol) {
    if (degree_bound < 0) throw Error(ErrorKind::ProfileMismatch, "negative degree bound");
    const size_t n = static_cast<size_t>(degree_bound) + 1;
    if (samples.size() < n + 1)
        throw Error(ErrorKind::HoldoutMismatch, "need at least degree_bound + 2 samples");
    for (size_t i = 0; i < samples.size(); ++i)
        for (size_t j = i + 1; j < samples.size(); ++j)
            if (samples[i].first == samples[j].first)
                throw Error(ErrorKind::DuplicateNode, "repeated node " + samples[i].first.str());

    // Newton divided differences, then expand to the monomial basis.
    std::vector<Scalar> dd(n);
    for (size_t i = 0; i < n; ++i) dd[i] = samples[i].second;
    for (size_t k = 1; k < n; ++k)
        for (size_t i = n - 1; i >= k; --i) {
            dd[i] = (dd[i] - dd[i - 1]) / (samples[i].first - samples[i - k].first);
            if (i == k) break;
        }
    Poly p = Poly::constant(dd[n - 1]);
    for (size_t k = n - 1; k-- > 0;) {
        p *= Poly(std::vector<Scalar>{-samples[k].first, Scalar(1)});
        p += Poly::constant(dd[k]);
    }
    for (size_t h = n; h < samples.size(); ++h) {
        Scalar y = p(samples[h].first);
        if (rel_diff(y, samples[h].second) > tol)
            throw Error(ErrorKind::HoldoutMismatch,
                        "holdout at " + samples[h].first.str() + " misses by " +
                            Scalar(rel_diff(y, samples[h].second)).str(6));
    }
    return p;
}

PMat interpolate_matrix(const std::function<SMat(const Scalar&)>& fn,
                        const std::vector<Scalar>& nodes, int d11, int d12, int d21, int d22,
                        const Real& tol) {
    std::vector<std::pair<Scalar, Scalar>> s11, s12, s21, s22;
    for (const auto& x : nodes) {
        SMat m = fn(x);
        s11.emplace_back(x, m.e11);
        s12.emplace_back(x, m.e12);
        s21.emplace_back(x, m.e21);
        s22.emplace_back(x, m.e22);
    }
    return {poly_interpolate(s11, d11, tol), poly_interpolate(s12, d12, tol),
            poly_interpolate(s21, d21, tol), poly_interpolate(s22, d22, tol)};
}

Scalar poly_root_of_linear_factor(const Poly& p, const Real& tol) {
    int d = p.degree();
    if (d == 1) return -p.coeff(0) / p.coeff(1);
    if (d == 2) {
        Real scale = std::max(Real(1), p.norm());
        if (abs(p.coeff(0)) > tol * scale)
            throw Error(ErrorKind::ProfileMismatch, "constant term is not negligible");
        return -p.coeff(1) / p.coeff(2);
    }
    throw Error(ErrorKind::ProfileMismatch, "expected degree 1 or 2, got " + std::to_string(d));
}

// ---- Sampler ----------------------------------------------------------------

Scalar Sampler::uniform(const Scalar& lo, const Scalar& hi) {
    std::uint64_t u = rng_() >> 11;  // 53 bits
    Real frac = Real(static_cast<unsigned long long>(u)) / Real(9007199254740992ULL);
    return lo + (hi - lo) * Scalar(frac);
}

Scalar Sampler::uniform_complex(const Scalar& lo, const Scalar& hi) {
    Scalar a = uniform(lo, hi);
    Scalar b = uniform(lo, hi);
    return Scalar(a.re, b.re);
}

}  // namespace e6
