#include "e6/weight.hpp"

namespace e6 {

namespace {

void require(bool ok, const std::string& what) {
    if (!ok) throw Error(ErrorKind::InvalidParams, what);
}

bool small(const Scalar& z, const Real& tol) { return abs(z) <= tol; }

// No zero of (W^2 - Dy^2 V^2) may sit on the q-lattice of another one.
void check_regular(const Params& p) {
    Real tol = default_tol();
    std::vector<Scalar> zeros = {Scalar(1) / p.b1, Scalar(1) / p.b4, p.t / p.b6,
                                 Scalar(1) / p.b2, Scalar(1) / p.b3, p.b6 * p.t};
    for (size_t i = 0; i < zeros.size(); ++i)
        for (size_t j = 0; j < zeros.size(); ++j) {
            if (i == j) continue;
            Scalar r = zeros[j] / zeros[i];
            Scalar qk = pow(p.q, -64);
            for (int k = -64; k <= 64; ++k) {
                require(!near(r, qk, tol), "data zeros coincide under a lattice shift");
                qk *= p.q;
            }
        }
}

void validate(const Params& p) {
    Real tol = default_tol();
    Scalar one(1);
    require(!small(p.q, tol), "q must be nonzero");
    require(!near(p.q, one, tol), "q must differ from 1");
    require(abs(p.q) < 1, "|q| < 1 is required for the infinite products");
    require(!small(p.t, tol), "t must be nonzero");
    require(!small(p.b6, tol), "b6 must be nonzero");
    require(!small(p.b1 * p.b4, tol), "b1 b4 must be nonzero");
    require(!small(p.b2 * p.b3, tol), "b2 b3 must be nonzero");
    require(near(p.b1 * p.b2 * p.b3 * p.b4, one, tol), "b1 b2 b3 b4 = 1 violated");
    require(p.n >= 0, "n must be nonnegative");
    require(near(p.b5, pow(p.q, p.n) * p.b1 * p.b4 * p.b6, tol), "b5 = q^n b1 b4 b6 violated");
    Scalar b5sq = p.b5 * p.b5;
    require(!near(b5sq, one, tol), "b5 must avoid +-1");
    require(!near(b5sq, p.q, tol), "b5 must avoid +-q^(1/2)");
    require(!near(b5sq * p.q, one, tol), "b5 must avoid +-q^(-1/2)");
    check_regular(p);
}

}  // namespace

Params Params::make(const Scalar& q, const Scalar& t, const Scalar& b1, const Scalar& b2,
                    const Scalar& b3, const Scalar& b6, int n) {
    require(!small(b1 * b2 * b3, default_tol()), "b1 b2 b3 must be nonzero");
    return make(q, t, b1, b2, b3, Scalar(1) / (b1 * b2 * b3), b6, n);
}

Params Params::make(const Scalar& q, const Scalar& t, const Scalar& b1, const Scalar& b2,
                    const Scalar& b3, const Scalar& b4, const Scalar& b6, int n) {
    Params p;
    p.q = q;
    p.t = t;
    p.b1 = b1;
    p.b2 = b2;
    p.b3 = b3;
    p.b4 = b4;
    p.b6 = b6;
    p.n = n;
    require(n >= 0, "n must be nonnegative");
    p.b5 = pow(q, n) * b1 * b4 * b6;
    validate(p);
    return p;
}

Params Params::defaults() {
    return make(Scalar::ratio(1, 2), Scalar::ratio(1, 3), Scalar::ratio(3, 2), Scalar::ratio(4, 5),
                Scalar::ratio(5, 7), Scalar::ratio(2, 3), 1);
}

Params Params::with_n(int n_new) const {
    return make(q, t, b1, b2, b3, b4, b6, n_new);
}

Params Params::with_t(const Scalar& t_new) const {
    return make(q, t_new, b1, b2, b3, b4, b6, n);
}

Scalar Params::sum_inv_b() const {
    Scalar one(1);
    return one / b1 + one / b2 + one / b3 + one / b4;
}

Scalar Params::prod_bx_minus_1(const Scalar& x) const {
    Scalar one(1);
    return (b1 * x - one) * (b2 * x - one) * (b3 * x - one) * (b4 * x - one);
}

Scalar Params::prod_x_minus_b(const Scalar& x) const {
    return (x - b1) * (x - b2) * (x - b3) * (x - b4);
}

Scalar weight_eval(const Scalar& x, const Scalar& t, const Params& p) {
    const Scalar& q = p.q;
    Scalar den = qpoch_inf(p.b1 * x, q) * qpoch_inf(p.b4 * x, q) * qpoch_inf(p.b6 * x / t, q);
    if (abs(den) <= default_tol()) throw Error(ErrorKind::WeightPole, "weight pole at " + x.str());
    Scalar num = qpoch_inf(p.b2 * x, q) * qpoch_inf(p.b3 * x, q) * qpoch_inf(x / (p.b6 * t), q);
    return num / den;
}

SpectralData spectral_data(const Params& p, const Scalar& t) {
    Scalar one(1);
    auto lin = [](const Scalar& c0, const Scalar& c1) { return Poly(std::vector<Scalar>{c0, c1}); };
    SpectralData d;
    d.w_plus = p.b6 * lin(one, -p.b1) * lin(one, -p.b4) * lin(t, -p.b6);
    d.w_minus = lin(one, -p.b2) * lin(one, -p.b3) * lin(p.b6 * t, -one);
    d.W = (d.w_plus + d.w_minus) * Scalar::ratio(1, 2);
    // (w_plus - w_minus) has no constant term, so V = that / (2 (q-1) x) is exact.
    d.V = (d.w_plus - d.w_minus).div_x() * (one / (Scalar(2) * (p.q - one)));
    return d;
}

DeformData deformation_data(const Params& p, const Scalar& t) {
    DeformData d;
    d.r_plus = Poly(std::vector<Scalar>{p.q * t, -Scalar(1) / p.b6});
    d.r_minus = Poly(std::vector<Scalar>{p.q * t, -p.b6});
    return d;
}

Real check_wv_rs(const Params& p, const Scalar& t, const Scalar& x) {
    Real tol = default_tol();
    Scalar qt = p.q * t, qx = p.q * x;
    SpectralData s_up = spectral_data(p, qt), s_dn = spectral_data(p, t);
    DeformData r = deformation_data(p, t);
    Scalar f[] = {s_up.w_plus(x), s_up.w_minus(x), r.r_plus(x), r.r_minus(x),
                  s_dn.w_plus(x), s_dn.w_minus(x), r.r_plus(qx), r.r_minus(qx)};
    for (const auto& v : f)
        if (abs(v) <= tol * 1024) throw Error(ErrorKind::FactorVanishes, "at x = " + x.str());
    Scalar lhs = f[0] / f[1] * (f[2] / f[3]);
    Scalar rhs = f[4] / f[5] * (f[6] / f[7]);
    return rel_diff(lhs, rhs);
}

Scalar chi(const Scalar& x, const Scalar& t, const Params& p) {
    const Scalar& q = p.q;
    Scalar den = q * (x - p.b6 * t) * (p.b6 * x - t);
    if (abs(den) <= default_tol()) throw Error(ErrorKind::PoleHit, "chi pole at " + x.str());
    return (x - q * p.b6 * t) * (p.b6 * x - q * t) / den;
}

Scalar chi_plus_form(const Scalar& x, const Scalar& t, const Params& p) {
    Scalar qt = p.q * t;
    SpectralData up = spectral_data(p, qt), dn = spectral_data(p, t);
    DeformData r = deformation_data(p, t);
    return up.w_plus(x) / dn.w_plus(x) * (r.r_plus(x) / r.r_plus(p.q * x));
}

Scalar chi_minus_form(const Scalar& x, const Scalar& t, const Params& p) {
    Scalar qt = p.q * t;
    SpectralData up = spectral_data(p, qt), dn = spectral_data(p, t);
    DeformData r = deformation_data(p, t);
    return up.w_minus(x) / dn.w_minus(x) * (r.r_minus(x) / r.r_minus(p.q * x));
}

Poly compute_U(const Params& p, const Scalar& t,
               const std::function<Scalar(const Scalar&)>& stieltjes,
               const std::vector<Scalar>& nodes, const Real& tol) {
    if (nodes.size() < 3) throw Error(ErrorKind::HoldoutMismatch, "U needs three or more nodes");
    SpectralData sd = spectral_data(p, t);
    QLattice lat = p.lattice();
    std::vector<std::pair<Scalar, Scalar>> samples;
    for (const auto& x : nodes) {
        LatticePair fv{stieltjes(lat.up(x)), stieltjes(x)};
        Scalar u = sd.W(x) * ddo(fv, x, lat) - Scalar(2) * sd.V(x) * mean_op(fv);
        samples.emplace_back(x, u);
    }
    return poly_interpolate(samples, 1, tol);
}

}  // namespace e6
