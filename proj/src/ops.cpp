#include "e6/ops.hpp"

#include <algorithm>

namespace e6 {

SupportSpec SupportSpec::for_params(const Params& p, int truncation) {
    return {Scalar(1) / p.b2, Scalar(1) / p.b3, truncation};
}

LatticeMeasure discretize(const Params& p, const Scalar& t, const SupportSpec& spec) {
    LatticeMeasure mu;
    const Scalar& q = p.q;
    Scalar one(1);
    Real biggest = 0;
    Scalar qs(1);
    for (int s = 0; s < spec.truncation; ++s) {
        for (int side = 0; side < 2; ++side) {
            Scalar term = side == 0 ? spec.upper : spec.lower;
            Scalar y = term * qs;
            Scalar w = weight_eval(y, t, p);
            if (!w.is_finite())
                throw Error(ErrorKind::NonFiniteIntegrand,
                            "weight not finite at lattice index " + std::to_string(s));
            Scalar mass = (one - q) * qs * term * w;
            if (side == 1) mass = -mass;
            biggest = std::max(biggest, abs(mass) / abs(qs));
            mu.nodes.push_back(y);
            mu.masses.push_back(mass);
        }
        qs *= q;
    }
    // |mass_s| <= |q|^s * biggest, so the dropped tail is a geometric sum.
    mu.tail_bound = abs(qs) * biggest / (Real(1) - abs(q));
    return mu;
}

MomentSet moments(const LatticeMeasure& mu, int kmax) {
    MomentSet ms;
    ms.m.assign(kmax + 1, Scalar(0));
    ms.tail.assign(kmax + 1, Real(0));
    Real reach = 0;
    for (const auto& y : mu.nodes) reach = std::max(reach, abs(y));
    for (size_t i = 0; i < mu.nodes.size(); ++i) {
        Scalar yk(1);
        for (int k = 0; k <= kmax; ++k) {
            ms.m[k] += mu.masses[i] * yk;
            yk *= mu.nodes[i];
        }
    }
    Real rk = 1;
    for (int k = 0; k <= kmax; ++k) {
        ms.tail[k] = mu.tail_bound * rk;
        rk *= reach;
    }
    return ms;
}

MomentSet moments(const Params& p, const Scalar& t, int kmax, const SupportSpec& spec) {
    return moments(discretize(p, t, spec), kmax);
}

namespace {

const Scalar& checked(const std::vector<Scalar>& v, int n, const char* name) {
    if (n < 0 || n >= static_cast<int>(v.size()))
        throw Error(ErrorKind::IndexOutOfRange, std::string(name) + " index " + std::to_string(n));
    return v[n];
}

// Determinant by LU with partial pivoting. Returns 0 exactly when a pivot is
// below tol relative to the largest entry.
Scalar lu_det(std::vector<std::vector<Scalar>> a, const Real& tol) {
    int n = static_cast<int>(a.size());
    Real scale = 0;
    for (const auto& row : a)
        for (const auto& v : row) scale = std::max(scale, abs(v));
    Scalar det(1);
    for (int k = 0; k < n; ++k) {
        int piv = k;
        for (int i = k + 1; i < n; ++i)
            if (abs(a[i][k]) > abs(a[piv][k])) piv = i;
        if (abs(a[piv][k]) <= tol * scale) return Scalar(0);
        if (piv != k) {
            std::swap(a[piv], a[k]);
            det = -det;
        }
        det *= a[k][k];
        for (int i = k + 1; i < n; ++i) {
            Scalar f = a[i][k] / a[k][k];
            for (int j = k; j < n; ++j) a[i][j] -= f * a[k][j];
        }
    }
    return det;
}

std::vector<std::vector<Scalar>> hankel(const std::vector<Scalar>& m, int n, bool shifted) {
    std::vector<std::vector<Scalar>> h(n, std::vector<Scalar>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            int k = i + j + ((shifted && j == n - 1) ? 1 : 0);
            if (k >= static_cast<int>(m.size()))
                throw Error(ErrorKind::IndexOutOfRange, "not enough moments for Hankel size " +
                                                            std::to_string(n));
            h[i][j] = m[k];
        }
    return h;
}

}  // namespace

const Scalar& OPSData::a_at(int n) const { return checked(a, n, "a"); }
const Scalar& OPSData::b_at(int n) const { return checked(b, n, "b"); }
const Scalar& OPSData::gamma_at(int n) const { return checked(gamma, n, "gamma"); }

Scalar hankel_det(const std::vector<Scalar>& m, int n) {
    if (n == 0) return Scalar(1);
    return lu_det(hankel(m, n, false), Real(0));
}

Scalar hankel_det_shifted(const std::vector<Scalar>& m, int n) {
    if (n == 0) return Scalar(0);
    return lu_det(hankel(m, n, true), Real(0));
}

OPSData recurrence_from_moments(const std::vector<Scalar>& m, int N, const Scalar& t,
                                const Real& tol) {
    if (static_cast<int>(m.size()) < 2 * N + 3)
        throw Error(ErrorKind::IndexOutOfRange, "recurrence needs moments m_0..m_{2N+2}");
    OPSData d;
    d.t = t;
    d.N = N;
    d.moments = m;
    std::vector<Scalar> dp;  // shifted determinants
    for (int k = 0; k <= N + 2; ++k) {
        Scalar D = k == 0 ? Scalar(1) : lu_det(hankel(m, k, false), tol);
        if (abs(D) == 0)
            throw Error(ErrorKind::DegenerateHankel, "Hankel determinant " + std::to_string(k) +
                                                         " vanishes");
        d.hankel.push_back(D);
        if (k <= N + 1) dp.push_back(hankel_det_shifted(m, k));
    }
    for (int k = 0; k <= N + 1; ++k) d.gamma.push_back(sqrt(d.hankel[k] / d.hankel[k + 1]));
    d.a.push_back(Scalar(1));
    for (int k = 1; k <= N + 1; ++k) d.a.push_back(d.gamma[k - 1] / d.gamma[k]);
    for (int k = 0; k <= N; ++k)
        d.b.push_back(dp[k + 1] / d.hankel[k + 1] - dp[k] / d.hankel[k]);
    return d;
}

std::vector<Scalar> eval_p_all(int n, const Scalar& x, const OPSData& d) {
    if (n < 0 || n > d.N + 1) throw Error(ErrorKind::IndexOutOfRange, "p index " + std::to_string(n));
    std::vector<Scalar> p;
    p.push_back(d.gamma_at(0));
    Scalar prev(0);
    for (int k = 0; k < n; ++k) {
        Scalar next = ((x - d.b_at(k)) * p[k] - d.a_at(k) * prev) / d.a_at(k + 1);
        prev = p[k];
        p.push_back(next);
    }
    return p;
}

Scalar eval_p(int n, const Scalar& x, const OPSData& d) {
    if (n == -1) return Scalar(0);
    return eval_p_all(n, x, d).back();
}

Scalar stieltjes(const Scalar& x, const LatticeMeasure& mu, const Real& tol) {
    Scalar s(0);
    for (size_t i = 0; i < mu.nodes.size(); ++i) {
        Scalar gap = x - mu.nodes[i];
        if (abs(gap) <= tol * std::max(Real(1), abs(x)))
            throw Error(ErrorKind::OnSupportLattice, "x = " + x.str() + " is a lattice node");
        s += mu.masses[i] / gap;
    }
    return s;
}

Scalar eval_q(int n, const Scalar& x, const OPSData& d, const LatticeMeasure& mu, const Real& tol) {
    if (n < -1 || n > d.N + 1) throw Error(ErrorKind::IndexOutOfRange, "q index " + std::to_string(n));
    Scalar prev = Scalar(1) / (d.a_at(0) * d.gamma_at(0));
    if (n == -1) return prev;
    Scalar cur = d.gamma_at(0) * stieltjes(x, mu, tol);
    for (int k = 0; k < n; ++k) {
        Scalar next = ((x - d.b_at(k)) * cur - d.a_at(k) * prev) / d.a_at(k + 1);
        prev = cur;
        cur = next;
    }
    return cur;
}

Scalar eval_q_direct(int n, const Scalar& x, const OPSData& d, const LatticeMeasure& mu,
                     const Real& tol) {
    Scalar s(0);
    for (size_t i = 0; i < mu.nodes.size(); ++i) {
        Scalar gap = x - mu.nodes[i];
        if (abs(gap) <= tol * std::max(Real(1), abs(x)))
            throw Error(ErrorKind::OnSupportLattice, "x = " + x.str() + " is a lattice node");
        s += mu.masses[i] * eval_p(n, mu.nodes[i], d) / gap;
    }
    return s;
}

SMat y_matrix(int n, const Scalar& x, const OPSData& d, const LatticeMeasure& mu, const Params& p,
              const Real& tol) {
    Scalar w = weight_eval(x, d.t, p);
    if (abs(w) <= tol) throw Error(ErrorKind::WeightZero, "w vanishes at x = " + x.str());
    return {eval_p(n, x, d), eval_q(n, x, d, mu, tol) / w, eval_p(n - 1, x, d),
            eval_q(n - 1, x, d, mu, tol) / w};
}

SMat k_matrix(int n, const Scalar& x, const OPSData& d) {
    Scalar s = Scalar(1) / d.a_at(n + 1);
    return {(x - d.b_at(n)) * s, -d.a_at(n) * s, Scalar(1), Scalar(0)};
}

OPSSystem::OPSSystem(Params base, int truncation, int N)
    : base_(std::move(base)), truncation_(truncation), N_(N) {}

Scalar OPSSystem::time(int k) const { return base_.t * pow(base_.q, k); }

Params OPSSystem::params(int n, int k) const { return base_.with_n(n).with_t(time(k)); }

const OPSSystem::Slice& OPSSystem::at(int k) const {
    auto it = cache_.find(k);
    if (it != cache_.end()) return *it->second;
    auto s = std::make_unique<Slice>();
    s->t = time(k);
    Params p = base_.with_t(s->t);
    s->measure = discretize(p, s->t, SupportSpec::for_params(p, truncation_));
    MomentSet ms = moments(s->measure, 2 * N_ + 2);
    s->data = recurrence_from_moments(ms.m, N_, s->t, default_tol());
    return *cache_.emplace(k, std::move(s)).first->second;
}

SMat OPSSystem::y(int n, int k, const Scalar& x) const {
    const Slice& s = at(k);
    return y_matrix(n, x, s.data, s.measure, base_, default_tol());
}

}  // namespace e6
