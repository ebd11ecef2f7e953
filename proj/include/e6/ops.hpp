// Orthonormal polynomials for the deformed weight: moments, recurrence
// coefficients, polynomials, second-kind functions and Y_n.
#pragma once

#include "e6/weight.hpp"

#include <map>
#include <memory>
#include <vector>

namespace e6 {

// Terminals of the q-integral; default is the pair of numerator zeros 1/b2, 1/b3.
struct SupportSpec {
    Scalar upper;
    Scalar lower;
    int truncation = 200;

    static SupportSpec for_params(const Params& p, int truncation = 200);
};

// The q-integral as a discrete signed measure: sum_i mass_i * F(node_i).
struct LatticeMeasure {
    std::vector<Scalar> nodes;
    std::vector<Scalar> masses;
    Real tail_bound = 0;  // bound on the dropped part of sum |mass|
};

LatticeMeasure discretize(const Params& p, const Scalar& t, const SupportSpec& spec);

struct MomentSet {
    std::vector<Scalar> m;
    std::vector<Real> tail;  // per-moment truncation bound
};

MomentSet moments(const LatticeMeasure& mu, int kmax);
MomentSet moments(const Params& p, const Scalar& t, int kmax, const SupportSpec& spec);

// Recurrence data with h_n = 1. Indices: a[0..N+1] (a[0] = 1 is a free
// normalization), b[0..N], gamma[0..N+1], hankel[0..N+2].
struct OPSData {
    Scalar t;
    int N = 0;
    std::vector<Scalar> moments;
    std::vector<Scalar> a, b, gamma, hankel;

    const Scalar& a_at(int n) const;
    const Scalar& b_at(int n) const;
    const Scalar& gamma_at(int n) const;
};

// Needs moments m_0..m_{2N+2}. Throws DegenerateHankel if some Delta_k vanishes.
OPSData recurrence_from_moments(const std::vector<Scalar>& m, int N, const Scalar& t,
                                const Real& tol);

// n x n Hankel determinant of m_{i+j}, and the variant with the last column
// advanced to m_{i+n}.
Scalar hankel_det(const std::vector<Scalar>& m, int n);
Scalar hankel_det_shifted(const std::vector<Scalar>& m, int n);

Scalar eval_p(int n, const Scalar& x, const OPSData& d);
// p_0..p_n at x.
std::vector<Scalar> eval_p_all(int n, const Scalar& x, const OPSData& d);

// Throws OnSupportLattice if x is within tol of a node.
Scalar stieltjes(const Scalar& x, const LatticeMeasure& mu, const Real& tol);
// q_n by the three-term recurrence from q_{-1} = 1/(a_0 gamma_0), q_0 = gamma_0 f.
Scalar eval_q(int n, const Scalar& x, const OPSData& d, const LatticeMeasure& mu, const Real& tol);
// Direct q-integral of w(y) p_n(y)/(x-y), used as a cross-check.
Scalar eval_q_direct(int n, const Scalar& x, const OPSData& d, const LatticeMeasure& mu,
                     const Real& tol);

SMat y_matrix(int n, const Scalar& x, const OPSData& d, const LatticeMeasure& mu, const Params& p,
              const Real& tol);
// (1/a_{n+1}) [[x - b_n, -a_n], [a_{n+1}, 0]]
SMat k_matrix(int n, const Scalar& x, const OPSData& d);

// OPS data at the times t_k = t0 q^k, built on demand and cached.
class OPSSystem {
public:
    struct Slice {
        Scalar t;
        LatticeMeasure measure;
        OPSData data;
    };

    OPSSystem(Params base, int truncation = 200, int N = 6);

    const Params& base() const { return base_; }
    int truncation() const { return truncation_; }
    int max_index() const { return N_; }
    Scalar time(int k) const;
    // Params at time index k with b5 rederived for index n.
    Params params(int n, int k) const;
    const Slice& at(int k) const;

    SMat y(int n, int k, const Scalar& x) const;

private:
    Params base_;
    int truncation_;
    int N_;
    mutable std::map<int, std::unique_ptr<Slice>> cache_;
};

}  // namespace e6
