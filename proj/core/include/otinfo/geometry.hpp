#pragma once

#include <vector>

#include "otinfo/types.hpp"

namespace otinfo {

/// Exponential tilt: the distribution with mass proportional to
/// r_x exp(t f_x), i.e. exp(t f_x - kappa[t f]) r_x.
Distribution exponential_tilt(const std::vector<double>& f, double t, const Distribution& r);

/// Cumulant generating function kappa[t f] = ln sum_x r_x exp(t f_x),
/// computed with max-shift stabilization. Convex in t; zero at t = 0.
double cumulant(const std::vector<double>& f, double t, const Distribution& r);

/// Dual potential pair (f, g) with multipliers (beta, alpha) and reference
/// measure r. Induces the exponential representations
///   p = exp(beta f - kappa[beta f]) r,   q = exp(alpha g - kappa[alpha g]) r.
struct PotentialPair {
    std::vector<double> f;
    std::vector<double> g;
    double alpha = 1.0;
    double beta = 1.0;
    Distribution reference;

    PotentialPair(std::vector<double> f_, std::vector<double> g_, double alpha_, double beta_,
                  Distribution reference_);

    Distribution p() const;  // exp(beta f - kappa) r
    Distribution q() const;  // exp(alpha g - kappa) r
    double kappa_f() const;  // kappa[beta f]
    double kappa_g() const;  // kappa[alpha g]

    /// Max deviation from 1 of the two exponential-representation totals.
    double renormalization_residual() const;
};

struct CumulantReport {
    double kappa_f = 0.0;
    double kappa_g = 0.0;
    double epsilon = 0.0;  // +infinity when no finite epsilon is feasible
    double j_c_eps = 0.0;
};

struct ResidualReport {
    double residual = 0.0;
};

/// |D[p,q] - D[p,r] - D[r,q] + sum ln(q/r)(p - r)|.
ResidualReport law_of_cosines(const Distribution& p, const Distribution& q,
                              const Distribution& r);

struct KlMinusReport {
    double decomposition_residual = 0.0;  // D[p,q] = D[p,r] - D[q,r] - sum ln(q/r)(p - q)
    double symmetrized_residual = 0.0;    // D[q,r] + D[r,q] = sum ln(q/r)(q - r)
};

KlMinusReport kl_minus_decomposition(const Distribution& p, const Distribution& q,
                                     const Distribution& r);

struct CumulantIdentityReport {
    double derivative_rel_error = 0.0;  // d kappa[beta f]/d beta vs E_p{f}
    double legendre_residual = 0.0;     // D[p,r] = beta E_p{f} - kappa[beta f]
};

CumulantIdentityReport cumulant_identities(const std::vector<double>& f, double beta,
                                           const Distribution& r);

/// Smallest epsilon >= 0 with beta f - alpha g <= epsilon c pointwise, and
/// the scaled dual value J_{c,eps} = (beta E_p{f} - alpha E_q{g}) / epsilon.
/// A zero-cost pair with positive numerator forces epsilon = +infinity.
CumulantReport epsilon_feasibility(const PotentialPair& pp, const CostMatrix& c);

struct KlBoundReport {
    double lhs = 0.0;    // D[p,q]
    double rhs = 0.0;    // eps K_c - (kappa[beta f] - kappa[alpha g]) - alpha sum g (p - q)
    double slack = 0.0;  // rhs - lhs, >= 0 up to tolerance
};

/// D[p,q] <= eps K_c[p,q] - (kappa[beta f] - kappa[alpha g])
///           - alpha sum g (dp - dq), for finite eps.
KlBoundReport kl_upper_bound(const PotentialPair& pp, const CostMatrix& c);

struct Theorem2Report {
    double residual = 0.0;
    double kc = 0.0;
    double divergence = 0.0;  // D[p,q]
};

/// Synthesizes an instance whose dual-optimal pair (f, g) with
/// alpha = beta = 1 satisfies the gradient conditions, then checks
/// D[p,q] = K_c - (kappa[f] - kappa[g]) - sum g (dp - dq) exactly.
Theorem2Report check_theorem2(std::size_t n, unsigned seed);

/// Legendre-Fenchel transform of the KL divergence at q (x) p:
/// D*[u, q (x) p] = ln sum_{x,y} q_x p_y exp(u(x,y)).
double kl_legendre(const std::vector<double>& u, const Distribution& q, const Distribution& p);

}  // namespace otinfo
