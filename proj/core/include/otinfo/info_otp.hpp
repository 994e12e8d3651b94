#pragma once

#include <vector>

#include "otinfo/types.hpp"

namespace otinfo {

/// Information-constrained transport: minimize E_w{c} over couplings in
/// Gamma[q, p] subject to I(X,Y) <= lambda. When the constraint binds the
/// plan has the Gibbs form a_x exp(-beta c(x,y)) b_y q_x p_y.
struct ConstrainedTransportSolution {
    JointDistribution plan;
    double value = 0.0;
    double info = 0.0;       // nats
    double beta = 0.0;       // +infinity when the constraint is slack
    bool active = false;     // whether the information constraint binds
    int scaling_iterations = 0;
};

ConstrainedTransportSolution solve_constrained_otp(const Distribution& q, const Distribution& p,
                                                   const CostMatrix& c, const InfoBudget& budget);

struct Theorem1Report {
    bool equal = false;
    double gap = 0.0;                // K_c[p,q](lambda) - R_c[q](lambda)
    double plan_distance = 0.0;      // total variation between the two plans
};

/// Solves the channel problem for (q, c, lambda), takes p as its output
/// marginal, solves the constrained transport problem for (q, p, c, lambda)
/// and reports the value gap and plan distance. With p chosen this way the
/// two problems share their optimizer and the gap vanishes.
Theorem1Report check_theorem1(const Distribution& q, const CostMatrix& c,
                              const InfoBudget& budget);

struct CombinedExpressionReport {
    double max_residual = 0.0;
    int samples = 0;
};

/// Checks, on sampled feasible plans w in Gamma[q, p], that the constraint
/// D[p, q] >= D[w, q (x) q] - lambda is the mutual-information constraint in
/// disguise: |(D[w, q (x) q] - D[p, q]) - I(X,Y)| stays below 1e-10.
CombinedExpressionReport verify_combined_expression(const Distribution& q, const Distribution& p,
                                                    const CostMatrix& c, const InfoBudget& budget,
                                                    int samples = 100);

}  // namespace otinfo
