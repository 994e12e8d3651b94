#pragma once

#include <vector>

#include "otinfo/types.hpp"

namespace otinfo {

enum class SolveStatus { optimal, infeasible_input };

/// Exact vertex-optimal solution of the transportation LP
///   min sum_{x,y} w(x,y) c(x,y)   s.t.  row sums = q, col sums = p, w >= 0.
///
/// Dual potentials follow the convention f(y) - g(x) <= c(x,y) with
/// value = E_p{f} - E_q{g}: f lives on the target side Y (paired with p),
/// g on the source side X (paired with q). On the support of the plan the
/// constraint is tight (complementary slackness).
struct TransportSolution {
    JointDistribution plan;
    double value = 0.0;
    std::vector<double> f;  // length cols, paired with p
    std::vector<double> g;  // length rows, paired with q, g[0] = 0
    int iterations = 0;
    SolveStatus status = SolveStatus::optimal;
};

/// Transportation simplex (network simplex on the bipartite graph) with
/// Bland's rule and epsilon-perturbed supplies for degeneracy.
TransportSolution solve_otp(const Distribution& q, const Distribution& p, const CostMatrix& c);

/// Dual objective E_p{f} - E_q{g} of an optimal solution; equals the primal
/// value by strong duality of the finite LP.
double dual_value(const TransportSolution& sol, const Distribution& q, const Distribution& p);

}  // namespace otinfo
