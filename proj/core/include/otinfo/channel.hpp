#pragma once

#include <vector>

#include "otinfo/types.hpp"

namespace otinfo {

/// Solution of the optimal channel problem for a fixed input marginal q:
/// the joint measure w = w(.|x) (x) q, its expected cost, achieved mutual
/// information and the inverse temperature beta of the exponential form
/// w(x,y) = q(x) p(y) exp(-beta c(x,y) - kappa(beta, x)).
struct ChannelSolution {
    JointDistribution joint;
    double value = 0.0;
    double info = 0.0;                 // nats
    double beta = 0.0;                 // +infinity when the budget is slack
    Distribution output_marginal;
    int ba_iterations = 0;
    int bisection_iterations = 0;
    double max_lagrangian_increase = 0.0;  // worst per-iteration increase seen
};

/// Minimize E_w{c} + (1/beta) I(X,Y) over channels with input marginal q by
/// alternating minimization (Blahut-Arimoto). beta = 0 returns the best
/// product coupling (info 0).
ChannelSolution solve_ocp_at_beta(const Distribution& q, const CostMatrix& c, double beta);

/// R_c[q](lambda): minimize E_w{c} subject to I(X,Y) <= lambda, input
/// marginal fixed to q. Bisects beta until the information budget is met;
/// returns the unconstrained optimum (beta = +infinity) when the budget is
/// slack there.
ChannelSolution solve_ocp(const Distribution& q, const CostMatrix& c, const InfoBudget& budget);

struct ValuePoint {
    double lambda;
    double value;  // V(lambda) = R(0) - R(lambda)
    double beta;
    double r_c;
    double info;
    bool active;
};

/// Value-of-information curve over an ascending lambda grid.
std::vector<ValuePoint> value_of_information(const Distribution& q, const CostMatrix& c,
                                             const std::vector<double>& lambdas);

struct TranslationInvarianceReport {
    bool holds = false;
    double residual = 0.0;  // spread of ln q_x - kappa(beta, x) over x
};

/// For translation-invariant costs the factor q_x exp(-kappa(beta, x)) is
/// constant in x and the optimal channel depends on q only through the
/// output marginal. Checks that constancy on a converged solution.
TranslationInvarianceReport check_translation_invariant_form(const ChannelSolution& sol,
                                                             const CostMatrix& c);

}  // namespace otinfo
