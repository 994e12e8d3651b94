#include "otinfo/info_otp.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "otinfo/channel.hpp"
#include "otinfo/measures.hpp"
#include "otinfo/numeric.hpp"
#include "otinfo/transport_lp.hpp"

namespace otinfo {

namespace {

double expected_cost(const JointDistribution& w, const CostMatrix& c) {
    double e = 0.0;
    for (std::size_t x = 0; x < w.rows(); ++x)
        for (std::size_t y = 0; y < w.cols(); ++y) e += w(x, y) * c(x, y);
    return e;
}

struct ScalingResult {
    JointDistribution plan;
    double value;
    double info;
    int iterations;
};

// Log-domain alternating marginal scaling on the kernel exp(-beta c) against
// the reference q (x) p. Zero-mass atoms keep their rows/columns at zero.
ScalingResult sinkhorn_at_beta(const Distribution& q, const Distribution& p, const CostMatrix& c,
                               double beta, double marginal_tol, int max_iterations) {
    const std::size_t nx = q.size(), ny = p.size();
    std::vector<double> ln_q(nx), ln_p(ny);
    for (std::size_t x = 0; x < nx; ++x) ln_q[x] = q[x] > 0.0 ? std::log(q[x]) : -kInfinity;
    for (std::size_t y = 0; y < ny; ++y) ln_p[y] = p[y] > 0.0 ? std::log(p[y]) : -kInfinity;

    std::vector<double> phi(nx, 0.0), psi(ny, 0.0), scratch(std::max(nx, ny));
    int iter = 0;
    std::vector<double> plan(nx * ny, 0.0);
    while (iter < max_iterations) {
        ++iter;
        for (std::size_t x = 0; x < nx; ++x) {
            if (q[x] == 0.0) continue;
            scratch.resize(ny);
            for (std::size_t y = 0; y < ny; ++y) scratch[y] = ln_p[y] + psi[y] - beta * c(x, y);
            phi[x] = -log_sum_exp(scratch);
        }
        for (std::size_t y = 0; y < ny; ++y) {
            if (p[y] == 0.0) continue;
            scratch.resize(nx);
            for (std::size_t x = 0; x < nx; ++x) scratch[x] = ln_q[x] + phi[x] - beta * c(x, y);
            psi[y] = -log_sum_exp(scratch);
        }
        // After the column update the column marginals are exact; check rows.
        double violation = 0.0;
        for (std::size_t x = 0; x < nx; ++x) {
            double row = 0.0;
            for (std::size_t y = 0; y < ny; ++y) {
                double m = (q[x] > 0.0 && p[y] > 0.0)
                               ? std::exp(ln_q[x] + ln_p[y] + phi[x] + psi[y] - beta * c(x, y))
                               : 0.0;
                plan[x * ny + y] = m;
                row += m;
            }
            violation = std::max(violation, std::abs(row - q[x]));
        }
        if (violation <= marginal_tol) break;
    }
    JointDistribution w(nx, ny, plan);
    return ScalingResult{w, expected_cost(w, c), mutual_information(w), iter};
}

}  // namespace

ConstrainedTransportSolution solve_constrained_otp(const Distribution& q, const Distribution& p,
                                                   const CostMatrix& c, const InfoBudget& budget) {
    if (q.size() != c.rows() || p.size() != c.cols())
        throw DimensionMismatch("solve_constrained_otp: marginal sizes do not match cost matrix");
    const double lambda = budget.lambda;

    if (lambda == 0.0) {
        // The product coupling is the unique plan with I = 0 and both
        // marginals fixed.
        JointDistribution plan = JointDistribution::product(q, p);
        double value = expected_cost(plan, c);
        return ConstrainedTransportSolution{std::move(plan), value, 0.0, 0.0, true, 0};
    }

    TransportSolution lp = solve_otp(q, p, c);
    double lp_info = mutual_information(lp.plan);
    if (lp_info <= lambda + 1e-12) {
        return ConstrainedTransportSolution{lp.plan, lp.value, lp_info, kInfinity, false, 0};
    }

    constexpr double kMarginalTol = 1e-12;
    constexpr int kMaxScaling = 50000;
    int total_scaling = 0;

    double beta_hi = 1.0;
    ScalingResult hi = sinkhorn_at_beta(q, p, c, beta_hi, kMarginalTol, kMaxScaling);
    total_scaling += hi.iterations;
    while (hi.info < lambda && beta_hi < 1e8) {
        beta_hi *= 2.0;
        hi = sinkhorn_at_beta(q, p, c, beta_hi, kMarginalTol, kMaxScaling);
        total_scaling += hi.iterations;
    }

    double lo = 0.0;
    double beta_best = beta_hi;
    ScalingResult best = std::move(hi);
    for (int it = 0; it < 200; ++it) {
        if (std::abs(best.info - lambda) <= 1e-9) break;
        if (beta_hi - lo <= 1e-13 * std::max(1.0, beta_hi)) break;
        double mid = 0.5 * (lo + beta_hi);
        ScalingResult sol = sinkhorn_at_beta(q, p, c, mid, kMarginalTol, kMaxScaling);
        total_scaling += sol.iterations;
        double got = sol.info;
        if (std::abs(sol.info - lambda) < std::abs(best.info - lambda)) {
            best = std::move(sol);
            beta_best = mid;
        }
        if (got < lambda)
            lo = mid;
        else
            beta_hi = mid;
    }
    return ConstrainedTransportSolution{std::move(best.plan), best.value, best.info,
                                        beta_best, true, total_scaling};
}

Theorem1Report check_theorem1(const Distribution& q, const CostMatrix& c,
                              const InfoBudget& budget) {
    ChannelSolution ocp = solve_ocp(q, c, budget);
    const Distribution& p = ocp.output_marginal;
    ConstrainedTransportSolution cotp = solve_constrained_otp(q, p, c, budget);
    double gap = cotp.value - ocp.value;
    double tv = 0.0;
    for (std::size_t x = 0; x < c.rows(); ++x)
        for (std::size_t y = 0; y < c.cols(); ++y)
            tv += std::abs(cotp.plan(x, y) - ocp.joint(x, y));
    tv *= 0.5;
    return Theorem1Report{gap <= 1e-6, gap, tv};
}

CombinedExpressionReport verify_combined_expression(const Distribution& q, const Distribution& p,
                                                    const CostMatrix& c, const InfoBudget& budget,
                                                    int samples) {
    if (q.size() != p.size() || c.rows() != c.cols() || q.size() != c.rows())
        throw DimensionMismatch("verify_combined_expression: space must be square");
    if (!q.strictly_positive())
        throw SupportViolation("verify_combined_expression: q has zero atoms");
    (void)budget;  // the equivalence is pointwise in w; lambda cancels

    // Vertices of Gamma[q, p]: LP optima under random costs. Random convex
    // combinations of them sample the polytope with exact marginals.
    const std::size_t n = q.size();
    std::vector<JointDistribution> vertices;
    vertices.push_back(JointDistribution::product(q, p));
    vertices.push_back(solve_otp(q, p, c).plan);
    std::mt19937_64 rng(12345);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    for (int k = 0; k < 8; ++k) {
        std::vector<double> rc(n * n);
        for (double& v : rc) v = unif(rng);
        vertices.push_back(solve_otp(q, p, CostMatrix(n, n, std::move(rc))).plan);
    }

    double max_residual = 0.0;
    int count = 0;
    auto check = [&](const JointDistribution& w) {
        Distribution col = w.col_marginal();
        double lhs = cross_information(w, q) - kl_divergence(col, q);
        double residual = std::abs(lhs - mutual_information(w));
        max_residual = std::max(max_residual, residual);
        ++count;
    };
    for (const auto& v : vertices) check(v);
    while (count < samples) {
        std::vector<double> weights(vertices.size());
        double total = 0.0;
        for (double& wgt : weights) {
            wgt = unif(rng);
            total += wgt;
        }
        std::vector<double> mix(n * n, 0.0);
        for (std::size_t v = 0; v < vertices.size(); ++v)
            for (std::size_t k = 0; k < n * n; ++k)
                mix[k] += weights[v] / total * vertices[v].mass()[k];
        check(JointDistribution(n, n, std::move(mix)));
    }
    return CombinedExpressionReport{max_residual, count};
}

}  // namespace otinfo
