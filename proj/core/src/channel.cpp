#include "otinfo/channel.hpp"

#include <algorithm>
#include <cmath>

#include "otinfo/measures.hpp"
#include "otinfo/numeric.hpp"

namespace otinfo {

namespace {

double expected_cost(const JointDistribution& w, const CostMatrix& c) {
    double e = 0.0;
    for (std::size_t x = 0; x < w.rows(); ++x)
        for (std::size_t y = 0; y < w.cols(); ++y) e += w(x, y) * c(x, y);
    return e;
}

// Best product coupling: all output mass on the column minimizing E_q[c(.,y)],
// lowest index on ties.
ChannelSolution product_optimum(const Distribution& q, const CostMatrix& c) {
    const std::size_t nx = q.size(), ny = c.cols();
    std::size_t best = 0;
    double best_cost = kInfinity;
    for (std::size_t y = 0; y < ny; ++y) {
        double e = 0.0;
        for (std::size_t x = 0; x < nx; ++x) e += q[x] * c(x, y);
        if (e < best_cost - 1e-15) {
            best_cost = e;
            best = y;
        }
    }
    Distribution out = Distribution::point_mass(ny, best);
    JointDistribution joint = JointDistribution::product(q, out);
    return ChannelSolution{std::move(joint), best_cost, 0.0, 0.0, std::move(out), 0, 0, 0.0};
}

// Deterministic argmin channel: each input maps to its cheapest output.
ChannelSolution deterministic_optimum(const Distribution& q, const CostMatrix& c) {
    const std::size_t nx = q.size(), ny = c.cols();
    std::vector<double> joint(nx * ny, 0.0);
    double value = 0.0;
    for (std::size_t x = 0; x < nx; ++x) {
        std::size_t best = 0;
        for (std::size_t y = 1; y < ny; ++y)
            if (c(x, y) < c(x, best)) best = y;
        joint[x * ny + best] = q[x];
        value += q[x] * c(x, best);
    }
    JointDistribution w(nx, ny, std::move(joint));
    Distribution out = w.col_marginal();
    double info = mutual_information(w);
    return ChannelSolution{std::move(w), value, info, kInfinity, std::move(out), 0, 0, 0.0};
}

// Smallest nonzero gap between distinct cost values (and above zero), used
// to scale the initial beta bracket.
double min_cost_gap(const CostMatrix& c) {
    std::vector<double> vals(c.values());
    vals.push_back(0.0);
    std::sort(vals.begin(), vals.end());
    double gap = kInfinity;
    for (std::size_t k = 1; k < vals.size(); ++k) {
        double d = vals[k] - vals[k - 1];
        if (d > 1e-15) gap = std::min(gap, d);
    }
    return gap;
}

}  // namespace

ChannelSolution solve_ocp_at_beta(const Distribution& q, const CostMatrix& c, double beta) {
    if (q.size() != c.rows()) throw DimensionMismatch("solve_ocp_at_beta: q size != cost rows");
    if (!(beta >= 0.0)) throw InvalidArgument("solve_ocp_at_beta: beta must be >= 0");
    if (beta == 0.0) return product_optimum(q, c);

    const std::size_t nx = q.size(), ny = c.cols();
    std::vector<double> ln_p(ny, -std::log(static_cast<double>(ny)));
    std::vector<double> ln_cond(nx * ny);  // ln w(y|x), rows with q_x > 0
    std::vector<double> scratch(ny);

    double prev_lagrangian = kInfinity;
    double max_increase = 0.0;
    int iter = 0;
    const int max_iter = 100000;
    std::vector<double> joint(nx * ny);
    while (iter < max_iter) {
        ++iter;
        // Channel update: w(y|x) proportional to p(y) exp(-beta c(x,y)).
        for (std::size_t x = 0; x < nx; ++x) {
            for (std::size_t y = 0; y < ny; ++y) scratch[y] = ln_p[y] - beta * c(x, y);
            double z = log_sum_exp(scratch);
            for (std::size_t y = 0; y < ny; ++y) ln_cond[x * ny + y] = scratch[y] - z;
        }
        // Output update: p = sum_x q(x) w(.|x). Track the log-scale movement
        // of the marginal so vanishing atoms do not stall termination above
        // the mass floor.
        double p_shift = 0.0;
        for (std::size_t y = 0; y < ny; ++y) {
            double s = 0.0;
            for (std::size_t x = 0; x < nx; ++x) {
                if (q[x] == 0.0) continue;
                s += q[x] * std::exp(ln_cond[x * ny + y]);
            }
            double updated = s > 0.0 ? std::log(s) : -kInfinity;
            double old_mass = std::exp(ln_p[y]);
            if (std::max(old_mass, s) > 1e-10) {
                double d = (s > 0.0 && old_mass > 0.0) ? std::abs(updated - ln_p[y]) : kInfinity;
                p_shift = std::max(p_shift, d);
            }
            ln_p[y] = updated;
        }
        for (std::size_t x = 0; x < nx; ++x)
            for (std::size_t y = 0; y < ny; ++y)
                joint[x * ny + y] = q[x] > 0.0 ? q[x] * std::exp(ln_cond[x * ny + y]) : 0.0;
        JointDistribution w(nx, ny, joint);
        double lagrangian = expected_cost(w, c) + mutual_information(w) / beta;
        if (lagrangian > prev_lagrangian)
            max_increase = std::max(max_increase, lagrangian - prev_lagrangian);
        bool converged = std::abs(prev_lagrangian - lagrangian) <=
                             1e-12 * std::max(1.0, std::abs(lagrangian)) &&
                         p_shift <= 1e-9;
        prev_lagrangian = lagrangian;
        if (converged) break;
    }

    // Zero-mass inputs carry the output marginal so the joint stays
    // well-formed; they do not affect value or information.
    JointDistribution w(nx, ny, joint);
    Distribution out = w.col_marginal();
    bool has_zero_rows = false;
    for (std::size_t x = 0; x < nx; ++x)
        if (q[x] == 0.0) has_zero_rows = true;
    if (has_zero_rows) {
        for (std::size_t x = 0; x < nx; ++x)
            if (q[x] == 0.0)
                for (std::size_t y = 0; y < ny; ++y) joint[x * ny + y] = 0.0;
        w = JointDistribution(nx, ny, joint);
        out = w.col_marginal();
    }
    double value = expected_cost(w, c);
    double info = mutual_information(w);
    return ChannelSolution{std::move(w), value, info, beta, std::move(out), iter, 0, max_increase};
}

ChannelSolution solve_ocp(const Distribution& q, const CostMatrix& c, const InfoBudget& budget) {
    if (q.size() != c.rows()) throw DimensionMismatch("solve_ocp: q size != cost rows");
    const double lambda = budget.lambda;

    ChannelSolution unconstrained = deterministic_optimum(q, c);
    if (unconstrained.info <= lambda + 1e-12) return unconstrained;
    if (lambda == 0.0) return solve_ocp_at_beta(q, c, 0.0);

    // Bracket: info(beta) is non-decreasing; double beta until the budget is
    // reachable.
    double beta_hi = 50.0 / min_cost_gap(c);
    if (!(beta_hi > 0.0) || is_infinite(beta_hi)) beta_hi = 1.0;
    int bisections = 0;
    ChannelSolution hi_sol = solve_ocp_at_beta(q, c, beta_hi);
    while (hi_sol.info < lambda && beta_hi < 1e8) {
        beta_hi *= 2.0;
        hi_sol = solve_ocp_at_beta(q, c, beta_hi);
        ++bisections;
    }
    if (hi_sol.info < lambda) {
        // Budget unreachable at any temperature: constraint inactive.
        hi_sol.beta = kInfinity;
        hi_sol.bisection_iterations = bisections;
        return hi_sol;
    }

    double lo = 0.0, hi = beta_hi;
    ChannelSolution best = std::move(hi_sol);
    while (bisections < 200) {
        ++bisections;
        double mid = 0.5 * (lo + hi);
        ChannelSolution sol = solve_ocp_at_beta(q, c, mid);
        double got = sol.info;
        if (std::abs(sol.info - lambda) < std::abs(best.info - lambda)) best = std::move(sol);
        if (got < lambda)
            lo = mid;
        else
            hi = mid;
        if (std::abs(best.info - lambda) <= 1e-9) break;
        if (hi - lo <= 1e-13 * std::max(1.0, hi)) break;
    }
    best.bisection_iterations = bisections;
    return best;
}

std::vector<ValuePoint> value_of_information(const Distribution& q, const CostMatrix& c,
                                             const std::vector<double>& lambdas) {
    for (std::size_t k = 1; k < lambdas.size(); ++k)
        if (lambdas[k] < lambdas[k - 1])
            throw InvalidArgument("value_of_information: lambdas must be sorted ascending");
    const double r0 = solve_ocp(q, c, InfoBudget(0.0)).value;
    std::vector<ValuePoint> curve;
    curve.reserve(lambdas.size());
    for (double l : lambdas) {
        ChannelSolution sol = solve_ocp(q, c, InfoBudget(l));
        bool active = !is_infinite(sol.beta) && std::abs(sol.info - l) <= 1e-5;
        curve.push_back({l, r0 - sol.value, sol.beta, sol.value, sol.info, active});
    }
    return curve;
}

TranslationInvarianceReport check_translation_invariant_form(const ChannelSolution& sol,
                                                             const CostMatrix& c) {
    if (c.rows() != c.cols())
        throw DimensionMismatch("check_translation_invariant_form: space must be square");
    if (is_infinite(sol.beta))
        throw InvalidArgument("check_translation_invariant_form: beta must be finite");

    const Distribution q = sol.joint.row_marginal();
    const Distribution& p = sol.output_marginal;
    std::vector<double> scratch(c.cols());
    double lo = kInfinity, hi = -kInfinity;
    for (std::size_t x = 0; x < c.rows(); ++x) {
        if (q[x] == 0.0) continue;
        for (std::size_t y = 0; y < c.cols(); ++y)
            scratch[y] = (p[y] > 0.0 ? std::log(p[y]) : -kInfinity) - sol.beta * c(x, y);
        double kappa = log_sum_exp(scratch);
        double t = std::log(q[x]) - kappa;
        lo = std::min(lo, t);
        hi = std::max(hi, t);
    }
    double residual = hi - lo;
    return TranslationInvarianceReport{residual <= 1e-7, residual};
}

}  // namespace otinfo
