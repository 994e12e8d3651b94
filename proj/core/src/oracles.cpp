#include "otinfo/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "otinfo/measures.hpp"

namespace otinfo {
namespace oracles {

namespace {

std::vector<double> random_marginal(std::size_t n, MarginalKind kind, std::mt19937_64& rng) {
    switch (kind) {
        case MarginalKind::uniform:
            return std::vector<double>(n, 1.0);
        case MarginalKind::point_mass: {
            std::vector<double> w(n, 0.0);
            w[0] = 1.0;
            return w;
        }
        case MarginalKind::random_dirichlet: {
            // Gamma(1) draws with a small floor keep the marginal strictly
            // positive.
            std::gamma_distribution<double> gamma(1.0, 1.0);
            std::vector<double> w(n);
            for (double& v : w) v = gamma(rng) + 1e-3;
            return w;
        }
    }
    throw InvalidArgument("generate: unknown marginal kind");
}

CostMatrix random_cost(std::size_t nx, std::size_t ny, CostKind kind, std::mt19937_64& rng) {
    switch (kind) {
        case CostKind::hamming: {
            std::vector<double> v(nx * ny, 1.0);
            for (std::size_t i = 0; i < std::min(nx, ny); ++i) v[i * ny + i] = 0.0;
            return CostMatrix(nx, ny, std::move(v));
        }
        case CostKind::grid_abs: {
            std::vector<double> v(nx * ny);
            for (std::size_t i = 0; i < nx; ++i)
                for (std::size_t j = 0; j < ny; ++j)
                    v[i * ny + j] = std::abs(static_cast<double>(i) - static_cast<double>(j));
            return CostMatrix(nx, ny, std::move(v));
        }
        case CostKind::random_uniform: {
            std::uniform_real_distribution<double> unif(0.0, 1.0);
            std::vector<double> v(nx * ny);
            for (double& x : v) x = unif(rng);
            return CostMatrix(nx, ny, std::move(v));
        }
        case CostKind::translation_invariant_cyclic: {
            if (nx != ny)
                throw InvalidArgument("generate: cyclic cost needs a square space");
            std::uniform_real_distribution<double> unif(0.0, 1.0);
            std::vector<double> base(nx);
            for (double& x : base) x = unif(rng);
            std::vector<double> v(nx * ny);
            for (std::size_t i = 0; i < nx; ++i)
                for (std::size_t j = 0; j < ny; ++j) v[i * ny + j] = base[(j + nx - i) % nx];
            return CostMatrix(nx, ny, std::move(v));
        }
    }
    throw InvalidArgument("generate: unknown cost kind");
}

}  // namespace

Instance generate(const InstanceSpec& spec) {
    if (spec.nx < 1 || spec.ny < 1) throw InvalidArgument("generate: sizes must be >= 1");
    std::mt19937_64 rng(spec.seed);
    Distribution q{random_marginal(spec.nx, spec.marginal_kind, rng)};
    Distribution p{random_marginal(spec.ny, spec.marginal_kind, rng)};
    CostMatrix c = random_cost(spec.nx, spec.ny, spec.cost_kind, rng);
    return Instance{std::move(q), std::move(p), std::move(c)};
}

BruteforceResult lp_bruteforce(const Distribution& q, const Distribution& p,
                               const CostMatrix& c) {
    const std::size_t m = q.size(), n = p.size();
    if (m != c.rows() || n != c.cols())
        throw DimensionMismatch("lp_bruteforce: marginal sizes do not match cost matrix");
    if (m * n > 12) throw InvalidArgument("lp_bruteforce: instance exceeds 12 cells");

    const std::size_t cells = m * n;
    const std::size_t k = m + n - 1;
    double best_value = kInfinity;
    std::vector<double> best_plan;

    // Iterate over all k-subsets of cells; each spanning tree of the
    // bipartite graph is a candidate basis whose flows are determined by
    // leaf elimination.
    std::vector<std::size_t> comb(k);
    std::iota(comb.begin(), comb.end(), 0);
    auto advance = [&]() -> bool {
        std::size_t i = k;
        while (i-- > 0) {
            if (comb[i] != cells - k + i) {
                ++comb[i];
                for (std::size_t j = i + 1; j < k; ++j) comb[j] = comb[j - 1] + 1;
                return true;
            }
        }
        return false;
    };

    std::vector<int> parent(m + n);
    do {
        // Union-find cycle check.
        std::iota(parent.begin(), parent.end(), 0);
        auto find = [&](int v) {
            while (parent[v] != v) v = parent[v] = parent[parent[v]];
            return v;
        };
        bool tree = true;
        for (std::size_t idx : comb) {
            int a = static_cast<int>(idx / n);
            int b = static_cast<int>(m + idx % n);
            int ra = find(a), rb = find(b);
            if (ra == rb) {
                tree = false;
                break;
            }
            parent[ra] = rb;
        }
        if (!tree) continue;  // k acyclic edges on m+n nodes => spanning tree

        // Solve flows on the tree by leaf elimination.
        std::vector<double> rem(m + n);
        for (std::size_t i = 0; i < m; ++i) rem[i] = q[i];
        for (std::size_t j = 0; j < n; ++j) rem[m + j] = p[j];
        std::vector<int> degree(m + n, 0);
        std::vector<char> done(k, 0);
        for (std::size_t t = 0; t < k; ++t) {
            ++degree[comb[t] / n];
            ++degree[m + comb[t] % n];
        }
        std::vector<double> flow(k, 0.0);
        bool feasible = true;
        for (std::size_t round = 0; round < k; ++round) {
            std::size_t pick = k;
            for (std::size_t t = 0; t < k; ++t) {
                if (done[t]) continue;
                std::size_t a = comb[t] / n, b = m + comb[t] % n;
                if (degree[a] == 1 || degree[b] == 1) {
                    pick = t;
                    break;
                }
            }
            std::size_t a = comb[pick] / n, b = m + comb[pick] % n;
            std::size_t leaf = degree[a] == 1 ? a : b;
            std::size_t other = leaf == a ? b : a;
            flow[pick] = rem[leaf];
            rem[other] -= flow[pick];
            --degree[a];
            --degree[b];
            done[pick] = 1;
            if (flow[pick] < -1e-12) {
                feasible = false;
                break;
            }
        }
        if (!feasible) continue;

        double value = 0.0;
        for (std::size_t t = 0; t < k; ++t)
            value += std::max(flow[t], 0.0) * c(comb[t] / n, comb[t] % n);
        if (value < best_value) {
            best_value = value;
            best_plan.assign(cells, 0.0);
            for (std::size_t t = 0; t < k; ++t) best_plan[comb[t]] = std::max(flow[t], 0.0);
        }
    } while (advance());

    if (best_plan.empty()) throw std::runtime_error("lp_bruteforce: no feasible basis found");
    return BruteforceResult{best_value, JointDistribution(m, n, std::move(best_plan))};
}

double monotone_1d(const Distribution& q, const Distribution& p, double spacing) {
    if (q.size() != p.size()) throw DimensionMismatch("monotone_1d: size mismatch");
    if (!(spacing > 0.0)) throw InvalidArgument("monotone_1d: spacing must be positive");
    double cdf_q = 0.0, cdf_p = 0.0, total = 0.0;
    for (std::size_t k = 0; k + 1 < q.size(); ++k) {
        cdf_q += q[k];
        cdf_p += p[k];
        total += std::abs(cdf_q - cdf_p);
    }
    return spacing * total;
}

double channel_gridsearch(const Distribution& q, const CostMatrix& c, const InfoBudget& budget,
                          double step) {
    if (q.size() != 2 || c.rows() != 2 || c.cols() != 2)
        throw InvalidArgument("channel_gridsearch: 2x2 instances only");
    if (!(step >= 1e-3)) throw InvalidArgument("channel_gridsearch: step must be >= 1e-3");

    double best = kInfinity;
    const int steps = static_cast<int>(std::round(1.0 / step));
    for (int ia = 0; ia <= steps; ++ia) {
        double a = static_cast<double>(ia) / steps;  // w(y=0 | x=0)
        for (int ib = 0; ib <= steps; ++ib) {
            double b = static_cast<double>(ib) / steps;  // w(y=0 | x=1)
            std::vector<double> joint{q[0] * a, q[0] * (1.0 - a), q[1] * b, q[1] * (1.0 - b)};
            JointDistribution w(2, 2, std::move(joint));
            if (mutual_information(w) > budget.lambda + 1e-9) continue;
            double value = 0.0;
            for (std::size_t x = 0; x < 2; ++x)
                for (std::size_t y = 0; y < 2; ++y) value += w(x, y) * c(x, y);
            best = std::min(best, value);
        }
    }
    return best;
}

}  // namespace oracles
}  // namespace otinfo
