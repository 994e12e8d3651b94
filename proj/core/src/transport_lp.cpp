#include "otinfo/transport_lp.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <deque>
#include <numeric>

namespace otinfo {

namespace {

// Basic arc of the transportation graph: row i shipping to column j.
struct Arc {
    int i;
    int j;
    double flow;
};

constexpr double kReducedCostTol = 1e-11;
constexpr double kPerturbation = 1e-13;

// Spanning-tree structure over m row nodes (0..m-1) and n column nodes
// (m..m+n-1), rebuilt from the current basis on demand.
struct Tree {
    int m, n;
    std::vector<std::vector<int>> adj;  // node -> indices into basis

    Tree(int m_, int n_, const std::vector<Arc>& basis) : m(m_), n(n_), adj(m_ + n_) {
        for (int k = 0; k < static_cast<int>(basis.size()); ++k) {
            adj[basis[k].i].push_back(k);
            adj[m + basis[k].j].push_back(k);
        }
    }
};

// Potentials u (rows), v (cols) with u[i] + v[j] = c(i,j) on basic arcs,
// rooted at u[0] = 0.
void compute_potentials(const Tree& tree, const std::vector<Arc>& basis, const CostMatrix& c,
                        std::vector<double>& u, std::vector<double>& v) {
    const int m = tree.m, n = tree.n;
    u.assign(m, 0.0);
    v.assign(n, 0.0);
    std::vector<char> seen(m + n, 0);
    std::deque<int> queue{0};
    seen[0] = 1;
    while (!queue.empty()) {
        int node = queue.front();
        queue.pop_front();
        for (int k : tree.adj[node]) {
            const Arc& a = basis[k];
            int other = (node == a.i) ? m + a.j : a.i;
            if (seen[other]) continue;
            if (other >= m)
                v[a.j] = c(a.i, a.j) - u[a.i];
            else
                u[a.i] = c(a.i, a.j) - v[a.j];
            seen[other] = 1;
            queue.push_back(other);
        }
    }
}

// Unique tree path from row node `from` to column node `to`; returns the
// basis-arc indices along the path in order.
std::vector<int> tree_path(const Tree& tree, const std::vector<Arc>& basis, int from, int to) {
    const int nodes = tree.m + tree.n;
    std::vector<int> parent_arc(nodes, -1), parent_node(nodes, -1);
    std::vector<char> seen(nodes, 0);
    std::deque<int> queue{from};
    seen[from] = 1;
    while (!queue.empty()) {
        int node = queue.front();
        queue.pop_front();
        if (node == to) break;
        for (int k : tree.adj[node]) {
            const Arc& a = basis[k];
            int other = (node == a.i) ? tree.m + a.j : a.i;
            if (seen[other]) continue;
            seen[other] = 1;
            parent_arc[other] = k;
            parent_node[other] = node;
            queue.push_back(other);
        }
    }
    std::vector<int> path;
    for (int node = to; node != from; node = parent_node[node]) path.push_back(parent_arc[node]);
    std::reverse(path.begin(), path.end());
    return path;
}

// Recompute exact basic flows for given (unperturbed) marginals on the
// final spanning tree via leaf elimination.
void resolve_flows(std::vector<Arc>& basis, int m, int n, const std::vector<double>& supply,
                   const std::vector<double>& demand) {
    std::vector<double> rem(m + n);
    for (int i = 0; i < m; ++i) rem[i] = supply[i];
    for (int j = 0; j < n; ++j) rem[m + j] = demand[j];

    std::vector<int> degree(m + n, 0);
    std::vector<std::vector<int>> adj(m + n);
    for (int k = 0; k < static_cast<int>(basis.size()); ++k) {
        adj[basis[k].i].push_back(k);
        adj[m + basis[k].j].push_back(k);
        ++degree[basis[k].i];
        ++degree[m + basis[k].j];
    }
    std::vector<char> arc_done(basis.size(), 0);
    std::deque<int> leaves;
    for (int node = 0; node < m + n; ++node)
        if (degree[node] == 1) leaves.push_back(node);
    while (!leaves.empty()) {
        int node = leaves.front();
        leaves.pop_front();
        int arc_idx = -1;
        for (int k : adj[node])
            if (!arc_done[k]) arc_idx = k;
        if (arc_idx < 0) continue;  // last node
        Arc& a = basis[arc_idx];
        a.flow = rem[node];
        arc_done[arc_idx] = 1;
        int other = (node == a.i) ? m + a.j : a.i;
        rem[other] -= a.flow;
        if (--degree[other] == 1) leaves.push_back(other);
        degree[node] = 0;
    }
}

}  // namespace

TransportSolution solve_otp(const Distribution& q, const Distribution& p, const CostMatrix& c) {
    const int m = static_cast<int>(q.size());
    const int n = static_cast<int>(p.size());
    if (static_cast<std::size_t>(m) != c.rows() || static_cast<std::size_t>(n) != c.cols())
        throw DimensionMismatch("solve_otp: marginal sizes do not match cost matrix");

    // Perturbed supplies break degeneracy; the surplus is absorbed by the
    // last demand to keep the problem balanced.
    std::vector<double> supply(q.mass()), demand(p.mass());
    double surplus = 0.0;
    for (int i = 0; i < m; ++i) {
        double eps = kPerturbation * static_cast<double>(i + 1);
        supply[i] += eps;
        surplus += eps;
    }
    demand[n - 1] += surplus;

    // Northwest-corner initial basis: exactly m + n - 1 arcs.
    std::vector<Arc> basis;
    basis.reserve(m + n - 1);
    {
        std::vector<double> a(supply), b(demand);
        int i = 0, j = 0;
        while (true) {
            double flow = std::min(a[i], b[j]);
            basis.push_back({i, j, flow});
            a[i] -= flow;
            b[j] -= flow;
            if (i == m - 1 && j == n - 1) break;
            if (a[i] <= b[j] && i < m - 1)
                ++i;
            else if (j < n - 1)
                ++j;
            else
                ++i;
        }
    }

    std::vector<double> u, v;
    int iterations = 0;
    const int max_iterations = 200 * (m + n) * std::max(m, n) + 1000;
    while (true) {
        Tree tree(m, n, basis);
        compute_potentials(tree, basis, c, u, v);

        // Bland's rule: lowest-index violating arc enters.
        int enter_i = -1, enter_j = -1;
        for (int i = 0; i < m && enter_i < 0; ++i) {
            for (int j = 0; j < n; ++j) {
                if (c(i, j) - u[i] - v[j] < -kReducedCostTol) {
                    enter_i = i;
                    enter_j = j;
                    break;
                }
            }
        }
        if (enter_i < 0) break;  // optimal

        std::vector<int> path = tree_path(tree, basis, enter_i, m + enter_j);
        // Entering arc gets +theta; path arcs alternate starting with -theta
        // on the arc adjacent to the entering row.
        double theta = kInfinity;
        int leave = -1;
        for (std::size_t t = 0; t < path.size(); t += 2) {
            const Arc& a = basis[path[t]];
            double fl = a.flow;
            long idx = static_cast<long>(a.i) * n + a.j;
            long best = leave >= 0 ? static_cast<long>(basis[leave].i) * n + basis[leave].j : -1;
            if (fl < theta - 1e-18 || (std::abs(fl - theta) <= 1e-18 && idx < best)) {
                theta = fl;
                leave = path[t];
            }
        }
        for (std::size_t t = 0; t < path.size(); ++t) {
            basis[path[t]].flow += (t % 2 == 0) ? -theta : theta;
        }
        basis[leave] = {enter_i, enter_j, theta};

        if (++iterations > max_iterations)
            throw std::runtime_error("solve_otp: simplex iteration cap exceeded");
    }

    // Remove the perturbation: re-solve flows on the optimal tree with the
    // exact marginals. The basis stays dual-feasible (reduced costs do not
    // depend on supplies), so the value is exact.
    resolve_flows(basis, m, n, q.mass(), p.mass());

    std::vector<double> plan(static_cast<std::size_t>(m) * n, 0.0);
    double value = 0.0;
    for (const Arc& a : basis) {
        double fl = std::max(a.flow, 0.0);
        plan[static_cast<std::size_t>(a.i) * n + a.j] += fl;
        value += fl * c(a.i, a.j);
    }

    Tree tree(m, n, basis);
    compute_potentials(tree, basis, c, u, v);

    TransportSolution sol{JointDistribution(m, n, std::move(plan)), value,
                          std::vector<double>(n), std::vector<double>(m), iterations,
                          SolveStatus::optimal};
    for (int j = 0; j < n; ++j) sol.f[j] = v[j];
    for (int i = 0; i < m; ++i) sol.g[i] = -u[i];
    return sol;
}

double dual_value(const TransportSolution& sol, const Distribution& q, const Distribution& p) {
    if (sol.status != SolveStatus::optimal)
        throw InvalidArgument("dual_value: solution is not optimal");
    if (sol.f.size() != p.size() || sol.g.size() != q.size())
        throw DimensionMismatch("dual_value: potential sizes do not match marginals");
    double ef = 0.0, eg = 0.0;
    for (std::size_t y = 0; y < p.size(); ++y) ef += p[y] * sol.f[y];
    for (std::size_t x = 0; x < q.size(); ++x) eg += q[x] * sol.g[x];
    return ef - eg;
}

}  // namespace otinfo
