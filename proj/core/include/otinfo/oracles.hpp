#pragma once

#include <cstdint>
#include <vector>

#include "otinfo/types.hpp"

namespace otinfo {
namespace oracles {

enum class CostKind { hamming, grid_abs, random_uniform, translation_invariant_cyclic };
enum class MarginalKind { uniform, random_dirichlet, point_mass };

/// Deterministic random-instance generator: identical specs produce
/// bit-identical instances.
struct InstanceSpec {
    std::size_t nx = 2;
    std::size_t ny = 2;
    std::uint64_t seed = 0;
    CostKind cost_kind = CostKind::hamming;
    MarginalKind marginal_kind = MarginalKind::uniform;
};

struct Instance {
    Distribution q;
    Distribution p;
    CostMatrix c;
};

Instance generate(const InstanceSpec& spec);

struct BruteforceResult {
    double value;
    JointDistribution plan;
};

/// Exhaustive enumeration of the basic feasible solutions (spanning-forest
/// supports) of the transportation polytope. Exact reference for the LP
/// solver; admissible up to nx * ny <= 12 cells.
BruteforceResult lp_bruteforce(const Distribution& q, const Distribution& p, const CostMatrix& c);

/// Closed form for c(x,y) = spacing * |x - y| on a common 1D grid:
/// spacing * sum_k |CDF_q(k) - CDF_p(k)|.
double monotone_1d(const Distribution& q, const Distribution& p, double spacing);

/// Exhaustive grid scan over 2x2 channel matrices; keeps the cheapest
/// feasible (I <= lambda) channel. Upper-bounds R_c within the step size.
double channel_gridsearch(const Distribution& q, const CostMatrix& c, const InfoBudget& budget,
                          double step);

}  // namespace oracles
}  // namespace otinfo
