#pragma once

#include <utility>
#include <vector>

#include "otinfo/types.hpp"

namespace otinfo {

/// D[p, q] = sum_i p_i ln(p_i / q_i), with the convention 0 ln(0/.) = 0.
/// Returns +infinity when p is not absolutely continuous w.r.t. q.
double kl_divergence(const Distribution& p, const Distribution& q);

/// Entropy of p relative to a strictly positive reference measure given as
/// raw weights (not necessarily normalized): -sum_i p_i ln(p_i / r_i).
double entropy(const Distribution& p, const std::vector<double>& reference);

/// Entropy with the counting reference (r_i = 1), i.e. -sum p ln p.
double entropy(const Distribution& p);

/// I(X,Y) = D[w, q (x) p] where q, p are the marginals of w.
double mutual_information(const JointDistribution& w);

/// Cross-information D[w, q (x) q]. Requires a square space and the row
/// marginal of w to match q within 1e-9. Decomposes as I(X,Y) + D[p, q]
/// with p the column marginal.
double cross_information(const JointDistribution& w, const Distribution& q);

/// Row and column marginals of a joint measure.
std::pair<Distribution, Distribution> marginals(const JointDistribution& w);

}  // namespace otinfo
