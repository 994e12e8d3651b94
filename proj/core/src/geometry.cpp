#include "otinfo/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "otinfo/measures.hpp"
#include "otinfo/numeric.hpp"
#include "otinfo/transport_lp.hpp"

namespace otinfo {

namespace {

void require_positive(const Distribution& d, const char* what) {
    if (!d.strictly_positive())
        throw SupportViolation(std::string(what) + ": measure has a zero atom");
}

double expectation(const Distribution& d, const std::vector<double>& f) {
    double e = 0.0;
    for (std::size_t i = 0; i < d.size(); ++i) e += d[i] * f[i];
    return e;
}

}  // namespace

Distribution exponential_tilt(const std::vector<double>& f, double t, const Distribution& r) {
    if (f.size() != r.size()) throw DimensionMismatch("exponential_tilt: size mismatch");
    double kappa = cumulant(f, t, r);
    std::vector<double> mass(r.size());
    for (std::size_t i = 0; i < r.size(); ++i)
        mass[i] = r[i] > 0.0 ? std::exp(t * f[i] - kappa + std::log(r[i])) : 0.0;
    return Distribution(std::move(mass));
}

double cumulant(const std::vector<double>& f, double t, const Distribution& r) {
    if (f.size() != r.size()) throw DimensionMismatch("cumulant: size mismatch");
    require_positive(r, "cumulant");
    std::vector<double> terms(f.size());
    for (std::size_t i = 0; i < f.size(); ++i) terms[i] = t * f[i] + std::log(r[i]);
    return log_sum_exp(terms);
}

PotentialPair::PotentialPair(std::vector<double> f_, std::vector<double> g_, double alpha_,
                             double beta_, Distribution reference_)
    : f(std::move(f_)), g(std::move(g_)), alpha(alpha_), beta(beta_),
      reference(std::move(reference_)) {
    if (f.size() != reference.size() || g.size() != reference.size())
        throw DimensionMismatch("PotentialPair: potential sizes do not match reference");
    if (!(alpha >= 0.0) || !(beta >= 0.0))
        throw InvalidArgument("PotentialPair: multipliers must be >= 0");
    require_positive(reference, "PotentialPair");
}

Distribution PotentialPair::p() const { return exponential_tilt(f, beta, reference); }
Distribution PotentialPair::q() const { return exponential_tilt(g, alpha, reference); }
double PotentialPair::kappa_f() const { return cumulant(f, beta, reference); }
double PotentialPair::kappa_g() const { return cumulant(g, alpha, reference); }

double PotentialPair::renormalization_residual() const {
    double kf = kappa_f(), kg = kappa_g();
    double sp = 0.0, sq = 0.0;
    for (std::size_t i = 0; i < reference.size(); ++i) {
        sp += reference[i] * std::exp(beta * f[i] - kf);
        sq += reference[i] * std::exp(alpha * g[i] - kg);
    }
    return std::max(std::abs(sp - 1.0), std::abs(sq - 1.0));
}

ResidualReport law_of_cosines(const Distribution& p, const Distribution& q,
                              const Distribution& r) {
    if (p.size() != q.size() || p.size() != r.size())
        throw DimensionMismatch("law_of_cosines: size mismatch");
    require_positive(r, "law_of_cosines");
    require_positive(q, "law_of_cosines");
    double correction = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i)
        correction += std::log(q[i] / r[i]) * (p[i] - r[i]);
    double lhs = kl_divergence(p, q);
    double rhs = kl_divergence(p, r) + kl_divergence(r, q) - correction;
    return ResidualReport{std::abs(lhs - rhs)};
}

KlMinusReport kl_minus_decomposition(const Distribution& p, const Distribution& q,
                                     const Distribution& r) {
    if (p.size() != q.size() || p.size() != r.size())
        throw DimensionMismatch("kl_minus_decomposition: size mismatch");
    require_positive(r, "kl_minus_decomposition");
    require_positive(q, "kl_minus_decomposition");
    double corr_pq = 0.0, corr_qr = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        double lqr = std::log(q[i] / r[i]);
        corr_pq += lqr * (p[i] - q[i]);
        corr_qr += lqr * (q[i] - r[i]);
    }
    double decomposition = std::abs(kl_divergence(p, q) -
                                    (kl_divergence(p, r) - kl_divergence(q, r) - corr_pq));
    double symmetrized = std::abs(kl_divergence(q, r) + kl_divergence(r, q) - corr_qr);
    return KlMinusReport{decomposition, symmetrized};
}

CumulantIdentityReport cumulant_identities(const std::vector<double>& f, double beta,
                                           const Distribution& r) {
    Distribution p = exponential_tilt(f, beta, r);
    double ef = expectation(p, f);
    const double h = 1e-5;
    double fd = (cumulant(f, beta + h, r) - cumulant(f, beta - h, r)) / (2.0 * h);
    double scale = std::max(std::abs(ef), 1e-12);
    double rel = std::abs(fd - ef) / scale;
    double legendre = std::abs(kl_divergence(p, r) - (beta * ef - cumulant(f, beta, r)));
    return CumulantIdentityReport{rel, legendre};
}

CumulantReport epsilon_feasibility(const PotentialPair& pp, const CostMatrix& c) {
    const std::size_t n = pp.reference.size();
    if (c.rows() != n || c.cols() != n)
        throw DimensionMismatch("epsilon_feasibility: cost matrix does not match space");
    // Rows carry q (the g side), columns carry p (the f side):
    // beta f(y) - alpha g(x) <= eps c(x, y).
    double eps = 0.0;
    for (std::size_t x = 0; x < n; ++x) {
        for (std::size_t y = 0; y < n; ++y) {
            double numerator = pp.beta * pp.f[y] - pp.alpha * pp.g[x];
            if (numerator <= 1e-12) continue;
            if (c(x, y) == 0.0) {
                eps = kInfinity;
            } else {
                eps = std::max(eps, numerator / c(x, y));
            }
        }
    }
    double kf = pp.kappa_f(), kg = pp.kappa_g();
    double j = 0.0;
    if (eps > 0.0 && !is_infinite(eps)) {
        double numerator = pp.beta * expectation(pp.p(), pp.f) -
                           pp.alpha * expectation(pp.q(), pp.g);
        j = numerator / eps;
    }
    return CumulantReport{kf, kg, eps, j};
}

KlBoundReport kl_upper_bound(const PotentialPair& pp, const CostMatrix& c) {
    CumulantReport rep = epsilon_feasibility(pp, c);
    if (is_infinite(rep.epsilon))
        throw InvalidArgument("kl_upper_bound: epsilon is infinite, bound is vacuous");
    Distribution p = pp.p(), q = pp.q();
    double kc = solve_otp(q, p, c).value;
    double correction = 0.0;
    for (std::size_t i = 0; i < q.size(); ++i)
        correction += pp.alpha * pp.g[i] * (p[i] - q[i]);
    double lhs = kl_divergence(p, q);
    double rhs = rep.epsilon * kc - (rep.kappa_f - rep.kappa_g) - correction;
    return KlBoundReport{lhs, rhs, rhs - lhs};
}

Theorem2Report check_theorem2(std::size_t n, unsigned seed) {
    if (n < 2) throw InvalidArgument("check_theorem2: need n >= 2");
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unif_r(0.1, 1.1);
    std::uniform_real_distribution<double> unif_f(-1.0, 1.0);

    for (int attempt = 0; attempt < 100; ++attempt) {
        std::vector<double> rw(n), f(n), g(n);
        for (double& v : rw) v = unif_r(rng);
        for (double& v : f) v = unif_f(rng);
        for (double& v : g) v = unif_f(rng);
        Distribution r{std::vector<double>(rw)};
        Distribution p = exponential_tilt(f, 1.0, r);
        Distribution q = exponential_tilt(g, 1.0, r);

        // Shift f so that f(y) - g(x) >= 0 everywhere; the tilt p and the
        // theorem identity are both invariant under the shift.
        double shift = 0.0;
        for (std::size_t y = 0; y < n; ++y)
            for (std::size_t x = 0; x < n; ++x) shift = std::max(shift, g[x] - f[y]);
        for (double& v : f) v += shift;

        // Northwest-corner plan in Gamma[q, p] picks a feasible support S.
        std::vector<char> support(n * n, 0);
        {
            std::vector<double> a(n), b(n);
            for (std::size_t k = 0; k < n; ++k) {
                a[k] = q[k];
                b[k] = p[k];
            }
            std::size_t i = 0, j = 0;
            while (i < n && j < n) {
                double flow = std::min(a[i], b[j]);
                if (flow > 1e-15) support[i * n + j] = 1;
                a[i] -= flow;
                b[j] -= flow;
                if (a[i] <= 1e-15 && i < n)
                    ++i;
                else if (j < n)
                    ++j;
            }
        }

        // Tight cost on S, strictly slack off S: complementary slackness
        // certifies (f, g) as a dual-optimal pair.
        const double delta = 0.1;
        std::vector<double> cost(n * n);
        for (std::size_t x = 0; x < n; ++x)
            for (std::size_t y = 0; y < n; ++y)
                cost[x * n + y] =
                    std::max(0.0, f[y] - g[x]) + (support[x * n + y] ? 0.0 : delta);
        CostMatrix c(n, n, std::move(cost));

        double kc = solve_otp(q, p, c).value;
        double kf = cumulant(f, 1.0, r), kg = cumulant(g, 1.0, r);
        double correction = 0.0;
        for (std::size_t i = 0; i < n; ++i) correction += g[i] * (p[i] - q[i]);
        double lhs = kl_divergence(p, q);
        double rhs = kc - (kf - kg) - correction;
        return Theorem2Report{std::abs(lhs - rhs), kc, lhs};
    }
    throw std::runtime_error("check_theorem2: construction failed after 100 attempts");
}

double kl_legendre(const std::vector<double>& u, const Distribution& q, const Distribution& p) {
    if (u.size() != q.size() * p.size())
        throw DimensionMismatch("kl_legendre: u size != |X| * |Y|");
    std::vector<double> terms;
    terms.reserve(u.size());
    for (std::size_t x = 0; x < q.size(); ++x) {
        for (std::size_t y = 0; y < p.size(); ++y) {
            double ref = q[x] * p[y];
            if (ref == 0.0) continue;
            terms.push_back(std::log(ref) + u[x * p.size() + y]);
        }
    }
    return log_sum_exp(terms);
}

}  // namespace otinfo
