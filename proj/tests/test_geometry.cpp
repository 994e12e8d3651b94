#include <cmath>
#include <random>

#include <doctest.h>

#include "otinfo/geometry.hpp"
#include "otinfo/measures.hpp"
#include "otinfo/transport_lp.hpp"

using namespace otinfo;

namespace {

Distribution random_positive(std::mt19937_64& rng, std::size_t n) {
    std::uniform_real_distribution<double> unif(0.05, 1.0);
    std::vector<double> w(n);
    for (double& v : w) v = unif(rng);
    return Distribution(std::move(w));
}

std::vector<double> random_potential(std::mt19937_64& rng, std::size_t n) {
    std::uniform_real_distribution<double> unif(-1.0, 1.0);
    std::vector<double> f(n);
    for (double& v : f) v = unif(rng);
    return f;
}

}  // namespace

TEST_CASE("law of cosines") {
    Distribution u = Distribution::uniform(3);
    CHECK(law_of_cosines(u, u, u).residual <= 1e-15);

    std::mt19937_64 rng(53);
    Distribution p = random_positive(rng, 5);
    Distribution q = random_positive(rng, 5);
    // r = q collapses two terms.
    CHECK(law_of_cosines(p, q, q).residual <= 1e-12);

    for (int k = 0; k < 200; ++k) {
        Distribution a = random_positive(rng, 5);
        Distribution b = random_positive(rng, 5);
        Distribution r = random_positive(rng, 5);
        CHECK(law_of_cosines(a, b, r).residual <= 1e-10);
    }

    CHECK_THROWS_AS(law_of_cosines(p, Distribution({1.0, 0.0, 0.0, 0.0, 0.0}), q),
                    SupportViolation);
}

TEST_CASE("kl-minus decomposition and the symmetrized proof formula") {
    std::mt19937_64 rng(59);
    Distribution p = random_positive(rng, 4);
    Distribution r = random_positive(rng, 4);

    KlMinusReport qr = kl_minus_decomposition(p, r, r);  // q = r
    CHECK(qr.decomposition_residual <= 1e-12);

    KlMinusReport pq = kl_minus_decomposition(p, p, r);  // p = q
    CHECK(pq.decomposition_residual <= 1e-12);

    for (int k = 0; k < 200; ++k) {
        Distribution a = random_positive(rng, 6);
        Distribution b = random_positive(rng, 6);
        Distribution c = random_positive(rng, 6);
        KlMinusReport rep = kl_minus_decomposition(a, b, c);
        CHECK(rep.decomposition_residual <= 1e-10);
        CHECK(rep.symmetrized_residual <= 1e-10);
    }
}

TEST_CASE("cumulant values and convexity") {
    Distribution r({0.5, 0.5});
    CHECK(cumulant({0.0, 0.0}, 1.0, r) == doctest::Approx(0.0));
    CHECK(cumulant({1.0, 0.0}, 0.0, r) == doctest::Approx(0.0));
    CHECK(cumulant({1.0, 0.0}, 1.0, r) ==
          doctest::Approx(0.6201145069582775).epsilon(1e-12));

    // Convex in t: second differences on a grid.
    std::mt19937_64 rng(61);
    std::vector<double> f = random_potential(rng, 5);
    Distribution r5 = random_positive(rng, 5);
    std::vector<double> k;
    for (int i = -10; i <= 10; ++i) k.push_back(cumulant(f, 0.3 * i, r5));
    for (std::size_t i = 1; i + 1 < k.size(); ++i)
        CHECK(k[i + 1] - 2.0 * k[i] + k[i - 1] >= -1e-10);
}

TEST_CASE("cumulant derivative and Legendre identity") {
    std::mt19937_64 rng(67);
    {
        // beta = 0: derivative is the reference expectation.
        Distribution r = random_positive(rng, 6);
        std::vector<double> f = random_potential(rng, 6);
        CumulantIdentityReport rep = cumulant_identities(f, 0.0, r);
        CHECK(rep.derivative_rel_error <= 1e-5);
        CHECK(rep.legendre_residual <= 1e-10);
    }
    {
        // Constant potential: both sides of the Legendre identity vanish.
        Distribution r = random_positive(rng, 4);
        CumulantIdentityReport rep = cumulant_identities({0.7, 0.7, 0.7, 0.7}, 2.0, r);
        CHECK(rep.legendre_residual <= 1e-12);
    }
    for (int k = 0; k < 40; ++k) {
        Distribution r = random_positive(rng, 6);
        std::vector<double> f = random_potential(rng, 6);
        CumulantIdentityReport rep = cumulant_identities(f, 2.5, r);
        CHECK(rep.derivative_rel_error <= 1e-5);
        CHECK(rep.legendre_residual <= 1e-10);
    }
}

TEST_CASE("exponential representations renormalize") {
    std::mt19937_64 rng(71);
    for (int k = 0; k < 50; ++k) {
        Distribution r = random_positive(rng, 5);
        PotentialPair pp(random_potential(rng, 5), random_potential(rng, 5), 0.7, 1.3, r);
        CHECK(pp.renormalization_residual() <= 1e-12);
    }
}

TEST_CASE("epsilon feasibility") {
    Distribution r = Distribution::uniform(2);
    {
        PotentialPair pp({0.0, 0.0}, {0.0, 0.0}, 1.0, 1.0, r);
        CumulantReport rep = epsilon_feasibility(pp, CostMatrix::hamming(2));
        CHECK(rep.epsilon == 0.0);
        CHECK(rep.j_c_eps == 0.0);
    }
    {
        // Positive numerator on the zero-cost diagonal forces epsilon = inf.
        PotentialPair pp({1.0, 1.0}, {0.0, 0.0}, 1.0, 1.0, r);
        CumulantReport rep = epsilon_feasibility(pp, CostMatrix::hamming(2));
        CHECK(is_infinite(rep.epsilon));
        CHECK_THROWS_AS(kl_upper_bound(pp, CostMatrix::hamming(2)), InvalidArgument);
    }
}

TEST_CASE("J_{c,eps} <= J_c <= K_c on random feasible pairs") {
    std::mt19937_64 rng(73);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    int checked = 0;
    while (checked < 30) {
        Distribution r = random_positive(rng, 4);
        std::vector<double> f = random_potential(rng, 4);
        std::vector<double> g = random_potential(rng, 4);
        std::vector<double> cost(16);
        for (double& v : cost) v = 0.05 + unif(rng);
        CostMatrix c(4, 4, cost);
        PotentialPair pp(f, g, 0.8, 1.2, r);
        CumulantReport rep = epsilon_feasibility(pp, c);
        if (is_infinite(rep.epsilon) || rep.epsilon == 0.0) continue;
        ++checked;
        Distribution p = pp.p(), q = pp.q();
        TransportSolution lp = solve_otp(q, p, c);
        CHECK(rep.j_c_eps <= dual_value(lp, q, p) + 1e-8);
        CHECK(dual_value(lp, q, p) <= lp.value + 1e-8);
    }
}

TEST_CASE("pre-theorem KL upper bound") {
    std::mt19937_64 rng(79);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    int checked = 0;
    while (checked < 30) {
        Distribution r = random_positive(rng, 4);
        PotentialPair pp(random_potential(rng, 4), random_potential(rng, 4), 0.9, 1.1, r);
        std::vector<double> cost(16);
        for (double& v : cost) v = 0.05 + unif(rng);
        CostMatrix c(4, 4, cost);
        if (is_infinite(epsilon_feasibility(pp, c).epsilon)) continue;
        ++checked;
        CHECK(kl_upper_bound(pp, c).slack >= -1e-8);
    }

    // p = q: the left side vanishes and the bound is non-negative.
    Distribution r = random_positive(rng, 3);
    std::vector<double> same = random_potential(rng, 3);
    PotentialPair pp(same, same, 1.0, 1.0, r);
    std::vector<double> cost(9, 0.5);
    KlBoundReport rep = kl_upper_bound(pp, CostMatrix(3, 3, cost));
    CHECK(rep.lhs <= 1e-12);
    CHECK(rep.slack >= -1e-8);
}

TEST_CASE("theorem 2 synthetic dual-optimal construction") {
    Theorem2Report first = check_theorem2(2, 1);
    CHECK(first.residual <= 1e-8);

    for (unsigned seed = 0; seed < 20; ++seed) {
        for (std::size_t n : {2, 3, 5}) {
            Theorem2Report rep = check_theorem2(n, 1000 + seed);
            CHECK(rep.residual <= 1e-8);
        }
    }
    CHECK_THROWS_AS(check_theorem2(1, 0), InvalidArgument);
}

TEST_CASE("KL Legendre transform and the Fenchel inequality") {
    Distribution q({0.4, 0.6});
    Distribution p({0.5, 0.5});
    CHECK(kl_legendre(std::vector<double>(4, 0.0), q, p) == doctest::Approx(0.0));

    std::mt19937_64 rng(83);
    std::uniform_real_distribution<double> unif(1e-3, 1.0);
    std::uniform_real_distribution<double> upot(-2.0, 2.0);
    for (int k = 0; k < 100; ++k) {
        std::vector<double> u(4);
        for (double& v : u) v = upot(rng);
        std::vector<double> wm(4);
        for (double& v : wm) v = unif(rng);
        JointDistribution w(2, 2, wm);
        double pairing = 0.0;
        for (std::size_t x = 0; x < 2; ++x)
            for (std::size_t y = 0; y < 2; ++y) pairing += w(x, y) * u[x * 2 + y];
        double divergence = 0.0;
        for (std::size_t x = 0; x < 2; ++x)
            for (std::size_t y = 0; y < 2; ++y)
                divergence += w(x, y) * std::log(w(x, y) / (q[x] * p[y]));
        CHECK(pairing - divergence <= kl_legendre(u, q, p) + 1e-10);
    }

    // u = ln(w / q (x) p) for a coupling of (q, p) makes the bound tight.
    JointDistribution w = JointDistribution::product(q, p);
    std::vector<double> u(4);
    for (std::size_t x = 0; x < 2; ++x)
        for (std::size_t y = 0; y < 2; ++y) u[x * 2 + y] = std::log(w(x, y) / (q[x] * p[y]));
    CHECK(std::abs(kl_legendre(u, q, p)) <= 1e-12);
}
