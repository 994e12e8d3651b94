#include <cmath>
#include <random>

#include <doctest.h>

#include "otinfo/channel.hpp"
#include "otinfo/measures.hpp"
#include "otinfo/oracles.hpp"

using namespace otinfo;

namespace {

const double kLn2 = std::log(2.0);

// 2x2 fixture: uniform input, Hamming cost.
const Distribution kQ({0.5, 0.5});

void check_exponential_form(const ChannelSolution& sol, const CostMatrix& c) {
    if (is_infinite(sol.beta)) return;
    const Distribution q = sol.joint.row_marginal();
    for (std::size_t x = 0; x < c.rows(); ++x) {
        double ref = kInfinity;
        for (std::size_t y = 0; y < c.cols(); ++y) {
            // Atoms below the solver's marginal floor are excluded: the
            // exponential form is only enforced on the surviving support.
            if (sol.joint(x, y) <= 1e-9) continue;
            double v = std::log(sol.joint(x, y) / (q[x] * sol.output_marginal[y])) +
                       sol.beta * c(x, y);
            if (is_infinite(ref))
                ref = v;
            else
                CHECK(std::abs(v - ref) <= 1e-7);
        }
    }
}

}  // namespace

TEST_CASE("beta zero selects the best product coupling") {
    CostMatrix c = CostMatrix::hamming(2);
    ChannelSolution sol = solve_ocp_at_beta(kQ, c, 0.0);
    CHECK(sol.info == doctest::Approx(0.0));
    CHECK(sol.value == doctest::Approx(0.5));

    // Asymmetric cost: best single column wins, lowest index on ties.
    CostMatrix c2(2, 2, {0.0, 1.0, 2.0, 0.5});
    ChannelSolution sol2 = solve_ocp_at_beta(kQ, c2, 0.0);
    double best = std::min(0.5 * (0.0 + 2.0), 0.5 * (1.0 + 0.5));
    CHECK(sol2.value == doctest::Approx(best));
    CHECK(sol2.info == doctest::Approx(0.0));
}

TEST_CASE("large beta approaches the identity channel on the fixture") {
    CostMatrix c = CostMatrix::hamming(2);
    ChannelSolution sol = solve_ocp_at_beta(kQ, c, 1e3);
    CHECK(sol.value <= 1e-3);
    CHECK(sol.info == doctest::Approx(kLn2).epsilon(1e-2));
    check_exponential_form(sol, c);
}

TEST_CASE("point-mass input carries no information") {
    Distribution q({1.0, 0.0});
    CostMatrix c = CostMatrix::hamming(2);
    for (double beta : {0.0, 0.5, 3.0, 50.0}) {
        ChannelSolution sol = solve_ocp_at_beta(q, c, beta);
        CHECK(sol.info <= 1e-12);
    }
}

TEST_CASE("solve_ocp endpoints on the fixture") {
    CostMatrix c = CostMatrix::hamming(2);
    ChannelSolution at0 = solve_ocp(kQ, c, InfoBudget(0.0));
    CHECK(at0.value == doctest::Approx(0.5));

    ChannelSolution slack = solve_ocp(kQ, c, InfoBudget(kLn2));
    CHECK(slack.value == doctest::Approx(0.0));
    CHECK(is_infinite(slack.beta));
}

TEST_CASE("solve_ocp interior point matches the grid-search oracle") {
    CostMatrix c = CostMatrix::hamming(2);
    InfoBudget budget(kLn2 / 2.0);
    ChannelSolution sol = solve_ocp(kQ, c, budget);
    CHECK(sol.value > 0.0);
    CHECK(sol.value < 0.5);
    CHECK(std::abs(sol.info - budget.lambda) <= 1e-6);
    double oracle = oracles::channel_gridsearch(kQ, c, budget, 1e-3);
    CHECK(std::abs(sol.value - oracle) <= 1e-3);
    check_exponential_form(sol, c);
}

TEST_CASE("Blahut-Arimoto Lagrangian never increases") {
    std::mt19937_64 rng(41);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    for (int k = 0; k < 20; ++k) {
        std::vector<double> cost(9);
        for (double& v : cost) v = unif(rng);
        std::vector<double> wq(3);
        for (double& v : wq) v = unif(rng) + 1e-3;
        ChannelSolution sol = solve_ocp_at_beta(Distribution(wq), CostMatrix(3, 3, cost),
                                                0.2 + 5.0 * unif(rng));
        CHECK(sol.max_lagrangian_increase <= 1e-12);
        check_exponential_form(sol, CostMatrix(3, 3, cost));
    }
}

TEST_CASE("R_c is non-increasing and convex on a sweep") {
    CostMatrix c = CostMatrix::hamming(2);
    std::vector<double> lambdas;
    for (int k = 0; k < 16; ++k) lambdas.push_back(kLn2 * k / 15.0);
    std::vector<ValuePoint> curve = value_of_information(kQ, c, lambdas);
    CHECK(curve.front().value == doctest::Approx(0.0));
    for (std::size_t k = 1; k < curve.size(); ++k) {
        CHECK(curve[k].r_c <= curve[k - 1].r_c + 1e-8);
        CHECK(curve[k].value >= curve[k - 1].value - 1e-8);
    }
    for (std::size_t k = 1; k + 1 < curve.size(); ++k) {
        double second = curve[k + 1].r_c - 2.0 * curve[k].r_c + curve[k - 1].r_c;
        CHECK(second >= -1e-8);
    }
    CHECK_THROWS_AS(value_of_information(kQ, c, std::vector<double>{0.5, 0.1}),
                    InvalidArgument);
}

TEST_CASE("value of information slope matches the inverse temperature") {
    CostMatrix c = CostMatrix::hamming(2);
    std::vector<double> lambdas;
    const int n = 64;
    for (int k = 0; k < n; ++k) lambdas.push_back(0.05 + (0.65 - 0.05) * k / (n - 1));
    std::vector<ValuePoint> curve = value_of_information(kQ, c, lambdas);
    for (int k = 1; k + 1 < n; ++k) {
        if (!curve[k].active || !curve[k - 1].active || !curve[k + 1].active) continue;
        double slope = (curve[k + 1].value - curve[k - 1].value) /
                       (curve[k + 1].lambda - curve[k - 1].lambda);
        double inv_beta = 1.0 / curve[k].beta;
        CHECK(std::abs(inv_beta - slope) / inv_beta <= 1e-2);
    }
}

TEST_CASE("fixture value of information at full budget") {
    CostMatrix c = CostMatrix::hamming(2);
    std::vector<ValuePoint> curve = value_of_information(kQ, c, {0.0, kLn2});
    CHECK(curve[0].value == doctest::Approx(0.0));
    CHECK(curve[1].value == doctest::Approx(0.5).epsilon(1e-9));
}

TEST_CASE("translation-invariant form") {
    // Cyclic-shift-invariant cost with uniform input.
    oracles::InstanceSpec spec;
    spec.nx = spec.ny = 4;
    spec.seed = 5;
    spec.cost_kind = oracles::CostKind::translation_invariant_cyclic;
    spec.marginal_kind = oracles::MarginalKind::uniform;
    oracles::Instance inst = oracles::generate(spec);
    ChannelSolution sol = solve_ocp_at_beta(inst.q, inst.c, 2.0);
    TranslationInvarianceReport rep = check_translation_invariant_form(sol, inst.c);
    CHECK(rep.holds);
    CHECK(rep.residual <= 1e-7);

    // Hamming is translation invariant as well.
    ChannelSolution hsol = solve_ocp_at_beta(kQ, CostMatrix::hamming(2), 1.5);
    CHECK(check_translation_invariant_form(hsol, CostMatrix::hamming(2)).holds);

    // A generic random cost is not.
    spec.cost_kind = oracles::CostKind::random_uniform;
    spec.marginal_kind = oracles::MarginalKind::random_dirichlet;
    int violated = 0;
    for (unsigned s = 0; s < 10; ++s) {
        spec.seed = 100 + s;
        oracles::Instance r = oracles::generate(spec);
        ChannelSolution rs = solve_ocp_at_beta(r.q, r.c, 2.0);
        if (!check_translation_invariant_form(rs, r.c).holds) ++violated;
    }
    CHECK(violated >= 8);

    CHECK_THROWS_AS(check_translation_invariant_form(hsol, CostMatrix(2, 3, {0, 1, 1, 1, 0, 1})),
                    DimensionMismatch);
}
