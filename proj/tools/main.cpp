// Command-line front end: solver dispatch, lambda sweeps, identity and
// inequality verification batches, CSV emission.
//
// Exit codes: 0 success, 1 verification failure, 2 input error.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "otinfo/channel.hpp"
#include "otinfo/geometry.hpp"
#include "otinfo/info_otp.hpp"
#include "otinfo/instance_io.hpp"
#include "otinfo/measures.hpp"
#include "otinfo/oracles.hpp"
#include "otinfo/transport_lp.hpp"

namespace {

using namespace otinfo;

constexpr double kLn2 = 0.6931471805599453;

struct Options {
    std::string input_path;
    std::optional<std::string> out_path;
    bool bits = false;
    double lambda = 0.0;
    std::vector<double> grid;  // start, stop, steps
    std::uint64_t seed = 0;
    int count = 100;
};

std::string fmt(double v) {
    if (v == kInfinity) return "inf";
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

// Information quantities are printed in nats unless --bits is given.
double info_scale(const Options& opt) { return opt.bits ? 1.0 / kLn2 : 1.0; }

ParsedInstance load(const Options& opt) { return load_instance(opt.input_path); }

const Distribution& require(const std::optional<Distribution>& d, const char* key) {
    if (!d) throw ParseError(std::string("instance is missing key '") + key + "'");
    return *d;
}

const CostMatrix& require(const std::optional<CostMatrix>& c) {
    if (!c) throw ParseError("instance is missing key 'cost'");
    return *c;
}

void print_matrix(std::ostream& os, const JointDistribution& w, const char* name) {
    os << name << " =\n";
    for (std::size_t x = 0; x < w.rows(); ++x) {
        os << " ";
        for (std::size_t y = 0; y < w.cols(); ++y) os << " " << fmt(w(x, y));
        os << "\n";
    }
}

int cmd_otp(const Options& opt, std::ostream& os) {
    ParsedInstance in = load(opt);
    const auto& q = require(in.q, "q");
    const auto& p = require(in.p, "p");
    const auto& c = require(in.cost);
    TransportSolution sol = solve_otp(q, p, c);
    os << "K_c = " << fmt(sol.value) << "\n";
    print_matrix(os, sol.plan, "plan");
    os << "f =";
    for (double v : sol.f) os << " " << fmt(v);
    os << "\ng =";
    for (double v : sol.g) os << " " << fmt(v);
    os << "\niterations = " << sol.iterations << "\n";
    return 0;
}

int cmd_ocp(const Options& opt, std::ostream& os) {
    ParsedInstance in = load(opt);
    const auto& q = require(in.q, "q");
    const auto& c = require(in.cost);
    ChannelSolution sol = solve_ocp(q, c, InfoBudget(opt.lambda));
    double s = info_scale(opt);
    os << "R_c(" << fmt(opt.lambda * s) << ") = " << fmt(sol.value) << "\n";
    os << "beta = " << fmt(sol.beta) << "\n";
    os << "I = " << fmt(sol.info * s) << "\n";
    print_matrix(os, sol.joint, "joint");
    return 0;
}

int cmd_cotp(const Options& opt, std::ostream& os) {
    ParsedInstance in = load(opt);
    const auto& q = require(in.q, "q");
    const auto& p = require(in.p, "p");
    const auto& c = require(in.cost);
    ConstrainedTransportSolution sol = solve_constrained_otp(q, p, c, InfoBudget(opt.lambda));
    double s = info_scale(opt);
    os << "K_c(" << fmt(opt.lambda * s) << ") = " << fmt(sol.value) << "\n";
    os << "active = " << (sol.active ? "true" : "false") << "\n";
    os << "beta = " << fmt(sol.beta) << "\n";
    os << "I = " << fmt(sol.info * s) << "\n";
    return 0;
}

int cmd_dual(const Options& opt, std::ostream& os) {
    ParsedInstance in = load(opt);
    const auto& q = require(in.q, "q");
    const auto& p = require(in.p, "p");
    const auto& c = require(in.cost);
    TransportSolution sol = solve_otp(q, p, c);
    double dual = dual_value(sol, q, p);
    os << "J_c = " << fmt(dual) << "\n";
    os << "duality_gap = " << fmt(std::abs(sol.value - dual)) << "\n";
    return 0;
}

int cmd_identities(const Options& opt, std::ostream& os) {
    ParsedInstance in = load(opt);
    const auto& p = require(in.p, "p");
    const auto& q = require(in.q, "q");
    Distribution r = in.reference ? *in.reference : Distribution::uniform(p.size());
    double cos_res = law_of_cosines(p, q, r).residual;
    KlMinusReport minus = kl_minus_decomposition(p, q, r);
    JointDistribution prod = JointDistribution::product(q, p);
    double pyth = std::abs(cross_information(prod, q) - mutual_information(prod) -
                           kl_divergence(p, q));
    os << "law_of_cosines_residual = " << fmt(cos_res) << "\n";
    os << "kl_minus_residual = " << fmt(minus.decomposition_residual) << "\n";
    os << "symmetrized_residual = " << fmt(minus.symmetrized_residual) << "\n";
    os << "pythagoras_residual = " << fmt(pyth) << "\n";
    double worst = std::max({cos_res, minus.decomposition_residual, minus.symmetrized_residual,
                             pyth});
    return worst <= 1e-10 ? 0 : 1;
}

int cmd_sweep(const Options& opt, std::ostream& os) {
    ParsedInstance in = load(opt);
    const auto& q = require(in.q, "q");
    const auto& p = require(in.p, "p");
    const auto& c = require(in.cost);
    if (opt.grid.size() != 3) throw ParseError("sweep: --grid needs START STOP STEPS");
    double start = opt.grid[0], stop = opt.grid[1];
    int steps = static_cast<int>(opt.grid[2]);
    if (steps < 1 || stop < start) throw ParseError("sweep: invalid grid");

    double s = info_scale(opt);
    double r0 = solve_ocp(q, c, InfoBudget(0.0)).value;
    double j_c = 0.0;
    {
        TransportSolution lp = solve_otp(q, p, c);
        j_c = dual_value(lp, q, p);
    }
    os << "lambda,r_c,k_c_lambda,j_c,v_lambda,beta,info_achieved,active\n";
    for (int k = 0; k < steps; ++k) {
        double lambda = steps == 1 ? start : start + (stop - start) * k / (steps - 1);
        ChannelSolution ocp = solve_ocp(q, c, InfoBudget(lambda));
        ConstrainedTransportSolution cotp = solve_constrained_otp(q, p, c, InfoBudget(lambda));
        os << fmt(lambda * s) << "," << fmt(ocp.value) << "," << fmt(cotp.value) << ","
           << fmt(j_c) << "," << fmt(r0 - ocp.value) << "," << fmt(ocp.beta) << ","
           << fmt(ocp.info * s) << "," << (cotp.active ? 1 : 0) << "\n";
    }
    return 0;
}

int cmd_verify(const Options& opt, std::ostream& os) {
    int passed = 0, failed = 0;
    auto check = [&](bool ok, const char* invariant, std::uint64_t seed) {
        if (ok) {
            ++passed;
        } else {
            ++failed;
            os << "FAIL " << invariant << " seed=" << seed << "\n";
        }
    };

    for (int k = 0; k < opt.count; ++k) {
        std::uint64_t seed = opt.seed + static_cast<std::uint64_t>(k);
        oracles::InstanceSpec spec;
        spec.nx = 2 + seed % 2;
        spec.ny = spec.nx;
        spec.seed = seed;
        spec.cost_kind = oracles::CostKind::random_uniform;
        spec.marginal_kind = oracles::MarginalKind::random_dirichlet;
        oracles::Instance inst = oracles::generate(spec);

        TransportSolution lp = solve_otp(inst.q, inst.p, inst.c);
        oracles::BruteforceResult bf = oracles::lp_bruteforce(inst.q, inst.p, inst.c);
        check(std::abs(lp.value - bf.value) <= 1e-10, "lp_matches_bruteforce", seed);
        check(std::abs(lp.value - dual_value(lp, inst.q, inst.p)) <= 1e-9, "strong_duality",
              seed);

        double slack_res = 0.0, feas_res = 0.0;
        for (std::size_t x = 0; x < inst.q.size(); ++x) {
            for (std::size_t y = 0; y < inst.p.size(); ++y) {
                double margin = lp.f[y] - lp.g[x] - inst.c(x, y);
                feas_res = std::max(feas_res, margin);
                if (lp.plan(x, y) > 1e-12) slack_res = std::max(slack_res, std::abs(margin));
            }
        }
        check(feas_res <= 1e-9, "dual_feasibility", seed);
        check(slack_res <= 1e-9, "complementary_slackness", seed);

        double hq = entropy(inst.q), hp = entropy(inst.p);
        double lambda = 0.5 * std::min(hq, hp);
        ChannelSolution ocp = solve_ocp(inst.q, inst.c, InfoBudget(lambda));
        ConstrainedTransportSolution cotp =
            solve_constrained_otp(inst.q, inst.p, inst.c, InfoBudget(lambda));
        check(ocp.value <= cotp.value + 1e-8, "sandwich_inequality", seed);

        double pyth = std::abs(cross_information(lp.plan, inst.q) -
                               mutual_information(lp.plan) -
                               kl_divergence(lp.plan.col_marginal(), inst.q));
        check(pyth <= 1e-10, "pythagoras_identity", seed);

        // 1D grid oracle on a separate instance from the same seed.
        oracles::InstanceSpec gs = spec;
        gs.nx = gs.ny = 6;
        gs.cost_kind = oracles::CostKind::grid_abs;
        oracles::Instance ginst = oracles::generate(gs);
        double lp1d = solve_otp(ginst.q, ginst.p, ginst.c).value;
        check(std::abs(lp1d - oracles::monotone_1d(ginst.q, ginst.p, 1.0)) <= 1e-10,
              "monotone_1d_oracle", seed);
    }
    os << "passed = " << passed << "\n";
    os << "failed = " << failed << "\n";
    return failed == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Finite-space optimal transport, optimal channel and KL-geometry toolkit"};
    app.require_subcommand(1);

    Options opt;
    app.add_flag("--bits", opt.bits, "print information quantities in bits instead of nats");
    app.add_option("--out", opt.out_path, "write output to a file instead of stdout");

    auto* otp = app.add_subcommand("otp", "exact transport LP: value, plan, dual potentials");
    otp->add_option("--input", opt.input_path, "instance file")->required();

    auto* ocp = app.add_subcommand("ocp", "optimal channel value R_c(lambda)");
    ocp->add_option("--input", opt.input_path, "instance file")->required();
    ocp->add_option("--lambda", opt.lambda, "information budget (nats)")->required();

    auto* cotp = app.add_subcommand("cotp", "information-constrained transport K_c(lambda)");
    cotp->add_option("--input", opt.input_path, "instance file")->required();
    cotp->add_option("--lambda", opt.lambda, "information budget (nats)")->required();

    auto* dual = app.add_subcommand("dual", "dual transport value and duality gap");
    dual->add_option("--input", opt.input_path, "instance file")->required();

    auto* identities = app.add_subcommand("identities", "KL-geometry residual suite");
    identities->add_option("--input", opt.input_path, "instance file")->required();

    auto* sweep = app.add_subcommand("sweep", "lambda sweep, CSV output");
    sweep->add_option("--input", opt.input_path, "instance file")->required();
    sweep->add_option("--grid", opt.grid, "START STOP STEPS")->expected(3)->required();

    auto* verify = app.add_subcommand("verify", "seeded random-instance verification batch");
    verify->add_option("--seed", opt.seed, "base seed");
    verify->add_option("--count", opt.count, "number of instances");

    CLI11_PARSE(app, argc, argv);

    std::ostringstream buffer;
    int code = 0;
    try {
        if (otp->parsed()) code = cmd_otp(opt, buffer);
        if (ocp->parsed()) code = cmd_ocp(opt, buffer);
        if (cotp->parsed()) code = cmd_cotp(opt, buffer);
        if (dual->parsed()) code = cmd_dual(opt, buffer);
        if (identities->parsed()) code = cmd_identities(opt, buffer);
        if (sweep->parsed()) code = cmd_sweep(opt, buffer);
        if (verify->parsed()) code = cmd_verify(opt, buffer);
    } catch (const ParseError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    } catch (const InvalidArgument& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }

    if (opt.out_path) {
        std::ofstream out(*opt.out_path);
        if (!out) {
            std::cerr << "input error: cannot open output file " << *opt.out_path << "\n";
            return 2;
        }
        out << buffer.str();
    } else {
        std::cout << buffer.str();
    }
    return code;
}
