#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "tetracert/certificate.hpp"
#include "tetracert/exact.hpp"
#include "tetracert/moments.hpp"
#include "tetracert/montecarlo.hpp"
#include "tetracert/node_search.hpp"
#include "tetracert/onesided.hpp"

namespace fs = std::filesystem;
using namespace tetracert;

namespace {

constexpr int kExitCertified = 0;
constexpr int kExitError = 1;
constexpr int kExitNotCertified = 2;

struct RunConfig {
    unsigned k_max = 13;
    unsigned degree = 13;
    unsigned grid = 1000;
    unsigned long max_den = 100;
    unsigned threads = 0;
    unsigned direct_cap = 5;
    fs::path moments = "moments.txt";
    fs::path nodes = "nodes.txt";
    fs::path report;
    fs::path poly;
    fs::path dir = ".";
    std::string construction = "hermite";
    std::string mode = "four";
    std::string frame = "unit";
    unsigned power = 1;
    std::uint64_t samples = 10'000'000;
    std::uint64_t seed = 1;
    std::optional<double> reference;
};

MomentOptions moment_options(const RunConfig& cfg) {
    MomentOptions o;
    o.threads = cfg.threads;
    o.direct_cap = cfg.direct_cap;
    return o;
}

int cmd_moments(const RunConfig& cfg) {
    const auto start = std::chrono::steady_clock::now();
    const MomentTable table = moment_table(cfg.k_max, cfg.moments, moment_options(cfg));
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    for (const auto& [k, e] : table.entries()) {
        if (k > cfg.k_max) {
            continue;
        }
        std::cout << "E V^" << 2 * k << " = " << to_string(e.value) << "  (" << to_string(e.provenance)
                  << ")\n";
    }
    std::cout << "wrote " << cfg.moments.string() << " in " << std::fixed << std::setprecision(2) << secs
              << " s\n";
    return 0;
}

MomentTable load_or_compute(const RunConfig& cfg, unsigned k_max) {
    if (fs::exists(cfg.moments)) {
        MomentTable t = read_moment_cache(cfg.moments);
        if (t.contiguous_orders() >= k_max) {
            return t;
        }
    }
    return moment_table(k_max, cfg.moments, moment_options(cfg));
}

int cmd_search(const RunConfig& cfg) {
    if (cfg.grid < cfg.degree) {
        throw std::invalid_argument("--grid must be at least --degree");
    }
    const MomentTable table = load_or_compute(cfg, cfg.degree);
    const LpProblem problem = make_lp_problem(table, cfg.degree, cfg.grid);
    const LpSolution sol = solve_onesided_lp(problem);
    const std::vector<double> estimates = extract_nodes(sol, problem.grid);
    const NodeSet nodes = rationalize_nodes(estimates, cfg.max_den);
    write_nodes(cfg.nodes, nodes);

    std::cout << std::setprecision(10);
    std::cout << "lp-status: " << to_string(sol.status) << '\n';
    std::cout << "lp-iterations: " << sol.iterations << '\n';
    std::cout << "lp-objective: " << sol.objective << '\n';
    std::cout << "lp-max-violation: " << sol.max_violation << '\n';
    for (std::size_t i = 0; i < estimates.size(); ++i) {
        std::cout << "node " << i << ": " << estimates[i] << " -> " << to_string(nodes[i]) << '\n';
    }
    std::cout << "wrote " << cfg.nodes.string() << '\n';

    const RationalInterval target = target_enclosure();
    if (sol.objective >= target.lo.get_d()) {
        std::cerr << "warning: LP lower bound " << sol.objective << " is not below the target "
                  << target.lo.get_d() << "; certification with these nodes will fail\n";
    }
    return 0;
}

int cmd_certify(const RunConfig& cfg) {
    const NodeSet nodes = read_nodes(cfg.nodes);
    const MomentTable table = read_moment_cache(cfg.moments);
    const Certificate c = certify(nodes, table, parse_construction(cfg.construction));
    if (cfg.report.empty()) {
        render_report(std::cout, c);
    } else {
        std::ofstream out(cfg.report, std::ios::binary);
        if (!out) {
            throw std::runtime_error("cannot write " + cfg.report.string());
        }
        render_report(out, c);
        std::cout << "bound: " << to_decimal(c.bound, 20) << '\n';
        std::cout << "verdict: " << (c.verdict ? kVerdictCertified : kVerdictNotCertified) << '\n';
        std::cout << "wrote " << cfg.report.string() << '\n';
    }
    if (!cfg.poly.empty()) {
        std::ofstream out(cfg.poly, std::ios::binary);
        write_even_poly(out, c.p_cert);
    }
    return c.verdict ? kExitCertified : kExitNotCertified;
}

int cmd_mc(const RunConfig& cfg) {
    McOptions opts;
    opts.threads = cfg.threads;
    opts.frame = cfg.frame == "standard" ? McFrame::scaled_standard : McFrame::unit_volume;
    const McMode mode = parse_mc_mode(cfg.mode);
    const EstimatorResult r = estimate(mode, cfg.power, cfg.samples, cfg.seed, opts);
    std::cout << std::setprecision(12);
    std::cout << "mode: " << to_string(mode) << '\n';
    std::cout << "power: " << cfg.power << '\n';
    std::cout << "samples: " << r.samples << '\n';
    std::cout << "seed: " << r.seed << '\n';
    std::cout << "mean: " << r.mean << '\n';
    std::cout << "standard-error: " << r.standard_error << '\n';
    if (cfg.reference) {
        const double z = (r.mean - *cfg.reference) / r.standard_error;
        std::cout << "reference: " << *cfg.reference << '\n';
        std::cout << "z-score: " << std::setprecision(4) << z << '\n';
    }
    return 0;
}

int cmd_all(RunConfig cfg) {
    fs::create_directories(cfg.dir);
    cfg.moments = cfg.dir / "moments.txt";
    cfg.nodes = cfg.dir / "nodes.txt";
    cfg.report = cfg.dir / "report.txt";
    cfg.poly = cfg.dir / "poly.txt";
    std::cout << "== moments\n";
    cmd_moments(cfg);
    std::cout << "== search\n";
    cmd_search(cfg);
    std::cout << "== certify\n";
    return cmd_certify(cfg);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact certificate for the centroid-pinned random tetrahedron bound"};
    app.require_subcommand(1);
    RunConfig cfg;

    auto add_threads = [&](CLI::App* sub) {
        sub->add_option("--threads", cfg.threads, "worker threads (default: TETRACERT_THREADS or all cores)");
    };
    auto add_moment_flags = [&](CLI::App* sub) {
        sub->add_option("--k-max", cfg.k_max, "highest order k of E V^{2k}")->check(CLI::Range(1u, 40u));
        sub->add_option("--direct-cap", cfg.direct_cap, "largest k cross-checked by the direct enumerator")
            ->check(CLI::Range(1u, 8u));
    };
    auto add_search_flags = [&](CLI::App* sub) {
        sub->add_option("--degree", cfg.degree, "LP degree n (polynomial degree 2n)")->check(CLI::Range(0u, 40u));
        sub->add_option("--grid", cfg.grid, "number of grid intervals L on [0, 1/3]")->check(CLI::Range(1u, 100000u));
        sub->add_option("--max-den", cfg.max_den, "largest denominator for rationalized nodes")
            ->check(CLI::PositiveNumber);
    };

    auto* moments = app.add_subcommand("moments", "compute the exact even moments and write the cache");
    add_moment_flags(moments);
    moments->add_option("--out", cfg.moments, "moment cache file");
    add_threads(moments);

    auto* search = app.add_subcommand("search", "solve the grid LP and write rationalized nodes");
    add_search_flags(search);
    search->add_option("--moments", cfg.moments, "moment cache (computed if missing)");
    search->add_option("--out", cfg.nodes, "node file");
    add_threads(search);

    auto* cert = app.add_subcommand("certify", "build P_cert and check the bound exactly");
    cert->add_option("--nodes", cfg.nodes, "node file")->required()->check(CLI::ExistingFile);
    cert->add_option("--moments", cfg.moments, "moment cache")->required()->check(CLI::ExistingFile);
    cert->add_option("--report", cfg.report, "report file (default: stdout)");
    cert->add_option("--poly", cfg.poly, "also write P_cert coefficients");
    cert->add_option("--construction", cfg.construction,
                     "hermite (double nodes) | endpoint (last node 1/3 matched by value only)")
        ->check(CLI::IsMember({"hermite", "endpoint"}));

    auto* mc = app.add_subcommand("mc", "Monte Carlo estimate of E V^power");
    mc->add_option("--mode", cfg.mode, "four | centroid")->check(CLI::IsMember({"four", "centroid"}));
    mc->add_option("--power", cfg.power, "exponent of the volume")->check(CLI::Range(1u, 10u));
    mc->add_option("--samples", cfg.samples, "number of configurations")->check(CLI::Range(1000ull, 100'000'000'000ull));
    mc->add_option("--seed", cfg.seed, "RNG seed");
    mc->add_option("--frame", cfg.frame, "unit | standard")->check(CLI::IsMember({"unit", "standard"}));
    mc->add_option("--reference", cfg.reference, "value to compare against");
    add_threads(mc);

    auto* all = app.add_subcommand("all", "moments, search and certify in one directory");
    add_moment_flags(all);
    add_search_flags(all);
    all->add_option("--dir", cfg.dir, "output directory");
    add_threads(all);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        // Help and version exit 0; every usage error maps to the generic error code.
        return app.exit(e) == 0 ? 0 : kExitError;
    }

    try {
        if (moments->parsed()) {
            return cmd_moments(cfg);
        }
        if (search->parsed()) {
            return cmd_search(cfg);
        }
        if (cert->parsed()) {
            return cmd_certify(cfg);
        }
        if (mc->parsed()) {
            return cmd_mc(cfg);
        }
        if (all->parsed()) {
            return cmd_all(cfg);
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitError;
    }
    return kExitError;
}
