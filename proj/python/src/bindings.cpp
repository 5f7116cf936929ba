// Rationals cross the boundary as "p/q" strings; the Python side turns them
// into fractions.Fraction.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <map>
#include <string>
#include <vector>

#include "tetracert/certificate.hpp"
#include "tetracert/exact.hpp"
#include "tetracert/moments.hpp"
#include "tetracert/montecarlo.hpp"
#include "tetracert/node_search.hpp"
#include "tetracert/onesided.hpp"

namespace py = pybind11;
using namespace tetracert;

namespace {

std::vector<std::string> strings(const std::vector<Rational>& v) {
    std::vector<std::string> out;
    out.reserve(v.size());
    for (const auto& q : v) {
        out.push_back(to_string(q));
    }
    return out;
}

NodeSet nodes_from(const std::vector<std::string>& v) {
    std::vector<Rational> q;
    for (const auto& s : v) {
        q.push_back(parse_rational(s));
    }
    return NodeSet(std::move(q));
}

MomentTable table_from(const std::map<unsigned, std::string>& m) {
    MomentTable t;
    for (const auto& [k, s] : m) {
        t.set(k, parse_rational(s), Provenance::file);
    }
    return t;
}

std::map<unsigned, std::string> table_to(const MomentTable& t) {
    std::map<unsigned, std::string> out;
    for (const auto& [k, e] : t.entries()) {
        out[k] = to_string(e.value);
    }
    return out;
}

MomentOptions threads(unsigned n) {
    MomentOptions o;
    o.threads = n;
    return o;
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.def("even_moment_direct", [](unsigned k, unsigned n) { return to_string(even_moment_direct(k, threads(n))); },
          py::arg("k"), py::arg("threads") = 0);
    m.def("even_moment_fast", [](unsigned k, unsigned n) { return to_string(even_moment_fast(k, threads(n))); },
          py::arg("k"), py::arg("threads") = 0);

    m.def("moment_table",
          [](unsigned k_max, const std::string& cache, unsigned n) {
              py::gil_scoped_release release;
              return table_to(cache.empty() ? moment_table(k_max, threads(n))
                                            : moment_table(k_max, cache, threads(n)));
          },
          py::arg("k_max"), py::arg("cache") = "", py::arg("threads") = 0);
    m.def("read_moment_cache", [](const std::string& path) { return table_to(read_moment_cache(path)); });
    m.def("write_moment_cache", [](const std::string& path, const std::map<unsigned, std::string>& table) {
        write_moment_cache(path, table_from(table));
    });

    m.def("reference_nodes", [] { return strings(reference_nodes().values()); });
    m.def("read_nodes", [](const std::string& path) { return strings(read_nodes(path).values()); });
    m.def("write_nodes",
          [](const std::string& path, const std::vector<std::string>& nodes) { write_nodes(path, nodes_from(nodes)); });

    m.def("hermite_onesided",
          [](const std::vector<std::string>& nodes) { return strings(hermite_onesided(nodes_from(nodes)).coefficients()); });
    m.def("endpoint_onesided", [](const std::vector<std::string>& nodes) {
        return strings(endpoint_onesided(nodes_from(nodes)).coefficients());
    });

    m.def("target_enclosure", [] {
        const RationalInterval t = target_enclosure();
        return std::make_pair(to_string(t.lo), to_string(t.hi));
    });

    m.def("certify",
          [](const std::vector<std::string>& nodes, const std::map<unsigned, std::string>& table,
             const std::string& construction) {
              const Certificate c = certify(nodes_from(nodes), table_from(table), parse_construction(construction));
              py::dict d;
              d["bound"] = to_string(c.bound);
              d["target_lo"] = to_string(c.target.lo);
              d["target_hi"] = to_string(c.target.hi);
              d["coefficients"] = strings(c.p_cert.coefficients());
              d["dominance"] = c.dominance.valid;
              d["certified"] = c.verdict;
              d["report"] = render_report(c);
              return d;
          },
          py::arg("nodes"), py::arg("moments"), py::arg("construction") = "hermite");

    m.def("search",
          [](const std::map<unsigned, std::string>& table, unsigned degree, unsigned grid, unsigned long max_den) {
              const LpProblem problem = make_lp_problem(table_from(table), degree, grid);
              LpSolution sol;
              {
                  py::gil_scoped_release release;
                  sol = solve_onesided_lp(problem);
              }
              const std::vector<double> estimates = extract_nodes(sol, problem.grid);
              py::dict d;
              d["status"] = to_string(sol.status);
              d["objective"] = sol.objective;
              d["max_violation"] = sol.max_violation;
              d["iterations"] = sol.iterations;
              d["estimates"] = estimates;
              d["nodes"] = strings(rationalize_nodes(estimates, max_den).values());
              return d;
          },
          py::arg("moments"), py::arg("degree") = 13, py::arg("grid") = 1000, py::arg("max_den") = 100);

    m.def("rationalize", [](double x, unsigned long max_den) { return to_string(rationalize(x, max_den)); },
          py::arg("x"), py::arg("max_den"));

    m.def("estimate",
          [](const std::string& mode, unsigned power, std::uint64_t samples, std::uint64_t seed, unsigned n,
             const std::string& frame) {
              McOptions opts;
              opts.threads = n;
              opts.frame = frame == "standard" ? McFrame::scaled_standard : McFrame::unit_volume;
              const McMode parsed = parse_mc_mode(mode);
              py::gil_scoped_release release;
              const EstimatorResult r = estimate(parsed, power, samples, seed, opts);
              return std::make_pair(r.mean, r.standard_error);
          },
          py::arg("mode") = "four", py::arg("power") = 1, py::arg("samples") = 1'000'000, py::arg("seed") = 1,
          py::arg("threads") = 0, py::arg("frame") = "unit");
}
