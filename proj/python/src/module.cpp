#include "ubb/frame.hpp"
#include "ubb/harness.hpp"
#include "ubb/operators.hpp"
#include "ubb/samplers.hpp"
#include "ubb/solvers.hpp"
#include "ubb/verifier.hpp"

#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

namespace py = pybind11;
using namespace ubb;

namespace {

SamplerMode mode_of(const std::string& name)
{
    return parse_sampler_mode(name);
}

AlgoKind algo_of(const std::string& algo, int k, const std::string& mode, bool seeding)
{
    if (algo == "generic")
        return AlgoKind::generic(k, mode_of(mode), seeding);
    if (algo == "custom3")
        return AlgoKind::custom3();
    if (algo == "binary")
        return AlgoKind::binary_baseline();
    throw std::invalid_argument("unknown algorithm '" + algo + "'");
}

py::dict record_dict(const RunRecord& r)
{
    py::dict d;
    d["algo"] = r.algo;
    d["k"] = r.k;
    d["mode"] = r.mode;
    d["n"] = r.n;
    d["run"] = r.run;
    d["seed"] = r.seed;
    d["queries"] = r.queries;
    return d;
}

std::string records_csv(const std::vector<RunRecord>& records)
{
    std::ostringstream os;
    write_csv(os, records);
    return os.str();
}

} // namespace

PYBIND11_MODULE(_core, m)
{
    m.doc() = "Unbiased black-box algorithms for OneMax";

    py::register_exception<ContractViolation>(m, "ContractViolation", PyExc_ValueError);
    py::register_exception<UnsupportedAlgorithm>(m, "UnsupportedAlgorithm", PyExc_NotImplementedError);

    m.def(
        "solve_generic",
        [](std::size_t n, int k, const std::string& mode, bool seeding, std::uint64_t seed) {
            RandomSource rng(seed);
            return solve_generic(n, k, mode_of(mode), seeding, rng);
        },
        py::arg("n"), py::arg("k") = 3, py::arg("mode") = "hack", py::arg("seeding") = true, py::arg("seed") = 1,
        "Query count of one generic solver run on a random target.");

    m.def(
        "solve_custom3",
        [](std::size_t n, std::uint64_t seed) {
            RandomSource rng(seed);
            return solve_custom3(n, rng);
        },
        py::arg("n"), py::arg("seed") = 1);

    m.def(
        "solve_target",
        [](const std::string& target, const std::string& algo, int k, const std::string& mode, bool seeding,
           std::uint64_t seed) {
            RandomSource rng(seed);
            OneMaxInstance instance(BitString::from_string(target));
            if (algo == "custom3")
                return solve_custom3(instance, rng);
            GenericOptions options;
            options.k = k;
            options.mode = mode_of(mode);
            options.seeding = seeding;
            return solve_generic(instance, options, rng);
        },
        py::arg("target"), py::arg("algo") = "generic", py::arg("k") = 3, py::arg("mode") = "hack",
        py::arg("seeding") = true, py::arg("seed") = 1, "Solve a given 0/1 target string; returns the query count.");

    m.def(
        "run_unrestricted",
        [](std::size_t ell, const std::string& mode, std::uint64_t seed) { return run_unrestricted(ell, mode_of(mode), seed); },
        py::arg("ell"), py::arg("mode") = "hack", py::arg("seed") = 1);

    m.def(
        "count_consistent",
        [](std::size_t ell, const std::vector<std::pair<std::string, int>>& probes) {
            SampleHistory h(ell);
            for (const auto& [w, f] : probes)
                h.append({BitString::from_string(w), f});
            return count_consistent(h);
        },
        py::arg("ell"), py::arg("probes"), "Number of l-bit strings consistent with (w, f) probes.");

    m.def(
        "get_consistent",
        [](std::size_t ell, const std::vector<std::pair<std::string, int>>& probes) {
            SampleHistory h(ell);
            for (const auto& [w, f] : probes)
                h.append({BitString::from_string(w), f});
            return get_consistent(h).to_string();
        },
        py::arg("ell"), py::arg("probes"));

    m.def(
        "apply_operator",
        [](const std::string& name, const std::vector<std::string>& args, std::uint64_t seed) {
            for (const auto& op : ops::catalog())
                if (op.name() == name) {
                    std::vector<BitString> bits;
                    for (const auto& a : args)
                        bits.push_back(BitString::from_string(a));
                    RandomSource rng(seed);
                    return apply_operator(op, bits, rng).to_string();
                }
            throw std::invalid_argument("unknown operator '" + name + "'");
        },
        py::arg("name"), py::arg("args"), py::arg("seed") = 1);

    m.def("operator_names", [] {
        std::vector<std::string> names;
        for (const auto& op : ops::catalog())
            names.push_back(op.name());
        return names;
    });

    m.def(
        "verify_operator",
        [](const std::string& name, std::size_t n, std::size_t trials, double alpha, std::uint64_t seed) {
            for (const auto& op : ops::catalog())
                if (op.name() == name) {
                    VerifierConfig cfg;
                    cfg.n = n ? n : (op.arity() >= 3 ? 6 : 8);
                    cfg.trials = trials;
                    cfg.alpha = alpha;
                    RandomSource rng(seed);
                    const auto report = verify_unbiasedness(op, cfg, rng);
                    return py::make_tuple(report.passed, format_report(report));
                }
            throw std::invalid_argument("unknown operator '" + name + "'");
        },
        py::arg("name"), py::arg("n") = 0, py::arg("trials") = 100000, py::arg("alpha") = 1e-3, py::arg("seed") = 1,
        "(passed, report text)");

    m.def(
        "run_experiment",
        [](const std::vector<std::tuple<std::string, int, std::string>>& algos, const std::vector<std::size_t>& ns,
           std::uint64_t runs, std::uint64_t master_seed, unsigned jobs, bool seeding) {
            ExperimentConfig cfg;
            for (const auto& [a, k, mode] : algos)
                cfg.algos.push_back(algo_of(a, k, mode, seeding));
            cfg.ns = ns;
            cfg.runs = runs;
            cfg.master_seed = master_seed;
            cfg.jobs = jobs;
            ExperimentResult result;
            {
                py::gil_scoped_release release;
                result = run_experiment(cfg);
            }
            py::list records;
            for (const auto& r : result.records)
                records.append(record_dict(r));
            py::list failures;
            for (const auto& f : result.failures)
                failures.append(py::make_tuple(f.algo, f.k, f.mode, f.n, f.message));
            py::dict out;
            out["records"] = records;
            out["failures"] = failures;
            out["csv"] = records_csv(result.records);
            return out;
        },
        py::arg("algos"), py::arg("ns"), py::arg("runs") = 100, py::arg("master_seed") = 1, py::arg("jobs") = 1,
        py::arg("seeding") = true, "algos: list of (algo, k, mode). Returns records, failures and the raw CSV text.");

    m.def(
        "summarize_csv",
        [](const std::string& raw) {
            std::istringstream in(raw);
            std::ostringstream out;
            write_csv(out, summarize(read_records_csv(in)));
            return out.str();
        },
        py::arg("raw_csv"), "Summary CSV text for raw CSV text.");

    m.def("parse_n_list", &parse_n_list, py::arg("text"));
    m.attr("raw_csv_header") = raw_csv_header;
    m.attr("summary_csv_header") = summary_csv_header;
}
