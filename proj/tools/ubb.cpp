// ubb: experiment driver.
//
//   ubb unbiased     --algo generic,custom3 --k 3,4 --mode pure,hack --n 100:100:2000 --out raw.csv
//   ubb unrestricted --mode pure,hack --n 2:1:32 --runs 10000 --out raw.csv --summary summary.csv
//   ubb verify       [--op Xor3] [--trials 100000]

#include "ubb/harness.hpp"
#include "ubb/operators.hpp"
#include "ubb/verifier.hpp"

#include "CLI11.hpp"

#include <algorithm>
#include <cstdio>
#include <iostream>
#include <mutex>
#include <thread>

using namespace ubb;

namespace {

struct Common {
    std::string n_text;
    std::uint64_t runs = 0;
    std::uint64_t seed = 1;
    unsigned jobs = std::max(1u, std::thread::hardware_concurrency());
    std::string out;
    std::string summary;
    bool quiet = false;
};

void add_common(CLI::App& app, Common& c)
{
    app.add_option("--runs", c.runs, "Runs per point")->check(CLI::PositiveNumber);
    app.add_option("--seed", c.seed, "Master seed");
    app.add_option("--jobs", c.jobs, "Worker threads")->check(CLI::PositiveNumber);
    app.add_option("--out", c.out, "Raw CSV path (default: standard output)");
    app.add_option("--summary", c.summary, "Also write the summary CSV here");
    app.add_flag("-q,--quiet", c.quiet, "No progress on standard error");
}

ProgressCallback progress_printer(bool quiet)
{
    if (quiet)
        return {};
    auto mutex = std::make_shared<std::mutex>();
    auto last = std::make_shared<std::uint64_t>(0);
    return [mutex, last](std::uint64_t done, std::uint64_t total) {
        std::lock_guard lock(*mutex);
        const std::uint64_t percent = total ? done * 100 / total : 100;
        if (percent != *last || done == total) {
            *last = percent;
            std::fprintf(stderr, "\r%llu/%llu runs (%llu%%)", static_cast<unsigned long long>(done),
                         static_cast<unsigned long long>(total), static_cast<unsigned long long>(percent));
            if (done == total)
                std::fputc('\n', stderr);
        }
    };
}

int emit(const ExperimentResult& result, const Common& c)
{
    if (c.out.empty())
        write_csv(std::cout, result.records);
    else
        write_csv(result.records, c.out);
    if (!c.summary.empty())
        write_csv(summarize(result.records), c.summary);
    for (const auto& f : result.failures)
        std::fprintf(stderr, "cell failed: algo=%s k=%d mode=%s n=%zu: %s\n", f.algo.c_str(), f.k, f.mode.c_str(), f.n,
                     f.message.c_str());
    return result.failures.empty() ? 0 : 1;
}

std::vector<SamplerMode> parse_modes(const std::vector<std::string>& names)
{
    std::vector<SamplerMode> out;
    for (const auto& m : names)
        out.push_back(parse_sampler_mode(m));
    return out;
}

int run_unbiased(const std::vector<std::string>& algos, const std::vector<int>& ks, const std::vector<std::string>& modes,
                 const std::string& seeding, Common c)
{
    if (c.runs == 0)
        c.runs = 100;
    const bool explicit_n = !c.n_text.empty();
    const auto grid = parse_n_list(explicit_n ? c.n_text : "100:100:2000");
    const bool seed_on = seeding == "on";

    std::vector<AlgoKind> kinds;
    for (const auto& a : algos) {
        if (a == "generic") {
            for (int k : ks)
                for (auto m : parse_modes(modes))
                    kinds.push_back(AlgoKind::generic(k, m, seed_on));
        } else if (a == "custom3") {
            kinds.push_back(AlgoKind::custom3());
        } else if (a == "binary") {
            kinds.push_back(AlgoKind::binary_baseline());
        } else {
            throw CLI::ValidationError("--algo", "unknown algorithm '" + a + "'");
        }
    }

    // One experiment per algorithm so the default grid can stop early for k = 6.
    ExperimentResult all;
    std::uint64_t total = 0, offset = 0;
    std::vector<std::vector<std::size_t>> grids;
    for (const auto& kind : kinds) {
        auto ns = grid;
        if (!explicit_n && kind.family == AlgoFamily::generic && kind.k >= 6)
            std::erase_if(ns, [](std::size_t n) { return n > 1000; });
        total += ns.size() * c.runs;
        grids.push_back(std::move(ns));
    }
    const auto printer = progress_printer(c.quiet);
    for (std::size_t i = 0; i < kinds.size(); ++i) {
        ExperimentConfig cfg;
        cfg.algos = {kinds[i]};
        cfg.ns = grids[i];
        cfg.runs = c.runs;
        cfg.master_seed = c.seed;
        cfg.jobs = c.jobs;
        ProgressCallback progress;
        if (printer)
            progress = [&, offset](std::uint64_t done, std::uint64_t) { printer(offset + done, total); };
        auto result = run_experiment(cfg, progress);
        offset += grids[i].size() * c.runs;
        all.records.insert(all.records.end(), result.records.begin(), result.records.end());
        all.failures.insert(all.failures.end(), result.failures.begin(), result.failures.end());
    }
    return emit(all, c);
}

int run_unrestricted_cmd(const std::vector<std::string>& modes, Common c)
{
    UnrestrictedConfig cfg;
    cfg.modes = parse_modes(modes);
    cfg.ells = parse_n_list(c.n_text.empty() ? "2:1:32" : c.n_text);
    cfg.runs = c.runs == 0 ? 10000 : c.runs;
    cfg.master_seed = c.seed;
    cfg.jobs = c.jobs;
    return emit(run_unrestricted_experiment(cfg, progress_printer(c.quiet)), c);
}

int run_verify(const std::vector<std::string>& names, std::size_t n, std::size_t trials, std::size_t samples,
               double alpha, std::uint64_t seed, bool control)
{
    RandomSource rng(seed);
    bool all = true;
    bool matched = false;
    for (const auto& op : ops::catalog()) {
        if (!names.empty() && std::find(names.begin(), names.end(), op.name()) == names.end())
            continue;
        matched = true;
        VerifierConfig cfg;
        cfg.n = n ? n : (op.arity() >= 3 ? 6 : 8);
        cfg.trials = trials;
        cfg.invariance_samples = samples;
        cfg.alpha = alpha;
        const auto report = verify_unbiasedness(op, cfg, rng);
        std::cout << format_report(report);
        all = all && report.passed;
    }
    if (!matched && !names.empty()) {
        std::cerr << "no catalog operator matches --op\n";
        return 2;
    }
    if (control) {
        const RawOperator flip_first = [](std::span<const BitString> args, RandomSource&) {
            BitString out = args[0];
            out.flip(0);
            return out;
        };
        VerifierConfig cfg;
        cfg.n = n ? n : 8;
        cfg.trials = trials;
        cfg.invariance_samples = samples;
        cfg.alpha = alpha;
        const auto report = verify_unbiasedness("FlipFirstPosition (negative control)", 1, flip_first, cfg, rng);
        std::cout << format_report(report);
        all = all && !report.passed;
    }
    return all ? 0 : 1;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Unbiased black-box OneMax experiments"};
    app.require_subcommand(1);

    Common ub;
    std::vector<std::string> algos{"generic"};
    std::vector<int> ks{3};
    std::vector<std::string> modes{"pure", "hack"};
    std::string seeding = "on";
    auto* unbiased = app.add_subcommand("unbiased", "Query counts of the unbiased solvers over an n grid");
    unbiased->add_option("--algo", algos, "generic, custom3, binary")->delimiter(',')->check(
        CLI::IsMember({"generic", "custom3", "binary"}));
    unbiased->add_option("--k", ks, "Arity of the generic solver")->delimiter(',');
    unbiased->add_option("--mode", modes, "Sampler of the generic solver")->delimiter(',')->check(
        CLI::IsMember({"pure", "hack"}));
    unbiased->add_option("--seeding", seeding, "Seed the sampler with the frame points")
        ->check(CLI::IsMember({"on", "off"}));
    unbiased->add_option("--n", ub.n_text, "Comma list or start:step:stop (default 100:100:2000, k = 6 up to 1000)");
    add_common(*unbiased, ub);

    Common un;
    std::vector<std::string> un_modes{"pure", "hack"};
    auto* unrestricted = app.add_subcommand("unrestricted", "Pure and hack sampler on bare l-bit OneMax");
    unrestricted->add_option("--mode", un_modes, "Samplers to run")->delimiter(',')->check(
        CLI::IsMember({"pure", "hack"}));
    unrestricted->add_option("--n,--ell", un.n_text, "Block lengths (default 2:1:32)");
    add_common(*unrestricted, un);

    std::vector<std::string> op_names;
    std::size_t v_n = 0, v_trials = 100000, v_samples = 3;
    double v_alpha = 1e-3;
    std::uint64_t v_seed = 1;
    bool v_control = false;
    auto* verify = app.add_subcommand("verify", "Statistical unbiasedness check of the operator catalog");
    verify->add_option("--op", op_names, "Only these operators")->delimiter(',');
    verify->add_option("--n", v_n, "String length (default 8, 6 for arity >= 3)");
    verify->add_option("--trials", v_trials, "Draws per distribution")->check(CLI::PositiveNumber);
    verify->add_option("--samples", v_samples, "Transformations per invariance kind")->check(CLI::PositiveNumber);
    verify->add_option("--alpha", v_alpha, "Family-wise significance level");
    verify->add_option("--seed", v_seed, "Seed");
    verify->add_flag("--control", v_control, "Also run the biased negative control, which must be rejected");

    CLI11_PARSE(app, argc, argv);

    try {
        if (unbiased->parsed())
            return run_unbiased(algos, ks, modes, seeding, ub);
        if (unrestricted->parsed())
            return run_unrestricted_cmd(un_modes, un);
        return run_verify(op_names, v_n, v_trials, v_samples, v_alpha, v_seed, v_control);
    } catch (const CLI::Error& e) {
        return app.exit(e);
    } catch (const std::exception& e) {
        std::fprintf(stderr, "ubb: %s\n", e.what());
        return 2;
    }
}
