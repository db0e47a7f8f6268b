#include "ubb/harness.hpp"

#include <atomic>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <map>
#include <mutex>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <thread>
#include <tuple>

namespace ubb {

namespace {

struct Task {
    std::size_t cell;
    std::uint64_t run;
};

// Runs `body(cell, run)` for every task on `jobs` threads. Results land in
// preallocated slots, so the output order never depends on scheduling.
template <class Body>
void parallel_runs(std::size_t cells, std::uint64_t runs, unsigned jobs, const ProgressCallback& progress,
                   Body body)
{
    const std::uint64_t total = cells * runs;
    std::atomic<std::uint64_t> next{0};
    std::atomic<std::uint64_t> done{0};
    std::mutex error_mutex;
    std::exception_ptr error;

    auto worker = [&] {
        while (true) {
            const auto index = next.fetch_add(1);
            if (index >= total)
                return;
            try {
                body(static_cast<std::size_t>(index / runs), index % runs);
            } catch (...) {
                std::lock_guard lock(error_mutex);
                if (!error)
                    error = std::current_exception();
                next = total;
                return;
            }
            const auto finished = done.fetch_add(1) + 1;
            if (progress)
                progress(finished, total);
        }
    };
    jobs = std::max(1u, jobs);
    if (jobs == 1) {
        worker();
    } else {
        std::vector<std::thread> threads;
        for (unsigned i = 0; i < jobs; ++i)
            threads.emplace_back(worker);
        for (auto& t : threads)
            t.join();
    }
    if (error)
        std::rethrow_exception(error);
}

std::string format_double(double value)
{
    char buffer[64];
    const auto [end, ec] = std::to_chars(buffer, buffer + sizeof buffer, value);
    if (ec != std::errc())
        throw std::runtime_error("format_double: conversion failed");
    return std::string(buffer, end);
}

std::vector<std::string> split_fields(const std::string& line)
{
    std::vector<std::string> fields;
    std::string field;
    std::istringstream in(line);
    while (std::getline(in, field, ','))
        fields.push_back(field);
    if (!line.empty() && line.back() == ',')
        fields.emplace_back();
    return fields;
}

template <class T>
T parse_number(const std::string& text, const char* what)
{
    T value{};
    const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc() || end != text.data() + text.size())
        throw std::runtime_error(std::string("csv: bad ") + what + " '" + text + "'");
    return value;
}

std::vector<std::vector<std::string>> read_rows(std::istream& in, const char* header, std::size_t columns)
{
    std::string line;
    if (!std::getline(in, line))
        throw std::runtime_error("csv: missing header");
    if (!line.empty() && line.back() == '\r')
        line.pop_back();
    if (line != header)
        throw std::runtime_error("csv: unexpected header '" + line + "', expected '" + header + "'");
    std::vector<std::vector<std::string>> rows;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r')
            line.pop_back();
        if (line.empty())
            continue;
        auto fields = split_fields(line);
        if (fields.size() != columns)
            throw std::runtime_error("csv: row '" + line + "' has " + std::to_string(fields.size()) +
                                     " fields, expected " + std::to_string(columns));
        rows.push_back(std::move(fields));
    }
    return rows;
}

std::ofstream open_output(const std::string& path)
{
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw std::runtime_error("cannot open '" + path + "' for writing");
    return out;
}

std::ifstream open_input(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw std::runtime_error("cannot open '" + path + "' for reading");
    return in;
}

template <class Rows>
void write_file(const Rows& rows, const std::string& path)
{
    auto out = open_output(path);
    write_csv(out, rows);
    out.flush();
    if (!out)
        throw std::runtime_error("write to '" + path + "' failed");
}

} // namespace

ExperimentResult run_experiment(const ExperimentConfig& config, const ProgressCallback& progress)
{
    if (config.runs < 1)
        throw std::invalid_argument("run_experiment: runs must be at least 1");
    for (auto n : config.ns)
        if (n < 1)
            throw std::invalid_argument("run_experiment: n values must be at least 1");

    struct Cell {
        AlgoKind algo;
        std::size_t n;
    };
    ExperimentResult result;
    std::vector<Cell> cells;
    for (const auto& algo : config.algos) {
        for (auto n : config.ns) {
            if (algo.family == AlgoFamily::binary_baseline) {
                result.failures.push_back({algo.id(), algo.arity(), algo.mode_label(), n,
                                           "binary baseline is not available in this build"});
                continue;
            }
            if (algo.family == AlgoFamily::generic &&
                (algo.k < 3 || algo.k > 16 || (std::size_t{1} << (algo.k - 1)) - 1 > max_block_length)) {
                result.failures.push_back({algo.id(), algo.arity(), algo.mode_label(), n,
                                           "generic solver supports 3 <= k <= 6"});
                continue;
            }
            cells.push_back({algo, n});
        }
    }

    std::vector<RunRecord> slots(cells.size() * config.runs);
    parallel_runs(cells.size(), config.runs, config.jobs, progress, [&](std::size_t cell, std::uint64_t run) {
        slots[cell * config.runs + run] = run_algorithm(cells[cell].algo, cells[cell].n, run, config.master_seed);
    });
    result.records = std::move(slots);
    return result;
}

std::uint64_t run_unrestricted(std::size_t ell, SamplerMode mode, std::uint64_t seed,
                               const ConsistencyOptions& consistency)
{
    RandomSource rng(seed);
    const BitString target = random_bitstring(ell, rng);
    const BlockOracle oracle = [&](const BitString& w) -> std::optional<int> {
        return static_cast<int>(match_count(w, target));
    };
    UnrestrictedOptions options;
    options.stop_on_optimum = true;
    options.consistency = consistency;
    const auto found = solve_unrestricted(oracle, ell, mode, {}, rng, options);
    // Without an observed optimum the unique candidate still has to be probed.
    return found.queries + (found.optimum_observed ? 0 : 1);
}

ExperimentResult run_unrestricted_experiment(const UnrestrictedConfig& config, const ProgressCallback& progress)
{
    if (config.runs < 1)
        throw std::invalid_argument("run_unrestricted_experiment: runs must be at least 1");
    struct Cell {
        SamplerMode mode;
        std::size_t ell;
    };
    ExperimentResult result;
    std::vector<Cell> cells;
    for (auto mode : config.modes) {
        for (auto ell : config.ells) {
            if (ell < 1 || ell > max_block_length) {
                result.failures.push_back({"unrestricted", 0, to_string(mode), ell,
                                           "block length must be in 1.." + std::to_string(max_block_length)});
                continue;
            }
            cells.push_back({mode, ell});
        }
    }
    std::vector<RunRecord> slots(cells.size() * config.runs);
    parallel_runs(cells.size(), config.runs, config.jobs, progress, [&](std::size_t cell, std::uint64_t run) {
        RunRecord r;
        r.algo = "unrestricted";
        r.k = 0;
        r.mode = to_string(cells[cell].mode);
        r.n = cells[cell].ell;
        r.run = run;
        r.seed = run_seed(config.master_seed, r.algo, r.k, r.mode, r.n, run);
        r.queries = run_unrestricted(r.n, cells[cell].mode, r.seed, config.consistency);
        slots[cell * config.runs + run] = std::move(r);
    });
    result.records = std::move(slots);
    return result;
}

std::vector<SummaryRow> summarize(const std::vector<RunRecord>& records)
{
    using Key = std::tuple<std::string, int, std::string, std::size_t>;
    std::map<Key, std::size_t> index;
    std::vector<std::vector<double>> values;
    std::vector<SummaryRow> rows;
    for (const auto& r : records) {
        Key key{r.algo, r.k, r.mode, r.n};
        auto [it, inserted] = index.emplace(key, rows.size());
        if (inserted) {
            rows.push_back({r.algo, r.k, r.mode, r.n, 0, 0, 0});
            values.emplace_back();
        }
        values[it->second].push_back(static_cast<double>(r.queries));
    }
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const auto& v = values[i];
        double sum = 0;
        for (double x : v)
            sum += x;
        const double mean = sum / static_cast<double>(v.size());
        double squares = 0;
        for (double x : v)
            squares += (x - mean) * (x - mean);
        rows[i].runs = v.size();
        rows[i].mean = mean;
        rows[i].stddev = v.size() > 1 ? std::sqrt(squares / static_cast<double>(v.size() - 1)) : 0.0;
    }
    return rows;
}

void write_csv(std::ostream& out, const std::vector<RunRecord>& records)
{
    out << raw_csv_header << '\n';
    for (const auto& r : records)
        out << r.algo << ',' << r.k << ',' << r.mode << ',' << r.n << ',' << r.run << ',' << r.seed << ','
            << r.queries << '\n';
}

void write_csv(std::ostream& out, const std::vector<SummaryRow>& rows)
{
    out << summary_csv_header << '\n';
    for (const auto& r : rows)
        out << r.algo << ',' << r.k << ',' << r.mode << ',' << r.n << ',' << r.runs << ',' << format_double(r.mean)
            << ',' << format_double(r.stddev) << '\n';
}

void write_csv(const std::vector<RunRecord>& records, const std::string& path)
{
    write_file(records, path);
}

void write_csv(const std::vector<SummaryRow>& rows, const std::string& path)
{
    write_file(rows, path);
}

std::vector<RunRecord> read_records_csv(std::istream& in)
{
    std::vector<RunRecord> records;
    for (auto& f : read_rows(in, raw_csv_header, 7)) {
        RunRecord r;
        r.algo = f[0];
        r.k = parse_number<int>(f[1], "k");
        r.mode = f[2];
        r.n = parse_number<std::size_t>(f[3], "n");
        r.run = parse_number<std::uint64_t>(f[4], "run");
        r.seed = parse_number<std::uint64_t>(f[5], "seed");
        r.queries = parse_number<std::uint64_t>(f[6], "queries");
        records.push_back(std::move(r));
    }
    return records;
}

std::vector<SummaryRow> read_summary_csv(std::istream& in)
{
    std::vector<SummaryRow> rows;
    for (auto& f : read_rows(in, summary_csv_header, 7)) {
        SummaryRow r;
        r.algo = f[0];
        r.k = parse_number<int>(f[1], "k");
        r.mode = f[2];
        r.n = parse_number<std::size_t>(f[3], "n");
        r.runs = parse_number<std::uint64_t>(f[4], "runs");
        r.mean = parse_number<double>(f[5], "mean");
        r.stddev = parse_number<double>(f[6], "stddev");
        rows.push_back(std::move(r));
    }
    return rows;
}

std::vector<RunRecord> read_records_csv(const std::string& path)
{
    auto in = open_input(path);
    try {
        return read_records_csv(in);
    } catch (const std::runtime_error& e) {
        throw std::runtime_error(path + ": " + e.what());
    }
}

std::vector<SummaryRow> read_summary_csv(const std::string& path)
{
    auto in = open_input(path);
    try {
        return read_summary_csv(in);
    } catch (const std::runtime_error& e) {
        throw std::runtime_error(path + ": " + e.what());
    }
}

std::vector<std::size_t> parse_n_list(const std::string& text)
{
    std::vector<std::size_t> ns;
    if (text.find(':') != std::string::npos) {
        std::vector<std::string> parts;
        std::string part;
        std::istringstream in(text);
        while (std::getline(in, part, ':'))
            parts.push_back(part);
        if (parts.size() != 3)
            throw std::invalid_argument("n range must be start:step:stop, got '" + text + "'");
        const auto start = parse_number<std::size_t>(parts[0], "n range start");
        const auto step = parse_number<std::size_t>(parts[1], "n range step");
        const auto stop = parse_number<std::size_t>(parts[2], "n range stop");
        if (step == 0)
            throw std::invalid_argument("n range step must be positive");
        for (auto n = start; n <= stop; n += step)
            ns.push_back(n);
    } else {
        for (const auto& field : split_fields(text))
            ns.push_back(parse_number<std::size_t>(field, "n"));
    }
    if (ns.empty())
        throw std::invalid_argument("empty n list '" + text + "'");
    for (auto n : ns)
        if (n == 0)
            throw std::invalid_argument("n values must be positive");
    return ns;
}

} // namespace ubb
