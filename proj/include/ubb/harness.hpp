#pragma once

#include "ubb/samplers.hpp"
#include "ubb/solvers.hpp"

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

namespace ubb {

struct ExperimentConfig {
    std::vector<AlgoKind> algos;
    std::vector<std::size_t> ns;
    std::uint64_t runs = 100;
    std::uint64_t master_seed = 1;
    unsigned jobs = 1;
    std::string output_path;
};

/// A cell (algo, n) that could not be run.
struct CellFailure {
    std::string algo;
    int k = 0;
    std::string mode;
    std::size_t n = 0;
    std::string message;
};

struct ExperimentResult {
    std::vector<RunRecord> records; // ordered by (algo position, n position, run)
    std::vector<CellFailure> failures;
};

/// Called from worker threads after each finished run with (done, total).
using ProgressCallback = std::function<void(std::uint64_t done, std::uint64_t total)>;

ExperimentResult run_experiment(const ExperimentConfig& config, const ProgressCallback& progress = {});

/// Pure and hack solve_unrestricted on random l-bit targets, without seeds.
/// Records use algo "unrestricted", k = 0 and n = l.
struct UnrestrictedConfig {
    std::vector<SamplerMode> modes{SamplerMode::pure, SamplerMode::hack};
    std::vector<std::size_t> ells;
    std::uint64_t runs = 10000;
    std::uint64_t master_seed = 1;
    unsigned jobs = 1;
    ConsistencyOptions consistency;
};

ExperimentResult run_unrestricted_experiment(const UnrestrictedConfig& config,
                                             const ProgressCallback& progress = {});

/// One unrestricted run: the query count until the block optimum is probed.
std::uint64_t run_unrestricted(std::size_t ell, SamplerMode mode, std::uint64_t seed,
                               const ConsistencyOptions& consistency = {});

struct SummaryRow {
    std::string algo;
    int k = 0;
    std::string mode;
    std::size_t n = 0;
    std::uint64_t runs = 0;
    double mean = 0;
    double stddev = 0;

    friend bool operator==(const SummaryRow&, const SummaryRow&) = default;
};

/// Groups by (algo, k, mode, n) in order of first appearance; sample
/// standard deviation, 0 for a single record.
std::vector<SummaryRow> summarize(const std::vector<RunRecord>& records);

inline constexpr const char* raw_csv_header = "algo,k,mode,n,run,seed,queries";
inline constexpr const char* summary_csv_header = "algo,k,mode,n,runs,mean,stddev";

void write_csv(std::ostream& out, const std::vector<RunRecord>& records);
void write_csv(std::ostream& out, const std::vector<SummaryRow>& rows);
void write_csv(const std::vector<RunRecord>& records, const std::string& path);
void write_csv(const std::vector<SummaryRow>& rows, const std::string& path);

std::vector<RunRecord> read_records_csv(std::istream& in);
std::vector<SummaryRow> read_summary_csv(std::istream& in);
std::vector<RunRecord> read_records_csv(const std::string& path);
std::vector<SummaryRow> read_summary_csv(const std::string& path);

/// "100,200,300" or "100:100:2000" (inclusive).
std::vector<std::size_t> parse_n_list(const std::string& text);

} // namespace ubb
