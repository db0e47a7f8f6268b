#include "ubb/verifier.hpp"

#include <boost/math/distributions/chi_squared.hpp>

#include <algorithm>
#include <cstdio>
#include <map>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace ubb {

namespace {

constexpr double min_expected_per_bin = 5.0;

BitString permute(const BitString& a, std::span<const std::size_t> perm)
{
    BitString out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a.test(i))
            out.set(perm[i], true);
    return out;
}

BitString unpermute(const BitString& b, std::span<const std::size_t> perm)
{
    BitString out(b.size());
    for (std::size_t i = 0; i < b.size(); ++i)
        if (b.test(perm[i]))
            out.set(i, true);
    return out;
}

std::vector<std::size_t> random_permutation(std::size_t n, RandomSource& rng)
{
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    for (std::size_t i = n; i > 1; --i)
        std::swap(perm[i - 1], perm[static_cast<std::size_t>(rng.below(i))]);
    return perm;
}

std::vector<std::size_t> identity(std::size_t n)
{
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    return perm;
}

using Histogram = std::map<std::uint64_t, std::uint64_t>;

Comparison compare_histograms(const Histogram& a, const Histogram& b, double alpha)
{
    Comparison out;
    if (a.size() == 1 && b.size() == 1) {
        out.exact = true;
        out.passed = a.begin()->first == b.begin()->first;
        out.p_value = out.passed ? 1.0 : 0.0;
        return out;
    }
    std::map<std::uint64_t, std::pair<std::uint64_t, std::uint64_t>> joint;
    for (const auto& [k, c] : a)
        joint[k].first = c;
    for (const auto& [k, c] : b)
        joint[k].second = c;

    std::uint64_t total_a = 0, total_b = 0;
    for (const auto& [k, ab] : joint) {
        total_a += ab.first;
        total_b += ab.second;
    }
    const double share_a = static_cast<double>(total_a) / static_cast<double>(total_a + total_b);

    std::vector<std::pair<double, double>> bins;
    std::pair<double, double> pooled{0.0, 0.0};
    for (const auto& [k, ab] : joint) {
        const double sum = static_cast<double>(ab.first + ab.second);
        if (std::min(share_a, 1.0 - share_a) * sum < min_expected_per_bin) {
            pooled.first += static_cast<double>(ab.first);
            pooled.second += static_cast<double>(ab.second);
        } else {
            bins.emplace_back(static_cast<double>(ab.first), static_cast<double>(ab.second));
        }
    }
    if (pooled.first + pooled.second > 0.0)
        bins.push_back(pooled);

    if (bins.size() < 2) {
        out.exact = true;
        out.passed = true;
        return out;
    }
    double stat = 0.0;
    for (const auto& [ca, cb] : bins) {
        const double sum = ca + cb;
        const double ea = sum * share_a;
        const double eb = sum - ea;
        stat += (ca - ea) * (ca - ea) / ea + (cb - eb) * (cb - eb) / eb;
    }
    out.statistic = stat;
    out.degrees_of_freedom = static_cast<int>(bins.size()) - 1;
    boost::math::chi_squared dist(out.degrees_of_freedom);
    out.p_value = boost::math::cdf(boost::math::complement(dist, stat));
    out.passed = out.p_value >= alpha;
    return out;
}

std::vector<BitString> draw_arguments(int arity, std::size_t n, const OperatorSpec* spec, RandomSource& rng)
{
    for (int attempt = 0; attempt < 10000; ++attempt) {
        std::vector<BitString> args;
        args.reserve(static_cast<std::size_t>(arity));
        for (int t = 0; t < arity; ++t)
            args.push_back(random_bitstring(n, rng));
        if (spec == nullptr)
            return args;
        RandomSource probe(rng.next_u64());
        try {
            spec->flips(partition_groups(args).sizes, probe);
            return args;
        } catch (const ContractViolation&) {
        }
    }
    throw std::runtime_error("verify_unbiasedness: no admissible argument tuple found for '" +
                             (spec ? spec->name() : std::string("?")) + "'");
}

UnbiasednessReport verify_impl(const std::string& name, int arity, const RawOperator& op, const OperatorSpec* spec,
                               const VerifierConfig& config, RandomSource& rng)
{
    if (config.n == 0 || config.trials == 0 || config.invariance_samples == 0)
        throw std::invalid_argument("verify_unbiasedness: n, trials and invariance_samples must be positive");
    UnbiasednessReport report;
    report.name = name;
    report.arity = arity;
    report.config = config;
    const std::size_t total = 2 * config.invariance_samples;
    report.corrected_alpha = config.alpha / static_cast<double>(total);

    for (std::size_t s = 0; s < config.invariance_samples; ++s) {
        for (Transformation kind : {Transformation::flip_mask, Transformation::permutation}) {
            const auto args = draw_arguments(arity, config.n, spec, rng);
            std::vector<std::size_t> perm;
            BitString mask(config.n);
            if (kind == Transformation::flip_mask) {
                perm = identity(config.n);
                mask = random_bitstring(config.n, rng);
            } else {
                perm = random_permutation(config.n, rng);
            }
            Comparison c = compare_transformed(op, args, perm, mask, config.trials, report.corrected_alpha, rng);
            c.kind = kind;
            c.sample = s;
            report.passed = report.passed && c.passed;
            report.comparisons.push_back(c);
        }
    }
    return report;
}

} // namespace

const char* to_string(Transformation t) noexcept
{
    return t == Transformation::flip_mask ? "flip" : "permute";
}

RawOperator as_raw(const OperatorSpec& op)
{
    return [op](std::span<const BitString> args, RandomSource& rng) { return apply_operator(op, args, rng); };
}

Comparison compare_transformed(const RawOperator& op, std::span<const BitString> args,
                               std::span<const std::size_t> perm, const BitString& mask,
                               std::size_t trials, double alpha, RandomSource& rng)
{
    if (args.empty())
        throw std::invalid_argument("compare_transformed: empty argument list");
    const std::size_t n = args[0].size();
    if (perm.size() != n || mask.size() != n)
        throw std::invalid_argument("compare_transformed: transformation length mismatch");
    if (n > 64)
        throw std::invalid_argument("compare_transformed: strings longer than 64 bits are not supported");

    std::vector<BitString> moved;
    moved.reserve(args.size());
    for (const auto& a : args)
        moved.push_back(permute(a, perm) ^ mask);

    Histogram direct, transformed;
    for (std::size_t t = 0; t < trials; ++t) {
        ++direct[op(args, rng).to_word()];
        ++transformed[unpermute(op(moved, rng) ^ mask, perm).to_word()];
    }
    return compare_histograms(direct, transformed, alpha);
}

UnbiasednessReport verify_unbiasedness(const OperatorSpec& op, const VerifierConfig& config, RandomSource& rng)
{
    return verify_impl(op.name(), op.arity(), as_raw(op), &op, config, rng);
}

UnbiasednessReport verify_unbiasedness(const std::string& name, int arity, const RawOperator& op,
                                       const VerifierConfig& config, RandomSource& rng)
{
    return verify_impl(name, arity, op, nullptr, config, rng);
}

std::string format_report(const UnbiasednessReport& report)
{
    std::ostringstream os;
    os << "operator " << report.name << " (arity " << report.arity << ", n = " << report.config.n
       << ", trials = " << report.config.trials << ")\n";
    os << "  significance " << report.config.alpha << ", Bonferroni-corrected " << report.corrected_alpha << " over "
       << report.comparisons.size() << " comparisons\n";
    for (const auto& c : report.comparisons) {
        char line[160];
        if (c.exact)
            std::snprintf(line, sizeof line, "  %-8s #%zu  exact comparison            %s\n", to_string(c.kind),
                          c.sample, c.passed ? "pass" : "FAIL");
        else
            std::snprintf(line, sizeof line, "  %-8s #%zu  chi2 = %10.3f  df = %4d  p = %.4g  %s\n", to_string(c.kind),
                          c.sample, c.statistic, c.degrees_of_freedom, c.p_value, c.passed ? "pass" : "FAIL");
        os << line;
    }
    os << "  verdict: " << (report.passed ? "unbiased (no rejection)" : "BIASED") << '\n';
    return os.str();
}

std::vector<std::string> report_lines(const UnbiasednessReport& report)
{
    std::vector<std::string> lines;
    for (const auto& c : report.comparisons) {
        char line[200];
        std::snprintf(line, sizeof line, "VERIFY %s %s#%zu %s p=%.6g chi2=%.6g df=%d exact=%d", report.name.c_str(),
                      to_string(c.kind), c.sample, c.passed ? "PASS" : "FAIL", c.p_value, c.statistic,
                      c.degrees_of_freedom, c.exact ? 1 : 0);
        lines.emplace_back(line);
    }
    return lines;
}

} // namespace ubb
