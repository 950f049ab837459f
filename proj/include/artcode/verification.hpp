#pragma once

#include "artcode/stat_tests.hpp"

#include <array>
#include <cstdint>
#include <string>
#include <vector>

namespace artcode {

enum class VerdictRule {
    median_p,             // a test passes when its median p < alpha
    fraction_significant, // a test passes when >= half its rows have p < alpha
};

struct VerifyConfig {
    int k_groups = 20;
    double alpha = 0.05;
    std::uint64_t seed = 0;
    VerdictRule verdict_rule = VerdictRule::median_p;
    int mc_samples = 100000; // Dunnett Monte Carlo draws
};

struct ColumnStats {
    double median = 0, mean = 0, min = 0, max = 0, std_dev = 0;
};

/// The four columns are ANOVA, Welch t-test, Kruskal-Wallis (ANOVA on ranks)
/// and Dunnett's test, in that order.
struct VerificationReport {
    static constexpr std::array<const char*, 4> kTestNames{"anova", "welch", "anova_ranks",
                                                           "dunnett"};
    std::vector<std::array<double, 4>> p_values; // one row per sampled group
    std::array<ColumnStats, 4> stats;
    std::vector<double> sampled_group_means;
    double artcode_mean = 0;
    double mean_of_group_means = 0;
    double grand_mean_all = 0;
    int tests_passing = 0;
    bool violation = false;
    std::string verdict;
    VerifyConfig config;
};

/// Study-1 protocol: samples K non-artcode groups of |rho_artcode| values,
/// compares each against the artcode group under all four tests and applies
/// the verdict rule ("no violation detected" needs >= 2 passing tests).
VerificationReport run_verification(const RhoGroup& rho_artcode, const RhoGroup& rho_non_artcode,
                                    const VerifyConfig& cfg = {});

/// Renders the report as a fixed-width text table (rows 1..K plus the
/// descriptive statistics), 6 decimal places.
std::string format_report_table(const VerificationReport& report);

/// JSON rendering of the full report.
std::string report_to_json(const VerificationReport& report);

} // namespace artcode
