#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace artcode {

struct RhoGroup {
    std::string name;
    std::vector<double> values;
};

struct TestResult {
    double statistic = 0.0;
    double p_value = 1.0;
};

/// One-way ANOVA between two groups, F(1, na+nb-2). Constant groups follow
/// the degenerate conventions: equal means -> p = 1, unequal -> p = 0.
TestResult anova_oneway(std::span<const double> a, std::span<const double> b);

/// Welch's t-test (unequal variances), two-sided, Welch-Satterthwaite df.
TestResult welch_ttest(std::span<const double> a, std::span<const double> b);

/// Kruskal-Wallis H test with midrank tie correction; all-tied data -> p = 1.
TestResult kruskal_wallis(std::span<const double> a, std::span<const double> b);

struct DunnettResult {
    std::vector<double> statistics;      // per treatment
    std::vector<double> p_values;        // adjusted, Monte Carlo estimate
    std::vector<double> standard_errors; // of each p estimate
    int mc_samples = 0;
};

/// Dunnett's many-to-one comparison of each treatment against the control.
/// The adjusted two-sided p-values are estimated by Monte Carlo from the null
/// max-|T| distribution induced by the shared control; deterministic per seed.
DunnettResult dunnett_test(const RhoGroup& control, const std::vector<RhoGroup>& treatments,
                           int mc_samples = 100000, std::uint64_t seed = 0);

/// K same-size groups drawn from `source` without replacement within each
/// group and independently across groups.
std::vector<RhoGroup> sample_groups(const RhoGroup& source, int group_size, int k,
                                    std::uint64_t seed);

struct GroupMeansResult {
    std::vector<double> per_group;
    double mean_of_means = 0.0;
};

GroupMeansResult group_means(const std::vector<RhoGroup>& groups);

/// Mean over the K sampled group means plus the artcode group mean.
double grand_mean(const std::vector<double>& sampled_group_means, double artcode_mean);

} // namespace artcode
