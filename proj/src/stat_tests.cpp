#include "artcode/stat_tests.hpp"

#include "artcode/error.hpp"
#include "artcode/rng.hpp"
#include "artcode/special_functions.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace artcode {

namespace {

struct Moments {
    std::size_t n = 0;
    double mean = 0.0;
    double ss = 0.0; // sum of squared deviations

    double variance() const { return n > 1 ? ss / static_cast<double>(n - 1) : 0.0; }
};

Moments moments(std::span<const double> v) {
    Moments m;
    m.n = v.size();
    for (double x : v) m.mean += x;
    m.mean /= static_cast<double>(m.n);
    for (double x : v) m.ss += (x - m.mean) * (x - m.mean);
    return m;
}

void require_two_each(std::span<const double> a, std::span<const double> b) {
    if (a.size() < 2 || b.size() < 2)
        throw GroupTooSmall("both groups need at least 2 values");
}

} // namespace

TestResult anova_oneway(std::span<const double> a, std::span<const double> b) {
    require_two_each(a, b);
    const Moments ma = moments(a), mb = moments(b);
    const double na = static_cast<double>(ma.n), nb = static_cast<double>(mb.n);
    const double grand = (na * ma.mean + nb * mb.mean) / (na + nb);
    const double ssb = na * (ma.mean - grand) * (ma.mean - grand) +
                       nb * (mb.mean - grand) * (mb.mean - grand);
    const double ssw = ma.ss + mb.ss;
    const double df2 = na + nb - 2.0;
    if (ssw == 0.0) {
        // Both groups constant: identical means are a perfect null fit,
        // different means an infinitely strong effect.
        if (ssb == 0.0) return {0.0, 1.0};
        return {std::numeric_limits<double>::infinity(), 0.0};
    }
    const double f = ssb / (ssw / df2);
    return {f, f_survival(f, 1.0, df2)};
}

TestResult welch_ttest(std::span<const double> a, std::span<const double> b) {
    require_two_each(a, b);
    const Moments ma = moments(a), mb = moments(b);
    const double na = static_cast<double>(ma.n), nb = static_cast<double>(mb.n);
    const double va = ma.variance() / na, vb = mb.variance() / nb;
    const double se2 = va + vb;
    if (se2 == 0.0) {
        if (ma.mean == mb.mean) return {0.0, 1.0};
        return {std::numeric_limits<double>::infinity(), 0.0};
    }
    const double t = (ma.mean - mb.mean) / std::sqrt(se2);
    const double df = se2 * se2 / (va * va / (na - 1.0) + vb * vb / (nb - 1.0));
    return {t, t_survival_two_sided(t, df)};
}

TestResult kruskal_wallis(std::span<const double> a, std::span<const double> b) {
    require_two_each(a, b);
    const std::size_t n_total = a.size() + b.size();
    struct Item {
        double value;
        bool from_a;
    };
    std::vector<Item> pooled;
    pooled.reserve(n_total);
    for (double x : a) pooled.push_back({x, true});
    for (double x : b) pooled.push_back({x, false});
    std::sort(pooled.begin(), pooled.end(),
              [](const Item& l, const Item& r) { return l.value < r.value; });

    double rank_sum_a = 0.0, tie_term = 0.0;
    std::size_t i = 0;
    while (i < n_total) {
        std::size_t j = i;
        while (j < n_total && pooled[j].value == pooled[i].value) ++j;
        const double tied = static_cast<double>(j - i);
        const double midrank = 0.5 * (static_cast<double>(i + 1) + static_cast<double>(j));
        for (std::size_t k = i; k < j; ++k)
            if (pooled[k].from_a) rank_sum_a += midrank;
        tie_term += tied * tied * tied - tied;
        i = j;
    }

    const double n = static_cast<double>(n_total);
    const double na = static_cast<double>(a.size()), nb = static_cast<double>(b.size());
    const double rank_sum_b = n * (n + 1.0) / 2.0 - rank_sum_a;
    double h = 12.0 / (n * (n + 1.0)) *
                   (rank_sum_a * rank_sum_a / na + rank_sum_b * rank_sum_b / nb) -
               3.0 * (n + 1.0);
    const double correction = 1.0 - tie_term / (n * n * n - n);
    if (correction <= 0.0) return {0.0, 1.0}; // every value tied
    h /= correction;
    if (h < 0.0) h = 0.0; // guard rounding
    return {h, chi_squared_survival(h, 1.0)};
}

DunnettResult dunnett_test(const RhoGroup& control, const std::vector<RhoGroup>& treatments,
                           int mc_samples, std::uint64_t seed) {
    if (treatments.empty()) throw GroupTooSmall("Dunnett needs at least one treatment group");
    if (control.values.size() < 2) throw GroupTooSmall("control group needs at least 2 values");
    for (const auto& t : treatments)
        if (t.values.size() < 2) throw GroupTooSmall("every treatment needs at least 2 values");
    if (mc_samples < 100) throw InvalidArgument("mc_samples must be >= 100");

    const std::size_t k = treatments.size();
    const Moments mc_ctrl = moments(control.values);
    std::vector<Moments> mt(k);
    double pooled_ss = mc_ctrl.ss;
    std::size_t n_total = mc_ctrl.n;
    for (std::size_t i = 0; i < k; ++i) {
        mt[i] = moments(treatments[i].values);
        pooled_ss += mt[i].ss;
        n_total += mt[i].n;
    }
    const double df = static_cast<double>(n_total) - static_cast<double>(k + 1);
    if (df < 1.0) throw GroupTooSmall("pooled degrees of freedom must be >= 1");
    const double pooled_var = pooled_ss / df;

    DunnettResult result;
    result.mc_samples = mc_samples;
    result.statistics.resize(k);
    const double n0 = static_cast<double>(mc_ctrl.n);
    std::vector<double> se_scale(k);
    for (std::size_t i = 0; i < k; ++i) {
        se_scale[i] = std::sqrt(1.0 / static_cast<double>(mt[i].n) + 1.0 / n0);
        result.statistics[i] =
            pooled_var > 0.0
                ? (mt[i].mean - mc_ctrl.mean) / (std::sqrt(pooled_var) * se_scale[i])
                : (mt[i].mean == mc_ctrl.mean ? 0.0 : std::numeric_limits<double>::infinity());
    }

    // Null distribution of max_i |T_i|: group means are independent normals
    // with variance sigma^2/n_g and the pooled variance is sigma^2 chi2_df/df;
    // the shared control mean induces the Dunnett correlation structure.
    std::vector<double> max_abs_t(static_cast<std::size_t>(mc_samples));
    Rng rng(seed);
    for (auto& draw : max_abs_t) {
        const double s = pooled_var > 0.0 ? std::sqrt(rng.chi_squared(df) / df) : 1.0;
        const double u0 = rng.normal() / std::sqrt(n0);
        double m = 0.0;
        for (std::size_t i = 0; i < k; ++i) {
            const double ui = rng.normal() / std::sqrt(static_cast<double>(mt[i].n));
            m = std::max(m, std::abs((ui - u0) / (s * se_scale[i])));
        }
        draw = m;
    }
    std::sort(max_abs_t.begin(), max_abs_t.end());

    result.p_values.resize(k);
    result.standard_errors.resize(k);
    for (std::size_t i = 0; i < k; ++i) {
        const double stat = std::abs(result.statistics[i]);
        if (std::isinf(stat)) {
            result.p_values[i] = 0.0;
            result.standard_errors[i] = 0.0;
            continue;
        }
        const auto it = std::lower_bound(max_abs_t.begin(), max_abs_t.end(), stat);
        const double exceed = static_cast<double>(std::distance(it, max_abs_t.end()));
        const double p = exceed / static_cast<double>(mc_samples);
        result.p_values[i] = p;
        result.standard_errors[i] = std::sqrt(p * (1.0 - p) / static_cast<double>(mc_samples));
    }
    return result;
}

std::vector<RhoGroup> sample_groups(const RhoGroup& source, int group_size, int k,
                                    std::uint64_t seed) {
    if (group_size < 1 || k < 1) throw InvalidArgument("group_size and k must be >= 1");
    if (static_cast<std::size_t>(group_size) > source.values.size())
        throw GroupTooSmall("cannot draw " + std::to_string(group_size) + " values from " +
                            std::to_string(source.values.size()));
    std::vector<RhoGroup> groups;
    groups.reserve(static_cast<std::size_t>(k));
    for (int g = 0; g < k; ++g) {
        Rng rng(derive_seed(seed, static_cast<std::uint64_t>(g)));
        const auto idx = rng.sample_without_replacement(source.values.size(),
                                                        static_cast<std::size_t>(group_size));
        RhoGroup group;
        group.name = source.name + "_" + std::to_string(g + 1);
        group.values.reserve(idx.size());
        for (std::size_t i : idx) group.values.push_back(source.values[i]);
        groups.push_back(std::move(group));
    }
    return groups;
}

GroupMeansResult group_means(const std::vector<RhoGroup>& groups) {
    if (groups.empty()) throw InvalidArgument("group_means needs at least one group");
    GroupMeansResult result;
    result.per_group.reserve(groups.size());
    for (const auto& g : groups) {
        if (g.values.empty()) throw InvalidArgument("groups must be non-empty");
        result.per_group.push_back(std::accumulate(g.values.begin(), g.values.end(), 0.0) /
                                   static_cast<double>(g.values.size()));
    }
    result.mean_of_means = std::accumulate(result.per_group.begin(), result.per_group.end(), 0.0) /
                           static_cast<double>(result.per_group.size());
    return result;
}

double grand_mean(const std::vector<double>& sampled_group_means, double artcode_mean) {
    const double sum = std::accumulate(sampled_group_means.begin(), sampled_group_means.end(), 0.0);
    return (sum + artcode_mean) / static_cast<double>(sampled_group_means.size() + 1);
}

} // namespace artcode
