#include "artcode/verification.hpp"

#include "artcode/error.hpp"
#include "artcode/rng.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>

namespace artcode {

namespace {

ColumnStats column_stats(std::vector<double> values) {
    ColumnStats s;
    std::sort(values.begin(), values.end());
    const std::size_t n = values.size();
    s.min = values.front();
    s.max = values.back();
    s.median = n % 2 ? values[n / 2] : 0.5 * (values[n / 2 - 1] + values[n / 2]);
    s.mean = std::accumulate(values.begin(), values.end(), 0.0) / static_cast<double>(n);
    double ss = 0;
    for (double v : values) ss += (v - s.mean) * (v - s.mean);
    s.std_dev = n > 1 ? std::sqrt(ss / static_cast<double>(n - 1)) : 0.0;
    return s;
}

std::string fmt6(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.6f", v);
    return buf;
}

} // namespace

VerificationReport run_verification(const RhoGroup& rho_artcode, const RhoGroup& rho_non_artcode,
                                    const VerifyConfig& cfg) {
    if (cfg.k_groups < 2) throw InvalidArgument("k_groups must be >= 2");
    if (!(cfg.alpha > 0.0) || !(cfg.alpha < 1.0)) throw InvalidArgument("alpha must be in (0, 1)");
    if (rho_artcode.values.size() < 2) throw GroupTooSmall("artcode group needs >= 2 values");

    const int group_size = static_cast<int>(rho_artcode.values.size());
    const auto groups = sample_groups(rho_non_artcode, group_size, cfg.k_groups, cfg.seed);

    VerificationReport report;
    report.config = cfg;
    report.p_values.resize(groups.size());

    for (std::size_t g = 0; g < groups.size(); ++g) {
        report.p_values[g][0] = anova_oneway(rho_artcode.values, groups[g].values).p_value;
        report.p_values[g][1] = welch_ttest(rho_artcode.values, groups[g].values).p_value;
        report.p_values[g][2] = kruskal_wallis(rho_artcode.values, groups[g].values).p_value;
    }
    const DunnettResult dunnett =
        dunnett_test(rho_artcode, groups, cfg.mc_samples, derive_seed(cfg.seed, 0xD17E));
    for (std::size_t g = 0; g < groups.size(); ++g) report.p_values[g][3] = dunnett.p_values[g];

    for (std::size_t t = 0; t < 4; ++t) {
        std::vector<double> column(groups.size());
        for (std::size_t g = 0; g < groups.size(); ++g) column[g] = report.p_values[g][t];
        report.stats[t] = column_stats(std::move(column));
    }

    const GroupMeansResult means = group_means(groups);
    report.sampled_group_means = means.per_group;
    report.mean_of_group_means = means.mean_of_means;
    report.artcode_mean =
        std::accumulate(rho_artcode.values.begin(), rho_artcode.values.end(), 0.0) /
        static_cast<double>(rho_artcode.values.size());
    report.grand_mean_all = grand_mean(means.per_group, report.artcode_mean);

    int passing = 0;
    for (std::size_t t = 0; t < 4; ++t) {
        bool pass = false;
        if (cfg.verdict_rule == VerdictRule::median_p) {
            pass = report.stats[t].median < cfg.alpha;
        } else {
            std::size_t significant = 0;
            for (const auto& row : report.p_values)
                if (row[t] < cfg.alpha) ++significant;
            pass = 2 * significant >= report.p_values.size();
        }
        if (pass) ++passing;
    }
    report.tests_passing = passing;
    report.violation = passing < 2;
    report.verdict = report.violation ? "possible MR violation" : "no violation detected";
    return report;
}

std::string format_report_table(const VerificationReport& report) {
    std::string out;
    auto row = [&](const std::string& head, const std::array<double, 4>& values) {
        out += head;
        out.append(head.size() < 8 ? 8 - head.size() : 1, ' ');
        for (double v : values) {
            const std::string cell = fmt6(v);
            out += cell;
            out.append(cell.size() < 14 ? 14 - cell.size() : 1, ' ');
        }
        out += '\n';
    };
    out += "group   ANOVA         t-test        ANOVA_ranks   Dunnett\n";
    for (std::size_t g = 0; g < report.p_values.size(); ++g)
        row(std::to_string(g + 1), report.p_values[g]);
    out += "\n";
    row("median", {report.stats[0].median, report.stats[1].median, report.stats[2].median,
                   report.stats[3].median});
    row("mean", {report.stats[0].mean, report.stats[1].mean, report.stats[2].mean,
                 report.stats[3].mean});
    row("min",
        {report.stats[0].min, report.stats[1].min, report.stats[2].min, report.stats[3].min});
    row("max",
        {report.stats[0].max, report.stats[1].max, report.stats[2].max, report.stats[3].max});
    row("std", {report.stats[0].std_dev, report.stats[1].std_dev, report.stats[2].std_dev,
                report.stats[3].std_dev});
    out += "\nmean rho (artcode group): " + fmt6(report.artcode_mean) + "\n";
    out += "mean rho (sampled non-artcode groups): " + fmt6(report.mean_of_group_means) + "\n";
    out += "grand mean rho (all groups): " + fmt6(report.grand_mean_all) + "\n";
    out += "verdict: " + report.verdict + " (" + std::to_string(report.tests_passing) +
           "/4 tests significant)\n";
    return out;
}

std::string report_to_json(const VerificationReport& report) {
    nlohmann::json j;
    j["columns"] = VerificationReport::kTestNames;
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& row : report.p_values) rows.push_back(row);
    j["p_values"] = std::move(rows);
    for (std::size_t t = 0; t < 4; ++t) {
        nlohmann::json s;
        s["median"] = report.stats[t].median;
        s["mean"] = report.stats[t].mean;
        s["min"] = report.stats[t].min;
        s["max"] = report.stats[t].max;
        s["std"] = report.stats[t].std_dev;
        j["stats"][VerificationReport::kTestNames[t]] = std::move(s);
    }
    j["sampled_group_means"] = report.sampled_group_means;
    j["artcode_mean"] = report.artcode_mean;
    j["mean_of_group_means"] = report.mean_of_group_means;
    j["grand_mean"] = report.grand_mean_all;
    j["tests_passing"] = report.tests_passing;
    j["violation"] = report.violation;
    j["verdict"] = report.verdict;
    j["config"] = {{"k_groups", report.config.k_groups},
                   {"alpha", report.config.alpha},
                   {"seed", report.config.seed},
                   {"verdict_rule", report.config.verdict_rule == VerdictRule::median_p
                                        ? "median_p"
                                        : "fraction_significant"},
                   {"mc_samples", report.config.mc_samples}};
    return j.dump(2);
}

} // namespace artcode
