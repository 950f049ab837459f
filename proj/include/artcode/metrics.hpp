#pragma once

namespace artcode {

/// Confusion counts with artcode as the positive class.
struct ConfusionCounts {
    long long tp = 0;
    long long fp = 0;
    long long tn = 0;
    long long fn = 0;

    long long total() const { return tp + fp + tn + fn; }
};

struct MetricSet {
    double precision = 0;
    double recall = 0;
    double accuracy = 0;
    double tnr = 0;
    double f_beta = 0;
    double mcc = 0;
    double beta = 2.0;
};

/// Real-valued overload so normalized rates can be evaluated directly.
/// Every zero-denominator case yields 0 by convention.
MetricSet compute_metrics(double tp, double fp, double tn, double fn, double beta = 2.0);
MetricSet compute_metrics(const ConfusionCounts& c, double beta = 2.0);

/// The rectification balance of Study 2's analysis: percentage of predictions
/// net-corrected by rectification, (correct_a - incorrect_a + correct_n -
/// incorrect_n) / total, in percent.
double net_rectification_percent(double correct_artcode, double incorrect_artcode,
                                 double correct_non_artcode, double incorrect_non_artcode,
                                 double total);

} // namespace artcode
