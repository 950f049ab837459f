#include "artcode/metrics.hpp"

#include "artcode/error.hpp"

#include <cmath>

namespace artcode {

MetricSet compute_metrics(double tp, double fp, double tn, double fn, double beta) {
    const double total = tp + fp + tn + fn;
    if (!(total > 0)) throw InvalidArgument("confusion counts must sum to a positive total");
    if (tp < 0 || fp < 0 || tn < 0 || fn < 0)
        throw InvalidArgument("confusion counts must be non-negative");

    auto ratio = [](double num, double den) { return den > 0 ? num / den : 0.0; };

    MetricSet m;
    m.beta = beta;
    m.precision = ratio(tp, tp + fp);
    m.recall = ratio(tp, tp + fn);
    m.accuracy = ratio(tp + tn, total);
    m.tnr = ratio(tn, tn + fp);
    const double b2 = beta * beta;
    m.f_beta = ratio((1.0 + b2) * m.precision * m.recall, b2 * m.precision + m.recall);
    const double denom = (tp + fp) * (tp + fn) * (tn + fp) * (tn + fn);
    m.mcc = denom > 0 ? (tp * tn - fp * fn) / std::sqrt(denom) : 0.0;
    return m;
}

MetricSet compute_metrics(const ConfusionCounts& c, double beta) {
    return compute_metrics(static_cast<double>(c.tp), static_cast<double>(c.fp),
                           static_cast<double>(c.tn), static_cast<double>(c.fn), beta);
}

double net_rectification_percent(double correct_artcode, double incorrect_artcode,
                                 double correct_non_artcode, double incorrect_non_artcode,
                                 double total) {
    if (!(total > 0)) throw InvalidArgument("total must be positive");
    return (correct_artcode - incorrect_artcode + correct_non_artcode - incorrect_non_artcode) /
           total * 100.0;
}

} // namespace artcode
