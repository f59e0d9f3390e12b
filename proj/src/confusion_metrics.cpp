#include "pareto_judge/confusion_metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace pareto_judge {

namespace {

MetricValue ratio(ConfusionMatrix::Count num, ConfusionMatrix::Count den) noexcept
{
    if (den == 0) {
        return {0.0, false};
    }
    return {static_cast<double>(num) / static_cast<double>(den), true};
}

} // namespace

ConfusionMatrix::ConfusionMatrix(Count tp, Count fn, Count fp, Count tn)
    : tp_(tp), fn_(fn), fp_(fp), tn_(tn)
{
    if (tp < 0 || fn < 0 || fp < 0 || tn < 0) {
        throw std::invalid_argument("confusion matrix counts must be non-negative");
    }
    if (tp + fn + fp + tn == 0) {
        throw std::invalid_argument("confusion matrix must contain at least one sample");
    }
}

ConfusionMatrix ConfusionMatrix::scaled(Count k) const
{
    if (k <= 0) {
        throw std::invalid_argument("scale factor must be positive");
    }
    constexpr auto max = std::numeric_limits<Count>::max();
    if (total() > max / k) {
        throw std::overflow_error("scaled confusion matrix overflows");
    }
    return {tp_ * k, fn_ * k, fp_ * k, tn_ * k};
}

MetricValue tpr(const ConfusionMatrix& m) noexcept { return ratio(m.tp(), m.positives()); }

MetricValue tnr(const ConfusionMatrix& m) noexcept { return ratio(m.tn(), m.negatives()); }

MetricValue ppv(const ConfusionMatrix& m) noexcept { return ratio(m.tp(), m.tp() + m.fp()); }

MetricValue bac(const ConfusionMatrix& m) noexcept
{
    const auto sens = tpr(m);
    const auto spec = tnr(m);
    return {(sens.value + spec.value) / 2.0, sens.defined && spec.defined};
}

MetricValue gmean(const ConfusionMatrix& m) noexcept
{
    const auto sens = tpr(m);
    const auto spec = tnr(m);
    return {std::sqrt(sens.value * spec.value), sens.defined && spec.defined};
}

MetricValue fbeta_from_rates(MetricValue precision, MetricValue recall, double beta)
{
    if (!std::isfinite(beta) || beta <= 0.0) {
        throw std::invalid_argument("beta must be a finite positive number, got " + std::to_string(beta));
    }
    const double b2 = beta * beta;
    const double den = b2 * precision.value + recall.value;
    if (den == 0.0) {
        return {0.0, false};
    }
    double value = (b2 + 1.0) * precision.value * recall.value / den;
    // rounding can push the weighted harmonic mean a hair outside [min, max]
    value = std::clamp(value, std::min(precision.value, recall.value), std::max(precision.value, recall.value));
    return {value, precision.defined && recall.defined};
}

MetricValue fbeta(const ConfusionMatrix& m, double beta) { return fbeta_from_rates(ppv(m), tpr(m), beta); }

Eigen::Matrix<double, 1, Eigen::Dynamic> objective_point_of(const ConfusionMatrix& m)
{
    Eigen::Matrix<double, 1, Eigen::Dynamic> point(2);
    point << tpr(m).value, tnr(m).value;
    return point;
}

} // namespace pareto_judge
