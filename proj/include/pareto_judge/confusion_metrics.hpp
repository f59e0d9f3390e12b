#ifndef PARETO_JUDGE_CONFUSION_METRICS_HPP
#define PARETO_JUDGE_CONFUSION_METRICS_HPP

#include <cstdint>

#include <Eigen/Core>

namespace pareto_judge {

// Outcome counts of a binary classifier. The minority class is the positive one.
class ConfusionMatrix {
public:
    using Count = std::int64_t;

    // Throws std::invalid_argument on a negative count or an all-zero matrix.
    ConfusionMatrix(Count tp, Count fn, Count fp, Count tn);

    Count tp() const noexcept { return tp_; }
    Count fn() const noexcept { return fn_; }
    Count fp() const noexcept { return fp_; }
    Count tn() const noexcept { return tn_; }

    Count positives() const noexcept { return tp_ + fn_; }
    Count negatives() const noexcept { return fp_ + tn_; }
    Count total() const noexcept { return tp_ + fn_ + fp_ + tn_; }

    // Multiplies every count by k > 0; rates are unchanged.
    ConfusionMatrix scaled(Count k) const;

    friend bool operator==(const ConfusionMatrix&, const ConfusionMatrix&) = default;

private:
    Count tp_;
    Count fn_;
    Count fp_;
    Count tn_;
};

// A rate in [0, 1]. `defined` is false when the denominator was zero and the
// convention value 0 was substituted.
struct MetricValue {
    double value = 0.0;
    bool defined = true;
};

MetricValue tpr(const ConfusionMatrix& m) noexcept;
MetricValue tnr(const ConfusionMatrix& m) noexcept;
MetricValue ppv(const ConfusionMatrix& m) noexcept;

MetricValue bac(const ConfusionMatrix& m) noexcept;
MetricValue gmean(const ConfusionMatrix& m) noexcept;

/// Weighted harmonic mean of precision and recall; beta > 1 favours recall.
/// Throws std::invalid_argument when beta is not a finite positive number.
MetricValue fbeta(const ConfusionMatrix& m, double beta);

/// Same formula on precomputed components. Used by the curve code where
/// the components are shared across a whole beta grid.
MetricValue fbeta_from_rates(MetricValue precision, MetricValue recall, double beta);

// The (TPR, TNR) criterion pair of a classifier, both maximised.
Eigen::Matrix<double, 1, Eigen::Dynamic> objective_point_of(const ConfusionMatrix& m);

} // namespace pareto_judge

#endif // PARETO_JUDGE_CONFUSION_METRICS_HPP
