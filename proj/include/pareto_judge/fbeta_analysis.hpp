#ifndef PARETO_JUDGE_FBETA_ANALYSIS_HPP
#define PARETO_JUDGE_FBETA_ANALYSIS_HPP

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "pareto_judge/confusion_metrics.hpp"

namespace pareto_judge {

// Strictly increasing, finite, positive beta values.
class BetaGrid {
public:
    explicit BetaGrid(std::vector<double> betas);

    const std::vector<double>& betas() const noexcept { return betas_; }
    std::size_t size() const noexcept { return betas_.size(); }
    double operator[](std::size_t i) const { return betas_[i]; }

    friend bool operator==(const BetaGrid&, const BetaGrid&) = default;

private:
    std::vector<double> betas_;
};

// `count` points log-uniform on [min, max]; endpoints are exact and, for an
// odd count on a range symmetric in log space, the midpoint is exactly 1.
BetaGrid log_beta_grid(double min, double max, std::size_t count);

// 201 points log-uniform over [0.1, 10].
BetaGrid default_beta_grid();

struct FbetaCurve {
    std::string method_label;
    BetaGrid grid;
    std::vector<MetricValue> values;
    bool is_envelope = false;
    // Envelope only: per beta, the index of the best member (lowest on ties).
    std::vector<std::size_t> argmax;
};

FbetaCurve fbeta_curve(const ConfusionMatrix& m, const BetaGrid& grid, std::string label = {});

/// Pointwise maximum of the members' curves. Throws std::invalid_argument on
/// an empty member list.
FbetaCurve fbeta_envelope(std::span<const ConfusionMatrix> members, const BetaGrid& grid, std::string label = {});

} // namespace pareto_judge

#endif // PARETO_JUDGE_FBETA_ANALYSIS_HPP
