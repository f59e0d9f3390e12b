#include "pareto_judge/fbeta_analysis.hpp"

#include <cmath>
#include <stdexcept>

namespace pareto_judge {

BetaGrid::BetaGrid(std::vector<double> betas) : betas_(std::move(betas))
{
    if (betas_.empty()) {
        throw std::invalid_argument("beta grid is empty");
    }
    for (std::size_t i = 0; i < betas_.size(); ++i) {
        if (!std::isfinite(betas_[i]) || betas_[i] <= 0.0) {
            throw std::invalid_argument("beta grid values must be finite and positive");
        }
        if (i > 0 && !(betas_[i] > betas_[i - 1])) {
            throw std::invalid_argument("beta grid must be strictly increasing");
        }
    }
}

BetaGrid log_beta_grid(double min, double max, std::size_t count)
{
    if (!std::isfinite(min) || !std::isfinite(max) || min <= 0.0 || max <= 0.0) {
        throw std::invalid_argument("beta range must be finite and positive");
    }
    if (count == 1) {
        if (min != max) {
            throw std::invalid_argument("a single-point beta grid needs min == max");
        }
        return BetaGrid({min});
    }
    if (count < 2 || !(max > min)) {
        throw std::invalid_argument("beta grid needs count >= 2 and max > min");
    }
    const double lo = std::log10(min);
    const double hi = std::log10(max);
    const auto last = static_cast<double>(count - 1);
    std::vector<double> betas(count);
    for (std::size_t i = 0; i < count; ++i) {
        // evaluate from both ends so the grid is symmetric in log space
        const double t = static_cast<double>(i);
        const double exponent = (lo * (last - t) + hi * t) / last;
        betas[i] = std::pow(10.0, exponent);
    }
    betas.front() = min;
    betas.back() = max;
    return BetaGrid(std::move(betas));
}

BetaGrid default_beta_grid() { return log_beta_grid(0.1, 10.0, 201); }

FbetaCurve fbeta_curve(const ConfusionMatrix& m, const BetaGrid& grid, std::string label)
{
    const auto precision = ppv(m);
    const auto recall = tpr(m);
    std::vector<MetricValue> values;
    values.reserve(grid.size());
    for (const double beta : grid.betas()) {
        values.push_back(fbeta_from_rates(precision, recall, beta));
    }
    return {std::move(label), grid, std::move(values), false, {}};
}

FbetaCurve fbeta_envelope(std::span<const ConfusionMatrix> members, const BetaGrid& grid, std::string label)
{
    if (members.empty()) {
        throw std::invalid_argument("F-beta envelope needs at least one member");
    }
    FbetaCurve env{std::move(label), grid, {}, true, std::vector<std::size_t>(grid.size(), 0)};
    env.values.resize(grid.size());
    for (std::size_t k = 0; k < members.size(); ++k) {
        const auto curve = fbeta_curve(members[k], grid);
        for (std::size_t i = 0; i < grid.size(); ++i) {
            if (k == 0 || curve.values[i].value > env.values[i].value) {
                env.values[i] = curve.values[i];
                env.argmax[i] = k;
            }
        }
    }
    return env;
}

} // namespace pareto_judge
