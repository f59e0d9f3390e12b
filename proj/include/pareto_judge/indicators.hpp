#ifndef PARETO_JUDGE_INDICATORS_HPP
#define PARETO_JUDGE_INDICATORS_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <random>
#include <string_view>
#include <type_traits>
#include <vector>

#include <Eigen/Core>

#include "pareto_judge/objective_space.hpp"

namespace pareto_judge {

enum class Indicator { ED, GD, HV, SDR, NDR };

std::string_view indicator_name(Indicator ind) noexcept;

// Case-insensitive; nullopt for unknown names.
std::optional<Indicator> parse_indicator(std::string_view name) noexcept;

struct IndicatorResult {
    Indicator name;
    double value;
    std::size_t front_size;
    std::size_t reference_size;
};

struct MonteCarloEstimate {
    double value = 0.0;
    double standard_error = 0.0;
    std::uint64_t samples = 0;
};

// Controls the M > 2 fallback of hypervolume().
struct HypervolumeOptions {
    std::uint64_t samples = 1'000'000;
    std::uint64_t seed = 0;
};

/// Mean over front points of the distance to the nearest reference point.
template <typename Scalar>
Scalar generational_distance(const SolutionSet<Scalar>& front, const SolutionSet<Scalar>& refs)
{
    if (front.dimension() != refs.dimension()) {
        throw DimensionMismatch(static_cast<std::size_t>(refs.dimension()),
                                static_cast<std::size_t>(front.dimension()));
    }
    Scalar total = 0;
    for (Eigen::Index i = 0; i < front.size(); ++i) {
        total += (refs.points().rowwise() - front.point(i)).rowwise().norm().minCoeff();
    }
    return total / static_cast<Scalar>(front.size());
}

/// Generational distance against the single reference point.
template <typename Scalar>
Scalar euclidean_distance(const SolutionSet<Scalar>& front, const ObjectivePoint<Scalar>& ref)
{
    return generational_distance(front, SolutionSet<Scalar>::single("ref", ref));
}

namespace detail {

// One axis-aligned rectangle [x_lo, x_hi] x [y_lo, y_hi] of a 2-D box union.
template <typename Scalar>
struct Strip {
    Scalar x_lo, x_hi, y_lo, y_hi;
};

// Decomposes the union of boxes [ref, p] into disjoint horizontal strips.
// Points not strictly above ref in both coordinates span no area.
template <typename Scalar>
std::vector<Strip<Scalar>> hypervolume_strips_2d(const PointMatrix<Scalar>& pts, const ObjectivePoint<Scalar>& ref)
{
    std::vector<std::pair<Scalar, Scalar>> kept;
    kept.reserve(static_cast<std::size_t>(pts.rows()));
    for (Eigen::Index i = 0; i < pts.rows(); ++i) {
        if (pts(i, 0) > ref(0) && pts(i, 1) > ref(1)) {
            kept.emplace_back(pts(i, 0), pts(i, 1));
        }
    }
    std::sort(kept.begin(), kept.end(), [](const auto& a, const auto& b) {
        return a.first != b.first ? a.first > b.first : a.second > b.second;
    });
    std::vector<Strip<Scalar>> strips;
    Scalar covered_y = ref(1);
    for (const auto& [x, y] : kept) {
        if (y > covered_y) {
            strips.push_back({ref(0), x, covered_y, y});
            covered_y = y;
        }
    }
    return strips;
}

} // namespace detail

/// Monte Carlo estimate of the box-union measure, sampling uniformly in the
/// box spanned by ref and the coordinatewise maximum of the front.
/// Deterministic for a fixed seed.
template <typename Scalar>
MonteCarloEstimate hypervolume_mc(const SolutionSet<Scalar>& front, const ObjectivePoint<Scalar>& ref,
                                  std::uint64_t samples, std::uint64_t seed)
{
    static_assert(std::is_floating_point_v<Scalar>);
    require_same_dimension(front.point(0), ref);
    if (samples == 0) {
        throw std::invalid_argument("hypervolume_mc needs at least one sample");
    }
    const Eigen::Index dim = front.dimension();
    const ObjectivePoint<Scalar> upper = front.points().colwise().maxCoeff();
    const ObjectivePoint<Scalar> extent = upper - ref;
    if ((extent.array() <= Scalar(0)).any()) {
        return {0.0, 0.0, samples};
    }

    // zero-volume boxes can only be hit on a null set
    std::vector<Eigen::Index> live;
    for (Eigen::Index i = 0; i < front.size(); ++i) {
        if ((front.point(i).array() > ref.array()).all()) {
            live.push_back(i);
        }
    }

    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<Scalar> unit(Scalar(0), Scalar(1));
    ObjectivePoint<Scalar> sample(dim);
    std::uint64_t hits = 0;
    for (std::uint64_t s = 0; s < samples; ++s) {
        for (Eigen::Index j = 0; j < dim; ++j) {
            sample(j) = ref(j) + unit(rng) * extent(j);
        }
        for (const auto i : live) {
            if ((sample.array() <= front.point(i).array()).all()) {
                ++hits;
                break;
            }
        }
    }
    const double box = static_cast<double>(extent.prod());
    const double frac = static_cast<double>(hits) / static_cast<double>(samples);
    return {box * frac, box * std::sqrt(frac * (1.0 - frac) / static_cast<double>(samples)), samples};
}

/// Lebesgue measure of the union of boxes [ref, p] over the front. Exact for
/// one and two objectives; higher dimensions use the Monte Carlo estimator.
template <typename Scalar>
Scalar hypervolume(const SolutionSet<Scalar>& front, const ObjectivePoint<Scalar>& ref,
                   const HypervolumeOptions& opts = {})
{
    require_same_dimension(front.point(0), ref);
    switch (front.dimension()) {
    case 1:
        return std::max(Scalar(0), front.points().maxCoeff() - ref(0));
    case 2: {
        Scalar area = 0;
        for (const auto& s : detail::hypervolume_strips_2d(front.points(), ref)) {
            area += (s.x_hi - s.x_lo) * (s.y_hi - s.y_lo);
        }
        return area;
    }
    default:
        return static_cast<Scalar>(hypervolume_mc(front, ref, opts.samples, opts.seed).value);
    }
}

/// Fraction of front points strictly dominating ref.
template <typename Scalar>
Scalar sdr(const SolutionSet<Scalar>& front, const ObjectivePoint<Scalar>& ref)
{
    require_same_dimension(front.point(0), ref);
    Eigen::Index count = 0;
    for (Eigen::Index i = 0; i < front.size(); ++i) {
        count += strictly_dominates(front.point(i), ref) ? 1 : 0;
    }
    return static_cast<Scalar>(count) / static_cast<Scalar>(front.size());
}

/// One minus the fraction of front points strictly dominated by ref. Ties in
/// any coordinate leave a point non-dominated.
template <typename Scalar>
Scalar ndr(const SolutionSet<Scalar>& front, const ObjectivePoint<Scalar>& ref)
{
    require_same_dimension(front.point(0), ref);
    Eigen::Index count = 0;
    for (Eigen::Index i = 0; i < front.size(); ++i) {
        count += strictly_dominates(ref, front.point(i)) ? 1 : 0;
    }
    // one rounding step, so SDR <= NDR survives floating point
    return static_cast<Scalar>(front.size() - count) / static_cast<Scalar>(front.size());
}

/// Evaluates a point-reference indicator. GD uses `refs`; the others use the
/// single point `ref`.
template <typename Scalar>
IndicatorResult evaluate(Indicator ind, const SolutionSet<Scalar>& front, const SolutionSet<Scalar>& refs,
                         const HypervolumeOptions& opts = {})
{
    const auto front_size = static_cast<std::size_t>(front.size());
    const auto ref_size = static_cast<std::size_t>(refs.size());
    if (ind == Indicator::GD) {
        return {ind, static_cast<double>(generational_distance(front, refs)), front_size, ref_size};
    }
    if (refs.size() != 1) {
        throw std::invalid_argument(std::string(indicator_name(ind)) + " needs exactly one reference point");
    }
    const ObjectivePoint<Scalar> ref = refs.point(0);
    double value = 0.0;
    switch (ind) {
    case Indicator::ED:
        value = static_cast<double>(euclidean_distance(front, ref));
        break;
    case Indicator::HV:
        value = static_cast<double>(hypervolume(front, ref, opts));
        break;
    case Indicator::SDR:
        value = static_cast<double>(sdr(front, ref));
        break;
    case Indicator::NDR:
        value = static_cast<double>(ndr(front, ref));
        break;
    case Indicator::GD:
        break;
    }
    return {ind, value, front_size, ref_size};
}

} // namespace pareto_judge

#endif // PARETO_JUDGE_INDICATORS_HPP
