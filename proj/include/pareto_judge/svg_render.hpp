#ifndef PARETO_JUDGE_SVG_RENDER_HPP
#define PARETO_JUDGE_SVG_RENDER_HPP

#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "pareto_judge/fbeta_analysis.hpp"
#include "pareto_judge/objective_space.hpp"

namespace pareto_judge {

// SVG 1.1 figures on a fixed 800x600 viewBox. Every emitter is a pure
// function of its inputs, so identical inputs give byte-identical files.

inline constexpr double kSvgWidth = 800.0;
inline constexpr double kSvgHeight = 600.0;

enum class RegionMode { hypervolume, dominance };
enum class IsoMetric { gmean, f1 };

// Maps a data rectangle onto a pixel rectangle; SVG y grows downward.
struct PlotFrame {
    double left, top, width, height;
    double x_min, x_max, y_min, y_max;

    double px(double x) const { return left + (x - x_min) / (x_max - x_min) * width; }
    double py(double y) const { return top + (1.0 - (y - y_min) / (y_max - y_min)) * height; }
    // pixels per unit of data area
    double area_scale() const { return width / (x_max - x_min) * height / (y_max - y_min); }
};

struct AxisLabels {
    std::string x = "objective 1";
    std::string y = "objective 2";
};

std::string fbeta_plot_svg(std::span<const FbetaCurve> curves, const std::string& title = {});
void render_fbeta_plot(std::span<const FbetaCurve> curves, const std::filesystem::path& out,
                       const std::string& title = {});

// Square frame covering [0, 1]^2 widened to contain the front and ref.
PlotFrame region_plot_frame(const SolutionSetd& front, const ObjectivePointd& ref);

std::string region_plot_svg(const SolutionSetd& front, const ObjectivePointd& ref, RegionMode mode,
                            const AxisLabels& labels = {}, const std::string& title = {});
void render_region_plot(const SolutionSetd& front, const ObjectivePointd& ref, RegionMode mode,
                        const std::filesystem::path& out, const AxisLabels& labels = {},
                        const std::string& title = {});

/// Points on the level set of the metric over the unit square: y = g^2 / x for
/// G-mean, y = f x / (2x - f) for F1 (x = recall, y = precision). Sampled
/// log-uniformly in x from the curve's entry into the square to x = 1.
std::vector<Eigen::Vector2d> isocurve_samples(IsoMetric metric, double level, std::size_t count = 200);

// Frame used by the isocurve figure.
PlotFrame isocurve_frame();

std::string isocurves_svg(IsoMetric metric, std::span<const double> levels);
void render_isocurves(IsoMetric metric, std::span<const double> levels, const std::filesystem::path& out);

} // namespace pareto_judge

#endif // PARETO_JUDGE_SVG_RENDER_HPP
