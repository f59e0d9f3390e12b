#include "pareto_judge/svg_render.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <string_view>
#include <utility>

#include "pareto_judge/indicators.hpp"
#include "pareto_judge/output_file.hpp"

namespace pareto_judge {

namespace {

constexpr std::array<std::string_view, 10> kPalette{
    "#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd",
    "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf",
};

std::string num(double v, int decimals = 3)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
    std::string s(buf);
    // "-0.000" and "0.000" must print the same
    if (s.front() == '-' && s.find_first_not_of("-0.") == std::string::npos) {
        s.erase(0, 1);
    }
    return s;
}

std::string escape(std::string_view text)
{
    std::string out;
    out.reserve(text.size());
    for (const char c : text) {
        switch (c) {
        case '&': out += "&amp;"; break;
        case '<': out += "&lt;"; break;
        case '>': out += "&gt;"; break;
        case '"': out += "&quot;"; break;
        default: out += c;
        }
    }
    return out;
}

class SvgWriter {
public:
    SvgWriter()
    {
        out_ += "<?xml version=\"1.0\" encoding=\"UTF-8\" standalone=\"no\"?>\n";
        out_ += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"800\" height=\"600\" "
                "viewBox=\"0 0 800 600\" font-family=\"sans-serif\" font-size=\"12pt\">\n";
        out_ += "<rect x=\"0\" y=\"0\" width=\"800\" height=\"600\" fill=\"#ffffff\"/>\n";
    }

    void line(double x1, double y1, double x2, double y2, std::string_view stroke, double width = 1.0,
              std::string_view extra = {})
    {
        out_ += "<line x1=\"" + num(x1) + "\" y1=\"" + num(y1) + "\" x2=\"" + num(x2) + "\" y2=\"" + num(y2)
                + "\" stroke=\"" + std::string(stroke) + "\" stroke-width=\"" + num(width, 1) + "\"";
        if (!extra.empty()) {
            out_ += " " + std::string(extra);
        }
        out_ += "/>\n";
    }

    void rect(std::string_view cls, double x, double y, double w, double h, std::string_view fill, double opacity)
    {
        out_ += "<rect class=\"" + std::string(cls) + "\" x=\"" + num(x, 6) + "\" y=\"" + num(y, 6) + "\" width=\""
                + num(w, 6) + "\" height=\"" + num(h, 6) + "\" fill=\"" + std::string(fill) + "\" fill-opacity=\""
                + num(opacity, 2) + "\" stroke=\"none\"/>\n";
    }

    void circle(std::string_view cls, double cx, double cy, double r, std::string_view fill)
    {
        out_ += "<circle class=\"" + std::string(cls) + "\" cx=\"" + num(cx) + "\" cy=\"" + num(cy) + "\" r=\""
                + num(r, 1) + "\" fill=\"" + std::string(fill) + "\" stroke=\"#000000\" stroke-width=\"1\"/>\n";
    }

    void text(double x, double y, std::string_view content, std::string_view anchor = "start",
              std::string_view extra = {})
    {
        out_ += "<text x=\"" + num(x) + "\" y=\"" + num(y) + "\" text-anchor=\"" + std::string(anchor) + "\"";
        if (!extra.empty()) {
            out_ += " " + std::string(extra);
        }
        out_ += ">" + escape(content) + "</text>\n";
    }

    void polyline(std::string_view attrs, const std::vector<std::pair<double, double>>& pts)
    {
        out_ += "<polyline " + std::string(attrs) + " fill=\"none\" points=\"";
        for (std::size_t i = 0; i < pts.size(); ++i) {
            if (i > 0) {
                out_ += ' ';
            }
            out_ += num(pts[i].first, 6) + "," + num(pts[i].second, 6);
        }
        out_ += "\"/>\n";
    }

    void raw(std::string_view s) { out_ += s; }

    std::string finish()
    {
        out_ += "</svg>\n";
        return std::move(out_);
    }

private:
    std::string out_;
};

struct Tick {
    double value;
    std::string label;
};

void draw_axes(SvgWriter& svg, const PlotFrame& f, const std::vector<Tick>& xticks, const std::vector<Tick>& yticks,
               std::string_view xlabel, std::string_view ylabel)
{
    const double bottom = f.top + f.height;
    const double right = f.left + f.width;
    svg.raw("<g class=\"axes\">\n");
    for (const auto& t : xticks) {
        const double x = f.px(t.value);
        svg.line(x, f.top, x, bottom, "#e0e0e0");
        svg.line(x, bottom, x, bottom + 5, "#000000");
        svg.text(x, bottom + 20, t.label, "middle");
    }
    for (const auto& t : yticks) {
        const double y = f.py(t.value);
        svg.line(f.left, y, right, y, "#e0e0e0");
        svg.line(f.left - 5, y, f.left, y, "#000000");
        svg.text(f.left - 8, y + 4, t.label, "end");
    }
    svg.line(f.left, bottom, right, bottom, "#000000");
    svg.line(f.left, f.top, f.left, bottom, "#000000");
    svg.text(f.left + f.width / 2, bottom + 42, xlabel, "middle");
    const double ymid = f.top + f.height / 2;
    svg.text(f.left - 50, ymid, ylabel, "middle",
             "transform=\"rotate(-90 " + num(f.left - 50) + " " + num(ymid) + ")\"");
    svg.raw("</g>\n");
}

std::vector<Tick> linear_ticks(double lo, double hi)
{
    std::vector<Tick> ticks;
    const double step = (hi - lo) <= 1.5 ? 0.2 : std::pow(10.0, std::floor(std::log10(hi - lo))) / 2.0;
    for (double v = std::ceil(lo / step - 1e-9) * step; v <= hi + 1e-9; v += step) {
        ticks.push_back({v, num(v, step < 1.0 ? 1 : 0)});
    }
    return ticks;
}

std::string stroke_color(std::size_t i) { return std::string(kPalette[i % kPalette.size()]); }

} // namespace

std::string fbeta_plot_svg(std::span<const FbetaCurve> curves, const std::string& title)
{
    if (curves.empty()) {
        throw std::invalid_argument("F-beta plot needs at least one curve");
    }
    const BetaGrid& grid = curves.front().grid;
    for (const auto& c : curves) {
        if (!(c.grid == grid)) {
            throw std::invalid_argument("F-beta plot curves must share one beta grid");
        }
        if (c.values.size() != grid.size()) {
            throw std::invalid_argument("F-beta curve length does not match its grid");
        }
    }
    double lo = std::log10(grid.betas().front());
    double hi = std::log10(grid.betas().back());
    if (hi == lo) {
        lo -= 0.5;
        hi += 0.5;
    }
    const PlotFrame frame{80.0, 50.0, 520.0, 470.0, lo, hi, 0.0, 1.0};

    std::vector<Tick> xticks;
    for (double e = std::ceil(lo - 1e-9); e <= hi + 1e-9; e += 1.0) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%g", std::pow(10.0, e));
        xticks.push_back({e, buf});
    }

    SvgWriter svg;
    if (!title.empty()) {
        svg.text(frame.left + frame.width / 2, 30, title, "middle");
    }
    draw_axes(svg, frame, xticks, linear_ticks(0.0, 1.0), "log10(beta)", "F-beta");

    for (std::size_t k = 0; k < curves.size(); ++k) {
        const auto& c = curves[k];
        std::vector<std::pair<double, double>> pts;
        pts.reserve(c.values.size());
        for (std::size_t i = 0; i < c.values.size(); ++i) {
            pts.emplace_back(frame.px(std::log10(grid[i])), frame.py(c.values[i].value));
        }
        std::string attrs = "class=\"" + std::string(c.is_envelope ? "curve envelope" : "curve") + "\" stroke=\""
                            + stroke_color(k) + "\"";
        attrs += c.is_envelope ? " stroke-width=\"2.5\" stroke-dasharray=\"8,4\"" : " stroke-width=\"1.5\"";
        svg.polyline(attrs, pts);
    }

    const double lx = frame.left + frame.width + 20;
    svg.raw("<g class=\"legend\">\n");
    for (std::size_t k = 0; k < curves.size(); ++k) {
        const double y = frame.top + 10 + 20.0 * static_cast<double>(k);
        svg.line(lx, y, lx + 24, y, stroke_color(k), curves[k].is_envelope ? 2.5 : 1.5,
                 curves[k].is_envelope ? "stroke-dasharray=\"8,4\"" : "");
        svg.text(lx + 30, y + 4, curves[k].method_label);
    }
    svg.raw("</g>\n");
    return svg.finish();
}

void render_fbeta_plot(std::span<const FbetaCurve> curves, const std::filesystem::path& out,
                       const std::string& title)
{
    write_file_atomic(out, fbeta_plot_svg(curves, title));
}

PlotFrame region_plot_frame(const SolutionSetd& front, const ObjectivePointd& ref)
{
    if (front.dimension() != 2 || ref.size() != 2) {
        throw std::invalid_argument("region plots need exactly two objectives");
    }
    const ObjectivePointd lo = front.points().colwise().minCoeff().cwiseMin(ref).cwiseMin(0.0);
    const ObjectivePointd hi = front.points().colwise().maxCoeff().cwiseMax(ref).cwiseMax(1.0);
    return {80.0, 50.0, 470.0, 470.0, lo(0), hi(0), lo(1), hi(1)};
}

std::string region_plot_svg(const SolutionSetd& front, const ObjectivePointd& ref, RegionMode mode,
                            const AxisLabels& labels, const std::string& title)
{
    require_same_dimension(front.point(0), ref);
    const PlotFrame f = region_plot_frame(front, ref);

    SvgWriter svg;
    if (!title.empty()) {
        svg.text(f.left + f.width / 2, 30, title, "middle");
    }
    draw_axes(svg, f, linear_ticks(f.x_min, f.x_max), linear_ticks(f.y_min, f.y_max), labels.x, labels.y);

    std::vector<std::pair<std::string, std::string>> legend;
    if (mode == RegionMode::hypervolume) {
        svg.raw("<g class=\"hv\">\n");
        for (const auto& s : detail::hypervolume_strips_2d(front.points(), ref)) {
            svg.rect("hv-region", f.px(s.x_lo), f.py(s.y_hi), f.px(s.x_hi) - f.px(s.x_lo),
                     f.py(s.y_lo) - f.py(s.y_hi), "#1f77b4", 0.35);
        }
        svg.raw("</g>\n");
        for (Eigen::Index i = 0; i < front.size(); ++i) {
            svg.circle("point", f.px(front.point(i)(0)), f.py(front.point(i)(1)), 4.0, "#1f77b4");
        }
        legend = {{"#1f77b4", "hypervolume"}};
    } else {
        svg.raw("<g class=\"dominance\">\n");
        svg.rect("dominating-region", f.px(ref(0)), f.py(f.y_max), f.px(f.x_max) - f.px(ref(0)),
                 f.py(ref(1)) - f.py(f.y_max), "#2ca02c", 0.25);
        svg.rect("dominated-region", f.px(f.x_min), f.py(ref(1)), f.px(ref(0)) - f.px(f.x_min),
                 f.py(f.y_min) - f.py(ref(1)), "#d62728", 0.25);
        svg.raw("</g>\n");
        for (Eigen::Index i = 0; i < front.size(); ++i) {
            const auto p = front.point(i);
            const char* cls = "point nondominated";
            const char* fill = "#7f7f7f";
            if (strictly_dominates(p, ref)) {
                cls = "point dominating";
                fill = "#2ca02c";
            } else if (strictly_dominates(ref, p)) {
                cls = "point dominated";
                fill = "#d62728";
            }
            svg.circle(cls, f.px(p(0)), f.py(p(1)), 4.0, fill);
        }
        legend = {{"#2ca02c", "dominates reference"}, {"#d62728", "dominated by reference"},
                  {"#7f7f7f", "non-dominated"}};
    }

    const double rx = f.px(ref(0));
    const double ry = f.py(ref(1));
    svg.raw("<rect class=\"reference\" x=\"" + num(rx - 5) + "\" y=\"" + num(ry - 5)
            + "\" width=\"10\" height=\"10\" fill=\"#000000\"/>\n");
    legend.emplace_back("#000000", "reference");

    const double lx = f.left + f.width + 30;
    svg.raw("<g class=\"legend\">\n");
    for (std::size_t k = 0; k < legend.size(); ++k) {
        const double y = f.top + 10 + 22.0 * static_cast<double>(k);
        svg.raw("<rect x=\"" + num(lx) + "\" y=\"" + num(y - 8) + "\" width=\"14\" height=\"14\" fill=\""
                + legend[k].first + "\"/>\n");
        svg.text(lx + 22, y + 4, legend[k].second);
    }
    svg.raw("</g>\n");
    return svg.finish();
}

void render_region_plot(const SolutionSetd& front, const ObjectivePointd& ref, RegionMode mode,
                        const std::filesystem::path& out, const AxisLabels& labels, const std::string& title)
{
    write_file_atomic(out, region_plot_svg(front, ref, mode, labels, title));
}

std::vector<Eigen::Vector2d> isocurve_samples(IsoMetric metric, double level, std::size_t count)
{
    if (!(level > 0.0 && level < 1.0)) {
        throw std::invalid_argument("isocurve level must lie in (0, 1)");
    }
    if (count < 2) {
        throw std::invalid_argument("isocurve needs at least two samples");
    }
    // x at which the curve enters the unit square through y = 1
    const double x_entry = metric == IsoMetric::gmean ? level * level : level / (2.0 - level);
    const double log_lo = std::log(x_entry);
    std::vector<Eigen::Vector2d> pts;
    pts.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        const double t = static_cast<double>(i) / static_cast<double>(count - 1);
        const double x = i + 1 == count ? 1.0 : std::exp(log_lo * (1.0 - t));
        const double y = metric == IsoMetric::gmean ? level * level / x : level * x / (2.0 * x - level);
        pts.emplace_back(x, y);
    }
    return pts;
}

PlotFrame isocurve_frame() { return {80.0, 50.0, 470.0, 470.0, 0.0, 1.0, 0.0, 1.0}; }

std::string isocurves_svg(IsoMetric metric, std::span<const double> levels)
{
    if (levels.empty()) {
        throw std::invalid_argument("isocurves need at least one level");
    }
    const PlotFrame f = isocurve_frame();
    const bool is_gmean = metric == IsoMetric::gmean;
    SvgWriter svg;
    svg.text(f.left + f.width / 2, 30, is_gmean ? "G-mean level sets" : "F1 level sets", "middle");
    draw_axes(svg, f, linear_ticks(0.0, 1.0), linear_ticks(0.0, 1.0), is_gmean ? "TPR" : "recall",
              is_gmean ? "TNR" : "precision");
    for (std::size_t k = 0; k < levels.size(); ++k) {
        const auto samples = isocurve_samples(metric, levels[k]);
        std::vector<std::pair<double, double>> pts;
        pts.reserve(samples.size());
        for (const auto& p : samples) {
            pts.emplace_back(f.px(p.x()), f.py(p.y()));
        }
        svg.polyline("class=\"isocurve\" data-level=\"" + num(levels[k], 6) + "\" stroke=\"" + stroke_color(k)
                         + "\" stroke-width=\"1.5\"",
                     pts);
        svg.text(pts.back().first + 6, pts.back().second + 4, num(levels[k], 2));
    }
    return svg.finish();
}

void render_isocurves(IsoMetric metric, std::span<const double> levels, const std::filesystem::path& out)
{
    write_file_atomic(out, isocurves_svg(metric, levels));
}

} // namespace pareto_judge
