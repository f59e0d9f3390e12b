#include "pareto_judge/cli.hpp"

#include <algorithm>
#include <charconv>
#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <map>
#include <ostream>
#include <set>
#include <thread>
#include <utility>
#include <vector>

#include <CLI11.hpp>

#include "pareto_judge/confusion_metrics.hpp"
#include "pareto_judge/errors.hpp"
#include "pareto_judge/fbeta_analysis.hpp"
#include "pareto_judge/indicators.hpp"
#include "pareto_judge/ingest_report.hpp"
#include "pareto_judge/output_file.hpp"
#include "pareto_judge/svg_render.hpp"

namespace pareto_judge::cli {

namespace {

namespace fs = std::filesystem;

// Raised for bad flag values that CLI11 cannot catch on its own.
class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct RunConfig {
    std::string front;
    std::string refs;
    std::string in;
    std::string out;
    std::string payload = "auto";
    std::string indicators = "ed,hv,sdr,ndr";
    std::vector<std::size_t> negate;
    std::int64_t fold = -1;
    bool filter_front = false;
    std::uint64_t seed = 0;
    std::uint64_t hv_samples = 1'000'000;
    std::string format = "csv";
    double beta = 1.0;
    double beta_min = 0.1;
    double beta_max = 10.0;
    std::size_t beta_count = 201;
    bool selection = false;
    std::string dataset;
    std::string method;
    std::string mode = "hypervolume";
    std::string metric = "gmean";
    std::vector<double> levels{0.2, 0.4, 0.6, 0.8};
    std::string moo_method;
};

std::vector<std::string> split_list(const std::string& text)
{
    std::vector<std::string> items;
    std::size_t start = 0;
    while (start <= text.size()) {
        const auto comma = text.find(',', start);
        const auto end = comma == std::string::npos ? text.size() : comma;
        if (end > start) {
            items.push_back(text.substr(start, end - start));
        }
        if (comma == std::string::npos) {
            break;
        }
        start = comma + 1;
    }
    return items;
}

std::vector<Indicator> parse_indicator_list(const std::string& text)
{
    std::vector<Indicator> out;
    for (const auto& item : split_list(text)) {
        const auto ind = parse_indicator(item);
        if (!ind) {
            throw UsageError("unknown indicator '" + item + "' (expected ed, gd, hv, sdr, ndr)");
        }
        if (std::find(out.begin(), out.end(), *ind) == out.end()) {
            out.push_back(*ind);
        }
    }
    if (out.empty()) {
        throw UsageError("--indicators is empty");
    }
    return out;
}

unsigned thread_cap()
{
    const char* env = std::getenv("PARETO_JUDGE_THREADS");
    if (env == nullptr || *env == '\0') {
        return std::max(1u, std::thread::hardware_concurrency());
    }
    const std::string_view text(env);
    unsigned value = 0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || ptr != text.data() + text.size() || value == 0) {
        throw ValidationError("PARETO_JUDGE_THREADS must be a positive integer, got '" + std::string(text) + "'");
    }
    return value;
}

std::vector<ExperimentRecord> load_records(const std::string& path, const RunConfig& cfg)
{
    if (!fs::exists(path)) {
        throw IoError("input file '" + path + "' does not exist");
    }
    PayloadKind kind{};
    if (cfg.payload == "counts") {
        kind = PayloadKind::counts;
    } else if (cfg.payload == "objectives") {
        kind = PayloadKind::objectives;
    } else {
        const auto detected = detect_payload_kind(path);
        if (!detected) {
            throw ParseError(path, 1, {}, "header matches neither the counts nor the objectives schema");
        }
        kind = *detected;
    }
    ParseOptions opts;
    if (kind == PayloadKind::objectives) {
        opts.negate_columns = cfg.negate;
    } else if (!cfg.negate.empty()) {
        throw ValidationError("--negate applies to objectives files only ('" + path + "' holds counts)");
    }
    return parse_records(fs::path(path), kind, opts);
}

std::optional<std::uint64_t> fold_of(const RunConfig& cfg)
{
    if (cfg.fold < 0) {
        return std::nullopt;
    }
    return static_cast<std::uint64_t>(cfg.fold);
}

ReportFormat report_format(const std::string& name)
{
    return name == "markdown" ? ReportFormat::markdown : ReportFormat::csv;
}

std::string num(double v)
{
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, ptr);
}

// Writes every pending file only after all of them were produced.
void commit(const std::vector<std::pair<fs::path, std::string>>& files)
{
    for (const auto& [path, content] : files) {
        if (path.has_parent_path() && !fs::exists(path.parent_path())) {
            std::error_code ec;
            fs::create_directories(path.parent_path(), ec);
            if (ec) {
                throw IoError("cannot create directory '" + path.parent_path().string() + "': " + ec.message());
            }
        }
    }
    for (const auto& [path, content] : files) {
        write_file_atomic(path, content);
    }
}

void emit(const RunConfig& cfg, const std::string& content, std::ostream& out)
{
    if (cfg.out.empty()) {
        out << content;
    } else {
        commit({{cfg.out, content}});
    }
}

void cmd_metrics(const RunConfig& cfg, std::ostream& out)
{
    RunConfig counts_cfg = cfg;
    counts_cfg.payload = "counts";
    const auto records = load_records(cfg.in, counts_cfg);
    std::string csv = "dataset,method,fold,solution_id,tpr,tnr,ppv,bac,gmean,fbeta,undefined\n";
    for (const auto& r : records) {
        const auto& m = *r.counts();
        const std::pair<const char*, MetricValue> values[] = {
            {"tpr", tpr(m)}, {"tnr", tnr(m)}, {"ppv", ppv(m)}, {"bac", bac(m)}, {"gmean", gmean(m)},
            {"fbeta", fbeta(m, cfg.beta)},
        };
        csv += r.dataset + "," + r.method + "," + std::to_string(r.fold) + "," + std::to_string(r.solution_id);
        std::string undefined;
        for (const auto& [name, v] : values) {
            csv += "," + num(v.value);
            if (!v.defined) {
                undefined += (undefined.empty() ? "" : ";") + std::string(name);
            }
        }
        csv += "," + undefined + "\n";
    }
    emit(cfg, csv, out);
}

void cmd_compare(const RunConfig& cfg)
{
    AggregateOptions opts;
    opts.indicators = parse_indicator_list(cfg.indicators);
    opts.filter_front = cfg.filter_front;
    opts.fold = fold_of(cfg);
    opts.hv = {cfg.hv_samples, cfg.seed};
    opts.threads = thread_cap();
    const auto front = load_records(cfg.front, cfg);
    const auto refs = load_records(cfg.refs, cfg);
    const auto report = aggregate(front, refs, opts);
    commit({{cfg.out, format_report(report, report_format(cfg.format))}});
}

void cmd_report(const RunConfig& cfg)
{
    if (!fs::exists(cfg.in)) {
        throw IoError("input file '" + cfg.in + "' does not exist");
    }
    auto report = parse_report(fs::path(cfg.in));
    report.moo_method = cfg.moo_method;
    if (report.rows.empty()) {
        throw ValidationError("report '" + cfg.in + "' has no rows");
    }
    commit({{cfg.out, format_report(report, report_format(cfg.format))}});
}

void cmd_datasets(const RunConfig& cfg, std::ostream& out)
{
    if (!fs::exists(cfg.in)) {
        throw IoError("input file '" + cfg.in + "' does not exist");
    }
    emit(cfg, format_datasets(parse_datasets(fs::path(cfg.in))), out);
}

// Records of one fold grouped by dataset then method, in first-seen order.
struct FoldView {
    std::vector<std::string> datasets;
    std::map<std::string, std::vector<std::string>> methods;
    std::map<std::pair<std::string, std::string>, std::vector<const ExperimentRecord*>> records;
};

FoldView select_fold(const std::vector<ExperimentRecord>& recs, std::uint64_t fold, const std::string& dataset)
{
    FoldView view;
    for (const auto& r : recs) {
        if (r.fold != fold || (!dataset.empty() && r.dataset != dataset)) {
            continue;
        }
        if (std::find(view.datasets.begin(), view.datasets.end(), r.dataset) == view.datasets.end()) {
            view.datasets.push_back(r.dataset);
        }
        auto& ms = view.methods[r.dataset];
        if (std::find(ms.begin(), ms.end(), r.method) == ms.end()) {
            ms.push_back(r.method);
        }
        view.records[{r.dataset, r.method}].push_back(&r);
    }
    for (auto& [key, list] : view.records) {
        std::sort(list.begin(), list.end(), [](auto* a, auto* b) { return a->solution_id < b->solution_id; });
    }
    return view;
}

std::uint64_t required_fold(const RunConfig& cfg)
{
    if (cfg.fold < 0) {
        throw UsageError("--fold is required for single-split figures");
    }
    return static_cast<std::uint64_t>(cfg.fold);
}

const std::string& single_method(const FoldView& view, const std::string& dataset, const std::string& input)
{
    const auto& ms = view.methods.at(dataset);
    if (ms.size() != 1) {
        throw ValidationError(input + " must hold a single method for dataset '" + dataset + "'");
    }
    return ms.front();
}

void cmd_fbeta_plot(const RunConfig& cfg)
{
    const auto fold = required_fold(cfg);
    const BetaGrid grid = log_beta_grid(cfg.beta_min, cfg.beta_max, cfg.beta_count);
    RunConfig counts_cfg = cfg;
    counts_cfg.payload = "counts";
    const auto front = load_records(cfg.front, counts_cfg);
    const auto refs = load_records(cfg.refs, counts_cfg);
    const auto fv = select_fold(front, fold, cfg.dataset);
    const auto rv = select_fold(refs, fold, cfg.dataset);
    if (fv.datasets.empty()) {
        throw ValidationError("front input has no records for fold " + std::to_string(fold)
                              + (cfg.dataset.empty() ? "" : " and dataset '" + cfg.dataset + "'"));
    }

    std::vector<std::pair<fs::path, std::string>> files;
    for (const auto& ds : fv.datasets) {
        const auto& moo = single_method(fv, ds, "front input");
        const auto& members_recs = fv.records.at({ds, moo});
        std::vector<const ExperimentRecord*> chosen = members_recs;
        if (cfg.filter_front) {
            PointMatrixd pts(static_cast<Eigen::Index>(members_recs.size()), 2);
            for (std::size_t i = 0; i < members_recs.size(); ++i) {
                pts.row(static_cast<Eigen::Index>(i)) = members_recs[i]->objectives();
            }
            const auto kept = pareto_front(SolutionSetd(moo, pts));
            chosen.clear();
            for (const auto* r : members_recs) {
                const auto p = r->objectives();
                for (Eigen::Index k = 0; k < kept.size(); ++k) {
                    if ((kept.point(k).array() == p.array()).all()) {
                        chosen.push_back(r);
                        break;
                    }
                }
            }
        }
        std::vector<ConfusionMatrix> members;
        for (const auto* r : chosen) {
            members.push_back(*r->counts());
        }

        if (!rv.methods.count(ds)) {
            throw ValidationError("reference input has no records for dataset '" + ds + "' fold "
                                  + std::to_string(fold));
        }
        std::vector<FbetaCurve> curves;
        for (const auto& m : rv.methods.at(ds)) {
            const auto& list = rv.records.at({ds, m});
            if (list.size() != 1) {
                throw ValidationError("reference method '" + m + "' has several solutions for dataset '" + ds
                                      + "' fold " + std::to_string(fold));
            }
            curves.push_back(fbeta_curve(*list.front()->counts(), grid, m));
        }
        curves.push_back(fbeta_envelope(members, grid, moo + " (best)"));
        files.emplace_back(fs::path(cfg.out) / (ds + "_fbeta.svg"),
                           fbeta_plot_svg(curves, ds + ", fold " + std::to_string(fold)));

        if (cfg.selection) {
            const auto& env = curves.back();
            std::string csv = "dataset,beta,fbeta,solution_id\n";
            for (std::size_t i = 0; i < grid.size(); ++i) {
                csv += ds + "," + num(grid[i]) + "," + num(env.values[i].value) + ","
                       + std::to_string(chosen[env.argmax[i]]->solution_id) + "\n";
            }
            files.emplace_back(fs::path(cfg.out) / (ds + "_fbeta-selection.csv"), std::move(csv));
        }
    }
    commit(files);
}

void cmd_region_plot(const RunConfig& cfg)
{
    const auto fold = required_fold(cfg);
    const RegionMode mode = cfg.mode == "dominance" ? RegionMode::dominance : RegionMode::hypervolume;
    const auto front = load_records(cfg.front, cfg);
    const auto refs = load_records(cfg.refs, cfg);
    const auto fv = select_fold(front, fold, cfg.dataset);
    const auto rv = select_fold(refs, fold, cfg.dataset);
    if (fv.datasets.empty()) {
        throw ValidationError("front input has no records for fold " + std::to_string(fold));
    }
    const bool from_counts = front.front().kind() == PayloadKind::counts;
    const AxisLabels labels = from_counts ? AxisLabels{"TPR", "TNR"} : AxisLabels{};

    std::vector<std::pair<fs::path, std::string>> files;
    for (const auto& ds : fv.datasets) {
        const auto& moo = single_method(fv, ds, "front input");
        const auto& recs = fv.records.at({ds, moo});
        PointMatrixd pts(static_cast<Eigen::Index>(recs.size()), recs.front()->objectives().size());
        for (std::size_t i = 0; i < recs.size(); ++i) {
            const auto p = recs[i]->objectives();
            if (p.size() != pts.cols()) {
                throw ValidationError("mixed dimensionality in front for dataset '" + ds + "'");
            }
            pts.row(static_cast<Eigen::Index>(i)) = p;
        }
        SolutionSetd set(moo, std::move(pts));
        if (cfg.filter_front) {
            set = pareto_front(set);
        }
        if (set.dimension() != 2) {
            throw ValidationError("region plots need two objectives, dataset '" + ds + "' has "
                                  + std::to_string(set.dimension()));
        }
        if (!rv.methods.count(ds)) {
            throw ValidationError("reference input has no records for dataset '" + ds + "' fold "
                                  + std::to_string(fold));
        }
        bool any = false;
        for (const auto& m : rv.methods.at(ds)) {
            if (!cfg.method.empty() && m != cfg.method) {
                continue;
            }
            const auto& list = rv.records.at({ds, m});
            if (list.size() != 1) {
                throw ValidationError("reference method '" + m + "' has several solutions for dataset '" + ds
                                      + "' fold " + std::to_string(fold));
            }
            const ObjectivePointd ref = list.front()->objectives();
            const std::string kind = mode == RegionMode::dominance ? "dominance" : "hypervolume";
            files.emplace_back(fs::path(cfg.out) / (ds + "_" + kind + "-" + m + ".svg"),
                               region_plot_svg(set, ref, mode, labels, ds + ": " + moo + " vs " + m));
            any = true;
        }
        if (!any) {
            throw ValidationError("reference method '" + cfg.method + "' not found for dataset '" + ds + "'");
        }
    }
    commit(files);
}

void cmd_isocurves(const RunConfig& cfg)
{
    const IsoMetric metric = cfg.metric == "f1" ? IsoMetric::f1 : IsoMetric::gmean;
    for (const double level : cfg.levels) {
        if (!(level > 0.0 && level < 1.0)) {
            throw ValidationError("isocurve level " + num(level) + " outside (0, 1)");
        }
    }
    commit({{cfg.out, isocurves_svg(metric, cfg.levels)}});
}

void add_records_flags(CLI::App* cmd, RunConfig& cfg)
{
    cmd->add_option("--front", cfg.front, "MOO front results (CSV)")->required();
    cmd->add_option("--refs", cfg.refs, "reference method results (CSV)")->required();
    cmd->add_option("--payload", cfg.payload, "input schema: auto, counts or objectives")
        ->check(CLI::IsMember({"auto", "counts", "objectives"}));
    cmd->add_option("--negate", cfg.negate, "1-based objective columns to negate (minimisation criteria)")
        ->delimiter(',');
    cmd->add_flag("--filter-front", cfg.filter_front, "drop strictly dominated front members first");
}

} // namespace

int run(std::span<const std::string> args, std::ostream& out, std::ostream& err)
{
    RunConfig cfg;
    CLI::App app{"Compare multi-objective classifier fronts against single reference classifiers."};
    app.name("pareto-judge");
    app.require_subcommand(1);
    app.allow_windows_style_options(false);

    auto* metrics = app.add_subcommand("metrics", "base and aggregated metrics per confusion-count record");
    metrics->add_option("--in", cfg.in, "counts CSV")->required();
    metrics->add_option("--beta", cfg.beta, "beta of the F-beta column")->check(CLI::PositiveNumber);
    metrics->add_option("--out", cfg.out, "output CSV (stdout when omitted)");

    auto* compare = app.add_subcommand("compare", "aggregate indicators over folds into a report");
    add_records_flags(compare, cfg);
    compare->add_option("--indicators", cfg.indicators, "comma list of ed, gd, hv, sdr, ndr");
    compare->add_option("--fold", cfg.fold, "restrict to one fold")->check(CLI::NonNegativeNumber);
    compare->add_option("--seed", cfg.seed, "seed of the Monte Carlo hypervolume (M > 2)");
    compare->add_option("--hv-samples", cfg.hv_samples, "Monte Carlo samples (M > 2)")->check(CLI::PositiveNumber);
    compare->add_option("--format", cfg.format, "csv or markdown")->check(CLI::IsMember({"csv", "markdown"}));
    compare->add_option("--out", cfg.out, "report path")->required();

    auto* fplot = app.add_subcommand("fbeta-plot", "F-beta curves of references and the front envelope");
    fplot->add_option("--front", cfg.front, "MOO front confusion counts (CSV)")->required();
    fplot->add_option("--refs", cfg.refs, "reference confusion counts (CSV)")->required();
    fplot->add_option("--fold", cfg.fold, "fold to plot")->check(CLI::NonNegativeNumber);
    fplot->add_option("--dataset", cfg.dataset, "only this dataset");
    fplot->add_option("--beta-min", cfg.beta_min, "smallest beta")->check(CLI::PositiveNumber);
    fplot->add_option("--beta-max", cfg.beta_max, "largest beta")->check(CLI::PositiveNumber);
    fplot->add_option("--beta-count", cfg.beta_count, "number of grid points")->check(CLI::PositiveNumber);
    fplot->add_flag("--filter-front", cfg.filter_front, "drop strictly dominated front members first");
    fplot->add_flag("--selection", cfg.selection, "also write the per-beta best front member");
    fplot->add_option("--out", cfg.out, "output directory")->required();

    auto* rplot = app.add_subcommand("region-plot", "hypervolume or dominance-region figure");
    add_records_flags(rplot, cfg);
    rplot->add_option("--fold", cfg.fold, "fold to plot")->check(CLI::NonNegativeNumber);
    rplot->add_option("--dataset", cfg.dataset, "only this dataset");
    rplot->add_option("--method", cfg.method, "only this reference method");
    rplot->add_option("--mode", cfg.mode, "hypervolume or dominance")
        ->check(CLI::IsMember({"hypervolume", "dominance"}));
    rplot->add_option("--out", cfg.out, "output directory")->required();

    auto* iso = app.add_subcommand("isocurves", "level sets of G-mean or F1");
    iso->add_option("--metric", cfg.metric, "gmean or f1")->check(CLI::IsMember({"gmean", "f1"}));
    iso->add_option("--levels", cfg.levels, "comma list of levels in (0, 1)")->delimiter(',');
    iso->add_option("--out", cfg.out, "output SVG")->required();

    auto* report = app.add_subcommand("report", "re-render a report CSV");
    report->add_option("--in", cfg.in, "report CSV")->required();
    report->add_option("--format", cfg.format, "csv or markdown")->check(CLI::IsMember({"csv", "markdown"}));
    report->add_option("--moo-method", cfg.moo_method, "label of the compared method");
    report->add_option("--out", cfg.out, "output path")->required();

    auto* datasets = app.add_subcommand("datasets", "dataset characteristics with imbalance ratio");
    datasets->add_option("--in", cfg.in, "name,n_features,n_samples,n_minority CSV")->required();
    datasets->add_option("--out", cfg.out, "output CSV (stdout when omitted)");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << "\nrun with --help for usage\n";
        return kExitUsage;
    }

    try {
        if (metrics->parsed()) {
            cmd_metrics(cfg, out);
        } else if (compare->parsed()) {
            cmd_compare(cfg);
        } else if (fplot->parsed()) {
            cmd_fbeta_plot(cfg);
        } else if (rplot->parsed()) {
            cmd_region_plot(cfg);
        } else if (iso->parsed()) {
            cmd_isocurves(cfg);
        } else if (report->parsed()) {
            cmd_report(cfg);
        } else if (datasets->parsed()) {
            cmd_datasets(cfg, out);
        }
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitInvalidInput;
    }
    return kExitOk;
}

} // namespace pareto_judge::cli
