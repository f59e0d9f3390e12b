#include "pareto_judge/ingest_report.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <mutex>
#include <set>
#include <sstream>
#include <thread>
#include <tuple>

#include "pareto_judge/errors.hpp"
#include "pareto_judge/output_file.hpp"

namespace pareto_judge {

namespace {

const std::vector<std::string> kCountsHeader{"dataset", "method", "fold", "solution_id", "tp", "fn", "fp", "tn"};
const std::vector<std::string> kDatasetsHeader{"name", "n_features", "n_samples", "n_minority"};
const std::vector<std::string> kReportHeader{"indicator", "reference_method", "dataset", "mean", "std", "fold_count"};

std::vector<std::string> split(std::string_view line)
{
    std::vector<std::string> fields;
    std::size_t start = 0;
    while (true) {
        const auto comma = line.find(',', start);
        fields.emplace_back(line.substr(start, comma == std::string_view::npos ? line.npos : comma - start));
        if (comma == std::string_view::npos) {
            return fields;
        }
        start = comma + 1;
    }
}

std::string join(const std::vector<std::string>& fields)
{
    std::string out;
    for (std::size_t i = 0; i < fields.size(); ++i) {
        out += (i ? "," : "") + fields[i];
    }
    return out;
}

// Line-oriented CSV reader that tracks line numbers for diagnostics.
class CsvReader {
public:
    CsvReader(std::istream& in, std::string source) : in_(in), source_(std::move(source)) {}

    // Next non-empty line, split; false at end of input.
    bool next(std::vector<std::string>& fields)
    {
        std::string line;
        while (std::getline(in_, line)) {
            ++line_no_;
            if (!line.empty() && line.back() == '\r') {
                line.pop_back();
            }
            if (!line.empty()) {
                fields = split(line);
                return true;
            }
        }
        return false;
    }

    std::vector<std::string> header()
    {
        std::vector<std::string> fields;
        if (!next(fields)) {
            throw ParseError(source_, 0, {}, "missing header line");
        }
        return fields;
    }

    [[noreturn]] void fail(const std::string& column, const std::string& what) const
    {
        throw ParseError(source_, line_no_, column, what);
    }

    std::size_t line() const noexcept { return line_no_; }

private:
    std::istream& in_;
    std::string source_;
    std::size_t line_no_ = 0;
};

bool valid_identifier(std::string_view s)
{
    return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) {
        return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c == '_' || c == '-';
    });
}

std::string identifier(const CsvReader& r, const std::string& column, const std::string& text)
{
    if (!valid_identifier(text)) {
        r.fail(column, "invalid identifier '" + text + "' (allowed: A-Z a-z 0-9 _ -)");
    }
    return text;
}

template <typename Int>
Int integer(const CsvReader& r, const std::string& column, const std::string& text)
{
    Int value{};
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || ptr != text.data() + text.size() || text.empty()) {
        r.fail(column, "expected an integer, got '" + text + "'");
    }
    return value;
}

std::uint64_t non_negative(const CsvReader& r, const std::string& column, const std::string& text)
{
    const auto v = integer<std::int64_t>(r, column, text);
    if (v < 0) {
        r.fail(column, "value must be non-negative, got " + text);
    }
    return static_cast<std::uint64_t>(v);
}

double real(const CsvReader& r, const std::string& column, const std::string& text)
{
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || ptr != text.data() + text.size() || text.empty()) {
        r.fail(column, "expected a number, got '" + text + "'");
    }
    if (!std::isfinite(value)) {
        r.fail(column, "value must be finite");
    }
    return value;
}

std::string shortest(double v)
{
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, ptr);
}

std::string fixed2(double v)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    std::string s(buf);
    if (s == "-0.00") {
        s = "0.00";
    }
    return s;
}

std::ifstream open_input(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError("cannot open input file '" + path.string() + "'");
    }
    return in;
}

std::vector<std::string> objectives_header(std::size_t dim)
{
    std::vector<std::string> h{"dataset", "method", "fold", "solution_id"};
    for (std::size_t i = 1; i <= dim; ++i) {
        h.push_back("obj_" + std::to_string(i));
    }
    return h;
}

} // namespace

ObjectivePointd ExperimentRecord::objectives() const
{
    if (const auto* m = counts()) {
        return objective_point_of(*m);
    }
    return std::get<ObjectivePointd>(payload);
}

bool operator==(const ExperimentRecord& a, const ExperimentRecord& b)
{
    if (std::tie(a.dataset, a.method, a.fold, a.solution_id) != std::tie(b.dataset, b.method, b.fold, b.solution_id)
        || a.kind() != b.kind()) {
        return false;
    }
    if (a.kind() == PayloadKind::counts) {
        return *a.counts() == *b.counts();
    }
    const auto& pa = std::get<ObjectivePointd>(a.payload);
    const auto& pb = std::get<ObjectivePointd>(b.payload);
    return pa.size() == pb.size() && (pa.array() == pb.array()).all();
}

std::vector<ExperimentRecord> parse_records(std::istream& in, PayloadKind kind, const std::string& source,
                                            const ParseOptions& opts)
{
    CsvReader reader(in, source);
    const auto header = reader.header();

    std::size_t dim = 0;
    if (kind == PayloadKind::counts) {
        if (header != kCountsHeader) {
            reader.fail({}, "header must be '" + join(kCountsHeader) + "', got '" + join(header) + "'");
        }
        if (!opts.negate_columns.empty()) {
            throw std::invalid_argument("column negation applies to objectives files only");
        }
    } else {
        if (header.size() < 5 || header != objectives_header(header.size() - 4)) {
            reader.fail({}, "header must be 'dataset,method,fold,solution_id,obj_1,...,obj_M', got '" + join(header)
                                + "'");
        }
        dim = header.size() - 4;
        for (const auto c : opts.negate_columns) {
            if (c < 1 || c > dim) {
                throw std::invalid_argument("negated column " + std::to_string(c) + " outside 1.."
                                            + std::to_string(dim));
            }
        }
    }

    std::vector<ExperimentRecord> records;
    std::set<std::tuple<std::string, std::string, std::uint64_t, std::uint64_t>> seen;
    std::vector<std::string> f;
    while (reader.next(f)) {
        if (f.size() != header.size()) {
            const std::string what = kind == PayloadKind::objectives
                                         ? "row has " + std::to_string(f.size() > 4 ? f.size() - 4 : 0)
                                               + " objectives, header declares " + std::to_string(dim)
                                         : "row has " + std::to_string(f.size()) + " fields, expected "
                                               + std::to_string(header.size());
            reader.fail({}, what);
        }
        ExperimentRecord rec{identifier(reader, header[0], f[0]), identifier(reader, header[1], f[1]),
                             non_negative(reader, header[2], f[2]), non_negative(reader, header[3], f[3]),
                             ObjectivePointd{}};
        if (kind == PayloadKind::counts) {
            std::array<std::int64_t, 4> c{};
            for (std::size_t j = 0; j < 4; ++j) {
                c[j] = static_cast<std::int64_t>(non_negative(reader, header[4 + j], f[4 + j]));
            }
            if (c[0] + c[1] + c[2] + c[3] == 0) {
                reader.fail({}, "confusion matrix has no samples");
            }
            rec.payload = ConfusionMatrix(c[0], c[1], c[2], c[3]);
        } else {
            ObjectivePointd p(static_cast<Eigen::Index>(dim));
            for (std::size_t j = 0; j < dim; ++j) {
                p(static_cast<Eigen::Index>(j)) = real(reader, header[4 + j], f[4 + j]);
            }
            for (const auto c : opts.negate_columns) {
                p(static_cast<Eigen::Index>(c - 1)) = -p(static_cast<Eigen::Index>(c - 1));
            }
            rec.payload = std::move(p);
        }
        if (!seen.emplace(rec.dataset, rec.method, rec.fold, rec.solution_id).second) {
            reader.fail({}, "duplicate key (" + rec.dataset + ", " + rec.method + ", " + std::to_string(rec.fold) + ", "
                                + std::to_string(rec.solution_id) + ")");
        }
        records.push_back(std::move(rec));
    }
    return records;
}

std::vector<ExperimentRecord> parse_records(const std::filesystem::path& path, PayloadKind kind,
                                            const ParseOptions& opts)
{
    auto in = open_input(path);
    return parse_records(in, kind, path.string(), opts);
}

std::optional<PayloadKind> detect_payload_kind(const std::filesystem::path& path)
{
    auto in = open_input(path);
    std::string line;
    std::getline(in, line);
    if (!line.empty() && line.back() == '\r') {
        line.pop_back();
    }
    const auto header = split(line);
    if (header == kCountsHeader) {
        return PayloadKind::counts;
    }
    if (header.size() >= 5 && header == objectives_header(header.size() - 4)) {
        return PayloadKind::objectives;
    }
    return std::nullopt;
}

std::string emit_records(std::span<const ExperimentRecord> records)
{
    if (records.empty()) {
        // header-only files need a declared kind; default to counts
        return join(kCountsHeader) + "\n";
    }
    const auto kind = records.front().kind();
    const auto dim = kind == PayloadKind::objectives ? records.front().objectives().size() : 0;
    std::string out = join(kind == PayloadKind::counts ? kCountsHeader : objectives_header(dim)) + "\n";
    for (const auto& r : records) {
        if (r.kind() != kind) {
            throw std::invalid_argument("cannot emit records with mixed payload kinds");
        }
        out += r.dataset + "," + r.method + "," + std::to_string(r.fold) + "," + std::to_string(r.solution_id);
        if (const auto* m = r.counts()) {
            out += "," + std::to_string(m->tp()) + "," + std::to_string(m->fn()) + "," + std::to_string(m->fp()) + ","
                   + std::to_string(m->tn());
        } else {
            const auto& p = std::get<ObjectivePointd>(r.payload);
            if (p.size() != dim) {
                throw DimensionMismatch(static_cast<std::size_t>(dim), static_cast<std::size_t>(p.size()));
            }
            for (Eigen::Index j = 0; j < p.size(); ++j) {
                out += "," + shortest(p(j));
            }
        }
        out += "\n";
    }
    return out;
}

DatasetInfo::DatasetInfo(std::string name, std::uint64_t n_features, std::uint64_t n_samples,
                         std::uint64_t n_minority)
    : name_(std::move(name)), n_features_(n_features), n_samples_(n_samples), n_minority_(n_minority)
{
    if (n_minority_ == 0) {
        throw std::invalid_argument("dataset '" + name_ + "' has an empty minority class");
    }
    if (2 * n_minority_ > n_samples_) {
        throw std::invalid_argument("dataset '" + name_ + "': minority class larger than half the samples");
    }
}

double imbalance_ratio(const DatasetInfo& d) noexcept
{
    return static_cast<double>(d.n_samples() - d.n_minority()) / static_cast<double>(d.n_minority());
}

std::vector<DatasetInfo> parse_datasets(std::istream& in, const std::string& source)
{
    CsvReader reader(in, source);
    const auto header = reader.header();
    if (header != kDatasetsHeader) {
        reader.fail({}, "header must be '" + join(kDatasetsHeader) + "', got '" + join(header) + "'");
    }
    std::vector<DatasetInfo> out;
    std::vector<std::string> f;
    while (reader.next(f)) {
        if (f.size() != header.size()) {
            reader.fail({}, "expected " + std::to_string(header.size()) + " fields, got " + std::to_string(f.size()));
        }
        const auto minority = non_negative(reader, header[3], f[3]);
        const auto samples = non_negative(reader, header[2], f[2]);
        if (minority == 0) {
            reader.fail(header[3], "minority class must be non-empty");
        }
        if (2 * minority > samples) {
            reader.fail(header[3], "minority class exceeds half of n_samples");
        }
        out.emplace_back(identifier(reader, header[0], f[0]), non_negative(reader, header[1], f[1]), samples,
                         minority);
    }
    return out;
}

std::vector<DatasetInfo> parse_datasets(const std::filesystem::path& path)
{
    auto in = open_input(path);
    return parse_datasets(in, path.string());
}

std::string format_datasets(std::span<const DatasetInfo> datasets)
{
    std::string out = "name,n_features,n_samples,n_minority,ir\n";
    for (const auto& d : datasets) {
        out += d.name() + "," + std::to_string(d.n_features()) + "," + std::to_string(d.n_samples()) + ","
               + std::to_string(d.n_minority()) + "," + fixed2(imbalance_ratio(d)) + "\n";
    }
    return out;
}

FoldStats mean_std(std::span<const double> values)
{
    if (values.empty()) {
        throw std::invalid_argument("mean_std of an empty sample");
    }
    // sort first so the sum does not depend on fold order
    std::vector<double> v(values.begin(), values.end());
    std::sort(v.begin(), v.end());
    // a constant sample must not pick up rounding noise from sum / n
    if (v.front() == v.back()) {
        return {v.front(), 0.0};
    }
    const auto n = static_cast<double>(v.size());
    double sum = 0.0;
    for (const double x : v) {
        sum += x;
    }
    const double mean = sum / n;
    double ss = 0.0;
    for (const double x : v) {
        ss += (x - mean) * (x - mean);
    }
    return {mean, std::sqrt(ss / n)};
}

const ReportRow* ComparisonReport::find(Indicator ind, const std::string& method, const std::string& dataset) const
{
    for (const auto& r : rows) {
        if (r.indicator == ind && r.reference_method == method && r.dataset == dataset) {
            return &r;
        }
    }
    return nullptr;
}

namespace {

using FoldKey = std::pair<std::string, std::uint64_t>; // (dataset, fold)

struct Cell {
    std::string dataset;
    std::string method; // kPooledReference for GD
    std::vector<std::uint64_t> folds;
};

template <typename T>
void push_unique(std::vector<T>& v, const T& x)
{
    if (std::find(v.begin(), v.end(), x) == v.end()) {
        v.push_back(x);
    }
}

unsigned effective_threads(unsigned requested, std::size_t work)
{
    const unsigned n = std::max(1u, requested);
    return static_cast<unsigned>(std::min<std::size_t>(n, std::max<std::size_t>(work, 1)));
}

} // namespace

std::vector<FoldValue> fold_values(std::span<const ExperimentRecord> front, std::span<const ExperimentRecord> refs,
                                   const AggregateOptions& opts)
{
    if (front.empty()) {
        throw ValidationError("front input has no records");
    }
    if (refs.empty()) {
        throw ValidationError("reference input has no records");
    }
    if (opts.indicators.empty()) {
        throw ValidationError("no indicators requested");
    }
    const auto selected = [&](const ExperimentRecord& r) { return !opts.fold || r.fold == *opts.fold; };

    // front points per (dataset, fold), ordered by solution id
    std::string moo_method;
    std::map<FoldKey, std::vector<const ExperimentRecord*>> front_sets;
    std::vector<std::string> datasets;
    for (const auto& r : front) {
        if (moo_method.empty()) {
            moo_method = r.method;
        } else if (r.method != moo_method) {
            throw ValidationError("front input mixes methods '" + moo_method + "' and '" + r.method + "'");
        }
        if (selected(r)) {
            front_sets[{r.dataset, r.fold}].push_back(&r);
            push_unique(datasets, r.dataset);
        }
    }
    for (auto& [key, recs] : front_sets) {
        std::sort(recs.begin(), recs.end(), [](auto* a, auto* b) { return a->solution_id < b->solution_id; });
    }

    std::map<std::tuple<std::string, std::string, std::uint64_t>, const ExperimentRecord*> ref_points;
    std::map<std::string, std::vector<std::string>> methods_of; // dataset -> methods in first-seen order
    std::set<FoldKey> ref_folds;
    for (const auto& r : refs) {
        if (!selected(r)) {
            continue;
        }
        auto [it, inserted] = ref_points.emplace(std::make_tuple(r.dataset, r.method, r.fold), &r);
        if (!inserted) {
            throw ValidationError("reference method '" + r.method + "' has several solutions for dataset '"
                                  + r.dataset + "' fold " + std::to_string(r.fold));
        }
        push_unique(methods_of[r.dataset], r.method);
        ref_folds.insert({r.dataset, r.fold});
    }

    if (opts.fold && front_sets.empty()) {
        throw ValidationError("fold " + std::to_string(*opts.fold) + " is not present in the front input");
    }
    for (const auto& [key, recs] : front_sets) {
        if (!ref_folds.count(key)) {
            throw ValidationError("reference input is missing dataset '" + key.first + "' fold "
                                  + std::to_string(key.second));
        }
    }
    for (const auto& key : ref_folds) {
        if (!front_sets.count(key)) {
            throw ValidationError("front input is missing dataset '" + key.first + "' fold "
                                  + std::to_string(key.second));
        }
    }

    const Eigen::Index dim = front.front().objectives().size();
    const auto point_of = [&](const ExperimentRecord& r) {
        auto p = r.objectives();
        if (p.size() != dim) {
            throw ValidationError("record (" + r.dataset + ", " + r.method + ", " + std::to_string(r.fold)
                                  + ") has " + std::to_string(p.size()) + " objectives, expected "
                                  + std::to_string(dim));
        }
        return p;
    };

    std::vector<Cell> cells;
    const bool want_gd = std::find(opts.indicators.begin(), opts.indicators.end(), Indicator::GD)
                         != opts.indicators.end();
    const bool want_point = std::any_of(opts.indicators.begin(), opts.indicators.end(),
                                        [](Indicator i) { return i != Indicator::GD; });
    for (const auto& ds : datasets) {
        std::vector<std::uint64_t> folds;
        for (const auto& [key, recs] : front_sets) {
            if (key.first == ds) {
                folds.push_back(key.second);
            }
        }
        for (const auto& m : methods_of[ds]) {
            for (const auto fold : folds) {
                if (!ref_points.count({ds, m, fold})) {
                    throw ValidationError("reference method '" + m + "' is missing dataset '" + ds + "' fold "
                                          + std::to_string(fold));
                }
            }
            if (want_point) {
                cells.push_back({ds, m, folds});
            }
        }
        if (want_gd) {
            cells.push_back({ds, kPooledReference, folds});
        }
    }

    const auto front_set = [&](const std::string& ds, std::uint64_t fold) {
        const auto& recs = front_sets.at({ds, fold});
        PointMatrixd m(static_cast<Eigen::Index>(recs.size()), dim);
        for (std::size_t i = 0; i < recs.size(); ++i) {
            m.row(static_cast<Eigen::Index>(i)) = point_of(*recs[i]);
        }
        SolutionSetd set(moo_method, std::move(m));
        return opts.filter_front ? pareto_front(set) : set;
    };

    std::vector<std::vector<FoldValue>> per_cell(cells.size());
    const auto compute = [&](std::size_t c) {
        const Cell& cell = cells[c];
        auto& out = per_cell[c];
        for (const auto fold : cell.folds) {
            const auto set = front_set(cell.dataset, fold);
            if (cell.method == kPooledReference) {
                const auto& methods = methods_of.at(cell.dataset);
                PointMatrixd pooled(static_cast<Eigen::Index>(methods.size()), dim);
                for (std::size_t k = 0; k < methods.size(); ++k) {
                    pooled.row(static_cast<Eigen::Index>(k)) = point_of(*ref_points.at({cell.dataset, methods[k], fold}));
                }
                const SolutionSetd ref_set(kPooledReference, std::move(pooled));
                out.push_back({Indicator::GD, cell.method, cell.dataset, fold,
                               evaluate(Indicator::GD, set, ref_set, opts.hv).value});
                continue;
            }
            const auto ref_set = SolutionSetd::single(cell.method, point_of(*ref_points.at({cell.dataset, cell.method, fold})));
            for (const auto ind : opts.indicators) {
                if (ind != Indicator::GD) {
                    out.push_back({ind, cell.method, cell.dataset, fold, evaluate(ind, set, ref_set, opts.hv).value});
                }
            }
        }
    };

    const unsigned n_threads = effective_threads(opts.threads, cells.size());
    if (n_threads == 1) {
        for (std::size_t c = 0; c < cells.size(); ++c) {
            compute(c);
        }
    } else {
        std::atomic<std::size_t> next{0};
        std::exception_ptr error;
        std::mutex error_mutex;
        std::vector<std::jthread> workers;
        for (unsigned t = 0; t < n_threads; ++t) {
            workers.emplace_back([&] {
                for (std::size_t c = next++; c < cells.size(); c = next++) {
                    try {
                        compute(c);
                    } catch (...) {
                        std::lock_guard lock(error_mutex);
                        if (!error) {
                            error = std::current_exception();
                        }
                    }
                }
            });
        }
        workers.clear();
        if (error) {
            std::rethrow_exception(error);
        }
    }

    std::vector<FoldValue> values;
    for (auto& cell_values : per_cell) {
        std::move(cell_values.begin(), cell_values.end(), std::back_inserter(values));
    }
    return values;
}

ComparisonReport aggregate(std::span<const ExperimentRecord> front, std::span<const ExperimentRecord> refs,
                           const AggregateOptions& opts)
{
    const auto values = fold_values(front, refs, opts);

    ComparisonReport report;
    report.moo_method = front.front().method;
    std::set<std::uint64_t> folds;
    for (const auto& r : front) {
        if (!opts.fold || r.fold == *opts.fold) {
            folds.insert(r.fold);
        }
    }
    report.fold_count = folds.size();

    // rows ordered by requested indicator, then first appearance of (method, dataset)
    for (const auto ind : opts.indicators) {
        std::vector<std::pair<std::string, std::string>> keys;
        for (const auto& v : values) {
            if (v.indicator == ind) {
                push_unique(keys, std::make_pair(v.reference_method, v.dataset));
            }
        }
        for (const auto& [method, dataset] : keys) {
            std::vector<double> xs;
            for (const auto& v : values) {
                if (v.indicator == ind && v.reference_method == method && v.dataset == dataset) {
                    xs.push_back(v.value);
                }
            }
            const auto stats = mean_std(xs);
            report.rows.push_back({ind, method, dataset, stats.mean, stats.std, xs.size()});
        }
    }
    return report;
}

namespace {

double display_scale(Indicator ind)
{
    switch (ind) {
    case Indicator::ED:
    case Indicator::GD: return 1e2;
    case Indicator::HV: return 1e3;
    default: return 1.0;
    }
}

std::string block_title(Indicator ind)
{
    switch (ind) {
    case Indicator::ED:
    case Indicator::GD: return std::string(indicator_name(ind)) + " (×10²)";
    case Indicator::HV: return "HV (×10³)";
    default: return std::string(indicator_name(ind));
    }
}

} // namespace

std::string format_report(const ComparisonReport& report, ReportFormat format)
{
    if (report.rows.empty()) {
        throw std::invalid_argument("report has no rows");
    }
    std::string out;
    if (format == ReportFormat::csv) {
        out = join(kReportHeader) + "\n";
        for (const auto& r : report.rows) {
            out += std::string(indicator_name(r.indicator)) + "," + r.reference_method + "," + r.dataset + ","
                   + shortest(r.mean) + "," + shortest(r.std) + "," + std::to_string(r.fold_count) + "\n";
        }
        return out;
    }

    std::vector<Indicator> indicators;
    for (const auto& r : report.rows) {
        push_unique(indicators, r.indicator);
    }
    if (!report.moo_method.empty()) {
        out += "# " + report.moo_method + " against reference methods (" + std::to_string(report.fold_count)
               + (report.fold_count == 1 ? " fold)\n\n" : " folds)\n\n");
    }
    for (std::size_t b = 0; b < indicators.size(); ++b) {
        const auto ind = indicators[b];
        std::vector<std::string> methods;
        std::vector<std::string> datasets;
        for (const auto& r : report.rows) {
            if (r.indicator == ind) {
                push_unique(methods, r.reference_method);
                push_unique(datasets, r.dataset);
            }
        }
        out += (b ? "\n## " : "## ") + block_title(ind) + "\n\n| reference |";
        for (const auto& d : datasets) {
            out += " " + d + " |";
        }
        out += "\n|---|";
        for (std::size_t i = 0; i < datasets.size(); ++i) {
            out += "---|";
        }
        out += "\n";
        const double scale = display_scale(ind);
        for (const auto& m : methods) {
            out += "| " + m + " |";
            for (const auto& d : datasets) {
                const auto* row = report.find(ind, m, d);
                out += row ? " " + fixed2(row->mean * scale) + " (" + fixed2(row->std * scale) + ") |" : " - |";
            }
            out += "\n";
        }
    }
    return out;
}

void render_report(const ComparisonReport& report, ReportFormat format, const std::filesystem::path& out)
{
    write_file_atomic(out, format_report(report, format));
}

ComparisonReport parse_report(std::istream& in, const std::string& source)
{
    CsvReader reader(in, source);
    const auto header = reader.header();
    if (header != kReportHeader) {
        reader.fail({}, "header must be '" + join(kReportHeader) + "', got '" + join(header) + "'");
    }
    ComparisonReport report;
    std::vector<std::string> f;
    while (reader.next(f)) {
        if (f.size() != header.size()) {
            reader.fail({}, "expected " + std::to_string(header.size()) + " fields, got " + std::to_string(f.size()));
        }
        const auto ind = parse_indicator(f[0]);
        if (!ind) {
            reader.fail(header[0], "unknown indicator '" + f[0] + "'");
        }
        ReportRow row{*ind, identifier(reader, header[1], f[1]), identifier(reader, header[2], f[2]),
                      real(reader, header[3], f[3]), real(reader, header[4], f[4]),
                      static_cast<std::size_t>(non_negative(reader, header[5], f[5]))};
        if (row.std < 0.0) {
            reader.fail(header[4], "standard deviation must be non-negative");
        }
        if (row.fold_count == 0) {
            reader.fail(header[5], "fold_count must be at least 1");
        }
        if (report.find(row.indicator, row.reference_method, row.dataset)) {
            reader.fail({}, "duplicate report row");
        }
        report.fold_count = std::max(report.fold_count, row.fold_count);
        report.rows.push_back(std::move(row));
    }
    return report;
}

ComparisonReport parse_report(const std::filesystem::path& path)
{
    auto in = open_input(path);
    return parse_report(in, path.string());
}

} // namespace pareto_judge
