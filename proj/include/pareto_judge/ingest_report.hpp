#ifndef PARETO_JUDGE_INGEST_REPORT_HPP
#define PARETO_JUDGE_INGEST_REPORT_HPP

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "pareto_judge/confusion_metrics.hpp"
#include "pareto_judge/indicators.hpp"
#include "pareto_judge/objective_space.hpp"

namespace pareto_judge {

// CSV dialect: comma separated, '.' decimal point, LF line endings, header on
// the first line, no quoting. Identifiers are restricted to [A-Za-z0-9_-].
//
//   counts:     dataset,method,fold,solution_id,tp,fn,fp,tn
//   objectives: dataset,method,fold,solution_id,obj_1,...,obj_M
//   datasets:   name,n_features,n_samples,n_minority
//   report:     indicator,reference_method,dataset,mean,std,fold_count

enum class PayloadKind { counts, objectives };

struct ExperimentRecord {
    std::string dataset;
    std::string method;
    std::uint64_t fold = 0;
    std::uint64_t solution_id = 0;
    std::variant<ConfusionMatrix, ObjectivePointd> payload;

    PayloadKind kind() const noexcept
    {
        return std::holds_alternative<ConfusionMatrix>(payload) ? PayloadKind::counts : PayloadKind::objectives;
    }
    // (TPR, TNR) for counts, the stored vector otherwise.
    ObjectivePointd objectives() const;
    const ConfusionMatrix* counts() const noexcept { return std::get_if<ConfusionMatrix>(&payload); }

    friend bool operator==(const ExperimentRecord& a, const ExperimentRecord& b);
};

struct ParseOptions {
    // 1-based objective columns to negate, turning minimisation criteria into
    // maximisation ones. Objectives payload only.
    std::vector<std::size_t> negate_columns;
};

std::vector<ExperimentRecord> parse_records(std::istream& in, PayloadKind kind, const std::string& source = {},
                                            const ParseOptions& opts = {});
std::vector<ExperimentRecord> parse_records(const std::filesystem::path& path, PayloadKind kind,
                                            const ParseOptions& opts = {});

// Payload kind implied by a file's header line; nullopt if it matches neither schema.
std::optional<PayloadKind> detect_payload_kind(const std::filesystem::path& path);

// Inverse of parse_records. All records must share one payload kind and, for
// objectives, one dimensionality. Reals are written in shortest round-trip form.
std::string emit_records(std::span<const ExperimentRecord> records);

class DatasetInfo {
public:
    DatasetInfo(std::string name, std::uint64_t n_features, std::uint64_t n_samples, std::uint64_t n_minority);

    const std::string& name() const noexcept { return name_; }
    std::uint64_t n_features() const noexcept { return n_features_; }
    std::uint64_t n_samples() const noexcept { return n_samples_; }
    std::uint64_t n_minority() const noexcept { return n_minority_; }

private:
    std::string name_;
    std::uint64_t n_features_;
    std::uint64_t n_samples_;
    std::uint64_t n_minority_;
};

// Majority size over minority size, unrounded.
double imbalance_ratio(const DatasetInfo& d) noexcept;

std::vector<DatasetInfo> parse_datasets(std::istream& in, const std::string& source = {});
std::vector<DatasetInfo> parse_datasets(const std::filesystem::path& path);

// name,n_features,n_samples,n_minority,ir with IR to two decimals.
std::string format_datasets(std::span<const DatasetInfo> datasets);

struct FoldStats {
    double mean = 0.0;
    double std = 0.0;
};

// Population standard deviation (divides by n).
FoldStats mean_std(std::span<const double> values);

struct ReportRow {
    Indicator indicator;
    std::string reference_method;
    std::string dataset;
    double mean = 0.0;
    double std = 0.0;
    std::size_t fold_count = 0;
};

struct ComparisonReport {
    std::string moo_method;
    std::size_t fold_count = 0;
    std::vector<ReportRow> rows;

    const ReportRow* find(Indicator ind, const std::string& method, const std::string& dataset) const;
};

// Reference label under which GD rows are reported; GD is computed against the
// pooled points of every reference method for the same dataset and fold.
inline constexpr const char* kPooledReference = "pooled";

struct AggregateOptions {
    std::vector<Indicator> indicators{Indicator::ED, Indicator::HV, Indicator::SDR, Indicator::NDR};
    bool filter_front = false;
    std::optional<std::uint64_t> fold;
    HypervolumeOptions hv;
    unsigned threads = 1;
};

// Indicator value on a single fold, before aggregation.
struct FoldValue {
    Indicator indicator;
    std::string reference_method;
    std::string dataset;
    std::uint64_t fold;
    double value;
};

/// Per-fold indicator values for every (dataset, reference method, fold).
/// Throws ValidationError when the inputs do not cover the same
/// (dataset, fold) pairs or a reference method has several solutions in a fold.
std::vector<FoldValue> fold_values(std::span<const ExperimentRecord> front, std::span<const ExperimentRecord> refs,
                                   const AggregateOptions& opts = {});

ComparisonReport aggregate(std::span<const ExperimentRecord> front, std::span<const ExperimentRecord> refs,
                           const AggregateOptions& opts = {});

enum class ReportFormat { csv, markdown };

/// CSV carries raw values. Markdown has one table per indicator with reference
/// methods as rows, datasets as columns and "mean (std)" cells to two decimals;
/// ED and GD are shown x10^2 and HV x10^3.
std::string format_report(const ComparisonReport& report, ReportFormat format);
void render_report(const ComparisonReport& report, ReportFormat format, const std::filesystem::path& out);

ComparisonReport parse_report(std::istream& in, const std::string& source = {});
ComparisonReport parse_report(const std::filesystem::path& path);

} // namespace pareto_judge

#endif // PARETO_JUDGE_INGEST_REPORT_HPP
