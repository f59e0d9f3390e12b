#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include <unistd.h>

#include "oracles.hpp"
#include "pareto_judge/errors.hpp"
#include "pareto_judge/ingest_report.hpp"

using namespace pareto_judge;

namespace {

std::vector<ExperimentRecord> parse_counts(const std::string& text)
{
    std::istringstream in(text);
    return parse_records(in, PayloadKind::counts, "mem.csv");
}

std::vector<ExperimentRecord> parse_objectives(const std::string& text, const ParseOptions& opts = {})
{
    std::istringstream in(text);
    return parse_records(in, PayloadKind::objectives, "mem.csv", opts);
}

ExperimentRecord counts_record(std::string ds, std::string method, std::uint64_t fold, std::uint64_t id,
                               ConfusionMatrix m)
{
    return {std::move(ds), std::move(method), fold, id, m};
}

// Two datasets, three folds, a three-solution front and two single-solution baselines.
struct Fixture {
    std::vector<ExperimentRecord> front;
    std::vector<ExperimentRecord> refs;

    explicit Fixture(std::uint64_t seed)
    {
        std::mt19937_64 rng(seed);
        for (const std::string ds : {"alpha", "beta"}) {
            for (std::uint64_t fold = 0; fold < 3; ++fold) {
                for (std::uint64_t id = 0; id < 3; ++id) {
                    front.push_back(counts_record(ds, "moo", fold, id, oracle::random_matrix(rng, 60)));
                }
                refs.push_back(counts_record(ds, "svm", fold, 0, oracle::random_matrix(rng, 60)));
                refs.push_back(counts_record(ds, "knn", fold, 0, oracle::random_matrix(rng, 60)));
            }
        }
    }
};

std::vector<double> rates(const ConfusionMatrix& m)
{
    const double p = static_cast<double>(m.tp() + m.fn());
    const double n = static_cast<double>(m.tn() + m.fp());
    return {p > 0 ? static_cast<double>(m.tp()) / p : 0.0, n > 0 ? static_cast<double>(m.tn()) / n : 0.0};
}

} // namespace

TEST_CASE("parse counts records")
{
    const auto recs = parse_counts("dataset,method,fold,solution_id,tp,fn,fp,tn\n"
                                   "pima,moo,0,1,10,5,3,50\n"
                                   "pima,svm-rbf,0,0,8,7,1,52\r\n");
    REQUIRE(recs.size() == 2);
    CHECK(recs[0].kind() == PayloadKind::counts);
    CHECK(recs[1].method == "svm-rbf");
    CHECK(recs[0].counts()->fp() == 3);
    CHECK(recs[0].objectives()(0) == doctest::Approx(10.0 / 15.0));
    CHECK(recs[0].objectives()(1) == doctest::Approx(50.0 / 53.0));

    CHECK(parse_counts("dataset,method,fold,solution_id,tp,fn,fp,tn\n").empty());
}

TEST_CASE("parse errors carry line and column")
{
    try {
        parse_counts("dataset,method,fold,solution_id,tp,fn,fp,tn\n"
                     "pima,moo,0,1,10,5,3,50\n"
                     "pima,moo,0,2,-1,5,3,50\n");
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(e.line() == 3);
        CHECK(e.column() == "tp");
        CHECK(std::string(e.what()).find("mem.csv:3") != std::string::npos);
    }

    CHECK_THROWS_AS(parse_counts("dataset,method,fold,solution_id,tp,fn,fp\n"), ParseError);
    CHECK_THROWS_AS(parse_counts(""), ParseError);
    CHECK_THROWS_AS(parse_counts("dataset,method,fold,solution_id,tp,fn,fp,tn\npi ma,moo,0,1,1,1,1,1\n"),
                    ParseError);
    CHECK_THROWS_AS(parse_counts("dataset,method,fold,solution_id,tp,fn,fp,tn\npima,moo,0,1,1,1,1\n"), ParseError);
    CHECK_THROWS_AS(parse_counts("dataset,method,fold,solution_id,tp,fn,fp,tn\npima,moo,0,1,0,0,0,0\n"), ParseError);
    CHECK_THROWS_AS(parse_counts("dataset,method,fold,solution_id,tp,fn,fp,tn\npima,moo,0,1,1.5,1,1,1\n"),
                    ParseError);

    // duplicate key
    try {
        parse_counts("dataset,method,fold,solution_id,tp,fn,fp,tn\n"
                     "pima,moo,0,1,1,1,1,1\n"
                     "pima,moo,0,1,2,2,2,2\n");
        FAIL("expected a duplicate-key error");
    } catch (const ParseError& e) {
        CHECK(e.line() == 3);
        CHECK(std::string(e.what()).find("duplicate") != std::string::npos);
    }
}

TEST_CASE("parse objectives records")
{
    const auto recs = parse_objectives("dataset,method,fold,solution_id,obj_1,obj_2,obj_3\n"
                                       "d,m,0,0,0.5,0.25,-1e-3\n");
    REQUIRE(recs.size() == 1);
    CHECK(recs[0].objectives().size() == 3);
    CHECK(recs[0].objectives()(2) == -1e-3);

    const auto negated = parse_objectives("dataset,method,fold,solution_id,obj_1,obj_2\nd,m,0,0,0.5,2.5\n",
                                          ParseOptions{{2}});
    CHECK(negated[0].objectives()(1) == -2.5);

    try {
        parse_objectives("dataset,method,fold,solution_id,obj_1,obj_2\n"
                         "d,m,0,0,0.5,0.5\n"
                         "d,m,0,1,0.5,0.5,0.5\n");
        FAIL("expected a dimensionality error");
    } catch (const ParseError& e) {
        CHECK(e.line() == 3);
        CHECK(std::string(e.what()).find("3 objectives") != std::string::npos);
    }
    CHECK_THROWS_AS(parse_objectives("dataset,method,fold,solution_id,obj_1,obj_3\n"), ParseError);
    CHECK_THROWS_AS(parse_objectives("dataset,method,fold,solution_id,obj_1\nd,m,0,0,nan\n"), ParseError);
    CHECK_THROWS_AS(parse_objectives("dataset,method,fold,solution_id,obj_1\n", ParseOptions{{2}}),
                    std::invalid_argument);
}

TEST_CASE("records round trip through emit and parse")
{
    std::mt19937_64 rng(123);
    std::uniform_int_distribution<int> pick(0, 3);
    std::uniform_real_distribution<double> u(-5.0, 5.0);
    const std::vector<std::string> names{"pima", "vehicle1", "ecoli-0_1", "A_B-c"};

    std::vector<ExperimentRecord> counts;
    std::vector<ExperimentRecord> objs;
    for (std::uint64_t i = 0; i < 100; ++i) {
        counts.push_back(counts_record(names[pick(rng)], names[pick(rng)], i % 5, i, oracle::random_matrix(rng)));
        ObjectivePointd p(3);
        p << u(rng), u(rng), std::ldexp(u(rng), -40);
        objs.push_back({names[pick(rng)], names[pick(rng)], i % 5, i, p});
    }
    CHECK(parse_counts(emit_records(counts)) == counts);
    CHECK(parse_objectives(emit_records(objs)) == objs);
    CHECK(emit_records(parse_objectives(emit_records(objs))) == emit_records(objs));
}

TEST_CASE("imbalance ratios of the benchmark datasets")
{
    struct Row {
        const char* name;
        std::uint64_t samples, minority;
        double ir;
    };
    const Row table[] = {
        {"pima", 768, 268, 1.87},
        {"vehicle1", 846, 217, 2.90},
        {"new-thyroid1", 215, 35, 5.14},
        {"segment0", 2308, 329, 6.02},
        {"page-blocks0", 5472, 559, 8.79},
        {"yeast-0-2-5-6_vs_3-7-8-9", 1004, 99, 9.14},
        {"shuttle-c0-vs-c4", 1829, 123, 13.87},
        {"ecoli4", 336, 20, 15.80},
        {"winequality-white-3_vs_7", 900, 20, 44.00},
        {"poker-8-9_vs_5", 2075, 25, 82.00},
    };
    std::string csv = "name,n_features,n_samples,n_minority\n";
    for (const auto& r : table) {
        const DatasetInfo d(r.name, 5, r.samples, r.minority);
        CHECK(std::abs(imbalance_ratio(d) - r.ir) <= 0.005 + 1e-12);
        csv += std::string(r.name) + ",5," + std::to_string(r.samples) + "," + std::to_string(r.minority) + "\n";
    }
    std::istringstream in(csv);
    const auto parsed = parse_datasets(in, "datasets.csv");
    REQUIRE(parsed.size() == 10);
    const auto formatted = format_datasets(parsed);
    CHECK(formatted.find("pima,5,768,268,1.87\n") != std::string::npos);
    CHECK(formatted.find("ecoli4,5,336,20,15.80\n") != std::string::npos);
    CHECK(formatted.find("poker-8-9_vs_5,5,2075,25,82.00\n") != std::string::npos);

    CHECK_THROWS_AS(DatasetInfo("x", 1, 10, 0), std::invalid_argument);
    CHECK_THROWS_AS(DatasetInfo("x", 1, 10, 6), std::invalid_argument);
    std::istringstream bad("name,n_features,n_samples,n_minority\nx,1,10,6\n");
    CHECK_THROWS_AS(parse_datasets(bad), ParseError);
}

TEST_CASE("mean and population std")
{
    const std::vector<double> same(7, 0.3);
    CHECK(mean_std(same).mean == doctest::Approx(0.3));
    CHECK(mean_std(same).std == 0.0);
    const std::vector<double> two{0.0, 1.0};
    CHECK(mean_std(two).mean == 0.5);
    CHECK(mean_std(two).std == 0.5);
    CHECK_THROWS_AS(mean_std(std::span<const double>{}), std::invalid_argument);
}

TEST_CASE("front identical to the reference")
{
    std::vector<ExperimentRecord> front;
    std::vector<ExperimentRecord> refs;
    for (std::uint64_t fold = 0; fold < 4; ++fold) {
        front.push_back(counts_record("d", "moo", fold, 0, {30, 10, 20, 40}));
        refs.push_back(counts_record("d", "svm", fold, 0, {30, 10, 20, 40}));
    }
    const auto report = aggregate(front, refs);
    CHECK(report.moo_method == "moo");
    CHECK(report.fold_count == 4);
    const auto* ed = report.find(Indicator::ED, "svm", "d");
    REQUIRE(ed);
    CHECK(ed->mean == 0.0);
    CHECK(report.find(Indicator::HV, "svm", "d")->mean == 0.0);
    CHECK(report.find(Indicator::SDR, "svm", "d")->mean == 0.0);
    CHECK(report.find(Indicator::NDR, "svm", "d")->mean == 1.0);
    for (const auto& row : report.rows) {
        CHECK(row.std == 0.0);
        CHECK(row.fold_count == 4);
    }
}

TEST_CASE("aggregation agrees with a direct per-fold computation")
{
    const Fixture fx(9);
    AggregateOptions opts;
    opts.indicators = {Indicator::ED, Indicator::GD, Indicator::HV, Indicator::SDR, Indicator::NDR};
    const auto report = aggregate(fx.front, fx.refs, opts);
    CHECK(report.rows.size() == 2 * (2 * 4 + 1));

    for (const std::string ds : {"alpha", "beta"}) {
        for (const std::string m : {"svm", "knn"}) {
            std::vector<double> ed, sdr_v, ndr_v, hv;
            for (std::uint64_t fold = 0; fold < 3; ++fold) {
                oracle::Points pts;
                for (const auto& r : fx.front) {
                    if (r.dataset == ds && r.fold == fold) {
                        pts.push_back(rates(*r.counts()));
                    }
                }
                std::vector<double> ref;
                for (const auto& r : fx.refs) {
                    if (r.dataset == ds && r.fold == fold && r.method == m) {
                        ref = rates(*r.counts());
                    }
                }
                ed.push_back(oracle::generational_distance(pts, {ref}));
                double dom = 0, beaten = 0;
                for (const auto& p : pts) {
                    dom += oracle::all_greater(p, ref);
                    beaten += oracle::all_greater(ref, p);
                }
                sdr_v.push_back(dom / 3.0);
                ndr_v.push_back(1.0 - beaten / 3.0);
                hv.push_back(oracle::grid_hypervolume(pts, ref[0], ref[1], 1000));
            }
            const auto mean = [](const std::vector<double>& v) {
                double s = 0;
                for (const auto x : v) {
                    s += x;
                }
                return s / static_cast<double>(v.size());
            };
            CHECK(report.find(Indicator::ED, m, ds)->mean == doctest::Approx(mean(ed)).epsilon(1e-12));
            CHECK(report.find(Indicator::SDR, m, ds)->mean == doctest::Approx(mean(sdr_v)).epsilon(1e-12));
            CHECK(report.find(Indicator::NDR, m, ds)->mean == doctest::Approx(mean(ndr_v)).epsilon(1e-12));
            CHECK(std::abs(report.find(Indicator::HV, m, ds)->mean - mean(hv)) <= 3e-3);
        }
        REQUIRE(report.find(Indicator::GD, kPooledReference, ds));
    }

    // report rows are the mean/std of the per-fold values
    const auto values = fold_values(fx.front, fx.refs, opts);
    for (const auto& row : report.rows) {
        std::vector<double> xs;
        for (const auto& v : values) {
            if (v.indicator == row.indicator && v.reference_method == row.reference_method
                && v.dataset == row.dataset) {
                xs.push_back(v.value);
            }
        }
        REQUIRE(xs.size() == 3);
        const double mu = (xs[0] + xs[1] + xs[2]) / 3.0;
        double var = 0;
        for (const auto x : xs) {
            var += (x - mu) * (x - mu);
        }
        CHECK(row.mean == doctest::Approx(mu).epsilon(1e-12));
        CHECK(row.std == doctest::Approx(std::sqrt(var / 3.0)).epsilon(1e-9));
    }

    opts.threads = 4;
    CHECK(format_report(aggregate(fx.front, fx.refs, opts), ReportFormat::csv)
          == format_report(report, ReportFormat::csv));
}

TEST_CASE("aggregation ignores record order")
{
    std::mt19937_64 rng(5);
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        Fixture fx(seed);
        const auto before = aggregate(fx.front, fx.refs);
        std::shuffle(fx.front.begin(), fx.front.end(), rng);
        std::shuffle(fx.refs.begin(), fx.refs.end(), rng);
        const auto after = aggregate(fx.front, fx.refs);
        REQUIRE(after.rows.size() == before.rows.size());
        for (const auto& row : before.rows) {
            const auto* other = after.find(row.indicator, row.reference_method, row.dataset);
            REQUIRE(other);
            CHECK(other->mean == row.mean);
            CHECK(other->std == row.std);
        }
    }
}

TEST_CASE("coverage errors")
{
    const Fixture fx(1);
    auto refs = fx.refs;
    refs.erase(std::remove_if(refs.begin(), refs.end(),
                              [](const auto& r) { return r.dataset == "beta" && r.fold == 2; }),
               refs.end());
    CHECK_THROWS_AS(aggregate(fx.front, refs), ValidationError);

    // a baseline with two solutions in one fold
    auto dup = fx.refs;
    dup.push_back(counts_record("alpha", "svm", 0, 7, {1, 1, 1, 1}));
    CHECK_THROWS_AS(aggregate(fx.front, dup), ValidationError);

    // one baseline skipping a fold it otherwise covers
    auto gap = fx.refs;
    gap.erase(std::remove_if(gap.begin(), gap.end(),
                             [](const auto& r) { return r.dataset == "alpha" && r.method == "knn" && r.fold == 1; }),
              gap.end());
    CHECK_THROWS_AS(aggregate(fx.front, gap), ValidationError);

    auto mixed = fx.front;
    mixed.push_back(counts_record("alpha", "other", 0, 9, {1, 1, 1, 1}));
    CHECK_THROWS_AS(aggregate(mixed, fx.refs), ValidationError);

    AggregateOptions missing_fold;
    missing_fold.fold = 17;
    CHECK_THROWS_AS(aggregate(fx.front, fx.refs, missing_fold), ValidationError);

    AggregateOptions one_fold;
    one_fold.fold = 1;
    const auto single = aggregate(fx.front, fx.refs, one_fold);
    CHECK(single.fold_count == 1);
    for (const auto& row : single.rows) {
        CHECK(row.std == 0.0);
    }
}

TEST_CASE("report formatting")
{
    ComparisonReport report;
    report.moo_method = "moo";
    report.fold_count = 5;
    report.rows = {
        {Indicator::SDR, "svm", "pima", 0.75, 0.05, 5},
        {Indicator::HV, "svm", "pima", 0.00046, 0.0001, 5},
        {Indicator::ED, "svm", "pima", 0.0123, 0.004, 5},
        {Indicator::SDR, "knn", "ecoli4", 0.5, 0.0, 5},
    };
    const auto md = format_report(report, ReportFormat::markdown);
    CHECK(md.find("| svm | 0.75 (0.05) | - |") != std::string::npos);
    CHECK(md.find("| knn | - | 0.50 (0.00) |") != std::string::npos);
    CHECK(md.find("## HV (×10³)") != std::string::npos);
    CHECK(md.find("| svm | 0.46 (0.10) |") != std::string::npos);
    CHECK(md.find("## ED (×10²)") != std::string::npos);
    CHECK(md.find("| svm | 1.23 (0.40) |") != std::string::npos);
    CHECK(format_report(report, ReportFormat::markdown) == md);

    const auto csv = format_report(report, ReportFormat::csv);
    CHECK(csv.rfind("indicator,reference_method,dataset,mean,std,fold_count\n", 0) == 0);
    CHECK(csv.find("HV,svm,pima,0.00046,1e-04,5\n") != std::string::npos);

    std::istringstream in(csv);
    const auto back = parse_report(in, "r.csv");
    REQUIRE(back.rows.size() == report.rows.size());
    for (std::size_t i = 0; i < back.rows.size(); ++i) {
        CHECK(back.rows[i].mean == report.rows[i].mean);
        CHECK(back.rows[i].std == report.rows[i].std);
        CHECK(back.rows[i].reference_method == report.rows[i].reference_method);
    }
    CHECK(format_report(back, ReportFormat::csv) == csv);

    CHECK_THROWS_AS(format_report(ComparisonReport{}, ReportFormat::csv), std::invalid_argument);
}

TEST_CASE("reports are written atomically and reproducibly")
{
    const auto dir = std::filesystem::temp_directory_path() / ("pj_report_" + std::to_string(::getpid()));
    std::filesystem::create_directories(dir);
    const Fixture fx(3);
    const auto report = aggregate(fx.front, fx.refs);
    render_report(report, ReportFormat::markdown, dir / "a.md");
    render_report(aggregate(fx.front, fx.refs), ReportFormat::markdown, dir / "b.md");
    const auto slurp = [](const std::filesystem::path& p) {
        std::ifstream in(p, std::ios::binary);
        return std::string(std::istreambuf_iterator<char>(in), {});
    };
    CHECK(slurp(dir / "a.md") == slurp(dir / "b.md"));
    CHECK(slurp(dir / "a.md") == format_report(report, ReportFormat::markdown));
    std::size_t files = 0;
    for ([[maybe_unused]] const auto& e : std::filesystem::directory_iterator(dir)) {
        ++files;
    }
    CHECK(files == 2);
    std::filesystem::remove_all(dir);
}
