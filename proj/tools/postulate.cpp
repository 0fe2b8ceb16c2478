#include <CLI11.hpp>

#include <iostream>
#include <optional>
#include <string>

#include "postulate/horace.hpp"
#include "postulate/interpolation.hpp"
#include "postulate/survey.hpp"
#include "postulate/trace_io.hpp"

using namespace postulate;
using survey::OutputFormat;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitFailed = 2;

struct SchemeOptions {
    int n = 3;
    int d = 0;
    std::string points;
    std::string support_file;
    std::uint32_t prime = kDefaultPrime;
    int trials = 3;
    std::uint64_t seed = 0;
    OutputFormat format = OutputFormat::Csv;
};

const std::map<std::string, OutputFormat> kFormats{{"csv", OutputFormat::Csv}, {"json", OutputFormat::Json}};

void add_scheme_options(CLI::App* cmd, SchemeOptions& o) {
    cmd->add_option("--n", o.n, "ambient dimension")->capture_default_str();
    cmd->add_option("--d", o.d, "degree")->required();
    cmd->add_option("--points", o.points, "m:count[,m:count...]")->expected(0, 1);
    cmd->add_option("--support-file", o.support_file, "explicit supports, one 'm x_0 ... x_n' per line");
    cmd->add_option("--prime", o.prime)->capture_default_str();
    cmd->add_option("--trials", o.trials)->capture_default_str();
    cmd->add_option("--seed", o.seed)->capture_default_str();
    cmd->add_option("--format", o.format)->transform(CLI::CheckedTransformer(kFormats, CLI::ignore_case));
}

FatPointScheme build_scheme(const SchemeOptions& o) {
    auto generic = FatPointScheme::generic(o.n, survey::parse_points(o.points));
    if (o.support_file.empty()) return generic;
    return survey::read_support_file(o.support_file, o.n).with(generic.components());
}

void print_record(const survey::CaseRecord& r, OutputFormat format) {
    if (format == OutputFormat::Json)
        std::cout << survey::to_json(r).dump(2) << '\n';
    else
        std::cout << survey::csv_header() << '\n' << survey::to_csv(r) << '\n';
}

int cmd_check(const SchemeOptions& o) {
    const auto scheme = build_scheme(o);
    const auto report = check_postulation(scheme, o.d, {o.prime, o.trials, o.seed});
    print_record(survey::make_record(report, scheme), o.format);
    return report.verdict == Verdict::Good ? kExitOk : kExitFailed;
}

int cmd_oracle(const SchemeOptions& o, std::int64_t bound) {
    const auto scheme = with_random_integer_supports(build_scheme(o), o.seed);
    auto report = oracle_check(scheme, o.d, bound);
    report.base_seed = o.seed;
    print_record(survey::make_record(report, scheme), o.format);
    return report.verdict == Verdict::Good ? kExitOk : kExitFailed;
}

int cmd_sweep(survey::SweepConfig config) {
    const auto result = survey::run_sweep(config);
    for (const auto& w : result.warnings) std::cerr << "warning: " << w << '\n';
    const auto& s = result.summary;
    if (config.format == OutputFormat::Json) {
        std::cout << survey::report_json(config.to_json(), result.cases, s, config.timings).dump(2) << '\n';
    } else {
        std::cout << survey::csv_header() << '\n';
        for (const auto& r : result.cases) std::cout << survey::to_csv(r) << '\n';
    }
    std::cerr << "summary total=" << s.total << " good=" << s.good << " defective=" << s.defective
              << " cached=" << s.cached << " ms=" << s.ms << '\n';
    return s.defective == 0 ? kExitOk : kExitFailed;
}

int cmd_tables(const PostulationConfig& config, OutputFormat format) {
    const auto outcomes = survey::run_tables(config);
    int mismatches = 0;
    auto rows = nlohmann::json::array();
    for (const auto& o : outcomes) {
        const auto& c = o.row.counts;
        const bool computed = o.record.verdict == Verdict::Good;
        mismatches += !o.match;
        if (format == OutputFormat::Json) {
            auto j = survey::to_json(o.record);
            j["published"] = o.row.good ? "yes" : "no";
            j["match"] = o.match;
            rows.push_back(std::move(j));
        } else {
            std::cout << "d=" << o.row.d << " (" << c[0] << ", " << c[1] << ", " << c[2] << ", " << c[3] << ") "
                      << (computed ? "yes" : "no") << " published=" << (o.row.good ? "yes" : "no")
                      << " rank=" << o.record.rank << " defect=" << o.record.defect
                      << (o.match ? "" : " MISMATCH") << '\n';
        }
    }
    if (format == OutputFormat::Json)
        std::cout << nlohmann::json{{"rows", rows}, {"mismatches", mismatches}}.dump(2) << '\n';
    else
        std::cout << "mismatches " << mismatches << '\n';
    return mismatches == 0 ? kExitOk : kExitFailed;
}

int cmd_trace(int d, std::int64_t x, std::int64_t y, std::int64_t z, OutputFormat format) {
    const auto trace = horace::run_induction(d, x, y, z);
    if (format == OutputFormat::Json)
        std::cout << horace::to_json(trace).dump(2) << '\n';
    else
        std::cout << horace::to_text(trace);
    if (trace.status != horace::TraceStatus::Verified) std::cerr << "failed: " << trace.failure << '\n';
    return trace.status == horace::TraceStatus::Verified ? kExitOk : kExitFailed;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Postulation of fat points in projective space"};
    app.require_subcommand(1);

    SchemeOptions check_opts, oracle_opts;
    auto* check = app.add_subcommand("check", "rank of the interpolation matrix over GF(p)");
    add_scheme_options(check, check_opts);

    std::int64_t bound = kDefaultOracleBound;
    auto* oracle = app.add_subcommand("oracle", "exact rank over Q with random integer supports");
    add_scheme_options(oracle, oracle_opts);
    oracle->add_option("--bound", bound, "largest admissible N")->capture_default_str();

    survey::SweepConfig sweep_cfg;
    std::optional<int> sweep_d, jobs;
    std::string cache;
    auto* sweep = app.add_subcommand("sweep", "every boundary triple of 4-, 3- and 2-points in P^3");
    auto* d_opt = sweep->add_option("--d", sweep_d, "single degree");
    auto* dmin_opt = sweep->add_option("--d-min", sweep_cfg.d_min)->excludes(d_opt);
    sweep->add_option("--d-max", sweep_cfg.d_max)->excludes(d_opt)->needs(dmin_opt);
    sweep->add_option("--n", [](const CLI::results_t& r) { return r.size() == 1 && r[0] == "3"; },
                      "ambient dimension (only 3)");
    sweep->add_option("--prime", sweep_cfg.prime)->capture_default_str();
    sweep->add_option("--trials", sweep_cfg.trials)->capture_default_str();
    sweep->add_option("--seed", sweep_cfg.seed)->capture_default_str();
    sweep->add_option("--jobs", jobs, "worker threads (default POSTULATE_JOBS or all cores)");
    sweep->add_option("--cache", cache, "line-delimited JSON result cache");
    sweep->add_option("--format", sweep_cfg.format)->transform(CLI::CheckedTransformer(kFormats, CLI::ignore_case));
    sweep->add_flag("--timings", sweep_cfg.timings, "fill the ms column");

    PostulationConfig table_cfg;
    OutputFormat table_format = OutputFormat::Csv;
    auto* tables = app.add_subcommand("tables", "recompute the multiplicity-5 tables and the d=8 failures");
    tables->add_option("--prime", table_cfg.prime)->capture_default_str();
    tables->add_option("--trials", table_cfg.trials)->capture_default_str();
    tables->add_option("--seed", table_cfg.seed)->capture_default_str();
    tables->add_option("--format", table_format)->transform(CLI::CheckedTransformer(kFormats, CLI::ignore_case));

    int trace_d = 0;
    std::int64_t tx = 0, ty = 0, tz = 0;
    OutputFormat trace_format = OutputFormat::Csv;
    const std::map<std::string, OutputFormat> trace_formats{{"text", OutputFormat::Csv}, {"json", OutputFormat::Json}};
    auto* trace = app.add_subcommand("trace", "verify the Horace induction for one triple");
    trace->add_option("--d", trace_d)->required();
    trace->add_option("--x", tx)->required();
    trace->add_option("--y", ty)->required();
    trace->add_option("--z", tz)->required();
    trace->add_option("--format", trace_format)->transform(CLI::CheckedTransformer(trace_formats, CLI::ignore_case));

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (*check) return cmd_check(check_opts);
        if (*oracle) return cmd_oracle(oracle_opts, bound);
        if (*sweep) {
            if (sweep_d) sweep_cfg.d_min = sweep_cfg.d_max = *sweep_d;
            else if (dmin_opt->count() == 0) throw std::invalid_argument("sweep needs --d or --d-min/--d-max");
            else if (sweep->get_option("--d-max")->count() == 0) sweep_cfg.d_max = sweep_cfg.d_min;
            sweep_cfg.jobs = survey::resolve_jobs(jobs);
            if (!cache.empty()) sweep_cfg.cache_path = cache;
            return cmd_sweep(sweep_cfg);
        }
        if (*tables) return cmd_tables(table_cfg, table_format);
        if (*trace) return cmd_trace(trace_d, tx, ty, tz, trace_format);
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::out_of_range& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    }
    return kExitUsage;
}
