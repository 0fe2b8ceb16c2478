#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "postulate/interpolation.hpp"
#include "postulate/scheme.hpp"

namespace postulate::survey {

enum class OutputFormat { Csv, Json };

// One evaluated case. Matches the CSV columns
// d,x,y,z,c5,c4,c3,c2,epsilon,N,deg,rank,defect,verdict,seed,ms
// with absent optional fields written as empty cells.
struct CaseRecord {
    int d = 0;
    std::optional<std::int64_t> x, y, z;
    std::optional<std::int64_t> c5, c4, c3, c2;
    std::int64_t epsilon = 0;  // N - deg
    std::int64_t N = 0;
    std::int64_t deg = 0;
    std::int64_t rank = 0;
    std::int64_t defect = 0;
    Verdict verdict = Verdict::Good;
    std::uint64_t seed = 0;
    std::optional<std::int64_t> ms;

    bool operator==(const CaseRecord&) const = default;
};

std::string csv_header();
std::string to_csv(const CaseRecord& record);
// Throws std::invalid_argument on a malformed row.
CaseRecord parse_csv(const std::string& line);

nlohmann::json to_json(const CaseRecord& record);
CaseRecord case_from_json(const nlohmann::json& j);

// Fills x/y/z when the scheme is a P^3 union of 4-, 3- and 2-points and the
// c-slots when all multiplicities lie in 2..5 (both may apply).
CaseRecord make_record(const PostulationReport& report, const FatPointScheme& scheme);

// "m:count[,m:count...]"; the empty string is the empty scheme.
std::vector<std::pair<int, int>> parse_points(const std::string& text);

// Lines "m c_0 ... c_n" with integer or p/q coordinates; '#' starts a comment.
FatPointScheme read_support_file(const std::filesystem::path& path, int n);

struct SweepConfig {
    int d_min = 9;
    int d_max = 9;
    std::uint32_t prime = kDefaultPrime;
    int trials = 3;
    std::uint64_t seed = 0;
    int jobs = 1;
    OutputFormat format = OutputFormat::Csv;
    std::optional<std::filesystem::path> cache_path;
    bool timings = false;

    // Throws std::invalid_argument when prime <= d_max, trials < 1, jobs < 1 or d_min > d_max.
    void validate() const;
    nlohmann::json to_json() const;
};

// --jobs, else POSTULATE_JOBS, else the hardware concurrency.
int resolve_jobs(std::optional<int> flag);

std::string cache_key(const std::string& signature, int d, std::uint32_t prime, int trials, std::uint64_t seed);

// Append-only line-delimited JSON: {"key": ..., "record": {...}} per line.
class ResultCache {
public:
    explicit ResultCache(std::filesystem::path path);

    // Reads the file. A malformed line discards the whole cache, truncates
    // the file and returns a warning message.
    std::optional<std::string> load();
    std::optional<CaseRecord> find(const std::string& key) const;
    void append(const std::string& key, const CaseRecord& record);
    std::size_t size() const { return entries_.size(); }

private:
    std::filesystem::path path_;
    std::map<std::string, CaseRecord> entries_;
};

struct SweepSummary {
    std::int64_t total = 0;
    std::int64_t good = 0;
    std::int64_t defective = 0;
    std::int64_t cached = 0;
    std::int64_t ms = 0;
};

struct SweepResult {
    std::vector<CaseRecord> cases;
    SweepSummary summary;
    std::vector<std::string> warnings;
};

// Every boundary triple for d in [d_min, d_max], in (d, x, y, z) order.
SweepResult run_sweep(const SweepConfig& config);

nlohmann::json report_json(const nlohmann::json& config, const std::vector<CaseRecord>& cases,
                           const SweepSummary& summary, bool timings);

struct TableRow {
    int d = 0;
    std::array<int, 4> counts{};  // (c5, c4, c3, c2)
    bool good = false;            // published verdict
};

// Multiplicity-5 rows for d = 8, 9, 10 (24 rows).
const std::vector<TableRow>& multiplicity_five_tables();
// The published d = 8 failures among unions of 4-, 3- and 2-points.
const std::vector<TableRow>& degree_eight_counterexamples();

struct TableOutcome {
    TableRow row;
    CaseRecord record;
    bool match = false;
};

std::vector<TableOutcome> run_tables(const PostulationConfig& config);

}  // namespace postulate::survey
