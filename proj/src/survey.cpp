#include "postulate/survey.hpp"

#include <atomic>
#include <chrono>
#include <condition_variable>
#include <cstdlib>
#include <deque>
#include <fstream>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace postulate::survey {

namespace {

constexpr std::size_t kCsvColumns = 16;

std::string cell(const std::optional<std::int64_t>& v) { return v ? std::to_string(*v) : std::string(); }

std::optional<std::int64_t> parse_cell(const std::string& s) {
    if (s.empty()) return std::nullopt;
    std::size_t used = 0;
    const long long v = std::stoll(s, &used);
    if (used != s.size()) throw std::invalid_argument("bad integer field: " + s);
    return v;
}

std::int64_t required(const std::string& s, const char* name) {
    auto v = parse_cell(s);
    if (!v) throw std::invalid_argument(std::string("missing field ") + name);
    return *v;
}

Verdict parse_verdict(const std::string& s) {
    if (s == "Good") return Verdict::Good;
    if (s == "Defective") return Verdict::Defective;
    throw std::invalid_argument("bad verdict: " + s);
}

std::uint64_t fnv1a(const std::string& s) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char ch : s) {
        h ^= ch;
        h *= 0x100000001b3ULL;
    }
    return h;
}

Rational parse_rational(const std::string& token) {
    const auto slash = token.find('/');
    try {
        if (slash == std::string::npos) return Rational(BigInt(token));
        BigInt den(token.substr(slash + 1));
        if (den == 0) throw std::invalid_argument("zero denominator");
        return Rational(BigInt(token.substr(0, slash)), den);
    } catch (const std::runtime_error&) {
        throw std::invalid_argument("bad coordinate: " + token);
    }
}

}  // namespace

std::string csv_header() { return "d,x,y,z,c5,c4,c3,c2,epsilon,N,deg,rank,defect,verdict,seed,ms"; }

std::string to_csv(const CaseRecord& r) {
    std::ostringstream os;
    os << r.d << ',' << cell(r.x) << ',' << cell(r.y) << ',' << cell(r.z) << ',' << cell(r.c5) << ',' << cell(r.c4)
       << ',' << cell(r.c3) << ',' << cell(r.c2) << ',' << r.epsilon << ',' << r.N << ',' << r.deg << ',' << r.rank
       << ',' << r.defect << ',' << to_string(r.verdict) << ',' << r.seed << ',' << cell(r.ms);
    return os.str();
}

CaseRecord parse_csv(const std::string& line) {
    std::vector<std::string> f;
    std::string cur;
    for (char ch : line) {
        if (ch == ',') {
            f.push_back(cur);
            cur.clear();
        } else if (ch != '\r') {
            cur += ch;
        }
    }
    f.push_back(cur);
    if (f.size() != kCsvColumns) throw std::invalid_argument("expected 16 CSV fields, got " + std::to_string(f.size()));
    CaseRecord r;
    r.d = static_cast<int>(required(f[0], "d"));
    r.x = parse_cell(f[1]);
    r.y = parse_cell(f[2]);
    r.z = parse_cell(f[3]);
    r.c5 = parse_cell(f[4]);
    r.c4 = parse_cell(f[5]);
    r.c3 = parse_cell(f[6]);
    r.c2 = parse_cell(f[7]);
    r.epsilon = required(f[8], "epsilon");
    r.N = required(f[9], "N");
    r.deg = required(f[10], "deg");
    r.rank = required(f[11], "rank");
    r.defect = required(f[12], "defect");
    r.verdict = parse_verdict(f[13]);
    if (f[14].empty()) throw std::invalid_argument("missing field seed");
    r.seed = std::stoull(f[14]);
    r.ms = parse_cell(f[15]);
    return r;
}

nlohmann::json to_json(const CaseRecord& r) {
    auto opt = [](const std::optional<std::int64_t>& v) { return v ? nlohmann::json(*v) : nlohmann::json(nullptr); };
    return {{"d", r.d},         {"x", opt(r.x)},   {"y", opt(r.y)},         {"z", opt(r.z)},
            {"c5", opt(r.c5)},  {"c4", opt(r.c4)}, {"c3", opt(r.c3)},       {"c2", opt(r.c2)},
            {"epsilon", r.epsilon}, {"N", r.N},    {"deg", r.deg},          {"rank", r.rank},
            {"defect", r.defect},   {"verdict", to_string(r.verdict)},      {"seed", r.seed},
            {"ms", opt(r.ms)}};
}

CaseRecord case_from_json(const nlohmann::json& j) {
    auto opt = [&](const char* key) -> std::optional<std::int64_t> {
        const auto& v = j.at(key);
        if (v.is_null()) return std::nullopt;
        return v.get<std::int64_t>();
    };
    CaseRecord r;
    r.d = j.at("d").get<int>();
    r.x = opt("x");
    r.y = opt("y");
    r.z = opt("z");
    r.c5 = opt("c5");
    r.c4 = opt("c4");
    r.c3 = opt("c3");
    r.c2 = opt("c2");
    r.epsilon = j.at("epsilon").get<std::int64_t>();
    r.N = j.at("N").get<std::int64_t>();
    r.deg = j.at("deg").get<std::int64_t>();
    r.rank = j.at("rank").get<std::int64_t>();
    r.defect = j.at("defect").get<std::int64_t>();
    r.verdict = parse_verdict(j.at("verdict").get<std::string>());
    r.seed = j.at("seed").get<std::uint64_t>();
    r.ms = opt("ms");
    return r;
}

CaseRecord make_record(const PostulationReport& report, const FatPointScheme& scheme) {
    CaseRecord r;
    r.d = report.d;
    r.epsilon = report.N - report.scheme_degree;
    r.N = report.N;
    r.deg = report.scheme_degree;
    r.rank = report.rank;
    r.defect = report.defect;
    r.verdict = report.verdict;
    r.seed = report.base_seed;

    std::array<std::int64_t, 6> counts{};
    bool in_two_to_five = true;
    for (const auto& c : scheme.components()) {
        if (c.multiplicity < 2 || c.multiplicity > 5) in_two_to_five = false;
        else ++counts[c.multiplicity];
    }
    if (in_two_to_five && scheme.ambient_dim() == 3) {
        if (counts[5] == 0) {
            r.x = counts[4];
            r.y = counts[3];
            r.z = counts[2];
        }
        r.c5 = counts[5];
        r.c4 = counts[4];
        r.c3 = counts[3];
        r.c2 = counts[2];
    }
    return r;
}

std::vector<std::pair<int, int>> parse_points(const std::string& text) {
    std::vector<std::pair<int, int>> out;
    if (text.empty()) return out;
    std::size_t start = 0;
    while (start <= text.size()) {
        const auto comma = std::min(text.find(',', start), text.size());
        const std::string item = text.substr(start, comma - start);
        start = comma + 1;
        const auto colon = item.find(':');
        if (colon == std::string::npos) throw std::invalid_argument("points entry needs m:count, got '" + item + "'");
        std::size_t used_m = 0, used_c = 0;
        int m = 0, count = 0;
        try {
            m = std::stoi(item.substr(0, colon), &used_m);
            count = std::stoi(item.substr(colon + 1), &used_c);
        } catch (const std::exception&) {
            throw std::invalid_argument("bad points entry '" + item + "'");
        }
        if (used_m != colon || used_c != item.size() - colon - 1)
            throw std::invalid_argument("bad points entry '" + item + "'");
        if (m < 1) throw std::invalid_argument("multiplicity must be >= 1");
        if (count < 0) throw std::invalid_argument("negative point count");
        out.emplace_back(m, count);
    }
    return out;
}

FatPointScheme read_support_file(const std::filesystem::path& path, int n) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open support file " + path.string());
    std::vector<FatPointComponent> comps;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
        std::istringstream ls(line);
        std::vector<std::string> tokens;
        for (std::string tok; ls >> tok;) tokens.push_back(tok);
        if (tokens.empty()) continue;
        if (tokens.size() != static_cast<std::size_t>(n) + 2)
            throw std::invalid_argument("support file line " + std::to_string(lineno) + ": expected m and " +
                                        std::to_string(n + 1) + " coordinates");
        Explicit e;
        for (std::size_t i = 1; i < tokens.size(); ++i) e.coords.push_back(parse_rational(tokens[i]));
        comps.push_back({std::stoi(tokens[0]), std::move(e)});
    }
    return FatPointScheme(n, std::move(comps));
}

void SweepConfig::validate() const {
    if (d_min < 0 || d_min > d_max) throw std::invalid_argument("need 0 <= d-min <= d-max");
    if (prime <= static_cast<std::uint32_t>(d_max)) throw std::invalid_argument("prime must exceed d-max");
    if (prime <= 4) throw std::invalid_argument("prime must exceed the multiplicity 4");
    if (trials < 1) throw std::invalid_argument("trials must be >= 1");
    if (jobs < 1) throw std::invalid_argument("jobs must be >= 1");
}

nlohmann::json SweepConfig::to_json() const {
    return {{"d_min", d_min}, {"d_max", d_max}, {"prime", prime}, {"trials", trials}, {"seed", seed}};
}

int resolve_jobs(std::optional<int> flag) {
    if (flag) return *flag;
    if (const char* env = std::getenv("POSTULATE_JOBS"); env && *env) {
        try {
            return std::stoi(env);
        } catch (const std::exception&) {
            throw std::invalid_argument("POSTULATE_JOBS is not an integer");
        }
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

std::string cache_key(const std::string& signature, int d, std::uint32_t prime, int trials, std::uint64_t seed) {
    const std::string canon = signature + '|' + std::to_string(d) + '|' + std::to_string(prime) + '|' +
                              std::to_string(trials) + '|' + std::to_string(seed);
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(fnv1a(canon)));
    return buf;
}

ResultCache::ResultCache(std::filesystem::path path) : path_(std::move(path)) {}

std::optional<std::string> ResultCache::load() {
    entries_.clear();
    std::ifstream in(path_);
    if (!in) return std::nullopt;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        try {
            const auto j = nlohmann::json::parse(line);
            entries_[j.at("key").get<std::string>()] = case_from_json(j.at("record"));
        } catch (const std::exception& e) {
            in.close();
            entries_.clear();
            std::ofstream(path_, std::ios::trunc);
            return "cache " + path_.string() + " corrupt at line " + std::to_string(lineno) + " (" + e.what() +
                   "); rebuilt from scratch";
        }
    }
    return std::nullopt;
}

std::optional<CaseRecord> ResultCache::find(const std::string& key) const {
    if (auto it = entries_.find(key); it != entries_.end()) return it->second;
    return std::nullopt;
}

void ResultCache::append(const std::string& key, const CaseRecord& record) {
    std::ofstream out(path_, std::ios::app);
    if (!out) throw std::runtime_error("cannot write cache " + path_.string());
    out << nlohmann::json{{"key", key}, {"record", to_json(record)}}.dump() << '\n';
    out.flush();
    entries_[key] = record;
}

namespace {

struct PendingCase {
    std::size_t index;
    int d;
    Triple triple;
    std::string key;
};

// Worker -> sink channel.
class ResultQueue {
public:
    void push(std::size_t index, CaseRecord record) {
        {
            std::lock_guard lock(mutex_);
            items_.emplace_back(index, std::move(record));
        }
        ready_.notify_one();
    }
    std::pair<std::size_t, CaseRecord> pop() {
        std::unique_lock lock(mutex_);
        ready_.wait(lock, [&] { return !items_.empty(); });
        auto item = std::move(items_.front());
        items_.pop_front();
        return item;
    }

private:
    std::mutex mutex_;
    std::condition_variable ready_;
    std::deque<std::pair<std::size_t, CaseRecord>> items_;
};

FatPointScheme triple_scheme(const Triple& t) {
    return FatPointScheme::generic(3, {{4, static_cast<int>(t.x)}, {3, static_cast<int>(t.y)}, {2, static_cast<int>(t.z)}});
}

}  // namespace

SweepResult run_sweep(const SweepConfig& config) {
    config.validate();
    const auto start = std::chrono::steady_clock::now();
    SweepResult result;

    std::optional<ResultCache> cache;
    if (config.cache_path) {
        cache.emplace(*config.cache_path);
        if (auto warning = cache->load()) result.warnings.push_back(*warning);
    }

    std::vector<std::pair<int, Triple>> all;
    for (int d = config.d_min; d <= config.d_max; ++d)
        for_each_boundary_triple(d, [&](const Triple& t) { all.emplace_back(d, t); });

    result.cases.resize(all.size());
    std::vector<PendingCase> pending;
    for (std::size_t i = 0; i < all.size(); ++i) {
        const auto& [d, t] = all[i];
        std::string key = cache_key(triple_scheme(t).signature(), d, config.prime, config.trials, config.seed);
        if (cache) {
            if (auto hit = cache->find(key)) {
                result.cases[i] = *hit;
                if (!config.timings) result.cases[i].ms.reset();
                ++result.summary.cached;
                continue;
            }
        }
        pending.push_back({i, d, t, std::move(key)});
    }

    const PostulationConfig pc{config.prime, config.trials, config.seed};
    std::atomic<std::size_t> next{0};
    ResultQueue queue;
    auto worker = [&] {
        for (std::size_t k = next++; k < pending.size(); k = next++) {
            const auto& job = pending[k];
            const auto t0 = std::chrono::steady_clock::now();
            const auto scheme = triple_scheme(job.triple);
            auto record = make_record(check_postulation(scheme, job.d, pc), scheme);
            record.ms = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - t0).count();
            queue.push(k, std::move(record));
        }
    };
    std::vector<std::jthread> workers;
    const int width = std::min<int>(config.jobs, static_cast<int>(std::max<std::size_t>(1, pending.size())));
    for (int i = 0; i < width; ++i) workers.emplace_back(worker);

    for (std::size_t received = 0; received < pending.size(); ++received) {
        auto [k, record] = queue.pop();
        if (cache) cache->append(pending[k].key, record);
        if (!config.timings) record.ms.reset();
        result.cases[pending[k].index] = std::move(record);
    }
    workers.clear();

    for (const auto& r : result.cases) {
        ++result.summary.total;
        (r.verdict == Verdict::Good ? result.summary.good : result.summary.defective)++;
    }
    result.summary.ms =
        std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start).count();
    return result;
}

nlohmann::json report_json(const nlohmann::json& config, const std::vector<CaseRecord>& cases,
                           const SweepSummary& summary, bool timings) {
    auto arr = nlohmann::json::array();
    for (const auto& c : cases) arr.push_back(to_json(c));
    nlohmann::json s{{"total", summary.total}, {"good", summary.good}, {"defective", summary.defective}};
    s["ms"] = timings ? nlohmann::json(summary.ms) : nlohmann::json(nullptr);
    return {{"config", config}, {"cases", arr}, {"summary", s}};
}

const std::vector<TableRow>& multiplicity_five_tables() {
    static const std::vector<TableRow> rows = {
        {8, {5, 1, 0, 0}, true},   {8, {4, 2, 0, 0}, false},  {8, {3, 3, 0, 0}, false}, {8, {3, 4, 0, 0}, true},
        {8, {2, 5, 0, 0}, false},  {8, {2, 6, 0, 0}, true},   {8, {1, 7, 0, 0}, true},  {8, {0, 9, 0, 0}, false},
        {9, {7, 0, 0, 0}, true},   {9, {6, 2, 0, 0}, true},   {9, {5, 3, 0, 0}, true},  {9, {4, 5, 0, 0}, true},
        {9, {3, 6, 0, 0}, false},  {9, {3, 7, 0, 0}, true},   {9, {6, 0, 1, 0}, false}, {9, {6, 0, 2, 0}, true},
        {10, {9, 0, 0, 0}, false}, {10, {8, 1, 0, 0}, false}, {10, {7, 2, 0, 0}, false}, {10, {8, 2, 0, 0}, true},
        {10, {7, 3, 0, 0}, true},  {10, {6, 4, 0, 0}, true},  {10, {6, 5, 0, 0}, true}, {10, {8, 0, 1, 0}, false},
    };
    return rows;
}

const std::vector<TableRow>& degree_eight_counterexamples() {
    static const std::vector<TableRow> rows = {
        {8, {0, 9, 0, 0}, false}, {8, {0, 8, 1, 0}, false}, {8, {0, 8, 0, 1}, false},
        {8, {0, 8, 0, 2}, false}, {8, {0, 7, 2, 1}, false},
    };
    return rows;
}

std::vector<TableOutcome> run_tables(const PostulationConfig& config) {
    std::vector<TableOutcome> out;
    auto run = [&](const TableRow& row) {
        const auto scheme = FatPointScheme::generic(
            3, {{5, row.counts[0]}, {4, row.counts[1]}, {3, row.counts[2]}, {2, row.counts[3]}});
        auto record = make_record(check_postulation(scheme, row.d, config), scheme);
        const bool good = record.verdict == Verdict::Good;
        out.push_back({row, record, good == row.good});
    };
    for (const auto& row : multiplicity_five_tables()) run(row);
    for (const auto& row : degree_eight_counterexamples()) run(row);
    return out;
}

}  // namespace postulate::survey
