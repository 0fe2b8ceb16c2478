#include "postulate/trace_io.hpp"

#include <sstream>

namespace postulate::horace {

namespace {

std::string failed_names(const std::vector<Check>& checks) {
    std::string out;
    for (const auto& c : checks)
        if (!c.passed) out += (out.empty() ? "" : ",") + std::string(c.name);
    return out;
}

std::size_t passed_count(const std::vector<Check>& checks) {
    std::size_t n = 0;
    for (const auto& c : checks) n += c.passed;
    return n;
}

nlohmann::json checks_json(const std::vector<Check>& checks) {
    auto arr = nlohmann::json::array();
    for (const auto& c : checks)
        arr.push_back({{"name", c.name}, {"relation", c.relation}, {"lhs", c.lhs}, {"rhs", c.rhs}, {"passed", c.passed}});
    return arr;
}

}  // namespace

std::string to_text(const InductionTrace& trace) {
    std::ostringstream os;
    os << "# trace d=" << trace.d << " x=" << trace.triple.x << " y=" << trace.triple.y << " z=" << trace.triple.z
       << " epsilon=" << trace.epsilon << '\n';
    for (const auto& s : trace.steps) {
        os << "t=" << s.t << " alpha=" << s.alpha << " z=" << s.z << " beta=" << s.beta << " efg=(" << s.efg.e << ','
           << s.efg.f << ',' << s.efg.g << ") type=" << to_string(s.type) << " checks=" << passed_count(s.checks) << '/'
           << s.checks.size();
        if (auto f = failed_names(s.checks); !f.empty()) os << " failed=" << f;
        os << '\n';
    }
    os << "global checks=" << passed_count(trace.global_checks) << '/' << trace.global_checks.size();
    if (auto f = failed_names(trace.global_checks); !f.empty()) os << " failed=" << f;
    os << '\n';
    os << "status " << to_string(trace.status) << " type1_steps=" << trace.type1_steps
       << " type2_degree=" << trace.type2_degree;
    if (!trace.failure.empty()) os << " failure=\"" << trace.failure << '"';
    os << '\n';
    return os.str();
}

nlohmann::json to_json(const InductionTrace& trace) {
    nlohmann::json j;
    j["d"] = trace.d;
    j["x"] = trace.triple.x;
    j["y"] = trace.triple.y;
    j["z"] = trace.triple.z;
    j["epsilon"] = trace.epsilon;
    j["status"] = to_string(trace.status);
    j["type1_steps"] = trace.type1_steps;
    j["type2_degree"] = trace.type2_degree;
    j["failure"] = trace.failure;
    auto steps = nlohmann::json::array();
    for (const auto& s : trace.steps) {
        nlohmann::json js;
        js["t"] = s.t;
        js["alpha"] = s.alpha;
        js["z"] = s.z;
        js["delta"] = s.delta;
        js["beta_condition"] = s.beta_condition;
        js["beta"] = s.beta;
        js["efg"] = {s.efg.e, s.efg.f, s.efg.g};
        js["type"] = to_string(s.type);
        js["gamma"] = s.gamma;
        js["plain"] = {{"n2", s.plain.n2}, {"n3", s.plain.n3}, {"n4", s.plain.n4}};
        auto diff = nlohmann::json::array();
        for (const auto& sp : s.differential) diff.push_back({{"sequence", to_string(sp.dcase)}, {"count", sp.count}});
        js["differential"] = diff;
        js["checks"] = checks_json(s.checks);
        steps.push_back(std::move(js));
    }
    j["steps"] = std::move(steps);
    j["global_checks"] = checks_json(trace.global_checks);
    return j;
}

}  // namespace postulate::horace
