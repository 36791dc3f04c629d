#pragma once

#include <string>
#include <vector>

#include <json.hpp>

namespace trigl1 {

struct CaseResult {
    std::string id;
    double expected = 0.0;
    double actual = 0.0;
    double tolerance = 0.0;
    bool pass = false;
};

struct VerificationReport {
    std::string suite;
    std::vector<CaseResult> cases;
    double seconds = 0.0;

    bool overall_pass() const {
        for (const auto& c : cases)
            if (!c.pass) return false;
        return true;
    }

    void add(std::string id, double expected, double actual, double tolerance) {
        const bool ok = std::abs(actual - expected) <= tolerance;
        cases.push_back({std::move(id), expected, actual, tolerance, ok});
    }

    void add_flag(std::string id, bool pass) {
        cases.push_back({std::move(id), 1.0, pass ? 1.0 : 0.0, 0.5, pass});
    }

    // one-sided: pass iff actual <= limit + tolerance
    void add_upper(std::string id, double limit, double actual, double tolerance) {
        cases.push_back({std::move(id), limit, actual, tolerance, actual <= limit + tolerance});
    }
};

inline nlohmann::json to_json(const VerificationReport& r) {
    nlohmann::json cases = nlohmann::json::array();
    for (const auto& c : r.cases)
        cases.push_back({{"id", c.id},
                         {"expected", c.expected},
                         {"actual", c.actual},
                         {"tolerance", c.tolerance},
                         {"pass", c.pass}});
    return nlohmann::json{{"suite", r.suite},
                          {"cases", cases},
                          {"overall_pass", r.overall_pass()},
                          {"seconds", r.seconds}};
}

}  // namespace trigl1
