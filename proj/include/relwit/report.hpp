#pragma once

#include <json.hpp>

#include <string>
#include <vector>

namespace relwit {

/// One verified statement inside a report: a name, a verdict, and enough
/// detail (both sides of the identity, orders, ...) to recompute it externally.
struct Assertion {
    std::string name;
    bool pass = false;
    std::string detail;
};

struct Report {
    std::string title;
    std::vector<Assertion> assertions;
    nlohmann::ordered_json extra;  // report-specific structured payload

    void check(std::string name, bool pass, std::string detail = {}) {
        assertions.push_back({std::move(name), pass, std::move(detail)});
    }

    bool all_pass() const {
        for (const auto& a : assertions)
            if (!a.pass) return false;
        return true;
    }

    nlohmann::ordered_json to_json() const {
        nlohmann::ordered_json j;
        j["title"] = title;
        j["pass"] = all_pass();
        auto arr = nlohmann::ordered_json::array();
        for (const auto& a : assertions) {
            nlohmann::ordered_json e;
            e["name"] = a.name;
            e["pass"] = a.pass;
            if (!a.detail.empty()) e["detail"] = a.detail;
            arr.push_back(e);
        }
        j["assertions"] = arr;
        if (!extra.is_null()) j["data"] = extra;
        return j;
    }
};

}  // namespace relwit
