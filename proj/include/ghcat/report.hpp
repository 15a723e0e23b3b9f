#pragma once

#include <string>
#include <vector>

namespace ghcat {

struct Check {
    std::string what;
    bool ok = true;
    std::string detail;
};

struct Report {
    std::vector<Check> checks;

    bool pass() const {
        for (const auto& c : checks)
            if (!c.ok) return false;
        return true;
    }
    void require(bool ok, const std::string& what, const std::string& detail = "") {
        checks.push_back({what, ok, detail});
    }
    void note(const std::string& what, const std::string& detail = "") {
        checks.push_back({what, true, detail});
    }
    std::size_t failures() const {
        std::size_t n = 0;
        for (const auto& c : checks)
            if (!c.ok) ++n;
        return n;
    }
    std::string first_failure() const {
        for (const auto& c : checks)
            if (!c.ok) return c.what + (c.detail.empty() ? "" : " [" + c.detail + "]");
        return "";
    }
    void merge(const Report& o, const std::string& prefix = "") {
        for (const auto& c : o.checks)
            checks.push_back({prefix.empty() ? c.what : prefix + ": " + c.what, c.ok, c.detail});
    }
};

} // namespace ghcat
