#pragma once

#include <string>
#include <utility>
#include <vector>

namespace divcon {

/// One named check with its outcome and the datum that explains it.
struct Check {
    std::string name;
    bool passed = false;
    std::string detail;
    bool mandatory = true;
};

/// Passes iff every mandatory check passes.
struct ValidationReport {
    std::vector<Check> checks;

    void add(std::string name, bool passed, std::string detail, bool mandatory = true) {
        checks.push_back({std::move(name), passed, std::move(detail), mandatory});
    }

    bool passed() const {
        for (const auto& c : checks) {
            if (c.mandatory && !c.passed) {
                return false;
            }
        }
        return true;
    }

    const Check* find(const std::string& name) const {
        for (const auto& c : checks) {
            if (c.name == name) {
                return &c;
            }
        }
        return nullptr;
    }
};

}  // namespace divcon
