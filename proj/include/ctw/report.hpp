#pragma once

#include <string>
#include <vector>

namespace ctw {

struct CheckItem {
    std::string name;
    bool passed = false;
    std::string detail;
};

/// Ordered list of named checks.
class Report {
public:
    void add(std::string name, bool passed, std::string detail = {}) {
        items_.push_back({std::move(name), passed, std::move(detail)});
    }
    void merge(const Report& other, const std::string& prefix = {}) {
        for (const auto& it : other.items_)
            items_.push_back({prefix + it.name, it.passed, it.detail});
    }
    bool ok() const {
        for (const auto& it : items_)
            if (!it.passed) return false;
        return true;
    }
    const std::vector<CheckItem>& items() const { return items_; }
    const CheckItem* first_failure() const {
        for (const auto& it : items_)
            if (!it.passed) return &it;
        return nullptr;
    }
    std::string summary() const;

private:
    std::vector<CheckItem> items_;
};

inline std::string Report::summary() const {
    std::string out;
    for (const auto& it : items_) {
        out += it.passed ? "[ok]   " : "[FAIL] ";
        out += it.name;
        if (!it.detail.empty()) out += "  (" + it.detail + ")";
        out += '\n';
    }
    return out;
}

}  // namespace ctw
