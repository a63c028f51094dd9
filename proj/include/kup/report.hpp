#pragma once

#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "kup/tensor.hpp"

namespace kup {

struct CheckItem {
    std::string name;
    bool pass = true;
    std::string witness;  // empty when passing
};

struct Report {
    std::vector<CheckItem> items;

    void add(std::string name, bool pass, std::string witness = {}) {
        items.push_back({std::move(name), pass, pass ? std::string{} : std::move(witness)});
    }
    bool ok() const {
        for (const auto& it : items)
            if (!it.pass) return false;
        return true;
    }
    const CheckItem* first_failure() const {
        for (const auto& it : items)
            if (!it.pass) return &it;
        return nullptr;
    }
    const CheckItem* find(const std::string& name) const {
        for (const auto& it : items)
            if (it.name == name) return &it;
        return nullptr;
    }
    bool passed(const std::string& name) const {
        const auto* it = find(name);
        return it && it->pass;
    }
    std::string str() const {
        std::ostringstream os;
        for (const auto& it : items) {
            os << (it.pass ? "pass " : "FAIL ") << it.name;
            if (!it.pass) os << "  [" << it.witness << "]";
            os << '\n';
        }
        return os.str();
    }
};

inline std::string index_str(const Index& ix) {
    std::string s = "(";
    for (std::size_t k = 0; k < ix.size(); ++k) s += (k ? "," : "") + std::to_string(ix[k]);
    return s + ")";
}

// First index at which two same-shaped tensors differ.
inline std::optional<Index> first_difference(const Tensor& a, const Tensor& b) {
    if (a.legs() != b.legs()) return Index{};
    auto ia = a.entries().begin(), ib = b.entries().begin();
    while (ia != a.entries().end() || ib != b.entries().end()) {
        if (ib == b.entries().end() || (ia != a.entries().end() && ia->first < ib->first))
            return ia->first;
        if (ia == a.entries().end() || ib->first < ia->first) return ib->first;
        if (ia->second != ib->second) return ia->first;
        ++ia;
        ++ib;
    }
    return std::nullopt;
}

inline void add_equality(Report& r, const std::string& name, const Tensor& lhs, const Tensor& rhs) {
    auto d = first_difference(lhs, rhs);
    if (!d) {
        r.add(name, true);
    } else if (lhs.legs() != rhs.legs()) {
        r.add(name, false, "shape mismatch");
    } else {
        r.add(name, false,
              "at " + index_str(*d) + ": " + lhs.get(*d).str() + " vs " + rhs.get(*d).str());
    }
}

}  // namespace kup
