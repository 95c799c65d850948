#pragma once

#include <string>
#include <unordered_map>
#include <vector>

#include "acirc/errors.hpp"

namespace acirc {

// Maps variable ids (small ints) to printable names. Polynomials only carry
// ids; whoever owns the context owns the naming.
class VarNames {
public:
    VarNames() = default;
    VarNames(std::initializer_list<std::string> names) {
        for (const auto& n : names) add(n);
    }

    int add(const std::string& name) {
        auto it = index_.find(name);
        if (it != index_.end()) return it->second;
        int id = static_cast<int>(names_.size());
        names_.push_back(name);
        index_.emplace(name, id);
        return id;
    }

    int find(const std::string& name) const {
        auto it = index_.find(name);
        return it == index_.end() ? -1 : it->second;
    }

    const std::string& name(int id) const {
        if (id < 0 || id >= static_cast<int>(names_.size()))
            throw ValidationError("unknown variable id " + std::to_string(id));
        return names_[static_cast<std::size_t>(id)];
    }

    int size() const { return static_cast<int>(names_.size()); }

    // Default namespace of a circuit with r parameters and n inputs:
    // U1..Ur then X1..Xn.
    static VarNames circuit_vars(int r, int n) {
        VarNames v;
        for (int k = 1; k <= r; ++k) v.add("U" + std::to_string(k));
        for (int i = 1; i <= n; ++i) v.add("X" + std::to_string(i));
        return v;
    }

private:
    std::vector<std::string> names_;
    std::unordered_map<std::string, int> index_;
};

} // namespace acirc
