#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace mprad {

// Named feature values with per-value quality flags. A set flag means the
// value was imputed (0) or computed from a degraded fallback rather than
// failing the whole patient.
struct FeatureGroup {
    std::vector<std::string> names;
    std::vector<double> values;
    std::vector<std::uint8_t> flags;

    void add(std::string name, double value, bool flagged = false) {
        names.push_back(std::move(name));
        values.push_back(value);
        flags.push_back(flagged ? 1 : 0);
    }

    void append(const FeatureGroup& other) {
        names.insert(names.end(), other.names.begin(), other.names.end());
        values.insert(values.end(), other.values.begin(), other.values.end());
        flags.insert(flags.end(), other.flags.begin(), other.flags.end());
    }

    std::size_t size() const { return values.size(); }
};

} // namespace mprad
