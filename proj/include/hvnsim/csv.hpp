#pragma once

#include <cstdio>
#include <optional>
#include <string>
#include <vector>

namespace hvnsim {

/// Fixed-format numeric fields so identical results serialize to identical
/// bytes. Decimal separator is always '.'.
inline std::string csv_num(double v, int decimals = 6) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
    return buf;
}

/// Absent values (e.g. PDR with nothing expected) serialize as empty fields.
inline std::string csv_num(const std::optional<double>& v, int decimals = 6) {
    return v ? csv_num(*v, decimals) : std::string{};
}

inline std::string csv_join(const std::vector<std::string>& fields) {
    std::string row;
    for (std::size_t i = 0; i < fields.size(); ++i) {
        if (i) row += ',';
        row += fields[i];
    }
    row += '\n';
    return row;
}

} // namespace hvnsim
