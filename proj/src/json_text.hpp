#pragma once

#include <json.hpp>

#include <string>

namespace hlie {

// Two-space indentation with sorted keys, except that arrays of scalars stay on one
// line. Deterministic for a given value.
inline void dump_compact(const nlohmann::json& j, std::string& out, int indent) {
    const auto flat = [](const nlohmann::json& a) {
        for (const auto& e : a)
            if (!e.is_primitive()) return false;
        return true;
    };
    const std::string pad(static_cast<std::size_t>(indent + 2), ' ');
    const std::string close(static_cast<std::size_t>(indent), ' ');
    if (j.is_object() && !j.empty()) {
        out += "{\n";
        bool first = true;
        for (const auto& [k, v] : j.items()) {
            if (!first) out += ",\n";
            first = false;
            out += pad + nlohmann::json(k).dump() + ": ";
            dump_compact(v, out, indent + 2);
        }
        out += "\n" + close + "}";
    } else if (j.is_array() && !j.empty() && !flat(j)) {
        out += "[\n";
        for (std::size_t k = 0; k < j.size(); ++k) {
            if (k) out += ",\n";
            out += pad;
            dump_compact(j[k], out, indent + 2);
        }
        out += "\n" + close + "]";
    } else if (j.is_array()) {
        out += "[";
        for (std::size_t k = 0; k < j.size(); ++k) out += (k ? ", " : "") + j[k].dump();
        out += "]";
    } else {
        out += j.dump();
    }
}

inline std::string dump_compact(const nlohmann::json& j) {
    std::string out;
    dump_compact(j, out, 0);
    return out + "\n";
}

} // namespace hlie
