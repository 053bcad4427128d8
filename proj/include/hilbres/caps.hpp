/**
 * @file caps.hpp
 * @brief Enumeration caps, overridable per request or through HILBRES_CAPS.
 */
#pragma once

#include "error.hpp"

#include <cstddef>
#include <cstdlib>
#include <map>
#include <sstream>
#include <string>

namespace hilbres {

struct Caps {
    std::size_t max_full_search_k = 8;   // full S_k normalizer search
    std::size_t group_cap = 1000000;     // elements in any enumerated group
    std::size_t cyclotomic_cap = 64;     // N in Q(zeta_N)
    std::size_t degree_cap = 64;         // degree of a user supplied modulus
    std::size_t partition_cap = 60;      // partitions(k), torus_fixed_points(k)
    std::size_t poset_cap = 15;          // strata_poset(k)
    std::size_t kummer_cap = 12;         // n + 1 in kummer_fixed_strata
    std::size_t max_order = 100000;      // element order bound for classification

    /// Overrides from a comma separated `key=value` list. Unknown keys and
    /// malformed values throw.
    void apply(const std::string& spec) {
        const std::map<std::string, std::size_t Caps::*> fields = {
            {"max_full_search_k", &Caps::max_full_search_k},
            {"group_cap", &Caps::group_cap},
            {"cyclotomic_cap", &Caps::cyclotomic_cap},
            {"degree_cap", &Caps::degree_cap},
            {"partition_cap", &Caps::partition_cap},
            {"poset_cap", &Caps::poset_cap},
            {"kummer_cap", &Caps::kummer_cap},
            {"max_order", &Caps::max_order},
        };
        std::stringstream ss(spec);
        std::string item;
        while (std::getline(ss, item, ',')) {
            if (item.empty()) continue;
            auto eq = item.find('=');
            if (eq == std::string::npos) throw Error("malformed cap override '" + item + "'");
            auto key = item.substr(0, eq);
            auto value = item.substr(eq + 1);
            auto it = fields.find(key);
            if (it == fields.end()) throw Error("unknown cap '" + key + "'");
            if (value.empty() || value.find_first_not_of("0123456789") != std::string::npos)
                throw Error("cap '" + key + "' needs a non-negative integer");
            this->*(it->second) = static_cast<std::size_t>(std::stoull(value));
        }
    }

    static Caps from_environment() {
        Caps caps;
        if (const char* env = std::getenv("HILBRES_CAPS")) caps.apply(env);
        return caps;
    }
};

} // namespace hilbres
