#pragma once

#include <cstdlib>
#include <string>

namespace forestpat {

enum class OutputFormat { Table, Csv, Json };

// Knobs shared by the CLI and the enumeration oracles. Caps exist because
// every oracle is an exhaustive scan; past them a recurrence or closed form
// is the right tool and the oracle refuses to run.
struct RunConfig {
    int oracle_cap = 8;        // max n for forest/tree enumeration oracles
    int cluster_cap_k3 = 9;    // max n for cluster enumeration, patterns of length <= 3
    int cluster_cap_k4 = 8;    // max n for cluster enumeration, patterns of length >= 4
    int workers = 1;
    std::size_t memo_cap = 0;  // 0 = unbounded; else whole-family flush past this many entries
    std::string cache_dir = default_cache_dir();
    OutputFormat format = OutputFormat::Table;

    int cluster_cap(int pattern_length) const {
        return pattern_length <= 3 ? cluster_cap_k3 : cluster_cap_k4;
    }

    static std::string default_cache_dir() {
        if (const char* env = std::getenv("FORESTPAT_CACHE_DIR")) return env;
        return ".forestpat-cache";
    }
};

} // namespace forestpat
