#pragma once

#include <stdexcept>
#include <string>

namespace forestpat {

enum class errc {
    unknown_label,
    noncontiguous_labels,
    empty_label_set,
    cap_exceeded,
    unsupported_set,
    unsupported_pattern,
    insufficient_sequence,
    not_special,
    no_i2_instance,
    no_j2_instance,
    precondition_violated,
    missing_cluster_data,
    not_nice,
    not_proper,
    not_subset,
    size_mismatch,
    odd_size,
    parse_error,
    io_error,
    internal,
};

inline const char* errc_name(errc c) {
    switch (c) {
        case errc::unknown_label: return "UNKNOWN_LABEL";
        case errc::noncontiguous_labels: return "NONCONTIGUOUS_LABELS";
        case errc::empty_label_set: return "EMPTY_LABEL_SET";
        case errc::cap_exceeded: return "CAP_EXCEEDED";
        case errc::unsupported_set: return "UNSUPPORTED_SET";
        case errc::unsupported_pattern: return "UNSUPPORTED_PATTERN";
        case errc::insufficient_sequence: return "INSUFFICIENT_SEQUENCE";
        case errc::not_special: return "NOT_SPECIAL";
        case errc::no_i2_instance: return "NO_I2_INSTANCE";
        case errc::no_j2_instance: return "NO_J2_INSTANCE";
        case errc::precondition_violated: return "PRECONDITION_VIOLATED";
        case errc::missing_cluster_data: return "MISSING_CLUSTER_DATA";
        case errc::not_nice: return "NOT_NICE";
        case errc::not_proper: return "NOT_PROPER";
        case errc::not_subset: return "NOT_SUBSET";
        case errc::size_mismatch: return "SIZE_MISMATCH";
        case errc::odd_size: return "ODD_SIZE";
        case errc::parse_error: return "PARSE_ERROR";
        case errc::io_error: return "IO_ERROR";
        case errc::internal: return "INTERNAL";
    }
    return "UNKNOWN";
}

class error : public std::runtime_error {
  public:
    error(errc code, const std::string& what)
        : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

    errc code() const { return code_; }

  private:
    errc code_;
};

// Internal consistency check; a failure means an implementation bug, not
// bad input.
inline void check(bool cond, const char* msg) {
    if (!cond) throw error(errc::internal, msg);
}

} // namespace forestpat
