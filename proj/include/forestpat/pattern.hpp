#pragma once

#include "forestpat/error.hpp"

#include <algorithm>
#include <cstddef>
#include <set>
#include <span>
#include <string>
#include <vector>

namespace forestpat {

// A pattern is a permutation of {1..k}, written one-line (e.g. 213).
class Pattern {
  public:
    Pattern() = default;

    explicit Pattern(std::vector<int> entries) : entries_(std::move(entries)) {
        validate();
    }

    Pattern(std::initializer_list<int> entries) : entries_(entries) { validate(); }

    int size() const { return static_cast<int>(entries_.size()); }
    int operator()(int i) const { return entries_[static_cast<size_t>(i) - 1]; } // 1-indexed
    const std::vector<int>& entries() const { return entries_; }

    Pattern complement() const {
        std::vector<int> e(entries_.size());
        int k = size();
        for (int i = 0; i < k; ++i) e[i] = k + 1 - entries_[i];
        return Pattern(std::move(e));
    }

    // "1423" for k <= 9, "1,4,2,3,10,..." otherwise.
    std::string str() const {
        std::string s;
        if (size() <= 9) {
            for (int v : entries_) s += static_cast<char>('0' + v);
        } else {
            for (size_t i = 0; i < entries_.size(); ++i) {
                if (i) s += ',';
                s += std::to_string(entries_[i]);
            }
        }
        return s;
    }

    static Pattern parse(const std::string& s) {
        std::vector<int> e;
        if (s.find(',') != std::string::npos) {
            size_t pos = 0;
            while (pos < s.size()) {
                size_t next = s.find(',', pos);
                if (next == std::string::npos) next = s.size();
                try {
                    e.push_back(std::stoi(s.substr(pos, next - pos)));
                } catch (const std::exception&) {
                    throw error(errc::parse_error, "bad pattern entry in '" + s + "'");
                }
                pos = next + 1;
            }
        } else {
            for (char c : s) {
                if (c < '1' || c > '9')
                    throw error(errc::parse_error, "bad pattern digit in '" + s + "'");
                e.push_back(c - '0');
            }
        }
        if (e.empty()) throw error(errc::parse_error, "empty pattern");
        try {
            return Pattern(std::move(e));
        } catch (const error&) {
            throw error(errc::parse_error, "'" + s + "' is not a permutation of 1..k");
        }
    }

    bool operator==(const Pattern& o) const { return entries_ == o.entries_; }
    bool operator<(const Pattern& o) const {
        if (entries_.size() != o.entries_.size()) return entries_.size() < o.entries_.size();
        return entries_ < o.entries_;
    }

  private:
    void validate() const {
        int k = size();
        if (k < 1) throw error(errc::parse_error, "pattern must have length >= 1");
        std::vector<bool> seen(static_cast<size_t>(k) + 1, false);
        for (int v : entries_) {
            if (v < 1 || v > k || seen[static_cast<size_t>(v)])
                throw error(errc::parse_error, "pattern entries must be a permutation of 1..k");
            seen[static_cast<size_t>(v)] = true;
        }
    }

    std::vector<int> entries_;
};

enum class AvoidanceMode { Classical, Consecutive };

// A nonempty set of patterns with no duplicates.
class PatternSet {
  public:
    PatternSet() = default;
    explicit PatternSet(std::vector<Pattern> ps) {
        for (auto& p : ps) set_.insert(std::move(p));
        if (set_.empty()) throw error(errc::parse_error, "pattern set must be nonempty");
    }
    PatternSet(std::initializer_list<Pattern> ps) : PatternSet(std::vector<Pattern>(ps)) {}

    // Comma-separated list, e.g. "213,231".
    static PatternSet parse(const std::string& s) {
        std::vector<Pattern> ps;
        size_t pos = 0;
        while (pos <= s.size()) {
            size_t next = s.find(',', pos);
            if (next == std::string::npos) next = s.size();
            ps.push_back(Pattern::parse(s.substr(pos, next - pos)));
            pos = next + 1;
            if (pos == s.size() + 1) break;
        }
        return PatternSet(std::move(ps));
    }

    const std::set<Pattern>& patterns() const { return set_; }
    size_t size() const { return set_.size(); }

    PatternSet complement() const {
        std::vector<Pattern> ps;
        for (const auto& p : set_) ps.push_back(p.complement());
        return PatternSet(std::move(ps));
    }

    std::string str() const {
        std::string s;
        for (const auto& p : set_) {
            if (!s.empty()) s += ',';
            s += p.str();
        }
        return s;
    }

    bool operator==(const PatternSet& o) const { return set_ == o.set_; }
    bool operator<(const PatternSet& o) const { return set_ < o.set_; }

  private:
    std::set<Pattern> set_;
};

// Rank vector of a sequence of distinct values: result[i] is the rank (1-based)
// of seq[i] among the sequence. A sequence is order-isomorphic to a pattern
// iff its rank vector equals the pattern.
inline void rank_vector(std::span<const int> seq, std::vector<int>& out) {
    size_t k = seq.size();
    out.resize(k);
    for (size_t i = 0; i < k; ++i) {
        int r = 1;
        for (size_t j = 0; j < k; ++j)
            if (seq[j] < seq[i]) ++r;
        out[i] = r;
    }
}

inline bool matches_pattern(std::span<const int> seq, const Pattern& sigma) {
    int k = sigma.size();
    if (static_cast<int>(seq.size()) != k) return false;
    // rank comparison without allocation: seq[i] and seq[j] compare as
    // sigma entries do, for all pairs
    for (int i = 0; i < k; ++i)
        for (int j = i + 1; j < k; ++j)
            if ((seq[i] < seq[j]) != (sigma.entries()[i] < sigma.entries()[j])) return false;
    return true;
}

} // namespace forestpat
