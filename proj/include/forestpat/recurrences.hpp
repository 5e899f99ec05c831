#pragma once

#include "forestpat/bigint.hpp"
#include "forestpat/config.hpp"
#include "forestpat/error.hpp"
#include "forestpat/pattern.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace forestpat {

// Pure memo table keyed by (family id, integer parameter tuple). With a cap
// configured, overflowing a family flushes that family wholesale.
class CountMemo {
  public:
    explicit CountMemo(std::size_t cap = 0) : cap_(cap) {}

    const BigInt* find(const std::string& family, const std::vector<int>& params) const {
        auto fit = tables_.find(family);
        if (fit == tables_.end()) return nullptr;
        auto it = fit->second.find(params);
        return it == fit->second.end() ? nullptr : &it->second;
    }

    void store(const std::string& family, const std::vector<int>& params, BigInt value) {
        auto& table = tables_[family];
        if (cap_ != 0 && table.size() >= cap_) table.clear();
        table.emplace(params, std::move(value));
    }

    std::size_t family_size(const std::string& family) const {
        auto fit = tables_.find(family);
        return fit == tables_.end() ? 0 : fit->second.size();
    }

  private:
    std::size_t cap_;
    std::map<std::string, std::map<std::vector<int>, BigInt>> tables_;
};

// F(n, pots) from a tree counter: the S-independent forest-from-tree
// convolution. The displayed sum is extended through i = n so the
// whole-forest-is-one-tree case is included.
class ForestFromTree {
  public:
    explicit ForestFromTree(std::function<BigInt(int)> tree_count, std::size_t memo_cap = 0)
        : tree_count_(std::move(tree_count)), memo_(memo_cap) {}

    BigInt operator()(int n, int pots = 1) {
        if (n < 0) return 0;
        if (n == 0) return 1;
        std::vector<int> key = {n, pots};
        if (const BigInt* hit = memo_.find("F", key)) return *hit;
        BigInt total = 0;
        for (int i = 1; i <= n; ++i)
            total += binomial(n - 1, i - 1) * (*this)(n - i, pots) * tree(i);
        total *= pots;
        memo_.store("F", key, total);
        return total;
    }

    BigInt tree(int i) {
        std::vector<int> key = {i};
        if (const BigInt* hit = memo_.find("T", key)) return *hit;
        BigInt t = tree_count_(i);
        memo_.store("T", key, t);
        return t;
    }

  private:
    std::function<BigInt(int)> tree_count_;
    CountMemo memo_;
};

// Tree/forest counting for the supported sets containing 213 (or their
// complements). Each family's tree recurrence feeds the potted
// forest-from-tree convolution.
class RecurrenceCounter {
  public:
    enum class Family {
        s213_231,     // {213,231}
        s213,         // {213}
        s213_123,     // {213,123} and {213,132}
        s213_321,     // {213,321}
        s213_123_132, // {213,123,132}
        s213_231_123, // {213,231,123} and {213,231,132}
    };

    explicit RecurrenceCounter(const PatternSet& s, std::size_t memo_cap = 0)
        : memo_(memo_cap) {
        auto fam = classify(s);
        if (!fam) fam = classify(s.complement());
        if (!fam)
            throw error(errc::unsupported_set, "no registered recurrence for {" + s.str() + "}");
        family_ = *fam;
    }

    static bool supported(const PatternSet& s) {
        return classify(s).has_value() || classify(s.complement()).has_value();
    }

    BigInt forests(int n) { return potted_forest(n, 1); }

    BigInt trees(int n) {
        if (n <= 0) return 0;
        if (family_ == Family::s213_321) {
            BigInt total = 0;
            for (int r = 0; r <= n; ++r) total += tree3(n, r);
            return total;
        }
        return tree(n);
    }

    // F(n, m): forests with m distinguishable pots.
    BigInt potted_forest(int n, int pots) {
        if (n < 0) return 0;
        if (family_ == Family::s213_321) {
            BigInt total = 0;
            for (int r = 0; r <= n; ++r) total += forest3(n, pots, r);
            return total;
        }
        if (n == 0) return 1;
        std::vector<int> key = {n, pots};
        if (const BigInt* hit = memo_.find("F", key)) return *hit;
        BigInt total = 0;
        for (int i = 1; i <= n; ++i)
            total += binomial(n - 1, i - 1) * potted_forest(n - i, pots) * tree(i);
        total *= pots;
        memo_.store("F", key, total);
        return total;
    }

    // {213,321} family: F(n, m, r) with r the number of vertices that are not
    // a descendant of the endpoint of any 21-instance (the root-path to the
    // vertex is increasing).
    BigInt forest3(int n, int pots, int r) {
        if (n < 0 || r < 0 || r > n) return 0;
        if (n == 0) return r == 0 ? 1 : 0;
        std::vector<int> key = {n, pots, r};
        if (const BigInt* hit = memo_.find("F3", key)) return *hit;
        BigInt total = 0;
        for (int i = 1; i <= n; ++i) {
            BigInt inner = 0;
            for (int l = 0; l <= std::min(i, r); ++l)
                inner += tree3(i, l) * forest3(n - i, pots, r - l);
            total += binomial(n - 1, i - 1) * inner;
        }
        total *= pots;
        memo_.store("F3", key, total);
        return total;
    }

    BigInt tree3(int n, int r) {
        if (n <= 0 || r <= 0 || r > n) return 0;
        std::vector<int> key = {n, r};
        if (const BigInt* hit = memo_.find("T3", key)) return *hit;
        BigInt total = 0;
        for (int i = 1; i <= n; ++i)
            total += forest3(n - i, 1, r - 1) * rising_factorial(r, i - 1);
        memo_.store("T3", key, total);
        return total;
    }

  private:
    static std::optional<Family> classify(const PatternSet& s) {
        static const std::vector<std::pair<PatternSet, Family>> registry = {
            {PatternSet{Pattern({2, 1, 3}), Pattern({2, 3, 1})}, Family::s213_231},
            {PatternSet{Pattern({2, 1, 3})}, Family::s213},
            {PatternSet{Pattern({2, 1, 3}), Pattern({1, 2, 3})}, Family::s213_123},
            {PatternSet{Pattern({2, 1, 3}), Pattern({1, 3, 2})}, Family::s213_123},
            {PatternSet{Pattern({2, 1, 3}), Pattern({3, 2, 1})}, Family::s213_321},
            {PatternSet{Pattern({2, 1, 3}), Pattern({1, 2, 3}), Pattern({1, 3, 2})},
             Family::s213_123_132},
            {PatternSet{Pattern({2, 1, 3}), Pattern({2, 3, 1}), Pattern({1, 2, 3})},
             Family::s213_231_123},
            {PatternSet{Pattern({2, 1, 3}), Pattern({2, 3, 1}), Pattern({1, 3, 2})},
             Family::s213_231_123},
        };
        for (const auto& [set, fam] : registry)
            if (set == s) return fam;
        return std::nullopt;
    }

    BigInt tree(int n) {
        if (n <= 0) return 0;
        std::vector<int> key = {n};
        if (const BigInt* hit = memo_.find("T", key)) return *hit;
        BigInt total = 0;
        switch (family_) {
            case Family::s213_231:
                for (int i = 1; i <= n; ++i)
                    total += potted_forest(i - 1, 1) * potted_forest(n - i, 1);
                break;
            case Family::s213:
                for (int i = 1; i <= n; ++i)
                    total += potted_forest(n - i, 1) * potted_forest(i - 1, n - i + 1);
                break;
            case Family::s213_123:
                for (int i = 1; i <= n; ++i)
                    total += factorial(n - i) * potted_forest(i - 1, n - i + 1);
                break;
            case Family::s213_123_132:
                for (int i = 1; i <= n; ++i) total += potted_forest(i - 1, n - i + 1);
                break;
            case Family::s213_231_123:
                for (int i = 1; i <= n; ++i) total += potted_forest(i - 1, 1) * factorial(n - i);
                break;
            case Family::s213_321:
                check(false, "s213_321 uses tree3");
        }
        memo_.store("T", key, total);
        return total;
    }

    Family family_;
    CountMemo memo_;
};

// f_n(k(k-1)...1) via the multi-parameter recurrences. The full
// (k-1)-dimensional F/T system is kept alongside the reduced F'/T' system
// (last parameter pinned to n); both are exposed so they can be checked
// against each other.
class DescendingCounter {
  public:
    explicit DescendingCounter(int k, std::size_t memo_cap = 0) : k_(k), memo_(memo_cap) {
        if (k < 2) throw error(errc::unsupported_pattern, "descending pattern needs k >= 2");
    }

    int k() const { return k_; }

    // Number of forests on [n] avoiding k(k-1)...1.
    BigInt forests(int n) {
        if (n < 0) return 0;
        return reduced_forest(n, std::vector<int>(static_cast<size_t>(k_) - 2, 0));
    }

    BigInt trees(int n) {
        if (n <= 0) return 0;
        return reduced_tree(n, std::vector<int>(static_cast<size_t>(k_) - 2, 0));
    }

    // F(n, a_1..a_{k-1}): forests on [n] where each instance of j(j-1)...1
    // has starting point > a_{j-1}.
    BigInt full_forest(int n, std::vector<int> a) {
        check(static_cast<int>(a.size()) == k_ - 1, "full_forest wants k-1 parameters");
        if (n < 0) return 0;
        if (n == 0) return 1;
        normalize(a, n);
        std::vector<int> key = params_key(n, a);
        if (const BigInt* hit = memo_.find("F_full", key)) return *hit;
        BigInt total = multisum(
            n, a,
            [&](int tn, std::vector<int> ta) { return full_tree(tn, std::move(ta)); },
            [&](int fn, std::vector<int> fa) { return full_forest(fn, std::move(fa)); });
        memo_.store("F_full", key, total);
        return total;
    }

    BigInt full_tree(int n, std::vector<int> a) {
        check(static_cast<int>(a.size()) == k_ - 1, "full_tree wants k-1 parameters");
        if (n <= 0) return 0;
        normalize(a, n);
        std::vector<int> key = params_key(n, a);
        if (const BigInt* hit = memo_.find("T_full", key)) return *hit;
        BigInt total = tree_casework(
            n, a, /*last_virtual_n=*/false,
            [&](int fn, std::vector<int> fa) { return full_forest(fn, std::move(fa)); });
        memo_.store("T_full", key, total);
        return total;
    }

    // F'(n, a_1..a_{k-2}) = F(n, a_1..a_{k-2}, n), and likewise T'.
    BigInt reduced_forest(int n, std::vector<int> a) {
        check(static_cast<int>(a.size()) == k_ - 2, "reduced_forest wants k-2 parameters");
        if (n < 0) return 0;
        if (n == 0) return 1;
        normalize(a, n);
        std::vector<int> key = params_key(n, a);
        if (const BigInt* hit = memo_.find("F_red", key)) return *hit;
        BigInt total = multisum(
            n, a,
            [&](int tn, std::vector<int> ta) { return reduced_tree(tn, std::move(ta)); },
            [&](int fn, std::vector<int> fa) { return reduced_forest(fn, std::move(fa)); });
        memo_.store("F_red", key, total);
        return total;
    }

    BigInt reduced_tree(int n, std::vector<int> a) {
        check(static_cast<int>(a.size()) == k_ - 2, "reduced_tree wants k-2 parameters");
        if (n <= 0) return 0;
        normalize(a, n);
        std::vector<int> key = params_key(n, a);
        if (const BigInt* hit = memo_.find("T_red", key)) return *hit;
        BigInt total = tree_casework(
            n, a, /*last_virtual_n=*/true,
            [&](int fn, std::vector<int> fa) { return reduced_forest(fn, std::move(fa)); });
        memo_.store("T_red", key, total);
        return total;
    }

  private:
    // a_i <- min(n, max(a_i, a_{i-1}+1)) with a_0 = 0; the replacement is
    // count-preserving and canonicalizes memo keys.
    static void normalize(std::vector<int>& a, int n) {
        int prev = 0;
        for (auto& v : a) {
            v = std::min(n, std::max(v, prev + 1));
            prev = v;
        }
    }

    static std::vector<int> params_key(int n, const std::vector<int>& a) {
        std::vector<int> key;
        key.reserve(a.size() + 1);
        key.push_back(n);
        key.insert(key.end(), a.begin(), a.end());
        return key;
    }

    // Shared casework over the root label m. Parameters a has either k-1
    // entries (full) or k-2 entries plus a virtual trailing a_{k-1} = n
    // (reduced); region i spans (a_i, a_{i+1}].
    template <typename ForestFn>
    BigInt tree_casework(int n, const std::vector<int>& a, bool last_virtual_n, ForestFn&& forest) {
        int len = static_cast<int>(a.size());
        auto bound = [&](int i) { // a_i with a_{len} virtual when reduced
            if (i < len) return a[static_cast<size_t>(i)];
            return n;
        };
        // root m = 1
        std::vector<int> shifted(a.size());
        for (int i = 0; i < len; ++i)
            shifted[static_cast<size_t>(i)] = a[static_cast<size_t>(i)] - 1;
        BigInt total = forest(n - 1, shifted);
        // root m in (a_i, a_{i+1}]
        int regions = last_virtual_n ? len : len - 1;
        for (int i = 0; i <= regions; ++i) {
            int lo = bound(i) + 1;
            int hi = (i + 1 <= len) ? bound(i + 1) : n;
            if (!last_virtual_n && i == len - 1) hi = n; // final sum runs to n
            if (last_virtual_n && i == len) hi = n;
            for (int m = lo; m <= hi; ++m) {
                std::vector<int> na(a.size());
                for (int j = 0; j < len; ++j) {
                    if (j < i)
                        na[static_cast<size_t>(j)] = a[static_cast<size_t>(j)];
                    else if (j == i)
                        na[static_cast<size_t>(j)] = m - 1;
                    else
                        na[static_cast<size_t>(j)] = a[static_cast<size_t>(j)] - 1;
                }
                total += forest(n - 1, na);
            }
        }
        return total;
    }

    // Shared region multi-sum; works for both systems since the trailing
    // region bound is n either way (a_{k-1} itself, or the virtual pin).
    template <typename TreeFn, typename ForestFn>
    BigInt multisum(int n, const std::vector<int>& a, TreeFn&& tree, ForestFn&& forest) {
        int len = static_cast<int>(a.size());
        int sums = len + 1; // b_1..b_{len+1}
        auto bound = [&](int i) { return i < len ? a[static_cast<size_t>(i)] : n; };
        std::vector<int> region(static_cast<size_t>(sums));
        region[0] = bound(0) - 1;
        for (int i = 1; i < sums; ++i) region[static_cast<size_t>(i)] = bound(i) - bound(i - 1);

        std::vector<int> b(static_cast<size_t>(sums), 0);
        BigInt total = 0;
        std::function<void(int, BigInt, int)> rec = [&](int i, BigInt coef, int bsum) {
            if (i == sums) {
                std::vector<int> ta(static_cast<size_t>(len));
                int acc = 0;
                for (int j = 0; j < len; ++j) {
                    acc += b[static_cast<size_t>(j)];
                    ta[static_cast<size_t>(j)] = 1 + acc;
                }
                std::vector<int> fa(static_cast<size_t>(len));
                acc = 0;
                for (int j = 0; j < len; ++j) {
                    acc += b[static_cast<size_t>(j)];
                    fa[static_cast<size_t>(j)] = a[static_cast<size_t>(j)] - 1 - acc;
                }
                total += coef * tree(1 + bsum, ta) * forest(n - 1 - bsum, fa);
                return;
            }
            for (int v = 0; v <= region[static_cast<size_t>(i)]; ++v) {
                b[static_cast<size_t>(i)] = v;
                rec(i + 1, coef * binomial(region[static_cast<size_t>(i)], v), bsum + v);
            }
            b[static_cast<size_t>(i)] = 0;
        };
        rec(0, 1, 0);
        return total;
    }

    int k_;
    CountMemo memo_;
};

// Triangular array from the (second) Bell transform of a sequence.
struct BellTriangle {
    int order = -1; // which higher-order Bell sequence generated it, if any
    std::vector<std::vector<BigInt>> rows; // rows[n][m] = Delta(n, m), 0 <= m <= n

    BigInt at(int n, int m) const {
        if (m < 0 || m > n) return 0;
        return rows[static_cast<size_t>(n)][static_cast<size_t>(m)];
    }

    BigInt row_sum(int n) const {
        BigInt s = 0;
        for (const auto& v : rows[static_cast<size_t>(n)]) s += v;
        return s;
    }

    int max_n() const { return static_cast<int>(rows.size()) - 1; }
};

// Delta(0,0)=1, Delta(n,0)=0 and Delta(n,1)=a_{n-1} for n>=1, and
// Delta(n,m) = sum_{j=1}^{n-m+1} C(n-1,j-1) Delta(n-j,m-1) Delta(j,1).
inline BellTriangle bell_transform(const std::vector<BigInt>& a, int max_n, int order = -1) {
    if (static_cast<int>(a.size()) < max_n)
        throw error(errc::insufficient_sequence,
                    "need " + std::to_string(max_n) + " sequence entries, have " +
                        std::to_string(a.size()));
    BellTriangle tri;
    tri.order = order;
    tri.rows.resize(static_cast<size_t>(max_n) + 1);
    for (int n = 0; n <= max_n; ++n) {
        auto& row = tri.rows[static_cast<size_t>(n)];
        row.assign(static_cast<size_t>(n) + 1, 0);
        if (n == 0) {
            row[0] = 1;
            continue;
        }
        row[1] = a[static_cast<size_t>(n) - 1];
        for (int m = 2; m <= n; ++m) {
            BigInt s = 0;
            for (int j = 1; j <= n - m + 1; ++j)
                s += binomial(n - 1, j - 1) * tri.at(n - j, m - 1) * tri.at(j, 1);
            row[static_cast<size_t>(m)] = s;
        }
    }
    return tri;
}

// S_0 is all ones; S_{i+1} is the row sums of the Bell transform of S_i.
inline std::vector<BigInt> higher_order_bell_sequence(int order, int max_n) {
    std::vector<BigInt> s(static_cast<size_t>(max_n) + 1, 1);
    for (int it = 0; it < order; ++it) {
        BellTriangle tri = bell_transform(s, max_n, it);
        for (int n = 0; n <= max_n; ++n) s[static_cast<size_t>(n)] = tri.row_sum(n);
    }
    return s;
}

// (S_i)_n; equals f_n(12, k(k-1)...1) for i = k-2.
inline BigInt higher_order_bell(int order, int n) {
    if (order < 0 || n < 0) throw error(errc::internal, "higher_order_bell needs order,n >= 0");
    return higher_order_bell_sequence(order, n)[static_cast<size_t>(n)];
}

} // namespace forestpat
