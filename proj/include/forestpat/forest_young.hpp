#pragma once

#include "forestpat/bigint.hpp"
#include "forestpat/error.hpp"
#include "forestpat/forest.hpp"
#include "forestpat/pattern.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <string>
#include <vector>

namespace forestpat {

// Forest-Young diagram: an unlabeled rooted forest (vertices 0..n-1, parent
// indices) with a column of cells (1..height(v)) above each vertex. Columns
// are leaf-heavy: a descendant's column is at least as tall as its
// ancestor's.
class ForestYoungDiagram {
  public:
    static constexpr int kRoot = -1;

    ForestYoungDiagram() = default;

    static ForestYoungDiagram make(std::vector<int> parent, std::vector<int> height) {
        ForestYoungDiagram y;
        y.parent_ = std::move(parent);
        y.height_ = std::move(height);
        int n = y.size();
        check(static_cast<int>(y.height_.size()) == n, "height vector size mismatch");
        y.children_.assign(static_cast<size_t>(n), {});
        for (int v = 0; v < n; ++v) {
            int p = y.parent_[static_cast<size_t>(v)];
            if (p != kRoot) {
                check(p >= 0 && p < n, "parent index out of range");
                y.children_[static_cast<size_t>(p)].push_back(v);
            }
        }
        for (int v = 0; v < n; ++v) {
            if (y.height_[static_cast<size_t>(v)] < 1)
                throw error(errc::parse_error, "column heights must be >= 1");
            int p = y.parent_[static_cast<size_t>(v)];
            if (p != kRoot && y.height_[static_cast<size_t>(v)] < y.height_[static_cast<size_t>(p)])
                throw error(errc::parse_error,
                            "leaf-heavy violation: descendant column shorter than ancestor's");
        }
        // acyclicity
        for (int v = 0; v < n; ++v) {
            int steps = 0;
            for (int j = v; j != kRoot; j = y.parent_[static_cast<size_t>(j)])
                check(++steps <= n, "parent map has a cycle");
        }
        return y;
    }

    int size() const { return static_cast<int>(parent_.size()); }
    int parent(int v) const { return parent_[static_cast<size_t>(v)]; }
    int height(int v) const { return height_[static_cast<size_t>(v)]; }
    const std::vector<int>& heights() const { return height_; }
    const std::vector<int>& parents() const { return parent_; }
    const std::vector<int>& children(int v) const { return children_[static_cast<size_t>(v)]; }

    int max_height() const {
        int h = 0;
        for (int v = 0; v < size(); ++v) h = std::max(h, height(v));
        return h;
    }

    bool has_cell(int r, int v) const { return r >= 1 && r <= height(v); }

    bool is_strict_ancestor(int anc, int v) const {
        for (int j = parent(v); j != kRoot; j = parent(j))
            if (j == anc) return true;
        return false;
    }

    int depth(int v) const {
        int d = 1;
        for (int j = parent(v); j != kRoot; j = parent(j)) ++d;
        return d;
    }

    // Strict ancestors of v, from the root down to v's parent.
    std::vector<int> ancestor_path(int v) const {
        std::vector<int> path;
        for (int j = parent(v); j != kRoot; j = parent(j)) path.push_back(j);
        std::reverse(path.begin(), path.end());
        return path;
    }

    std::string key() const {
        std::string s;
        for (int v = 0; v < size(); ++v) {
            s += std::to_string(parent_[static_cast<size_t>(v)]);
            s += ':';
            s += std::to_string(height_[static_cast<size_t>(v)]);
            s += ';';
        }
        return s;
    }

    bool operator==(const ForestYoungDiagram& o) const {
        return parent_ == o.parent_ && height_ == o.height_;
    }

  private:
    std::vector<int> parent_;
    std::vector<int> height_;
    std::vector<std::vector<int>> children_;
};

// A transversal assigns each column the row of its 1; valid when rows are a
// bijection onto {1..max height} and each 1 sits inside its column.
struct Transversal {
    std::vector<int> row_of; // 1-based, indexed by vertex

    bool operator==(const Transversal& o) const { return row_of == o.row_of; }
    bool operator!=(const Transversal& o) const { return !(*this == o); }
    bool operator<(const Transversal& o) const { return row_of < o.row_of; }
};

inline bool is_valid_transversal(const ForestYoungDiagram& y, const Transversal& t) {
    int n = y.size();
    if (static_cast<int>(t.row_of.size()) != n) return false;
    int h = y.max_height();
    if (n == 0) return true;
    if (h != n) return false;
    std::vector<bool> used(static_cast<size_t>(h) + 1, false);
    for (int v = 0; v < n; ++v) {
        int r = t.row_of[static_cast<size_t>(v)];
        if (r < 1 || r > y.height(v) || used[static_cast<size_t>(r)]) return false;
        used[static_cast<size_t>(r)] = true;
    }
    return true;
}

// Permutation matrix, stored as the row of the 1 in each column (1-based).
class PermMatrix {
  public:
    PermMatrix() = default;

    explicit PermMatrix(std::vector<int> row_of_col) : row_of_col_(std::move(row_of_col)) {
        Pattern check_perm{std::vector<int>(row_of_col_)}; // validates permutation
    }

    // entry(i, j) = 1 iff i = k+1-sigma(j)
    static PermMatrix from_pattern(const Pattern& sigma) {
        int k = sigma.size();
        std::vector<int> roc(static_cast<size_t>(k));
        for (int j = 1; j <= k; ++j) roc[static_cast<size_t>(j) - 1] = k + 1 - sigma(j);
        return PermMatrix(std::move(roc));
    }

    static PermMatrix i2() { return PermMatrix({1, 2}); }
    static PermMatrix j2() { return PermMatrix({2, 1}); }

    int size() const { return static_cast<int>(row_of_col_.size()); }
    int row_of_col(int j) const { return row_of_col_[static_cast<size_t>(j) - 1]; } // 1-based
    bool entry(int i, int j) const { return row_of_col(j) == i; }

    // [[0, corner],[lower, 0]] with corner in the top right.
    static PermMatrix block(const PermMatrix& corner, const PermMatrix& lower) {
        int c = corner.size(), a = lower.size();
        std::vector<int> roc(static_cast<size_t>(c + a));
        for (int j = 1; j <= a; ++j) roc[static_cast<size_t>(j) - 1] = c + lower.row_of_col(j);
        for (int j = 1; j <= c; ++j) roc[static_cast<size_t>(a + j) - 1] = corner.row_of_col(j);
        return PermMatrix(std::move(roc));
    }

    bool operator==(const PermMatrix& o) const { return row_of_col_ == o.row_of_col_; }

    std::string str() const {
        std::string s;
        for (int i = 1; i <= size(); ++i) {
            for (int j = 1; j <= size(); ++j) s += entry(i, j) ? '1' : '0';
            s += '/';
        }
        return s;
    }

  private:
    std::vector<int> row_of_col_;
};

namespace detail {

// An instance of M on the ancestor chain v_1..v_k requires the 1 of column
// v_j to sit in the pi(j)-th smallest chain row, and every chain cell
// (including the 0 cells) to exist: max chain row <= every chain height.
inline bool chain_is_instance(const ForestYoungDiagram& y, const Transversal& t,
                              const PermMatrix& m, const std::vector<int>& chain) {
    int k = m.size();
    int maxrow = 0, minheight = 0;
    for (int j = 0; j < k; ++j) {
        int v = chain[static_cast<size_t>(j)];
        maxrow = std::max(maxrow, t.row_of[static_cast<size_t>(v)]);
        int h = y.height(v);
        minheight = (j == 0) ? h : std::min(minheight, h);
    }
    if (maxrow > minheight) return false;
    for (int j = 0; j < k; ++j) {
        int rank = 1;
        for (int l = 0; l < k; ++l)
            if (t.row_of[static_cast<size_t>(chain[static_cast<size_t>(l)])] <
                t.row_of[static_cast<size_t>(chain[static_cast<size_t>(j)])])
                ++rank;
        if (rank != m.row_of_col(j + 1)) return false;
    }
    return true;
}

// Visits every ancestor chain of k vertices exactly once, keyed by its
// endpoint; fn returning true stops the walk.
template <typename Fn>
void for_each_chain(const ForestYoungDiagram& y, int k, Fn&& fn) {
    std::vector<int> path;
    std::vector<int> chain(static_cast<size_t>(k));
    std::function<bool(int)> walk = [&](int v) -> bool {
        path.push_back(v);
        bool stop = false;
        if (static_cast<int>(path.size()) >= k) {
            chain[static_cast<size_t>(k) - 1] = v;
            // choose the other k-1 chain vertices among the strict ancestors
            std::function<bool(size_t, int)> choose = [&](size_t from, int slot) -> bool {
                if (slot == k - 1) return fn(chain);
                for (size_t i = from; i + static_cast<size_t>(k - 1 - slot) < path.size(); ++i) {
                    chain[static_cast<size_t>(slot)] = path[i];
                    if (choose(i + 1, slot + 1)) return true;
                }
                return false;
            };
            stop = choose(0, 0);
        }
        if (!stop)
            for (int c : y.children(v)) {
                if (walk(c)) {
                    stop = true;
                    break;
                }
            }
        path.pop_back();
        return stop;
    };
    for (int r = 0; r < y.size(); ++r) {
        if (y.parent(r) != ForestYoungDiagram::kRoot) continue;
        if (walk(r)) return;
    }
}

} // namespace detail

inline bool transversal_contains(const ForestYoungDiagram& y, const Transversal& t,
                                 const PermMatrix& m) {
    if (m.size() == 1) return y.size() > 0; // every 1-cell carries an instance of [1]
    bool found = false;
    detail::for_each_chain(y, m.size(), [&](const std::vector<int>& chain) {
        if (detail::chain_is_instance(y, t, m, chain)) {
            found = true;
            return true;
        }
        return false;
    });
    return found;
}

inline bool transversal_avoids_all(const ForestYoungDiagram& y, const Transversal& t,
                                   const std::vector<PermMatrix>& ms) {
    for (const auto& m : ms)
        if (transversal_contains(y, t, m)) return false;
    return true;
}

// All transversals, by backtracking over vertices in decreasing column
// height with a row-availability mask.
inline std::vector<Transversal> enumerate_transversals(const ForestYoungDiagram& y) {
    int n = y.size();
    std::vector<Transversal> out;
    if (n == 0) {
        out.push_back(Transversal{});
        return out;
    }
    if (y.max_height() != n) return out; // pigeonhole: no bijection onto rows
    std::vector<int> order(static_cast<size_t>(n));
    for (int v = 0; v < n; ++v) order[static_cast<size_t>(v)] = v;
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        if (y.height(a) != y.height(b)) return y.height(a) > y.height(b);
        return a < b;
    });
    Transversal t;
    t.row_of.assign(static_cast<size_t>(n), 0);
    std::vector<bool> used(static_cast<size_t>(n) + 1, false);
    std::function<void(int)> rec = [&](int i) {
        if (i == n) {
            out.push_back(t);
            return;
        }
        int v = order[static_cast<size_t>(i)];
        for (int r = 1; r <= y.height(v); ++r) {
            if (used[static_cast<size_t>(r)]) continue;
            used[static_cast<size_t>(r)] = true;
            t.row_of[static_cast<size_t>(v)] = r;
            rec(i + 1);
            used[static_cast<size_t>(r)] = false;
        }
        t.row_of[static_cast<size_t>(v)] = 0;
    };
    rec(0);
    std::sort(out.begin(), out.end());
    return out;
}

// Independent oracle: try every assignment of rows 1..n to vertices.
inline std::vector<Transversal> enumerate_transversals_bruteforce(const ForestYoungDiagram& y) {
    int n = y.size();
    std::vector<Transversal> out;
    if (n == 0) {
        out.push_back(Transversal{});
        return out;
    }
    std::vector<int> perm(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) perm[static_cast<size_t>(i)] = i + 1;
    do {
        Transversal t{perm};
        if (is_valid_transversal(y, t)) out.push_back(t);
    } while (std::next_permutation(perm.begin(), perm.end()));
    std::sort(out.begin(), out.end());
    return out;
}

namespace detail {

// I2 feet: ordered pairs (u, w), u strict ancestor of w, row(u) < row(w),
// and the 0-cell (row(w), u) exists. J2 feet: row(u) > row(w); all four
// cells exist automatically.
inline std::vector<std::pair<int, int>> i2_feet(const ForestYoungDiagram& y,
                                                const Transversal& t) {
    std::vector<std::pair<int, int>> out;
    for (int w = 0; w < y.size(); ++w)
        for (int u : y.ancestor_path(w))
            if (t.row_of[static_cast<size_t>(u)] < t.row_of[static_cast<size_t>(w)] &&
                t.row_of[static_cast<size_t>(w)] <= y.height(u))
                out.emplace_back(u, w);
    return out;
}

inline std::vector<std::pair<int, int>> j2_feet(const ForestYoungDiagram& y,
                                                const Transversal& t) {
    std::vector<std::pair<int, int>> out;
    for (int w = 0; w < y.size(); ++w)
        for (int u : y.ancestor_path(w))
            if (t.row_of[static_cast<size_t>(u)] > t.row_of[static_cast<size_t>(w)])
                out.emplace_back(u, w);
    return out;
}

} // namespace detail

// phi swaps the designated I2 instance to a J2: a2 is the highest lower-1
// among I2 instances, a1 the youngest upper-1 above it.
inline Transversal phi(const ForestYoungDiagram& y, const Transversal& t,
                       std::pair<int, int>* swapped = nullptr) {
    auto feet = detail::i2_feet(y, t);
    if (feet.empty()) throw error(errc::no_i2_instance, "phi needs an I2 instance");
    int w_star = -1;
    for (const auto& [u, w] : feet)
        if (w_star < 0 ||
            t.row_of[static_cast<size_t>(w)] < t.row_of[static_cast<size_t>(w_star)])
            w_star = w;
    int u_star = -1;
    for (const auto& [u, w] : feet)
        if (w == w_star && (u_star < 0 || y.depth(u) > y.depth(u_star))) u_star = u;
    Transversal out = t;
    std::swap(out.row_of[static_cast<size_t>(u_star)], out.row_of[static_cast<size_t>(w_star)]);
    if (swapped) *swapped = {u_star, w_star};
    return out;
}

// psi swaps the designated J2 instance back to an I2: b1 is the lowest
// lower-1 among J2 instances, b2 the lowest upper-1 under it.
inline Transversal psi(const ForestYoungDiagram& y, const Transversal& t,
                       std::pair<int, int>* swapped = nullptr) {
    auto feet = detail::j2_feet(y, t);
    if (feet.empty()) throw error(errc::no_j2_instance, "psi needs a J2 instance");
    int u_star = -1;
    for (const auto& [u, w] : feet)
        if (u_star < 0 ||
            t.row_of[static_cast<size_t>(u)] > t.row_of[static_cast<size_t>(u_star)])
            u_star = u;
    int w_star = -1;
    for (const auto& [u, w] : feet)
        if (u == u_star && (w_star < 0 ||
                            t.row_of[static_cast<size_t>(w)] > t.row_of[static_cast<size_t>(w_star)]))
            w_star = w;
    Transversal out = t;
    std::swap(out.row_of[static_cast<size_t>(u_star)], out.row_of[static_cast<size_t>(w_star)]);
    if (swapped) *swapped = {u_star, w_star};
    return out;
}

// f: S_Y(J2) -> S_Y(I2), iterating phi to the fixed point. The a2 cell must
// move strictly down, or stay in its row and get older; that is the
// termination measure and it is checked at every step.
inline Transversal i2j2_f(const ForestYoungDiagram& y, Transversal t) {
    if (transversal_contains(y, t, PermMatrix::j2()))
        throw error(errc::precondition_violated, "i2j2_f input must avoid J2");
    int prev_row = 0, prev_depth = 0;
    while (transversal_contains(y, t, PermMatrix::i2())) {
        std::pair<int, int> uw;
        Transversal next = phi(y, t, &uw);
        int row = t.row_of[static_cast<size_t>(uw.second)]; // a2's row before the swap
        int dep = y.depth(uw.second);
        if (prev_row != 0)
            check(row > prev_row || (row == prev_row && dep < prev_depth),
                  "phi measure did not decrease");
        prev_row = row;
        prev_depth = dep;
        t = std::move(next);
    }
    return t;
}

inline Transversal i2j2_g(const ForestYoungDiagram& y, Transversal t) {
    if (transversal_contains(y, t, PermMatrix::i2()))
        throw error(errc::precondition_violated, "i2j2_g input must avoid I2");
    int prev_row = 0, prev_depth = 0;
    while (transversal_contains(y, t, PermMatrix::j2())) {
        std::pair<int, int> uw;
        Transversal next = psi(y, t, &uw);
        int row = t.row_of[static_cast<size_t>(uw.first)]; // b1's row before the swap
        int dep = y.depth(uw.first);
        if (prev_row != 0)
            check(row < prev_row || (row == prev_row && dep > prev_depth),
                  "psi measure did not decrease");
        prev_row = row;
        prev_depth = dep;
        t = std::move(next);
    }
    return t;
}

// The (A,L)-coloring: white cells survive into a sub-diagram carrying a
// sub-transversal; the embeddings record how rows and vertices map back.
struct Coloring {
    std::vector<int> white_prefix; // per original vertex: white rows 1..white_prefix[v] (step 1)
    std::vector<bool> one_blue;    // vertex's 1-cell blue after step 1
    ForestYoungDiagram sub;        // Y_{A,L}
    Transversal sub_t;             // L_A
    std::vector<int> vertex_embed; // sub vertex -> original vertex
    std::vector<int> row_embed;    // sub row r -> original row row_embed[r-1]

    // Colorings are equal iff every cell got the same color.
    bool same_as(const Coloring& o) const {
        return white_prefix == o.white_prefix && one_blue == o.one_blue;
    }
};

inline Coloring coloring(const ForestYoungDiagram& y, const Transversal& t,
                         const std::vector<PermMatrix>& as) {
    int n = y.size();
    // Step 1: cell (r,v) is white iff some A-instance lies fully among strict
    // ancestors of v with every instance row below r.
    std::vector<int> min_row_best(static_cast<size_t>(n), 0); // max over instances of min row
    for (int v = 0; v < n; ++v) {
        std::vector<int> anc = y.ancestor_path(v);
        int best = 0;
        for (const auto& a : as) {
            int k = a.size();
            if (static_cast<int>(anc.size()) < k) continue;
            std::vector<int> chain(static_cast<size_t>(k));
            std::function<void(size_t, int)> choose = [&](size_t from, int got) {
                if (got == k) {
                    if (detail::chain_is_instance(y, t, a, chain)) {
                        int mn = t.row_of[static_cast<size_t>(chain[0])];
                        for (int c : chain)
                            mn = std::min(mn, t.row_of[static_cast<size_t>(c)]);
                        best = std::max(best, mn);
                    }
                    return;
                }
                for (size_t i = from; i + static_cast<size_t>(k - got) <= anc.size(); ++i) {
                    chain[static_cast<size_t>(got)] = anc[i];
                    choose(i + 1, got + 1);
                }
            };
            choose(0, 0);
        }
        min_row_best[static_cast<size_t>(v)] = best;
    }
    Coloring col;
    col.white_prefix.assign(static_cast<size_t>(n), 0);
    col.one_blue.assign(static_cast<size_t>(n), false);
    for (int v = 0; v < n; ++v) {
        col.white_prefix[static_cast<size_t>(v)] =
            std::max(0, std::min(y.height(v), min_row_best[static_cast<size_t>(v)] - 1));
        col.one_blue[static_cast<size_t>(v)] =
            t.row_of[static_cast<size_t>(v)] >= min_row_best[static_cast<size_t>(v)];
    }
    // Step 2: blue 1-cells delete their column and row; survivors contract
    // onto the closest remaining ancestor and rows re-index upward.
    std::vector<bool> row_deleted(static_cast<size_t>(n) + 1, false);
    for (int v = 0; v < n; ++v)
        if (col.one_blue[static_cast<size_t>(v)])
            row_deleted[static_cast<size_t>(t.row_of[static_cast<size_t>(v)])] = true;
    std::vector<int> new_index(static_cast<size_t>(n), -1);
    for (int v = 0; v < n; ++v)
        if (!col.one_blue[static_cast<size_t>(v)]) {
            new_index[static_cast<size_t>(v)] = static_cast<int>(col.vertex_embed.size());
            col.vertex_embed.push_back(v);
        }
    int maxh = y.max_height();
    std::vector<int> row_rank(static_cast<size_t>(maxh) + 1, 0);
    for (int r = 1; r <= maxh; ++r) {
        if (!row_deleted[static_cast<size_t>(r)]) {
            col.row_embed.push_back(r);
            row_rank[static_cast<size_t>(r)] = static_cast<int>(col.row_embed.size());
        }
    }
    std::vector<int> sub_parent, sub_height;
    Transversal sub_t;
    for (int sv = 0; sv < static_cast<int>(col.vertex_embed.size()); ++sv) {
        int v = col.vertex_embed[static_cast<size_t>(sv)];
        int p = y.parent(v);
        while (p != ForestYoungDiagram::kRoot && new_index[static_cast<size_t>(p)] < 0)
            p = y.parent(p);
        sub_parent.push_back(p == ForestYoungDiagram::kRoot ? ForestYoungDiagram::kRoot
                                                            : new_index[static_cast<size_t>(p)]);
        int h = 0;
        for (int r = 1; r <= col.white_prefix[static_cast<size_t>(v)]; ++r)
            if (!row_deleted[static_cast<size_t>(r)]) ++h;
        sub_height.push_back(h);
        sub_t.row_of.push_back(row_rank[static_cast<size_t>(t.row_of[static_cast<size_t>(v)])]);
    }
    col.sub = ForestYoungDiagram::make(std::move(sub_parent), std::move(sub_height));
    col.sub_t = std::move(sub_t);
    check(col.sub.size() == 0 || is_valid_transversal(col.sub, col.sub_t),
          "coloring produced an invalid sub-transversal");
    return col;
}

// The block bijection: with M_i = [[0,C],[A_i,0]] and M_i' = [[0,D],[A_i,0]],
// replaces the sub-transversal on the white sub-diagram via the supplied
// base bijection S_Z(C) -> S_Z(D).
inline Transversal blocks_apply(
    const ForestYoungDiagram& y, const Transversal& t, const PermMatrix& c, const PermMatrix& d,
    const std::vector<PermMatrix>& as,
    const std::function<Transversal(const ForestYoungDiagram&, const Transversal&)>& base) {
    std::vector<PermMatrix> ms;
    ms.reserve(as.size());
    for (const auto& a : as) ms.push_back(PermMatrix::block(c, a));
    if (!transversal_avoids_all(y, t, ms))
        throw error(errc::precondition_violated, "input contains a forbidden block matrix");
    Coloring col = coloring(y, t, as);
    check(!transversal_contains(col.sub, col.sub_t, c),
          "sub-transversal contains C despite the block precondition");
    Transversal replaced = base(col.sub, col.sub_t);
    check(col.sub.size() == 0 || is_valid_transversal(col.sub, replaced),
          "base bijection returned an invalid transversal");
    check(!transversal_contains(col.sub, replaced, d), "base bijection image contains D");
    Transversal out = t;
    for (int sv = 0; sv < col.sub.size(); ++sv) {
        int v = col.vertex_embed[static_cast<size_t>(sv)];
        int r = replaced.row_of[static_cast<size_t>(sv)];
        out.row_of[static_cast<size_t>(v)] =
            col.row_embed[static_cast<size_t>(r) - 1];
    }
    return out;
}

// Composite bijection for whole pattern families. Patterns tau_i must end
// (k_i-1)k_i; their matrices decompose as [[0,J2],[A_i,0]] with A_i the
// matrix of the length-(k_i-2) prefix. Forward maps {tau_i}-avoiders to
// {tau~_i}-avoiders.
inline std::vector<PermMatrix> fswe_prefix_matrices(const std::vector<Pattern>& taus) {
    std::vector<PermMatrix> as;
    for (const auto& tau : taus) {
        int k = tau.size();
        if (k < 3 || tau(k - 1) != k - 1 || tau(k) != k)
            throw error(errc::precondition_violated,
                        tau.str() + " does not end with (k-1)k");
        std::vector<int> prefix(tau.entries().begin(), tau.entries().end() - 2);
        as.push_back(PermMatrix::from_pattern(Pattern(std::move(prefix))));
    }
    return as;
}

inline Transversal fswe_forward(const ForestYoungDiagram& y, const Transversal& t,
                                const std::vector<Pattern>& taus) {
    auto as = fswe_prefix_matrices(taus);
    return blocks_apply(y, t, PermMatrix::j2(), PermMatrix::i2(), as,
                        [](const ForestYoungDiagram& z, const Transversal& l) {
                            return i2j2_f(z, l);
                        });
}

inline Transversal fswe_backward(const ForestYoungDiagram& y, const Transversal& t,
                                 const std::vector<Pattern>& taus) {
    auto as = fswe_prefix_matrices(taus);
    return blocks_apply(y, t, PermMatrix::i2(), PermMatrix::j2(), as,
                        [](const ForestYoungDiagram& z, const Transversal& l) {
                            return i2j2_g(z, l);
                        });
}

// --- generators for exhaustive testing -------------------------------------

// Canonical parent vectors of all unlabeled rooted forests on n vertices.
inline std::vector<std::vector<int>> all_forest_shapes(int n);

namespace detail {

inline std::string shape_code_of(const std::vector<int>& parent) {
    int n = static_cast<int>(parent.size());
    std::vector<std::vector<int>> children(static_cast<size_t>(n));
    std::vector<int> roots;
    for (int v = 0; v < n; ++v) {
        if (parent[static_cast<size_t>(v)] < 0)
            roots.push_back(v);
        else
            children[static_cast<size_t>(parent[static_cast<size_t>(v)])].push_back(v);
    }
    std::function<std::string(int)> code = [&](int v) -> std::string {
        std::vector<std::string> parts;
        for (int c : children[static_cast<size_t>(v)]) parts.push_back(code(c));
        std::sort(parts.begin(), parts.end());
        std::string s = "(";
        for (const auto& p : parts) s += p;
        return s + ")";
    };
    std::vector<std::string> parts;
    for (int r : roots) parts.push_back(code(r));
    std::sort(parts.begin(), parts.end());
    std::string s;
    for (const auto& p : parts) s += p;
    return s;
}

} // namespace detail

inline std::vector<std::vector<int>> all_forest_shapes(int n) {
    // enumerate parent vectors with parent index < child index (every forest
    // has such a numbering), dedupe by canonical code
    std::vector<std::vector<int>> shapes;
    std::set<std::string> seen;
    std::vector<int> parent(static_cast<size_t>(n), -1);
    std::function<void(int)> rec = [&](int v) {
        if (v == n) {
            std::string code = detail::shape_code_of(parent);
            if (seen.insert(code).second) shapes.push_back(parent);
            return;
        }
        for (int p = -1; p < v; ++p) {
            parent[static_cast<size_t>(v)] = p;
            rec(v + 1);
        }
        parent[static_cast<size_t>(v)] = -1;
    };
    if (n == 0)
        shapes.push_back({});
    else
        rec(0);
    return shapes;
}

// All leaf-heavy height assignments over a fixed shape, entries <= max_h.
inline std::vector<ForestYoungDiagram> all_diagrams_over_shape(const std::vector<int>& parent,
                                                               int max_h) {
    int n = static_cast<int>(parent.size());
    std::vector<ForestYoungDiagram> out;
    std::vector<int> height(static_cast<size_t>(n), 1);
    // vertices are numbered parent-before-child by construction
    std::function<void(int)> rec = [&](int v) {
        if (v == n) {
            out.push_back(ForestYoungDiagram::make(parent, height));
            return;
        }
        int lo = parent[static_cast<size_t>(v)] < 0
                     ? 1
                     : height[static_cast<size_t>(parent[static_cast<size_t>(v)])];
        for (int h = lo; h <= max_h; ++h) {
            height[static_cast<size_t>(v)] = h;
            rec(v + 1);
        }
    };
    rec(0);
    return out;
}

inline std::vector<ForestYoungDiagram> all_diagrams(int n, int max_h) {
    std::vector<ForestYoungDiagram> out;
    for (const auto& shape : all_forest_shapes(n))
        for (auto& y : all_diagrams_over_shape(shape, max_h)) out.push_back(std::move(y));
    return out;
}

} // namespace forestpat
