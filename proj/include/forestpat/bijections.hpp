#pragma once

#include "forestpat/avoid.hpp"
#include "forestpat/error.hpp"
#include "forestpat/forest.hpp"
#include "forestpat/pattern.hpp"

#include <algorithm>
#include <vector>

namespace forestpat {

// The pattern family of the structure-preserving bijection: tau fixes its
// last two values at k-1, k; tau~ swaps them; tau-bar drops the last one.
struct TauPair {
    Pattern tau;
    Pattern tau_tilde;
    Pattern tau_bar;

    explicit TauPair(const Pattern& t) : tau(t) {
        int k = t.size();
        if (k < 3 || t(k - 1) != k - 1 || t(k) != k)
            throw error(errc::unsupported_pattern,
                        t.str() + " does not end with (k-1)k for k >= 3");
        std::vector<int> tilde = t.entries();
        std::swap(tilde[static_cast<size_t>(k) - 2], tilde[static_cast<size_t>(k) - 1]);
        tau_tilde = Pattern(std::move(tilde));
        std::vector<int> bar(t.entries().begin(), t.entries().end() - 1);
        tau_bar = Pattern(std::move(bar));
    }
};

namespace detail {

// Fixed structure with a mutable label assignment; alpha/beta permute labels
// while the vertex set and parent map stay put.
struct Relabeling {
    const LabeledForest* base;
    std::vector<int> lab; // lab[idx]

    explicit Relabeling(const LabeledForest& f) : base(&f), lab(f.labels()) {}

    LabeledForest to_forest() const {
        std::map<int, int> pm;
        for (int i = 0; i < base->size(); ++i) {
            int p = base->parent_of(i);
            pm[lab[static_cast<size_t>(i)]] =
                (p == LabeledForest::kRoot) ? 0 : lab[static_cast<size_t>(p)];
        }
        return LabeledForest::from_parent_map(pm);
    }
};

inline bool is_special(const Relabeling& w, int idx, const Pattern& tau_bar,
                       int label_override = -1) {
    std::vector<int> path;
    for (int j = idx; j != LabeledForest::kRoot; j = w.base->parent_of(j))
        path.push_back(w.lab[static_cast<size_t>(j)]);
    std::reverse(path.begin(), path.end());
    if (label_override >= 0) path.back() = label_override;
    return instance_ending_at(path, path.size() - 1, tau_bar);
}

inline std::vector<int> special_set(const Relabeling& w, const Pattern& tau_bar) {
    std::vector<int> out;
    for (int i = 0; i < w.base->size(); ++i)
        if (is_special(w, i, tau_bar)) out.push_back(i);
    return out;
}

// Relabel the subtree at idx: idx takes new_label from the subtree's label
// set; the strict descendants take the remaining labels preserving their
// relative order.
inline void relabel_subtree(Relabeling& w, int idx, int new_label) {
    std::vector<int> sub = w.base->subtree_indices(idx);
    std::vector<int> rest(sub.begin() + 1, sub.end());
    std::vector<int> old_labels;
    old_labels.reserve(rest.size());
    for (int i : rest) old_labels.push_back(w.lab[static_cast<size_t>(i)]);
    std::vector<int> pool;
    pool.reserve(sub.size() - 1);
    for (int i : sub) {
        int l = w.lab[static_cast<size_t>(i)];
        if (l != new_label) pool.push_back(l);
    }
    check(pool.size() == rest.size(), "new label must come from the subtree label set");
    std::sort(pool.begin(), pool.end());
    std::vector<size_t> order(rest.size());
    for (size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(),
              [&](size_t a, size_t b) { return old_labels[a] < old_labels[b]; });
    w.lab[static_cast<size_t>(idx)] = new_label;
    for (size_t r = 0; r < order.size(); ++r)
        w.lab[static_cast<size_t>(rest[order[r]])] = pool[r];
}

inline void shuffle_at(Relabeling& w, int idx, const TauPair& pair) {
    if (!is_special(w, idx, pair.tau_bar))
        throw error(errc::not_special, "shuffle needs a special vertex");
    std::vector<int> sub = w.base->subtree_indices(idx);
    int x = 0;
    for (int i : sub) x = std::max(x, w.lab[static_cast<size_t>(i)]);
    relabel_subtree(w, idx, x);
}

inline void antishuffle_at(Relabeling& w, int idx, const TauPair& pair) {
    if (!is_special(w, idx, pair.tau_bar))
        throw error(errc::not_special, "antishuffle needs a special vertex");
    std::vector<int> sub = w.base->subtree_indices(idx);
    std::vector<int> labels;
    labels.reserve(sub.size());
    for (int i : sub) labels.push_back(w.lab[static_cast<size_t>(i)]);
    std::sort(labels.begin(), labels.end());
    // y: the smallest subtree label keeping idx special; exists because the
    // current label works.
    for (int y : labels) {
        if (is_special(w, idx, pair.tau_bar, y)) {
            relabel_subtree(w, idx, y);
            return;
        }
    }
    check(false, "no label keeps the vertex special");
}

// Roots in increasing label order, then level by level with children in
// increasing label order; the tie-break pins a reproducible traversal.
inline std::vector<int> bfs_order(const LabeledForest& f) {
    std::vector<int> order;
    for (int r = 0; r < f.size(); ++r)
        if (f.is_root(r)) order.push_back(r);
    for (size_t q = 0; q < order.size(); ++q)
        for (int c : f.children_of(order[q])) order.push_back(c);
    return order;
}

} // namespace detail

inline std::vector<int> special_vertices(const LabeledForest& f, const TauPair& pair) {
    detail::Relabeling w(f);
    std::vector<int> labels;
    for (int idx : detail::special_set(w, pair.tau_bar)) labels.push_back(f.label(idx));
    std::sort(labels.begin(), labels.end());
    return labels;
}

inline LabeledForest shuffle(const LabeledForest& f, int v_label, const TauPair& pair) {
    detail::Relabeling w(f);
    detail::shuffle_at(w, f.index_of(v_label), pair);
    return w.to_forest();
}

inline LabeledForest antishuffle(const LabeledForest& f, int v_label, const TauPair& pair) {
    detail::Relabeling w(f);
    detail::antishuffle_at(w, f.index_of(v_label), pair);
    return w.to_forest();
}

namespace detail {

template <bool Reverse>
LabeledForest run_map(const LabeledForest& f, const TauPair& pair) {
    Relabeling w(f);
    std::vector<int> order = bfs_order(f);
    if (Reverse) std::reverse(order.begin(), order.end());
    std::vector<int> specials = special_set(w, pair.tau_bar);
    for (int idx : order) {
        if (!std::binary_search(specials.begin(), specials.end(), idx)) continue;
        if (Reverse)
            shuffle_at(w, idx, pair);
        else
            antishuffle_at(w, idx, pair);
        // the special set is invariant under both operations; keep it checked
        check(special_set(w, pair.tau_bar) == specials,
              "shuffle/antishuffle changed the special set");
    }
    return w.to_forest();
}

} // namespace detail

// Reverse BFS, shuffling every special vertex. The image avoids tau.
inline LabeledForest alpha(const LabeledForest& f, const TauPair& pair) {
    return detail::run_map<true>(f, pair);
}

// Forward BFS, antishuffling every special vertex. The image avoids tau~.
inline LabeledForest beta(const LabeledForest& f, const TauPair& pair) {
    return detail::run_map<false>(f, pair);
}

} // namespace forestpat
