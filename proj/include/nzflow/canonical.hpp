#pragma once

// Canonical labeling of multigraphs by equitable refinement plus
// individualization, keeping the lexicographically largest adjacency
// encoding. Edge multiplicities act as edge colors. Automorphisms found
// along the way prune children lying in one orbit of the pointwise
// stabilizer of the current prefix; they are returned as generators.

#include <algorithm>
#include <numeric>
#include <string>
#include <vector>

#include "graph6.hpp"
#include "multigraph.hpp"

namespace nzflow {

struct CanonicalForm {
    std::string key;                             // sparse6 of the canonically relabeled graph
    std::vector<int> labeling;                   // vertex -> canonical position
    std::vector<std::vector<int>> automorphisms; // generators (vertex permutations)
};

namespace detail {

class Canonizer {
public:
    Canonizer(const Multigraph& g, const std::vector<int>* colors) : n_(g.n()), mult_(n_ * n_, 0) {
        for (const auto& e : g.edges()) {
            ++mult_[e.u * n_ + e.v];
            ++mult_[e.v * n_ + e.u];
        }
        Cells start;
        if (colors) {
            std::vector<int> order(n_);
            std::iota(order.begin(), order.end(), 0);
            std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return (*colors)[a] < (*colors)[b]; });
            for (int i = 0; i < n_;) {
                int j = i;
                std::vector<int> cell;
                while (j < n_ && (*colors)[order[j]] == (*colors)[order[i]]) cell.push_back(order[j++]);
                start.push_back(std::move(cell));
                i = j;
            }
        } else if (n_ > 0) {
            std::vector<int> all(n_);
            std::iota(all.begin(), all.end(), 0);
            start.push_back(std::move(all));
        }
        root_ = refine(std::move(start));
    }

    CanonicalForm run() {
        std::vector<int> prefix;
        search(root_, prefix);
        CanonicalForm cf;
        cf.labeling = best_perm_;
        cf.automorphisms = autos_;
        return cf;
    }

private:
    using Cells = std::vector<std::vector<int>>;

    int m(int a, int b) const { return mult_[a * n_ + b]; }

    Cells refine(Cells cells) const {
        bool changed = true;
        std::vector<long> sig(n_);
        while (changed) {
            changed = false;
            for (std::size_t s = 0; s < cells.size() && !changed; ++s) {
                const std::vector<int> splitter = cells[s];
                for (int v = 0; v < n_; ++v) {
                    long c = 0;
                    for (int w : splitter) c += m(v, w);
                    sig[v] = c;
                }
                Cells next;
                next.reserve(cells.size());
                for (auto& cell : cells) {
                    if (cell.size() == 1) {
                        next.push_back(std::move(cell));
                        continue;
                    }
                    std::stable_sort(cell.begin(), cell.end(), [&](int a, int b) { return sig[a] < sig[b]; });
                    std::size_t i = 0;
                    while (i < cell.size()) {
                        std::size_t j = i;
                        std::vector<int> part;
                        while (j < cell.size() && sig[cell[j]] == sig[cell[i]]) part.push_back(cell[j++]);
                        if (i != 0 || j != cell.size()) changed = true;
                        std::sort(part.begin(), part.end());
                        next.push_back(std::move(part));
                        i = j;
                    }
                }
                cells = std::move(next);
            }
        }
        return cells;
    }

    std::vector<int> encode(const std::vector<int>& inv) const {
        std::vector<int> code;
        code.reserve(n_ * (n_ - 1) / 2);
        for (int j = 1; j < n_; ++j)
            for (int i = 0; i < j; ++i) code.push_back(m(inv[i], inv[j]));
        return code;
    }

    void record_automorphism(const std::vector<int>& perm_a, const std::vector<int>& inv_b) {
        std::vector<int> gamma(n_);
        bool identity = true;
        for (int v = 0; v < n_; ++v) {
            gamma[v] = inv_b[perm_a[v]];
            if (gamma[v] != v) identity = false;
        }
        if (identity || autos_.size() >= 256) return;
        if (std::find(autos_.begin(), autos_.end(), gamma) == autos_.end()) autos_.push_back(std::move(gamma));
    }

    void leaf(const Cells& cells) {
        std::vector<int> perm(n_), inv(n_);
        for (int i = 0; i < n_; ++i) {
            inv[i] = cells[i][0];
            perm[cells[i][0]] = i;
        }
        auto code = encode(inv);
        if (!have_first_) {
            have_first_ = true;
            first_code_ = code;
            first_perm_ = perm;
            first_inv_ = inv;
            best_code_ = code;
            best_perm_ = perm;
            best_inv_ = inv;
            return;
        }
        if (code == first_code_) record_automorphism(perm, first_inv_);
        if (code == best_code_) {
            record_automorphism(perm, best_inv_);
        } else if (code > best_code_) {
            best_code_ = std::move(code);
            best_perm_ = perm;
            best_inv_ = inv;
        }
    }

    std::vector<int> stabilizer_orbits(const std::vector<int>& prefix) const {
        std::vector<int> parent(n_);
        std::iota(parent.begin(), parent.end(), 0);
        auto find = [&](int x) {
            while (parent[x] != x) x = parent[x] = parent[parent[x]];
            return x;
        };
        for (const auto& gamma : autos_) {
            bool fixes = true;
            for (int p : prefix)
                if (gamma[p] != p) {
                    fixes = false;
                    break;
                }
            if (!fixes) continue;
            for (int v = 0; v < n_; ++v) {
                int a = find(v), b = find(gamma[v]);
                if (a != b) parent[std::max(a, b)] = std::min(a, b);
            }
        }
        for (int v = 0; v < n_; ++v) parent[v] = find(v);
        return parent;
    }

    void search(const Cells& cells, std::vector<int>& prefix) {
        int target = -1;
        for (std::size_t i = 0; i < cells.size(); ++i)
            if (cells[i].size() > 1) {
                target = static_cast<int>(i);
                break;
            }
        if (target < 0) {
            leaf(cells);
            return;
        }
        std::vector<int> explored_roots;
        for (int v : cells[target]) {
            if (!explored_roots.empty()) {
                auto orbit = stabilizer_orbits(prefix);
                bool pruned = false;
                for (int r : explored_roots)
                    if (orbit[r] == orbit[v]) {
                        pruned = true;
                        break;
                    }
                if (pruned) continue;
            }
            explored_roots.push_back(v);
            Cells child;
            child.reserve(cells.size() + 1);
            for (std::size_t i = 0; i < cells.size(); ++i) {
                if (static_cast<int>(i) != target) {
                    child.push_back(cells[i]);
                    continue;
                }
                child.push_back({v});
                std::vector<int> rest;
                for (int w : cells[i])
                    if (w != v) rest.push_back(w);
                child.push_back(std::move(rest));
            }
            prefix.push_back(v);
            search(refine(std::move(child)), prefix);
            prefix.pop_back();
        }
    }

    int n_;
    std::vector<int> mult_;
    Cells root_;
    bool have_first_ = false;
    std::vector<int> first_code_, first_perm_, first_inv_;
    std::vector<int> best_code_, best_perm_, best_inv_;
    std::vector<std::vector<int>> autos_;
};

}  // namespace detail

/// Vertex colors (optional) must be isomorphism-invariant labels; equal
/// keys then mean color-preserving isomorphism.
inline CanonicalForm canonical_form_full(const Multigraph& g, const std::vector<int>* colors = nullptr) {
    if (g.n() == 0) return CanonicalForm{encode_sparse6(g), {}, {}};
    detail::Canonizer c(g, colors);
    CanonicalForm cf = c.run();
    Multigraph relabeled(g.n());
    std::vector<std::pair<int, int>> es;
    for (const auto& e : g.edges()) {
        int a = cf.labeling[e.u], b = cf.labeling[e.v];
        es.emplace_back(std::min(a, b), std::max(a, b));
    }
    std::sort(es.begin(), es.end());
    for (auto [a, b] : es) relabeled.add_edge(a, b);
    cf.key = encode_sparse6(relabeled);
    if (colors) {
        std::vector<int> by_pos(g.n());
        for (int v = 0; v < g.n(); ++v) by_pos[cf.labeling[v]] = (*colors)[v];
        cf.key += "|";
        for (int c : by_pos) cf.key += std::to_string(c) + ",";
    }
    return cf;
}

inline std::string canonical_form(const Multigraph& g) { return canonical_form_full(g).key; }

/// The graph relabeled into canonical order, fresh edge ids in sorted order.
inline Multigraph canonical_graph(const Multigraph& g) { return parse_sparse6(canonical_form(g)); }

inline bool is_isomorphic(const Multigraph& a, const Multigraph& b) {
    if (a.n() != b.n() || a.m() != b.m()) return false;
    auto da = a.degrees(), db = b.degrees();
    std::sort(da.begin(), da.end());
    std::sort(db.begin(), db.end());
    if (da != db) return false;
    return canonical_form(a) == canonical_form(b);
}

}  // namespace nzflow
