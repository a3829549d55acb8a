#pragma once

// Flow-criticality of bordered graphs.
//
// (G, beta) is critical when it is connected, has no nowhere-zero flow, and
// every proper contraction over a G-connected partition has one. Since any
// proper contraction is a further contraction of some G/e and flows survive
// contraction, it suffices to look at single edges (fast mode); brute mode
// walks every G-connected partition and is kept as the oracle.

#include <algorithm>
#include <functional>
#include <optional>
#include <set>
#include <stdexcept>
#include <vector>

#include "canonical.hpp"
#include "flow.hpp"

namespace nzflow {

enum class CriticalityMode { fast, brute };

struct CriticalityVerdict {
    bool is_critical = false;
    std::optional<Flow> flow_witness;            // the graph itself has a nowhere-zero flow
    std::optional<Partition> partition_witness;  // a proper contraction that still has none

    enum class WitnessKind { none, flow, partition };
    WitnessKind witness_kind() const {
        if (flow_witness) return WitnessKind::flow;
        if (partition_witness) return WitnessKind::partition;
        return WitnessKind::none;
    }
};

/// Calls fn(labels) for each set partition of {0..n-1} as a restricted growth
/// string; fn returns false to stop.
inline void for_each_set_partition(int n, const std::function<bool(const std::vector<int>&)>& fn) {
    if (n == 0) {
        fn({});
        return;
    }
    std::vector<int> a(n, 0), maxp(n, 0);
    while (true) {
        if (!fn(a)) return;
        int i = n - 1;
        while (i > 0 && a[i] == maxp[i - 1] + 1) --i;
        if (i == 0) return;
        ++a[i];
        maxp[i] = std::max(maxp[i - 1], a[i]);
        for (int j = i + 1; j < n; ++j) {
            a[j] = 0;
            maxp[j] = maxp[i];
        }
    }
}

namespace detail {

inline bool quotient_has_flow(const Multigraph& g, const Group& A, const std::vector<int>& beta, const Partition& p) {
    auto c = contract(g, p);
    std::vector<int> codes(p.size(), 0);
    for (Vertex v = 0; v < g.n(); ++v) codes[c.vertex_map[v]] = A.add_code(codes[c.vertex_map[v]], beta[v]);
    return has_nz_flow_codes(c.graph, A, codes);
}

inline std::vector<std::pair<Vertex, Vertex>> distinct_adjacent_pairs(const Multigraph& g) {
    std::set<std::pair<Vertex, Vertex>> seen;
    std::vector<std::pair<Vertex, Vertex>> out;
    for (const auto& e : g.edges())
        if (seen.insert({e.u, e.v}).second) out.emplace_back(e.u, e.v);
    return out;
}

}  // namespace detail

/// Codes-level criticality; returns the failing partition through `witness` if any.
inline bool is_flow_critical_codes(const Multigraph& g, const Group& A, const std::vector<int>& beta, CriticalityMode mode,
                                   std::optional<Partition>* witness = nullptr) {
    if (has_nz_flow_codes(g, A, beta)) return false;
    if (mode == CriticalityMode::fast) {
        for (auto [u, v] : detail::distinct_adjacent_pairs(g)) {
            Partition p = Partition::from_set(g.n(), {u, v});
            if (!detail::quotient_has_flow(g, A, beta, p)) {
                if (witness) *witness = p;
                return false;
            }
        }
        return true;
    }
    bool critical = true;
    for_each_set_partition(g.n(), [&](const std::vector<int>& labels) {
        Partition p = Partition::from_labels(labels);
        if (p.is_trivial() || !p.g_connected(g)) return true;
        if (detail::quotient_has_flow(g, A, beta, p)) return true;
        critical = false;
        if (witness) *witness = p;
        return false;
    });
    return critical;
}

inline CriticalityVerdict is_flow_critical(const BorderedGraph& bg, CriticalityMode mode = CriticalityMode::fast) {
    if (!is_connected(bg.graph)) throw std::invalid_argument("criticality is defined for connected graphs");
    detail::require_valid(bg);
    CriticalityVerdict v;
    auto flow = has_nz_flow(bg);
    if (flow.exists) {
        v.flow_witness = std::move(flow.witness);
        return v;
    }
    std::optional<Partition> witness;
    v.is_critical = is_flow_critical_codes(bg.graph, bg.group, bg.beta_codes(), mode, &witness);
    v.partition_witness = std::move(witness);
    return v;
}

/// Greedy: merge the parts across the lowest-id edge whose contraction still
/// has no nowhere-zero flow, until no such edge remains.
inline Partition find_flow_critical_contraction(const BorderedGraph& bg) {
    if (!is_connected(bg.graph)) throw std::invalid_argument("graph must be connected");
    detail::require_valid(bg);
    if (has_nz_flow(bg).exists) throw std::invalid_argument("graph has a nowhere-zero flow; no critical contraction exists");
    auto beta = bg.beta_codes();
    std::vector<Edge> by_id = bg.graph.edges();
    std::sort(by_id.begin(), by_id.end(), [](const Edge& a, const Edge& b) { return a.id < b.id; });
    std::vector<int> labels(bg.graph.n());
    for (int v = 0; v < bg.graph.n(); ++v) labels[v] = v;
    bool progress = true;
    while (progress) {
        progress = false;
        for (const auto& e : by_id) {
            int a = labels[e.u], b = labels[e.v];
            if (a == b) continue;
            std::vector<int> merged = labels;
            for (int& l : merged)
                if (l == b) l = a;
            if (!detail::quotient_has_flow(bg.graph, bg.group, beta, Partition::from_labels(merged))) {
                labels = std::move(merged);
                progress = true;
                break;
            }
        }
    }
    return Partition::from_labels(labels);
}

namespace detail {

inline std::vector<int> apply_automorphism(const std::vector<int>& gamma, const std::vector<int>& codes) {
    std::vector<int> out(codes.size());
    for (std::size_t v = 0; v < codes.size(); ++v) out[gamma[v]] = codes[v];
    return out;
}

/// Smallest element of the orbit of `codes` under automorphisms and negation.
inline std::vector<int> orbit_minimum(const Group& A, const std::vector<std::vector<int>>& gens, const std::vector<int>& codes) {
    std::set<std::vector<int>> orbit{codes};
    std::vector<std::vector<int>> frontier{codes};
    while (!frontier.empty()) {
        std::vector<std::vector<int>> next;
        for (const auto& b : frontier) {
            std::vector<std::vector<int>> images;
            for (const auto& g : gens) images.push_back(apply_automorphism(g, b));
            std::vector<int> negated(b.size());
            for (std::size_t i = 0; i < b.size(); ++i) negated[i] = A.neg_code(b[i]);
            images.push_back(std::move(negated));
            for (auto& img : images)
                if (orbit.insert(img).second) next.push_back(std::move(img));
        }
        frontier = std::move(next);
    }
    return *orbit.begin();
}

}  // namespace detail

/// Boundaries making (g, beta) flow-critical. With up_to_symmetry, one
/// representative (the orbit minimum) per class under Aut(g) x {+-1}.
inline std::vector<std::vector<GroupElement>> critical_boundaries(const Multigraph& g, const Group& A, bool up_to_symmetry) {
    if (!is_connected(g)) throw std::invalid_argument("critical_boundaries requires a connected graph");
    std::vector<std::vector<int>> gens;
    if (up_to_symmetry) gens = canonical_form_full(g).automorphisms;
    std::vector<std::vector<int>> found;
    for_each_boundary(g, A, [&](const std::vector<int>& codes) {
        if (up_to_symmetry && detail::orbit_minimum(A, gens, codes) != codes) return true;
        if (is_flow_critical_codes(g, A, codes, CriticalityMode::fast)) found.push_back(codes);
        return true;
    });
    std::sort(found.begin(), found.end());
    std::vector<std::vector<GroupElement>> out;
    for (const auto& codes : found) {
        std::vector<GroupElement> b;
        for (int c : codes) b.push_back(A.decode(c));
        out.push_back(std::move(b));
    }
    return out;
}

}  // namespace nzflow
