#pragma once

// Loopless undirected multigraphs with stable edge ids.
//
// Vertices are 0..n-1. Every edge is stored as (low, high, id) with low < high;
// ids are never reused within a lineage: surgery operations copy the id
// counter forward, so a flow on a minor can be transported by id.

#include <algorithm>
#include <cstdint>
#include <limits>
#include <map>
#include <numeric>
#include <optional>
#include <queue>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace nzflow {

using Vertex = int;
using EdgeId = int;

struct Edge {
    Vertex u;  // low endpoint
    Vertex v;  // high endpoint
    EdgeId id;

    Vertex other(Vertex x) const { return x == u ? v : u; }
    friend bool operator==(const Edge&, const Edge&) = default;
};

class Multigraph {
public:
    Multigraph() = default;
    explicit Multigraph(int n) : n_(n) {
        if (n < 0) throw std::invalid_argument("negative vertex count");
    }

    int n() const { return n_; }
    int m() const { return static_cast<int>(edges_.size()); }
    const std::vector<Edge>& edges() const { return edges_; }
    EdgeId next_edge_id() const { return next_id_; }

    EdgeId add_edge(Vertex a, Vertex b) {
        check_vertex(a);
        check_vertex(b);
        if (a == b) throw std::invalid_argument("loop at vertex " + std::to_string(a) + " rejected");
        EdgeId id = next_id_++;
        edges_.push_back({std::min(a, b), std::max(a, b), id});
        return id;
    }

    /// Adds with a caller-chosen id (used by surgery to keep ids stable).
    void add_edge_with_id(Vertex a, Vertex b, EdgeId id) {
        check_vertex(a);
        check_vertex(b);
        if (a == b) throw std::invalid_argument("loop rejected");
        edges_.push_back({std::min(a, b), std::max(a, b), id});
        next_id_ = std::max(next_id_, id + 1);
    }

    void reserve_ids_from(EdgeId next) { next_id_ = std::max(next_id_, next); }

    std::optional<std::size_t> index_of(EdgeId id) const {
        for (std::size_t i = 0; i < edges_.size(); ++i)
            if (edges_[i].id == id) return i;
        return std::nullopt;
    }

    const Edge& edge(EdgeId id) const {
        auto i = index_of(id);
        if (!i) throw std::invalid_argument("no edge with id " + std::to_string(id));
        return edges_[*i];
    }

    bool has_edge_id(EdgeId id) const { return index_of(id).has_value(); }

    std::vector<int> degrees() const {
        std::vector<int> d(n_, 0);
        for (const auto& e : edges_) {
            ++d[e.u];
            ++d[e.v];
        }
        return d;
    }

    /// Incident edge indices (into edges()) per vertex, in edge order.
    std::vector<std::vector<int>> incidence() const {
        std::vector<std::vector<int>> inc(n_);
        for (int i = 0; i < m(); ++i) {
            inc[edges_[i].u].push_back(i);
            inc[edges_[i].v].push_back(i);
        }
        return inc;
    }

    std::vector<std::vector<Vertex>> neighbors() const {
        std::vector<std::vector<Vertex>> adj(n_);
        for (const auto& e : edges_) {
            adj[e.u].push_back(e.v);
            adj[e.v].push_back(e.u);
        }
        return adj;
    }

    int multiplicity(Vertex a, Vertex b) const {
        if (a > b) std::swap(a, b);
        int c = 0;
        for (const auto& e : edges_)
            if (e.u == a && e.v == b) ++c;
        return c;
    }

    bool is_simple() const {
        std::set<std::pair<int, int>> seen;
        for (const auto& e : edges_)
            if (!seen.insert({e.u, e.v}).second) return false;
        return true;
    }

    std::vector<std::pair<Vertex, Vertex>> edge_pairs() const {
        std::vector<std::pair<Vertex, Vertex>> out;
        out.reserve(edges_.size());
        for (const auto& e : edges_) out.emplace_back(e.u, e.v);
        return out;
    }

    friend bool operator==(const Multigraph& a, const Multigraph& b) {
        return a.n_ == b.n_ && a.edges_ == b.edges_;
    }

private:
    void check_vertex(Vertex x) const {
        if (x < 0 || x >= n_)
            throw std::invalid_argument("vertex " + std::to_string(x) + " out of range [0," + std::to_string(n_) + ")");
    }

    int n_ = 0;
    std::vector<Edge> edges_;
    EdgeId next_id_ = 0;
};

inline Multigraph from_edge_list(int n, const std::vector<std::pair<Vertex, Vertex>>& pairs) {
    Multigraph g(n);
    for (auto [a, b] : pairs) g.add_edge(a, b);
    return g;
}

// ---------------------------------------------------------------------------
// Connectivity

inline std::vector<int> component_labels(const Multigraph& g, int* count = nullptr) {
    std::vector<int> comp(g.n(), -1);
    auto adj = g.neighbors();
    int c = 0;
    for (Vertex s = 0; s < g.n(); ++s) {
        if (comp[s] != -1) continue;
        std::vector<Vertex> stack{s};
        comp[s] = c;
        while (!stack.empty()) {
            Vertex x = stack.back();
            stack.pop_back();
            for (Vertex y : adj[x])
                if (comp[y] == -1) {
                    comp[y] = c;
                    stack.push_back(y);
                }
        }
        ++c;
    }
    if (count) *count = c;
    return comp;
}

inline int component_count(const Multigraph& g) {
    int c = 0;
    component_labels(g, &c);
    return c;
}

inline bool is_connected(const Multigraph& g) { return g.n() <= 1 || component_count(g) == 1; }

/// Connectivity of the subgraph induced by `set` (empty set counts as disconnected).
inline bool induces_connected(const Multigraph& g, const std::vector<Vertex>& set) {
    if (set.empty()) return false;
    std::vector<char> in(g.n(), 0);
    for (Vertex v : set) in[v] = 1;
    auto adj = g.neighbors();
    std::vector<char> seen(g.n(), 0);
    std::vector<Vertex> stack{set.front()};
    seen[set.front()] = 1;
    std::size_t reached = 1;
    while (!stack.empty()) {
        Vertex x = stack.back();
        stack.pop_back();
        for (Vertex y : adj[x])
            if (in[y] && !seen[y]) {
                seen[y] = 1;
                ++reached;
                stack.push_back(y);
            }
    }
    return reached == set.size();
}

/// Biconnected components as lists of edge indices, plus articulation flags.
struct BlockDecomposition {
    std::vector<std::vector<int>> blocks;  // edge indices
    std::vector<char> is_cut_vertex;
};

inline BlockDecomposition blocks_of(const Multigraph& g) {
    BlockDecomposition out;
    out.is_cut_vertex.assign(g.n(), 0);
    auto inc = g.incidence();
    std::vector<int> disc(g.n(), -1), low(g.n(), 0);
    std::vector<int> edge_stack;
    int timer = 0;
    struct Frame {
        Vertex v;
        int parent_edge;
        std::size_t next;
        int children;
    };
    for (Vertex root = 0; root < g.n(); ++root) {
        if (disc[root] != -1) continue;
        std::vector<Frame> st{{root, -1, 0, 0}};
        disc[root] = low[root] = timer++;
        while (!st.empty()) {
            Frame& f = st.back();
            if (f.next < inc[f.v].size()) {
                int ei = inc[f.v][f.next++];
                if (ei == f.parent_edge) continue;
                Vertex w = g.edges()[ei].other(f.v);
                if (disc[w] == -1) {
                    edge_stack.push_back(ei);
                    disc[w] = low[w] = timer++;
                    ++f.children;
                    st.push_back({w, ei, 0, 0});
                } else if (disc[w] < disc[f.v]) {
                    edge_stack.push_back(ei);
                    low[f.v] = std::min(low[f.v], disc[w]);
                }
            } else {
                Frame done = f;
                st.pop_back();
                if (st.empty()) {
                    if (done.children >= 2) out.is_cut_vertex[done.v] = 1;
                    break;
                }
                Frame& parent = st.back();
                low[parent.v] = std::min(low[parent.v], low[done.v]);
                if (low[done.v] >= disc[parent.v]) {
                    if (st.size() > 1) out.is_cut_vertex[parent.v] = 1;
                    std::vector<int> block;
                    while (true) {
                        int ei = edge_stack.back();
                        edge_stack.pop_back();
                        block.push_back(ei);
                        if (ei == done.parent_edge) break;
                    }
                    std::sort(block.begin(), block.end());
                    out.blocks.push_back(std::move(block));
                }
            }
        }
    }
    return out;
}

/// 2-connected in the sense used for critical graphs: connected, >= 3 vertices,
/// no cut vertex. K2 (possibly with parallel edges) is reported separately.
inline bool is_two_connected(const Multigraph& g) {
    if (g.n() < 3 || !is_connected(g)) return false;
    auto bd = blocks_of(g);
    return bd.blocks.size() == 1;
}

inline bool is_k2(const Multigraph& g) { return g.n() == 2 && g.m() == 1; }

inline bool has_bridge(const Multigraph& g) {
    auto bd = blocks_of(g);
    for (const auto& b : bd.blocks)
        if (b.size() == 1) return true;
    return false;
}

// ---------------------------------------------------------------------------
// Partitions and contraction

class Partition {
public:
    Partition() = default;

    /// Normalizes: each part sorted, parts ordered by smallest member.
    Partition(int n, std::vector<std::vector<Vertex>> parts) : n_(n), parts_(std::move(parts)) {
        part_of_.assign(n, -1);
        for (auto& p : parts_) {
            if (p.empty()) throw std::invalid_argument("partition has an empty part");
            std::sort(p.begin(), p.end());
        }
        std::sort(parts_.begin(), parts_.end());
        for (int i = 0; i < static_cast<int>(parts_.size()); ++i)
            for (Vertex v : parts_[i]) {
                if (v < 0 || v >= n) throw std::invalid_argument("partition vertex out of range");
                if (part_of_[v] != -1) throw std::invalid_argument("partition parts overlap");
                part_of_[v] = i;
            }
        for (int v = 0; v < n; ++v)
            if (part_of_[v] == -1) throw std::invalid_argument("partition does not cover vertex " + std::to_string(v));
    }

    static Partition trivial(int n) {
        std::vector<std::vector<Vertex>> parts(n);
        for (int v = 0; v < n; ++v) parts[v] = {v};
        return Partition(n, std::move(parts));
    }

    /// Part B plus singletons.
    static Partition from_set(int n, const std::vector<Vertex>& set) {
        std::vector<char> in(n, 0);
        for (Vertex v : set) in.at(v) = 1;
        std::vector<std::vector<Vertex>> parts;
        if (!set.empty()) parts.push_back(set);
        for (int v = 0; v < n; ++v)
            if (!in[v]) parts.push_back({v});
        return Partition(n, std::move(parts));
    }

    /// From a label per vertex.
    static Partition from_labels(const std::vector<int>& label) {
        std::map<int, std::vector<Vertex>> groups;
        for (int v = 0; v < static_cast<int>(label.size()); ++v) groups[label[v]].push_back(v);
        std::vector<std::vector<Vertex>> parts;
        for (auto& [k, p] : groups) parts.push_back(std::move(p));
        return Partition(static_cast<int>(label.size()), std::move(parts));
    }

    int n() const { return n_; }
    int size() const { return static_cast<int>(parts_.size()); }
    const std::vector<std::vector<Vertex>>& parts() const { return parts_; }
    int part_of(Vertex v) const { return part_of_.at(v); }
    const std::vector<int>& labels() const { return part_of_; }
    bool is_trivial() const { return size() == n_; }

    bool g_connected(const Multigraph& g) const {
        for (const auto& p : parts_)
            if (p.size() > 1 && !induces_connected(g, p)) return false;
        return true;
    }

    friend bool operator==(const Partition& a, const Partition& b) {
        return a.n_ == b.n_ && a.parts_ == b.parts_;
    }

private:
    int n_ = 0;
    std::vector<std::vector<Vertex>> parts_;
    std::vector<int> part_of_;
};

struct Contraction {
    Multigraph graph;
    std::vector<int> vertex_map;  // original vertex -> contracted vertex (= part index)
};

/// Identifies each part; intra-part edges are dropped, the rest keep their ids.
inline Contraction contract(const Multigraph& g, const Partition& p) {
    if (p.n() != g.n()) throw std::invalid_argument("partition size does not match graph");
    Contraction c{Multigraph(p.size()), p.labels()};
    for (const auto& e : g.edges()) {
        int a = p.part_of(e.u), b = p.part_of(e.v);
        if (a != b) c.graph.add_edge_with_id(a, b, e.id);
    }
    c.graph.reserve_ids_from(g.next_edge_id());
    return c;
}

inline Contraction contract_set(const Multigraph& g, const std::vector<Vertex>& set) {
    return contract(g, Partition::from_set(g.n(), set));
}

inline Multigraph delete_edge(const Multigraph& g, EdgeId id) {
    if (!g.has_edge_id(id)) throw std::invalid_argument("no edge with id " + std::to_string(id));
    Multigraph h(g.n());
    for (const auto& e : g.edges())
        if (e.id != id) h.add_edge_with_id(e.u, e.v, e.id);
    h.reserve_ids_from(g.next_edge_id());
    return h;
}

struct InducedSubgraph {
    Multigraph graph;
    std::vector<Vertex> to_parent;    // sub vertex -> parent vertex
    std::vector<int> from_parent;     // parent vertex -> sub vertex or -1
};

/// G[B] with edge ids kept; vertices renumbered in increasing parent order.
inline InducedSubgraph induced_subgraph(const Multigraph& g, std::vector<Vertex> set) {
    std::sort(set.begin(), set.end());
    set.erase(std::unique(set.begin(), set.end()), set.end());
    InducedSubgraph s{Multigraph(static_cast<int>(set.size())), set, std::vector<int>(g.n(), -1)};
    for (int i = 0; i < static_cast<int>(set.size()); ++i) s.from_parent.at(set[i]) = i;
    for (const auto& e : g.edges()) {
        int a = s.from_parent[e.u], b = s.from_parent[e.v];
        if (a >= 0 && b >= 0) s.graph.add_edge_with_id(a, b, e.id);
    }
    s.graph.reserve_ids_from(g.next_edge_id());
    return s;
}

struct SplitResult {
    Multigraph graph;
    EdgeId new_edge;
    Vertex shared;
};

/// Replaces e1 = u1 v, e2 = u2 v by a fresh edge u1 u2.
inline SplitResult split_off(const Multigraph& g, EdgeId e1, EdgeId e2) {
    if (e1 == e2) throw std::invalid_argument("split_off needs two distinct edges");
    const Edge a = g.edge(e1);
    const Edge b = g.edge(e2);
    std::vector<Vertex> shared;
    for (Vertex x : {a.u, a.v})
        if (x == b.u || x == b.v) shared.push_back(x);
    if (shared.size() != 1) {
        if (shared.empty()) throw std::invalid_argument("split_off: edges are not adjacent");
        throw std::invalid_argument("split_off: edges are parallel, splitting would create a loop");
    }
    Vertex v = shared[0];
    Vertex u1 = a.other(v), u2 = b.other(v);
    if (u1 == u2) throw std::invalid_argument("split_off: resulting edge would be a loop");
    Multigraph h(g.n());
    for (const auto& e : g.edges())
        if (e.id != e1 && e.id != e2) h.add_edge_with_id(e.u, e.v, e.id);
    h.reserve_ids_from(g.next_edge_id());
    EdgeId fresh = h.add_edge(u1, u2);
    return {std::move(h), fresh, v};
}

/// Keeps one edge per adjacent pair (the first in edge order).
inline Multigraph underlying_simple(const Multigraph& g) {
    Multigraph h(g.n());
    std::set<std::pair<int, int>> seen;
    for (const auto& e : g.edges())
        if (seen.insert({e.u, e.v}).second) h.add_edge_with_id(e.u, e.v, e.id);
    h.reserve_ids_from(g.next_edge_id());
    return h;
}

/// Fresh ids 0..m-1 in current edge order.
inline Multigraph relabel_ids(const Multigraph& g) {
    Multigraph h(g.n());
    for (const auto& e : g.edges()) h.add_edge(e.u, e.v);
    return h;
}

/// Vertex relabeling: vertex v becomes perm[v]. Edge ids kept.
inline Multigraph permute_vertices(const Multigraph& g, const std::vector<int>& perm) {
    Multigraph h(g.n());
    for (const auto& e : g.edges()) h.add_edge_with_id(perm.at(e.u), perm.at(e.v), e.id);
    h.reserve_ids_from(g.next_edge_id());
    return h;
}

// ---------------------------------------------------------------------------
// Edge connectivity

struct EdgeCut {
    std::vector<Vertex> side_x;
    std::vector<Vertex> side_y;
    std::vector<EdgeId> cut_edges;
};

struct EdgeConnectivity {
    static constexpr int infinite = std::numeric_limits<int>::max();
    int value = 0;
    EdgeCut witness;
};

inline EdgeCut cut_of(const Multigraph& g, const std::vector<char>& in_x) {
    EdgeCut c;
    for (Vertex v = 0; v < g.n(); ++v) (in_x[v] ? c.side_x : c.side_y).push_back(v);
    for (const auto& e : g.edges())
        if (in_x[e.u] != in_x[e.v]) c.cut_edges.push_back(e.id);
    return c;
}

namespace detail {

// Unit-capacity max flow between s and t on the symmetric digraph; returns the
// flow value and the source side of a minimum cut.
inline int min_st_cut(const Multigraph& g, Vertex s, Vertex t, std::vector<char>& source_side) {
    int n = g.n();
    std::vector<std::vector<int>> cap(n, std::vector<int>(n, 0));
    for (const auto& e : g.edges()) {
        ++cap[e.u][e.v];
        ++cap[e.v][e.u];
    }
    int flow = 0;
    while (true) {
        std::vector<int> prev(n, -1);
        prev[s] = s;
        std::queue<int> q;
        q.push(s);
        while (!q.empty() && prev[t] == -1) {
            int x = q.front();
            q.pop();
            for (int y = 0; y < n; ++y)
                if (prev[y] == -1 && cap[x][y] > 0) {
                    prev[y] = x;
                    q.push(y);
                }
        }
        if (prev[t] == -1) {
            source_side.assign(n, 0);
            for (int v = 0; v < n; ++v) source_side[v] = prev[v] != -1;
            return flow;
        }
        for (int y = t; y != s; y = prev[y]) {
            --cap[prev[y]][y];
            ++cap[y][prev[y]];
        }
        ++flow;
    }
}

}  // namespace detail

inline EdgeConnectivity edge_connectivity(const Multigraph& g) {
    EdgeConnectivity r;
    if (g.n() <= 1) {
        r.value = EdgeConnectivity::infinite;
        r.witness.side_x.resize(g.n());
        std::iota(r.witness.side_x.begin(), r.witness.side_x.end(), 0);
        return r;
    }
    int comps = 0;
    auto label = component_labels(g, &comps);
    if (comps > 1) {
        std::vector<char> in_x(g.n());
        for (Vertex v = 0; v < g.n(); ++v) in_x[v] = label[v] == 0;
        r.value = 0;
        r.witness = cut_of(g, in_x);
        return r;
    }
    r.value = EdgeConnectivity::infinite;
    for (Vertex t = 1; t < g.n(); ++t) {
        std::vector<char> side;
        int f = detail::min_st_cut(g, 0, t, side);
        if (f < r.value) {
            r.value = f;
            r.witness = cut_of(g, side);
        }
    }
    return r;
}

// ---------------------------------------------------------------------------
// Small named graphs used across the toolkit and its tests.

inline Multigraph complete_graph(int n) {
    Multigraph g(n);
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b) g.add_edge(a, b);
    return g;
}

inline Multigraph cycle_graph(int n) {
    Multigraph g(n);
    for (int i = 0; i < n; ++i) g.add_edge(i, (i + 1) % n);
    return g;
}

inline Multigraph path_graph(int n) {
    Multigraph g(n);
    for (int i = 0; i + 1 < n; ++i) g.add_edge(i, i + 1);
    return g;
}

inline Multigraph complete_bipartite(int a, int b) {
    Multigraph g(a + b);
    for (int i = 0; i < a; ++i)
        for (int j = 0; j < b; ++j) g.add_edge(i, a + j);
    return g;
}

/// Hub 0, rim 1..k.
inline Multigraph wheel_graph(int k) {
    Multigraph g(k + 1);
    for (int i = 1; i <= k; ++i) g.add_edge(0, i);
    for (int i = 1; i <= k; ++i) g.add_edge(i, i % k + 1);
    return g;
}

inline Multigraph petersen_graph() {
    Multigraph g(10);
    for (int i = 0; i < 5; ++i) {
        g.add_edge(i, (i + 1) % 5);
        g.add_edge(i, i + 5);
        g.add_edge(5 + i, 5 + (i + 2) % 5);
    }
    return g;
}

inline Multigraph disjoint_union(const Multigraph& a, const Multigraph& b) {
    Multigraph g(a.n() + b.n());
    for (const auto& e : a.edges()) g.add_edge(e.u, e.v);
    for (const auto& e : b.edges()) g.add_edge(a.n() + e.u, a.n() + e.v);
    return g;
}

}  // namespace nzflow
