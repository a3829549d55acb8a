#pragma once

// Nowhere-zero flows in bordered graphs (G, beta).
//
// Convention: a Flow stores, for every edge, the value sent from its low
// endpoint to its high endpoint; the opposite direction carries the negation.
// Conservation is  sum over edges at u of (value leaving u) == beta(u),
// i.e. beta(u) is the net outflow of u.

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "canonical.hpp"
#include "group.hpp"
#include "multigraph.hpp"

namespace nzflow {

struct BorderedGraph {
    Multigraph graph;
    Group group;
    std::vector<GroupElement> beta;

    static BorderedGraph zero(Multigraph g, Group grp) {
        std::vector<GroupElement> b(g.n(), grp.zero());
        return {std::move(g), std::move(grp), std::move(b)};
    }

    static BorderedGraph from_codes(Multigraph g, Group grp, const std::vector<int>& codes) {
        if (static_cast<int>(codes.size()) != g.n()) throw std::invalid_argument("boundary length mismatch");
        std::vector<GroupElement> b;
        b.reserve(codes.size());
        for (int c : codes) b.push_back(grp.decode(c));
        return {std::move(g), std::move(grp), std::move(b)};
    }

    std::vector<int> beta_codes() const {
        std::vector<int> out;
        out.reserve(beta.size());
        for (const auto& x : beta) out.push_back(group.encode(x));
        return out;
    }

    bool has_zero_boundary() const {
        for (const auto& x : beta)
            if (!group.is_zero(x)) return false;
        return true;
    }
};

struct Flow {
    std::map<EdgeId, GroupElement> values;  // low endpoint -> high endpoint

    friend bool operator==(const Flow&, const Flow&) = default;
};

class InvalidBoundary : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

inline bool validate_boundary(const BorderedGraph& bg) {
    if (static_cast<int>(bg.beta.size()) != bg.graph.n()) return false;
    for (const auto& x : bg.beta)
        if (!bg.group.contains(x)) return false;
    int comps = 0;
    auto label = component_labels(bg.graph, &comps);
    std::vector<int> sum(comps, 0);
    for (Vertex v = 0; v < bg.graph.n(); ++v) sum[label[v]] = bg.group.add_code(sum[label[v]], bg.group.encode(bg.beta[v]));
    for (int s : sum)
        if (s != 0) return false;
    return true;
}

/// Independent check of conservation (and optionally nowhere-zero).
inline bool check_flow(const BorderedGraph& bg, const Flow& f, bool nowhere_zero = true) {
    const Group& A = bg.group;
    std::vector<int> net(bg.graph.n(), 0);
    for (const auto& e : bg.graph.edges()) {
        auto it = f.values.find(e.id);
        if (it == f.values.end() || !A.contains(it->second)) return false;
        if (nowhere_zero && A.is_zero(it->second)) return false;
        int val = A.encode(it->second);
        net[e.u] = A.add_code(net[e.u], val);
        net[e.v] = A.add_code(net[e.v], A.neg_code(val));
    }
    if (f.values.size() != static_cast<std::size_t>(bg.graph.m())) return false;
    for (Vertex v = 0; v < bg.graph.n(); ++v)
        if (net[v] != A.encode(bg.beta[v])) return false;
    return true;
}

namespace detail {

// Backtracking over one connected component. Vertices are processed in
// reverse BFS order; at each vertex the not-yet-assigned edges other than
// the BFS edge to its parent are free (cotree), the parent edge is then
// forced by conservation and must be nonzero.
class ComponentSearch {
public:
    ComponentSearch(const Multigraph& g, const Group& A, const std::vector<int>& beta, const std::vector<Vertex>& comp_vertices,
                    Vertex root)
        : g_(g), A_(A), beta_(beta), val_(g.m(), 0) {
        auto inc = g.incidence();
        std::vector<int> parent_edge(g.n(), -1), order;
        std::vector<char> seen(g.n(), 0);
        order.push_back(root);
        seen[root] = 1;
        for (std::size_t i = 0; i < order.size(); ++i) {
            Vertex x = order[i];
            for (int ei : inc[x]) {
                Vertex y = g.edges()[ei].other(x);
                if (!seen[y]) {
                    seen[y] = 1;
                    parent_edge[y] = ei;
                    order.push_back(y);
                }
            }
        }
        if (order.size() != comp_vertices.size()) throw std::logic_error("component search: vertex set mismatch");
        std::vector<char> scheduled(g.m(), 0);
        for (std::size_t i = order.size(); i-- > 1;) {
            Vertex x = order[i];
            Step s;
            s.vertex = x;
            s.beta = beta[x];
            s.forced = parent_edge[x];
            s.forced_low = g.edges()[s.forced].u == x;
            for (int ei : inc[x]) {
                if (ei == s.forced) continue;
                if (!scheduled[ei]) {
                    scheduled[ei] = 1;
                    s.free.push_back(ei);
                    edges_.push_back(ei);
                }
                s.others.push_back({ei, g.edges()[ei].u == x});
            }
            scheduled[s.forced] = 1;
            edges_.push_back(s.forced);
            steps_.push_back(std::move(s));
        }
        for (int c = 1; c < A.order(); ++c) nonzero_.push_back(c);
    }

    bool find() {
        stop_at_first_ = true;
        count_ = 0;
        run_step(0);
        return count_ > 0;
    }

    std::uint64_t count() {
        stop_at_first_ = false;
        count_ = 0;
        run_step(0);
        return count_;
    }

    void write_witness(std::vector<int>& out) const {
        for (int ei : edges_) out[ei] = witness_[ei];
    }

    std::uint64_t leaves_visited() const { return nodes_; }

private:
    struct Step {
        Vertex vertex;
        int beta;
        int forced;
        bool forced_low;
        std::vector<int> free;
        std::vector<std::pair<int, bool>> others;  // edge index, vertex is its low endpoint
    };

    bool done() const { return stop_at_first_ && count_ > 0; }

    void run_step(std::size_t si) {
        if (si == steps_.size()) {
            if (count_ == 0) witness_ = val_;
            ++count_;
            return;
        }
        assign_free(si, 0);
    }

    void assign_free(std::size_t si, std::size_t fi) {
        const Step& s = steps_[si];
        if (fi < s.free.size()) {
            int ei = s.free[fi];
            for (int c : nonzero_) {
                val_[ei] = c;
                assign_free(si, fi + 1);
                if (done()) return;
            }
            return;
        }
        ++nodes_;
        int out = 0;
        for (auto [ei, low] : s.others) out = A_.add_code(out, low ? val_[ei] : A_.neg_code(val_[ei]));
        int need = A_.sub_code(s.beta, out);  // outflow along the forced edge
        if (need == 0) return;
        val_[s.forced] = s.forced_low ? need : A_.neg_code(need);
        run_step(si + 1);
    }

    const Multigraph& g_;
    const Group& A_;
    const std::vector<int>& beta_;
    std::vector<Step> steps_;
    std::vector<int> edges_;
    std::vector<int> nonzero_;
    std::vector<int> val_;
    std::vector<int> witness_;
    bool stop_at_first_ = true;
    std::uint64_t count_ = 0;
    std::uint64_t nodes_ = 0;
};

inline std::vector<std::vector<Vertex>> components(const Multigraph& g) {
    int c = 0;
    auto label = component_labels(g, &c);
    std::vector<std::vector<Vertex>> out(c);
    for (Vertex v = 0; v < g.n(); ++v) out[label[v]].push_back(v);
    return out;
}

inline void require_valid(const BorderedGraph& bg) {
    if (!validate_boundary(bg)) throw InvalidBoundary("boundary does not sum to zero on every component");
}

}  // namespace detail

struct FlowVerdict {
    bool exists = false;
    std::optional<Flow> witness;
};

/// Fast path on raw codes; used by the criticality and census loops.
inline bool has_nz_flow_codes(const Multigraph& g, const Group& A, const std::vector<int>& beta, std::vector<int>* witness_codes = nullptr) {
    if (witness_codes) witness_codes->assign(g.m(), 0);
    for (const auto& comp : detail::components(g)) {
        detail::ComponentSearch s(g, A, beta, comp, comp.front());
        if (!s.find()) return false;
        if (witness_codes) s.write_witness(*witness_codes);
    }
    return true;
}

inline FlowVerdict has_nz_flow(const BorderedGraph& bg) {
    detail::require_valid(bg);
    std::vector<int> codes;
    FlowVerdict v;
    v.exists = has_nz_flow_codes(bg.graph, bg.group, bg.beta_codes(), &codes);
    if (v.exists) {
        Flow f;
        for (int i = 0; i < bg.graph.m(); ++i) f.values[bg.graph.edges()[i].id] = bg.group.decode(codes[i]);
        v.witness = std::move(f);
    }
    return v;
}

inline std::uint64_t count_nz_flows(const BorderedGraph& bg) {
    detail::require_valid(bg);
    auto beta = bg.beta_codes();
    std::uint64_t total = 1;
    for (const auto& comp : detail::components(bg.graph)) {
        detail::ComponentSearch s(bg.graph, bg.group, beta, comp, comp.front());
        total *= s.count();
        if (total == 0) break;
    }
    return total;
}

// ---------------------------------------------------------------------------
// Deletion-contraction oracle for zero boundary: F(G) = F(G/e) - F(G-e) for a
// non-bridge e; loops contribute a factor (k-1); bridges force 0.

inline std::int64_t count_nz_flows_dc(const Multigraph& g, int k, std::unordered_map<std::string, std::int64_t>& memo) {
    if (g.m() == 0) return 1;
    if (has_bridge(g)) return 0;
    std::string key = canonical_form(g);
    if (auto it = memo.find(key); it != memo.end()) return it->second;
    const Edge e = g.edges().front();
    Multigraph deleted = delete_edge(g, e.id);
    int loops = g.multiplicity(e.u, e.v) - 1;
    Multigraph contracted = contract_set(g, {e.u, e.v}).graph;
    std::int64_t loop_factor = 1;
    for (int i = 0; i < loops; ++i) loop_factor *= (k - 1);
    std::int64_t result = loop_factor * count_nz_flows_dc(contracted, k, memo) - count_nz_flows_dc(deleted, k, memo);
    memo.emplace(std::move(key), result);
    return result;
}

inline std::int64_t count_nz_flows_dc(const Multigraph& g, int k) {
    if (k < 1) throw std::invalid_argument("group order must be positive");
    std::unordered_map<std::string, std::int64_t> memo;
    return count_nz_flows_dc(g, k, memo);
}

// ---------------------------------------------------------------------------
// Surgery on bordered graphs and flow transport

struct BorderedContraction {
    BorderedGraph bordered;
    std::vector<int> vertex_map;
};

/// (G/P, beta/P): each part's boundary is the sum over the part.
inline BorderedContraction contract(const BorderedGraph& bg, const Partition& p) {
    auto c = contract(bg.graph, p);
    std::vector<int> codes(p.size(), 0);
    for (Vertex v = 0; v < bg.graph.n(); ++v)
        codes[c.vertex_map[v]] = bg.group.add_code(codes[c.vertex_map[v]], bg.group.encode(bg.beta[v]));
    return {BorderedGraph::from_codes(std::move(c.graph), bg.group, codes), std::move(c.vertex_map)};
}

/// Moves a flow of `from` onto `to`, where `to` has a subset of the edge ids
/// and `vertex_map` sends from-vertices to to-vertices.
inline Flow transport_flow(const Group& A, const Flow& f, const Multigraph& from, const Multigraph& to, const std::vector<int>& vertex_map) {
    Flow out;
    for (const auto& e : to.edges()) {
        const Edge& src = from.edge(e.id);
        auto it = f.values.find(e.id);
        if (it == f.values.end()) throw std::invalid_argument("flow lacks edge " + std::to_string(e.id));
        int a = vertex_map.at(src.u), b = vertex_map.at(src.v);
        if (a == b) throw std::invalid_argument("edge " + std::to_string(e.id) + " became a loop");
        out.values[e.id] = a < b ? it->second : A.neg(it->second);
    }
    return out;
}

struct InducedBoundary {
    InducedSubgraph sub;        // G[B], edge ids preserved
    BorderedGraph bordered;     // (G[B], beta_f)
};

/// beta_f(u) = beta(u) - sum over edges uv leaving B of f(directed away from u).
/// `f` is a flow of bg/B as produced by contract(bg, Partition::from_set(B)).
inline InducedBoundary induced_boundary(const BorderedGraph& bg, const std::vector<Vertex>& B, const Flow& f) {
    if (!induces_connected(bg.graph, B)) throw std::invalid_argument("B does not induce a connected subgraph");
    auto quotient = contract(bg, Partition::from_set(bg.graph.n(), B));
    if (!check_flow(quotient.bordered, f, true)) throw std::invalid_argument("f is not a nowhere-zero flow of bg/B");
    const Group& A = bg.group;
    auto sub = induced_subgraph(bg.graph, B);
    std::vector<int> codes(sub.graph.n(), 0);
    for (int i = 0; i < sub.graph.n(); ++i) codes[i] = A.encode(bg.beta[sub.to_parent[i]]);
    for (const auto& e : bg.graph.edges()) {
        bool in_u = sub.from_parent[e.u] >= 0, in_v = sub.from_parent[e.v] >= 0;
        if (in_u == in_v) continue;
        Vertex inside = in_u ? e.u : e.v;
        Vertex outside = in_u ? e.v : e.u;
        int b = quotient.vertex_map[inside], o = quotient.vertex_map[outside];
        int stored = A.encode(f.values.at(e.id));  // quotient orientation: low -> high
        int away = b < o ? stored : A.neg_code(stored);
        int& slot = codes[sub.from_parent[inside]];
        slot = A.sub_code(slot, away);
    }
    BorderedGraph inner = BorderedGraph::from_codes(sub.graph, A, codes);
    return {std::move(sub), std::move(inner)};
}

/// Glues a flow of (G[B], beta_f) with the outside flow f of bg/B.
inline Flow combine_flows(const BorderedGraph& bg, const std::vector<Vertex>& B, const Flow& outside, const Flow& inside) {
    const Group& A = bg.group;
    auto quotient = contract(bg.graph, Partition::from_set(bg.graph.n(), B));
    std::vector<char> in(bg.graph.n(), 0);
    for (Vertex v : B) in[v] = 1;
    Flow out;
    for (const auto& e : bg.graph.edges()) {
        if (in[e.u] && in[e.v]) {
            out.values[e.id] = inside.values.at(e.id);  // induced numbering preserves endpoint order
        } else {
            const auto& val = outside.values.at(e.id);
            int a = quotient.vertex_map[e.u], b = quotient.vertex_map[e.v];
            out.values[e.id] = a < b ? val : A.neg(val);
        }
    }
    return out;
}

/// Obs.-style lift: a flow on the split graph puts the new edge's value
/// on both original edges (u1 -> v -> u2).
inline Flow lift_split_flow(const Group& A, const Multigraph& original, const SplitResult& split, EdgeId e1, EdgeId e2, const Flow& f) {
    Flow out;
    for (const auto& e : split.graph.edges())
        if (e.id != split.new_edge) out.values[e.id] = f.values.at(e.id);
    const Edge& fresh = split.graph.edge(split.new_edge);
    const Edge& a = original.edge(e1);
    const Edge& b = original.edge(e2);
    Vertex v = split.shared;
    Vertex u1 = a.other(v);
    GroupElement t = f.values.at(split.new_edge);  // fresh.u -> fresh.v
    GroupElement from_u1 = fresh.u == u1 ? t : A.neg(t);  // value u1 -> u2
    // e1 carries u1 -> v, e2 carries v -> u2, both equal to from_u1
    out.values[e1] = a.u == u1 ? from_u1 : A.neg(from_u1);
    out.values[e2] = b.u == v ? from_u1 : A.neg(from_u1);
    return out;
}

// ---------------------------------------------------------------------------
// Boundary enumeration and group connectivity

/// Calls fn(codes) for every valid boundary; per component, the highest
/// vertex is forced by the zero-sum constraint. fn returns false to stop.
inline void for_each_boundary(const Multigraph& g, const Group& A, const std::function<bool(const std::vector<int>&)>& fn) {
    auto comps = detail::components(g);
    std::vector<char> forced(g.n(), 0);
    std::vector<int> comp_of(g.n(), 0);
    for (std::size_t c = 0; c < comps.size(); ++c) {
        forced[comps[c].back()] = 1;
        for (Vertex v : comps[c]) comp_of[v] = static_cast<int>(c);
    }
    std::vector<Vertex> free;
    for (Vertex v = 0; v < g.n(); ++v)
        if (!forced[v]) free.push_back(v);
    std::vector<int> codes(g.n(), 0);
    while (true) {
        std::vector<int> sums(comps.size(), 0);
        for (Vertex v : free) sums[comp_of[v]] = A.add_code(sums[comp_of[v]], codes[v]);
        for (std::size_t c = 0; c < comps.size(); ++c) codes[comps[c].back()] = A.neg_code(sums[c]);
        if (!fn(codes)) return;
        std::size_t i = 0;
        for (; i < free.size(); ++i) {
            if (++codes[free[i]] < A.order()) break;
            codes[free[i]] = 0;
        }
        if (i == free.size()) return;
    }
}

struct GroupConnectivity {
    bool connected = true;
    std::optional<std::vector<GroupElement>> failing_boundary;
};

inline GroupConnectivity is_group_connected(const Multigraph& g, const Group& A) {
    if (!is_connected(g)) throw std::invalid_argument("group connectivity requires a connected graph");
    GroupConnectivity r;
    for_each_boundary(g, A, [&](const std::vector<int>& codes) {
        if (has_nz_flow_codes(g, A, codes)) return true;
        r.connected = false;
        std::vector<GroupElement> b;
        for (int c : codes) b.push_back(A.decode(c));
        r.failing_boundary = std::move(b);
        return false;
    });
    return r;
}

}  // namespace nzflow
