#pragma once

// Graph families: Ore sums, plane gluings, the dual 4-Ore catalog,
// K_{3,n-3}^+, flower snarks, and 4-Ore graphs for duality checks.

#include <algorithm>
#include <functional>
#include <map>
#include <mutex>
#include <numeric>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "canonical.hpp"
#include "multigraph.hpp"
#include "topology.hpp"

namespace nzflow {

inline constexpr int default_catalog_cap = 12;

class CapExceeded : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A connected multigraph with a genus-0 rotation system.
class PlaneGraph {
public:
    PlaneGraph() = default;
    PlaneGraph(Multigraph g, RotationSystem rs) : graph_(std::move(g)), rs_(std::move(rs)) {
        if (!rs_.twisted.empty()) throw std::invalid_argument("plane embeddings carry no twisted edges");
        if (!is_complete_rotation(graph_, rs_)) throw std::invalid_argument("rotation system does not match the graph");
        if (!is_connected(graph_)) throw std::invalid_argument("plane graph must be connected");
        int f = graph_.m() == 0 ? 1 : count_faces(graph_, rs_);
        if (graph_.n() - graph_.m() + f != 2) throw std::invalid_argument("rotation system is not a plane embedding");
    }

    /// Uses the planarity test's embedding.
    static PlaneGraph from_planar(const Multigraph& g) {
        auto p = is_planar(g);
        if (!p.planar) throw std::invalid_argument("graph is not planar");
        return PlaneGraph(g, *p.embedding);
    }

    const Multigraph& graph() const { return graph_; }
    const RotationSystem& rotation() const { return rs_; }
    std::vector<FaceWalk> faces() const { return trace_faces(graph_, rs_); }

    bool cofacial(Vertex a, Vertex b) const {
        for (const auto& f : faces()) {
            bool ha = false, hb = false;
            for (auto [v, e] : f.darts) {
                ha |= v == a;
                hb |= v == b;
            }
            if (ha && hb) return true;
        }
        return false;
    }

private:
    Multigraph graph_;
    RotationSystem rs_;
};

// ---------------------------------------------------------------------------
// Ore sums and gluing

/// h1 with z split into x1 (edges `x_side`, keeps index z) and y1 (new vertex
/// h1.n()), h2 with edge e = x2 y2 removed, x1 = x2 and y1 = y2. Remaining
/// vertices of h2 follow in order; h2 edge ids are shifted past h1's.
inline Multigraph ore_sum(const Multigraph& h1, Vertex z, const std::vector<EdgeId>& x_side, const std::vector<EdgeId>& y_side,
                          const Multigraph& h2, EdgeId e) {
    if (z < 0 || z >= h1.n()) throw std::invalid_argument("ore_sum: z out of range");
    if (x_side.empty() || y_side.empty()) throw std::invalid_argument("ore_sum: both sides of the split must be nonempty");
    if (!h2.has_edge_id(e)) throw std::invalid_argument("ore_sum: edge " + std::to_string(e) + " not in h2");
    if (!is_two_connected(h1) || !is_two_connected(h2)) throw std::invalid_argument("ore_sum: operands must be 2-connected");
    std::set<EdgeId> xs(x_side.begin(), x_side.end()), ys(y_side.begin(), y_side.end());
    std::set<EdgeId> at_z;
    for (const auto& ed : h1.edges())
        if (ed.u == z || ed.v == z) at_z.insert(ed.id);
    for (EdgeId x : xs)
        if (ys.count(x)) throw std::invalid_argument("ore_sum: split sides overlap");
    std::set<EdgeId> both = xs;
    both.insert(ys.begin(), ys.end());
    if (both != at_z || xs.size() + ys.size() != at_z.size()) throw std::invalid_argument("ore_sum: split must partition the edges at z");

    int n1 = h1.n();
    Vertex y1 = n1;
    const Edge ee = h2.edge(e);
    std::vector<Vertex> map2(h2.n(), -1);
    map2[ee.u] = z;
    map2[ee.v] = y1;
    int next = n1 + 1;
    for (Vertex v = 0; v < h2.n(); ++v)
        if (map2[v] == -1) map2[v] = next++;
    Multigraph out(next);
    for (const auto& ed : h1.edges()) {
        Vertex a = ed.u, b = ed.v;
        if (ys.count(ed.id)) {
            if (a == z) a = y1;
            if (b == z) b = y1;
        }
        out.add_edge_with_id(a, b, ed.id);
    }
    EdgeId shift = h1.next_edge_id();
    for (const auto& ed : h2.edges())
        if (ed.id != e) out.add_edge_with_id(map2[ed.u], map2[ed.v], ed.id + shift);
    out.reserve_ids_from(shift + h2.next_edge_id());
    if (!is_two_connected(out)) throw std::logic_error("ore_sum result is not 2-connected");
    return out;
}

struct GlueResult {
    PlaneGraph plane;
    std::vector<Vertex> map2;  // g2 vertex -> result vertex
    EdgeId id_shift = 0;       // g2 edge id -> result id + shift
};

/// Deletes e = u2 v2 from g2 and identifies u2 with u1, v2 with v1 (u2, v2
/// being e's low and high ends unless `swap_ends`). The drawing of g2 - e is
/// placed inside a face of g1 containing u1 and v1.
inline GlueResult glue_full(const PlaneGraph& g1, Vertex u1, Vertex v1, const PlaneGraph& g2, EdgeId e, bool swap_ends = false) {
    const Multigraph& a = g1.graph();
    const Multigraph& b = g2.graph();
    if (u1 == v1) throw std::invalid_argument("glue: identifying u1 = v1 would create a loop");
    if (u1 < 0 || v1 < 0 || u1 >= a.n() || v1 >= a.n()) throw std::invalid_argument("glue: vertex out of range");
    if (!b.has_edge_id(e)) throw std::invalid_argument("glue: edge not in g2");
    if (!g1.cofacial(u1, v1)) throw std::invalid_argument("glue: u1 and v1 do not share a face");
    Edge ee = b.edge(e);
    Vertex u2 = swap_ends ? ee.v : ee.u, v2 = swap_ends ? ee.u : ee.v;

    GlueResult r;
    r.map2.assign(b.n(), -1);
    r.map2[u2] = u1;
    r.map2[v2] = v1;
    int next = a.n();
    for (Vertex v = 0; v < b.n(); ++v)
        if (r.map2[v] == -1) r.map2[v] = next++;
    r.id_shift = a.next_edge_id();
    Multigraph g(next);
    for (const auto& ed : a.edges()) g.add_edge_with_id(ed.u, ed.v, ed.id);
    for (const auto& ed : b.edges())
        if (ed.id != e) g.add_edge_with_id(r.map2[ed.u], r.map2[ed.v], ed.id + r.id_shift);
    g.reserve_ids_from(r.id_shift + b.next_edge_id());

    // rotation of g2 - e at u2 / v2, read cyclically starting after e
    auto opened = [&](const RotationSystem& rs, Vertex x) {
        const auto& rot = rs.rotation[x];
        auto it = std::find(rot.begin(), rot.end(), e);
        std::vector<EdgeId> seq;
        for (std::size_t k = 1; k < rot.size(); ++k) seq.push_back(rot[(it - rot.begin() + k) % rot.size()] + r.id_shift);
        return seq;
    };
    for (int mirror = 0; mirror < 2; ++mirror) {
        RotationSystem rs2 = g2.rotation();
        if (mirror)
            for (auto& rot : rs2.rotation) std::reverse(rot.begin(), rot.end());
        auto seq_u = opened(rs2, u2), seq_v = opened(rs2, v2);
        RotationSystem base;
        base.rotation.assign(g.n(), {});
        for (Vertex v = 0; v < a.n(); ++v) base.rotation[v] = g1.rotation().rotation[v];
        for (Vertex v = 0; v < b.n(); ++v)
            if (v != u2 && v != v2)
                for (EdgeId id : rs2.rotation[v]) base.rotation[r.map2[v]].push_back(id + r.id_shift);
        std::size_t du = base.rotation[u1].size(), dv = base.rotation[v1].size();
        for (std::size_t i = 0; i < std::max<std::size_t>(du, 1); ++i)
            for (std::size_t j = 0; j < std::max<std::size_t>(dv, 1); ++j) {
                RotationSystem t = base;
                t.rotation[u1].insert(t.rotation[u1].begin() + static_cast<long>(i), seq_u.begin(), seq_u.end());
                t.rotation[v1].insert(t.rotation[v1].begin() + static_cast<long>(j), seq_v.begin(), seq_v.end());
                if (g.n() - g.m() + count_faces(g, t) == 2) {
                    r.plane = PlaneGraph(g, std::move(t));
                    return r;
                }
            }
    }
    throw std::logic_error("glue: no face insertion produced a plane embedding");
}

inline PlaneGraph glue(const PlaneGraph& g1, Vertex u1, Vertex v1, const PlaneGraph& g2, EdgeId e, bool swap_ends = false) {
    return glue_full(g1, u1, v1, g2, e, swap_ends).plane;
}

// ---------------------------------------------------------------------------
// Dual 4-Ore catalog

struct Provenance {
    int left = -1, right = -1;  // catalog indices of g1, g2; -1 for the K4 base
    Vertex u1 = -1, v1 = -1;
    EdgeId edge = -1;
    bool swap_ends = false;

    bool is_base() const { return left < 0; }
};

struct CatalogEntry {
    Multigraph graph;
    std::string canonical;
    Provenance provenance;
    PlaneGraph embedding;
};

namespace detail {

// A drawing of g in which a and b share a face, if one exists.
inline std::optional<PlaneGraph> drawing_with_cofacial(const PlaneGraph& g, Vertex a, Vertex b) {
    if (g.cofacial(a, b)) return g;
    Multigraph h = g.graph();
    EdgeId extra = h.add_edge(a, b);
    auto p = is_planar(h);
    if (!p.planar) return std::nullopt;
    RotationSystem rs = *p.embedding;
    for (auto& rot : rs.rotation) rot.erase(std::remove(rot.begin(), rot.end(), extra), rot.end());
    return PlaneGraph(g.graph(), std::move(rs));
}

inline std::vector<CatalogEntry> build_dual_4ore(int max_n) {
    std::vector<CatalogEntry> cat;
    std::set<std::string> seen;
    {
        Multigraph k4 = complete_graph(4);
        CatalogEntry base{k4, canonical_form(k4), Provenance{}, PlaneGraph::from_planar(k4)};
        seen.insert(base.canonical);
        cat.push_back(std::move(base));
    }
    for (int n = 6; n <= max_n; n += 2) {
        std::vector<CatalogEntry> level;
        std::size_t existing = cat.size();
        for (std::size_t i = 0; i < existing; ++i)
            for (std::size_t j = 0; j < existing; ++j) {
                int n1 = cat[i].graph.n(), n2 = cat[j].graph.n();
                if (n1 + n2 - 2 != n) continue;
                const PlaneGraph& g2 = cat[j].embedding;
                for (Vertex u1 = 0; u1 < n1; ++u1)
                    for (Vertex v1 = u1 + 1; v1 < n1; ++v1) {
                        auto drawing = drawing_with_cofacial(cat[i].embedding, u1, v1);
                        if (!drawing) continue;
                        for (const auto& ed : g2.graph().edges())
                            for (int sw = 0; sw < 2; ++sw) {
                                PlaneGraph pg = glue(*drawing, u1, v1, g2, ed.id, sw == 1);
                                Multigraph g = relabel_ids(pg.graph());
                                std::string key = canonical_form(g);
                                if (!seen.insert(key).second) continue;
                                // carry the embedding over to fresh ids
                                std::map<EdgeId, EdgeId> fresh;
                                for (std::size_t k = 0; k < pg.graph().edges().size(); ++k)
                                    fresh[pg.graph().edges()[k].id] = static_cast<EdgeId>(k);
                                RotationSystem rs;
                                for (const auto& rot : pg.rotation().rotation) {
                                    rs.rotation.emplace_back();
                                    for (EdgeId id : rot) rs.rotation.back().push_back(fresh.at(id));
                                }
                                Provenance pv{static_cast<int>(i), static_cast<int>(j), u1, v1, ed.id, sw == 1};
                                level.push_back(CatalogEntry{g, key, pv, PlaneGraph(g, std::move(rs))});
                            }
                    }
            }
        std::sort(level.begin(), level.end(), [](const CatalogEntry& x, const CatalogEntry& y) { return x.canonical < y.canonical; });
        for (auto& entry : level) cat.push_back(std::move(entry));
    }
    return cat;
}

}  // namespace detail

/// All dual 4-Ore graphs on at most max_n vertices, up to isomorphism, in
/// order of vertex count then canonical key. Results are cached.
inline const std::vector<CatalogEntry>& dual_4ore_catalog(int max_n, int cap = default_catalog_cap) {
    if (max_n > cap) throw CapExceeded("dual_4ore_catalog: max_n " + std::to_string(max_n) + " exceeds cap " + std::to_string(cap));
    static std::mutex mu;
    static std::map<int, std::vector<CatalogEntry>> cache;
    int key = std::max(max_n, 0);
    if (key % 2) --key;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    std::vector<CatalogEntry> built = key >= 4 ? detail::build_dual_4ore(key) : std::vector<CatalogEntry>{};
    return cache.emplace(key, std::move(built)).first->second;
}

/// K2 or dual 4-Ore; nullopt when |V| exceeds the catalog cap.
inline std::optional<bool> is_exceptional(const Multigraph& g, int cap = default_catalog_cap) {
    if (g.n() == 2 && g.m() == 1) return true;
    if (g.n() < 4) return false;
    if (2 * g.m() != 5 * g.n() - 8) return false;
    if (g.n() > cap) return std::nullopt;
    std::string key = canonical_form(g);
    for (const auto& entry : dual_4ore_catalog(g.n(), cap))
        if (entry.canonical == key) return true;
    return false;
}

// ---------------------------------------------------------------------------
// 4-Ore graphs

/// All graphs obtained by Ore sums from copies of K4 with at most max_n
/// vertices, up to isomorphism.
inline std::vector<Multigraph> primal_4ore_catalog(int max_n, int cap = default_catalog_cap) {
    if (max_n > cap) throw CapExceeded("primal_4ore_catalog: max_n exceeds cap");
    std::vector<Multigraph> cat;
    std::set<std::string> seen;
    if (max_n < 4) return cat;
    cat.push_back(canonical_graph(complete_graph(4)));
    seen.insert(canonical_form(cat[0]));
    for (int n = 7; n <= max_n; n += 3) {
        std::vector<std::pair<std::string, Multigraph>> level;
        std::size_t existing = cat.size();
        for (std::size_t i = 0; i < existing; ++i)
            for (std::size_t j = 0; j < existing; ++j) {
                const Multigraph& h1 = cat[i];
                const Multigraph& h2 = cat[j];
                if (h1.n() + h2.n() - 1 != n) continue;
                for (Vertex z = 0; z < h1.n(); ++z) {
                    std::vector<EdgeId> at;
                    for (const auto& ed : h1.edges())
                        if (ed.u == z || ed.v == z) at.push_back(ed.id);
                    int d = static_cast<int>(at.size());
                    // masks containing edge 0 on the x side, excluding the full set
                    for (int mask = 1; mask < (1 << d) - 1; mask += 2) {
                        std::vector<EdgeId> xs, ys;
                        for (int k = 0; k < d; ++k) ((mask >> k) & 1 ? xs : ys).push_back(at[k]);
                        for (const auto& ed : h2.edges()) {
                            Multigraph s = ore_sum(h1, z, xs, ys, h2, ed.id);
                            Multigraph c = canonical_graph(s);
                            std::string key = canonical_form(c);
                            if (seen.insert(key).second) level.emplace_back(key, std::move(c));
                            // the other orientation of e: swap which end meets x1
                            Multigraph s2 = ore_sum(h1, z, ys, xs, h2, ed.id);
                            Multigraph c2 = canonical_graph(s2);
                            std::string key2 = canonical_form(c2);
                            if (seen.insert(key2).second) level.emplace_back(key2, std::move(c2));
                        }
                    }
                }
            }
        std::sort(level.begin(), level.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
        for (auto& [k, g] : level) cat.push_back(std::move(g));
    }
    return cat;
}

// ---------------------------------------------------------------------------
// Named families

/// K_{3,n-3} (sides 0..2 and 3..n-1) plus the edge 0-1 between two of the
/// vertices of degree n-3.
inline Multigraph k3n_plus(int n) {
    if (n < 7) throw std::invalid_argument("k3n_plus requires n >= 7");
    Multigraph g = complete_bipartite(3, n - 3);
    g.add_edge(0, 1);
    return g;
}

/// Flower snark J_k: centers a_i adjacent to b_i, c_i, d_i; the b_i form a
/// k-cycle; the c_i and d_i form one 2k-cycle c_0..c_{k-1} d_0..d_{k-1}.
/// Vertex a_i = 4i, b_i = 4i+1, c_i = 4i+2, d_i = 4i+3.
inline Multigraph flower_snark(int k) {
    if (k < 3 || k % 2 == 0) throw std::invalid_argument("flower_snark requires odd k >= 3");
    Multigraph g(4 * k);
    auto a = [](int i) { return 4 * i; };
    auto b = [](int i) { return 4 * i + 1; };
    auto c = [](int i) { return 4 * i + 2; };
    auto d = [](int i) { return 4 * i + 3; };
    for (int i = 0; i < k; ++i) {
        g.add_edge(a(i), b(i));
        g.add_edge(a(i), c(i));
        g.add_edge(a(i), d(i));
    }
    for (int i = 0; i < k; ++i) g.add_edge(b(i), b((i + 1) % k));
    for (int i = 0; i + 1 < k; ++i) {
        g.add_edge(c(i), c(i + 1));
        g.add_edge(d(i), d(i + 1));
    }
    g.add_edge(c(k - 1), d(0));
    g.add_edge(d(k - 1), c(0));
    return g;
}

// ---------------------------------------------------------------------------
// Coloring

/// Proper k-coloring by backtracking (largest degree first), if one exists.
inline std::optional<std::vector<int>> find_coloring(const Multigraph& g, int k) {
    int n = g.n();
    auto adj = g.neighbors();
    std::vector<Vertex> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](Vertex x, Vertex y) { return adj[x].size() > adj[y].size(); });
    std::vector<int> color(n, -1);
    std::function<bool(int)> go = [&](int i) {
        if (i == n) return true;
        Vertex v = order[i];
        int used_max = -1;
        for (int j = 0; j < i; ++j) used_max = std::max(used_max, color[order[j]]);
        // symmetry: a new color only as the next unused one
        for (int c = 0; c < k && c <= used_max + 1; ++c) {
            bool ok = true;
            for (Vertex w : adj[v])
                if (color[w] == c) {
                    ok = false;
                    break;
                }
            if (!ok) continue;
            color[v] = c;
            if (go(i + 1)) return true;
            color[v] = -1;
        }
        return false;
    };
    if (!go(0)) return std::nullopt;
    return color;
}

inline bool is_k_colorable(const Multigraph& g, int k) { return find_coloring(g, k).has_value(); }

}  // namespace nzflow
