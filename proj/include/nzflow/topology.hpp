#pragma once

// Planarity (Boyer-Myrvold via Boost) and exact Euler genus by rotation
// system search with edge signatures.
//
// Face tracing works on states (edge-end, local orientation). Leaving vertex
// v along end h with orientation o, we cross the edge, flip o if the edge is
// twisted, and continue with the successor (o = +) or predecessor (o = -) of
// the arrival end in the rotation there. Each face shows up as exactly two
// state cycles, one per direction, so faces = cycles / 2 for loopless graphs.

#include <algorithm>
#include <cstdint>
#include <limits>
#include <numeric>
#include <optional>
#include <queue>
#include <set>
#include <stdexcept>
#include <tuple>
#include <vector>

#include <boost/graph/adjacency_list.hpp>
#include <boost/graph/boyer_myrvold_planar_test.hpp>
#include <boost/graph/graph_traits.hpp>
#include <boost/property_map/property_map.hpp>

#include "multigraph.hpp"

namespace nzflow {

struct RotationSystem {
    std::vector<std::vector<EdgeId>> rotation;  // cyclic order of incident edges per vertex
    std::set<EdgeId> twisted;                   // edges with signature -1

    bool is_twisted(EdgeId e) const { return twisted.count(e) > 0; }
};

struct FaceWalk {
    std::vector<std::pair<Vertex, EdgeId>> darts;  // (vertex left, edge used)
};

namespace detail {

class FaceTracer {
public:
    FaceTracer(const Multigraph& g, const RotationSystem& rs) : g_(g), rs_(rs) {
        if (static_cast<int>(rs.rotation.size()) != g.n()) throw std::invalid_argument("rotation system has wrong vertex count");
        int ids = g.next_edge_id();
        endpoint_.assign(static_cast<std::size_t>(ids) * 2, -1);
        pos_.assign(static_cast<std::size_t>(ids) * 2, -1);
        for (const auto& e : g.edges()) {
            endpoint_[2 * e.id] = e.u;
            endpoint_[2 * e.id + 1] = e.v;
        }
        for (Vertex v = 0; v < g.n(); ++v)
            for (int i = 0; i < static_cast<int>(rs.rotation[v].size()); ++i) {
                EdgeId e = rs.rotation[v][i];
                if (e < 0 || e >= ids || endpoint_[2 * e] < 0) throw std::invalid_argument("rotation names an unknown edge");
                int end = end_of(e, v);
                if (end < 0) throw std::invalid_argument("rotation lists an edge at a vertex it does not touch");
                if (pos_[end] != -1) throw std::invalid_argument("edge listed twice in one rotation");
                pos_[end] = i;
            }
        for (EdgeId e = 0; e < ids; ++e) {
            if (endpoint_[2 * e] < 0) continue;
            bool a = pos_[2 * e] >= 0, b = pos_[2 * e + 1] >= 0;
            if (a != b) throw std::invalid_argument("edge present at only one end of the rotation system");
            if (a) edges_.push_back(e);
        }
    }

    int end_of(EdgeId e, Vertex v) const {
        if (endpoint_[2 * e] == v) return 2 * e;
        if (endpoint_[2 * e + 1] == v) return 2 * e + 1;
        return -1;
    }
    Vertex vertex_of(int end) const { return endpoint_[end]; }

    // state = end * 2 + (o == - ? 1 : 0)
    int next(int state) const {
        int h = state >> 1, o = state & 1;
        EdgeId e = h >> 1;
        int arrive = h ^ 1;
        Vertex w = endpoint_[arrive];
        int o2 = o ^ (rs_.is_twisted(e) ? 1 : 0);
        const auto& rot = rs_.rotation[w];
        int d = static_cast<int>(rot.size());
        int p = pos_[arrive];
        int q = o2 == 0 ? (p + 1) % d : (p + d - 1) % d;
        return end_of(rot[q], w) * 2 + o2;
    }

    int reverse(int state) const {
        int h = state >> 1, o = state & 1;
        Vertex v = endpoint_[h];
        const auto& rot = rs_.rotation[v];
        int d = static_cast<int>(rot.size());
        int p = pos_[h];
        int q = o == 0 ? (p + d - 1) % d : (p + 1) % d;
        return end_of(rot[q], v) * 2 + (o ^ 1);
    }

    std::vector<FaceWalk> faces() const {
        std::vector<FaceWalk> out;
        std::vector<char> seen(endpoint_.size() * 2, 0);
        for (EdgeId e : edges_)
            for (int side = 0; side < 2; ++side)
                for (int o = 0; o < 2; ++o) {
                    int s0 = (2 * e + side) * 2 + o;
                    if (seen[s0]) continue;
                    FaceWalk f;
                    std::vector<int> cyc;
                    int s = s0;
                    do {
                        cyc.push_back(s);
                        seen[s] = 1;
                        f.darts.emplace_back(endpoint_[s >> 1], (s >> 1) >> 1);
                        s = next(s);
                    } while (s != s0);
                    for (int t : cyc) seen[reverse(t)] = 1;
                    out.push_back(std::move(f));
                }
        return out;
    }

    /// Untwisted embeddings only: one walk per face, every walk in the + sense,
    /// so each (vertex, edge) dart lies on exactly one walk.
    std::vector<FaceWalk> positive_faces() const {
        std::vector<FaceWalk> out;
        std::vector<char> seen(endpoint_.size() * 2, 0);
        for (EdgeId e : edges_)
            for (int side = 0; side < 2; ++side) {
                int s0 = (2 * e + side) * 2;
                if (seen[s0]) continue;
                FaceWalk f;
                int s = s0;
                do {
                    seen[s] = 1;
                    f.darts.emplace_back(endpoint_[s >> 1], (s >> 1) >> 1);
                    s = next(s);
                } while (s != s0);
                out.push_back(std::move(f));
            }
        return out;
    }

    std::size_t edge_count() const { return edges_.size(); }

private:
    const Multigraph& g_;
    const RotationSystem& rs_;
    std::vector<int> endpoint_;
    std::vector<int> pos_;
    std::vector<EdgeId> edges_;
};

}  // namespace detail

/// Faces of the embedding of the edges named in `rs` (a subset of g's edges).
inline std::vector<FaceWalk> trace_faces(const Multigraph& g, const RotationSystem& rs) {
    return detail::FaceTracer(g, rs).faces();
}

inline int count_faces(const Multigraph& g, const RotationSystem& rs) {
    return static_cast<int>(trace_faces(g, rs).size());
}

/// Orientable iff every cycle has an even number of twisted edges.
inline bool is_orientable(const Multigraph& g, const RotationSystem& rs) {
    std::vector<int> side(g.n(), -1);
    auto inc = g.incidence();
    for (Vertex s = 0; s < g.n(); ++s) {
        if (side[s] != -1) continue;
        side[s] = 0;
        std::vector<Vertex> stack{s};
        while (!stack.empty()) {
            Vertex x = stack.back();
            stack.pop_back();
            for (int ei : inc[x]) {
                const Edge& e = g.edges()[ei];
                Vertex y = e.other(x);
                int want = side[x] ^ (rs.is_twisted(e.id) ? 1 : 0);
                if (side[y] == -1) {
                    side[y] = want;
                    stack.push_back(y);
                } else if (side[y] != want) {
                    return false;
                }
            }
        }
    }
    return true;
}

/// Checks that `rs` lists every edge of g exactly once at each endpoint.
inline bool is_complete_rotation(const Multigraph& g, const RotationSystem& rs) {
    if (static_cast<int>(rs.rotation.size()) != g.n()) return false;
    auto deg = g.degrees();
    for (Vertex v = 0; v < g.n(); ++v) {
        if (static_cast<int>(rs.rotation[v].size()) != deg[v]) return false;
        std::set<EdgeId> ids(rs.rotation[v].begin(), rs.rotation[v].end());
        if (ids.size() != rs.rotation[v].size()) return false;
        for (EdgeId e : ids) {
            if (!g.has_edge_id(e)) return false;
            const Edge& ed = g.edge(e);
            if (ed.u != v && ed.v != v) return false;
        }
    }
    return true;
}

// ---------------------------------------------------------------------------
// Planarity

struct PlanarityResult {
    bool planar = false;
    std::optional<RotationSystem> embedding;  // when planar
    std::vector<EdgeId> kuratowski_edges;     // when not planar
};

namespace detail {

// Makes p (parallel to k, same endpoints) part of rs, adjacent to k at both
// ends, so that exactly one new (digon) face appears.
inline void insert_parallel(const Multigraph& g, RotationSystem& rs, EdgeId p, EdgeId k) {
    const Edge& ek = g.edge(k);
    int before = count_faces(g, rs);
    if (rs.is_twisted(k)) rs.twisted.insert(p);
    for (int at_u = 0; at_u < 2; ++at_u)
        for (int at_v = 0; at_v < 2; ++at_v) {
            RotationSystem trial = rs;
            for (auto [x, after] : {std::pair{ek.u, at_u}, std::pair{ek.v, at_v}}) {
                auto& rot = trial.rotation[x];
                auto it = std::find(rot.begin(), rot.end(), k);
                rot.insert(after ? it + 1 : it, p);
            }
            if (count_faces(g, trial) == before + 1) {
                rs = std::move(trial);
                return;
            }
        }
    throw std::logic_error("could not place a parallel edge beside its twin");
}

// Adds the parallel edges of g that are missing from rs (which embeds a
// spanning simple subgraph).
inline void lift_parallels(const Multigraph& g, RotationSystem& rs) {
    std::set<EdgeId> present;
    for (const auto& rot : rs.rotation) present.insert(rot.begin(), rot.end());
    std::map<std::pair<int, int>, EdgeId> rep;
    for (const auto& e : g.edges())
        if (present.count(e.id)) rep[{e.u, e.v}] = e.id;
    for (const auto& e : g.edges()) {
        if (present.count(e.id)) continue;
        auto it = rep.find({e.u, e.v});
        if (it == rep.end()) throw std::logic_error("parallel edge without an embedded twin");
        insert_parallel(g, rs, e.id, it->second);
        present.insert(e.id);
    }
}

inline bool planar_edge_set(const Multigraph& g, const std::vector<EdgeId>& ids) {
    boost::adjacency_list<boost::vecS, boost::vecS, boost::undirectedS> bg(g.n());
    for (EdgeId id : ids) {
        const Edge& e = g.edge(id);
        boost::add_edge(e.u, e.v, bg);
    }
    return boost::boyer_myrvold_planarity_test(bg);
}

}  // namespace detail

inline PlanarityResult is_planar(const Multigraph& g) {
    using BGraph = boost::adjacency_list<boost::vecS, boost::vecS, boost::undirectedS, boost::property<boost::vertex_index_t, int>,
                                         boost::property<boost::edge_index_t, int>>;
    using BEdge = boost::graph_traits<BGraph>::edge_descriptor;
    Multigraph simple = underlying_simple(g);
    BGraph bg(simple.n());
    std::vector<EdgeId> id_of;
    for (const auto& e : simple.edges()) {
        auto [be, ok] = boost::add_edge(e.u, e.v, bg);
        boost::put(boost::edge_index, bg, be, static_cast<int>(id_of.size()));
        id_of.push_back(e.id);
    }
    PlanarityResult r;
    std::vector<std::vector<BEdge>> emb(simple.n());
    r.planar = boost::boyer_myrvold_planarity_test(
        boost::boyer_myrvold_params::graph = bg,
        boost::boyer_myrvold_params::embedding = boost::make_iterator_property_map(emb.begin(), boost::get(boost::vertex_index, bg)));
    if (r.planar) {
        RotationSystem rs;
        rs.rotation.resize(g.n());
        for (Vertex v = 0; v < simple.n(); ++v)
            for (const auto& be : emb[v]) rs.rotation[v].push_back(id_of[boost::get(boost::edge_index, bg, be)]);
        detail::lift_parallels(g, rs);
        r.embedding = std::move(rs);
    } else {
        std::vector<BEdge> kur;
        boost::boyer_myrvold_planarity_test(boost::boyer_myrvold_params::graph = bg,
                                            boost::boyer_myrvold_params::kuratowski_subgraph = std::back_inserter(kur));
        std::vector<EdgeId> cand;
        for (const auto& be : kur) cand.push_back(id_of[boost::get(boost::edge_index, bg, be)]);
        std::sort(cand.begin(), cand.end());
        // Boost can report stray extra edges; drop every edge whose removal keeps
        // the set non-planar, which leaves an edge-minimal non-planar subgraph.
        for (std::size_t i = 0; i < cand.size();) {
            std::vector<EdgeId> rest = cand;
            rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(i));
            if (!detail::planar_edge_set(g, rest))
                cand = std::move(rest);
            else
                ++i;
        }
        r.kuratowski_edges = std::move(cand);
    }
    return r;
}

// ---------------------------------------------------------------------------
// Euler genus

struct GenusCertificate {
    int genus = 0;
    RotationSystem embedding;
    int face_count = 0;
    bool orientable = true;
};

struct GenusResult {
    std::optional<GenusCertificate> certificate;  // empty when the budget ran out
    int lower_bound = 0;                          // proven lower bound (== genus when exact)
    std::uint64_t steps = 0;

    bool exact() const { return certificate.has_value(); }
    std::optional<int> genus() const {
        if (certificate) return certificate->genus;
        return std::nullopt;
    }
};

inline constexpr std::uint64_t default_genus_budget = 10'000'000;

/// Euler-formula bound for simple graphs: ceil((|E| - 3|V| + 6) / 3), at least 0.
inline int euler_lower_bound(const Multigraph& g) {
    Multigraph s = underlying_simple(g);
    int num = s.m() - 3 * s.n() + 6;
    if (num <= 0) return 0;
    return (num + 2) / 3;
}

namespace detail {

inline int girth(const Multigraph& g) {
    int best = std::numeric_limits<int>::max();
    auto adj = g.neighbors();
    for (Vertex s = 0; s < g.n(); ++s) {
        std::vector<int> dist(g.n(), -1), par(g.n(), -1);
        std::queue<Vertex> q;
        dist[s] = 0;
        q.push(s);
        while (!q.empty()) {
            Vertex x = q.front();
            q.pop();
            bool skipped_parent = false;
            for (Vertex y : adj[x]) {
                if (y == par[x] && !skipped_parent) {
                    skipped_parent = true;
                    continue;
                }
                if (dist[y] == -1) {
                    dist[y] = dist[x] + 1;
                    par[y] = x;
                    q.push(y);
                } else {
                    best = std::min(best, dist[x] + dist[y] + 1);
                }
            }
        }
    }
    return best;
}

// Branch and bound by face tracing, for a simple connected graph with
// minimum degree >= 3. Faces are walked one at a time; a rotation successor
// or an edge signature is chosen only when a walk first needs it, so faces
// close early and the face-count bound prunes high in the tree. Tree edges
// are untwisted (every embedding is switching-equivalent to one like that).
// States are (half-edge left, orientation); one step is one walk transition.
class GenusSearch {
public:
    struct BudgetExceeded {};

    GenusSearch(const Multigraph& g, std::uint64_t budget) : g_(g), budget_(budget) {
        E_ = g.m();
        S_ = 4 * E_;
        auto inc = g.incidence();
        half_at_.assign(g.n(), {});
        endpoint_.assign(2 * E_, 0);
        for (int i = 0; i < E_; ++i) {
            endpoint_[2 * i] = g.edges()[i].u;
            endpoint_[2 * i + 1] = g.edges()[i].v;
            half_at_[g.edges()[i].u].push_back(2 * i);
            half_at_[g.edges()[i].v].push_back(2 * i + 1);
        }
        Vertex start = -1;
        for (Vertex v = 0; v < g.n(); ++v)
            if (!inc[v].empty() && (start < 0 || inc[v].size() > inc[start].size())) start = v;
        if (start < 0) throw std::invalid_argument("genus search needs at least one edge");
        tw_.assign(E_, -1);
        std::vector<char> seen(g.n(), 0);
        std::vector<Vertex> queue{start};
        seen[start] = 1;
        for (std::size_t i = 0; i < queue.size(); ++i)
            for (int ei : inc[queue[i]]) {
                Vertex y = g.edges()[ei].other(queue[i]);
                if (seen[y]) continue;
                seen[y] = 1;
                tw_[ei] = 0;
                queue.push_back(y);
            }
        for (Vertex v = 0; v < g.n(); ++v)
            if (!inc[v].empty() && !seen[v]) throw std::invalid_argument("genus search needs a connected graph");
        first_ = 2 * (2 * inc[start].front() + (g.edges()[inc[start].front()].u == start ? 0 : 1));
        succ_.assign(2 * E_, -1);
        pred_.assign(2 * E_, -1);
        covered_.assign(S_, 0);
        min_face_ = std::max(3, girth(g));
    }

    /// True if an embedding with at least target_faces faces exists; throws
    /// BudgetExceeded when the step budget runs out.
    bool search(int target_faces) {
        target_ = target_faces;
        found_ = false;
        faces_ = 0;
        uncovered_ = S_;
        next_face();
        return found_;
    }

    std::uint64_t steps() const { return steps_; }
    RotationSystem best() const { return best_; }
    int best_faces() const { return best_faces_; }

private:
    int mirror(int s) const {
        int h = s >> 1, o = s & 1;
        return ((h ^ 1) << 1) | (1 - (o ^ tw_[h >> 1]));
    }

    // Faces that can still close, given `pending` states of an open walk.
    int future_faces(int pending) const {
        if (pending == 0) return uncovered_ / (2 * min_face_);
        int open_len = std::max(pending, min_face_);
        return 1 + (uncovered_ - 2 * open_len) / (2 * min_face_);
    }

    // Start a new face at the uncovered state whose first move is most determined.
    void next_face() {
        if (found_) return;
        if (uncovered_ == 0) {
            leaf();
            return;
        }
        if (faces_ + future_faces(0) < target_) return;
        int s0 = -1, best_score = -1;
        if (faces_ == 0) {
            s0 = first_;
        } else {
            for (int s = 0; s < S_ && best_score < 2; ++s) {
                if (covered_[s]) continue;
                int h = s >> 1, e = h >> 1;
                int score = 0;
                if (tw_[e] >= 0) {
                    int o2 = (s & 1) ^ tw_[e];
                    score = 1 + ((o2 == 0 ? succ_[h ^ 1] : pred_[h ^ 1]) >= 0);
                }
                if (score > best_score) {
                    best_score = score;
                    s0 = s;
                }
            }
        }
        walk_.clear();
        walk_.push_back(s0);
        step(s0);
    }

    void step(int s0) {
        if (++steps_ > budget_) throw BudgetExceeded{};
        int s = walk_.back();
        int e = s >> 2;
        if (tw_[e] >= 0) {
            move(s0, s);
            return;
        }
        for (int t = 0; t < 2 && !found_; ++t) {
            tw_[e] = t;
            move(s0, s);
        }
        tw_[e] = -1;
    }

    // Setting succ[a] = b must not close a cycle shorter than the full rotation.
    bool closes_early(int a, int b, int degree) const {
        int y = b, len = 1;
        while (succ_[y] >= 0) {
            y = succ_[y];
            ++len;
        }
        return y == a && len != degree;
    }

    void move(int s0, int s) {
        int h = s >> 1, o = s & 1;
        int arrive = h ^ 1;
        int o2 = o ^ tw_[h >> 1];
        int known = o2 == 0 ? succ_[arrive] : pred_[arrive];
        if (known >= 0) {
            advance(s0, known * 2 + o2);
            return;
        }
        const auto& here = half_at_[endpoint_[arrive]];
        int degree = static_cast<int>(here.size());
        for (int x : here) {
            if (found_) return;
            if (x == arrive && degree != 1) continue;
            // o2 == 0 picks succ[arrive] = x; o2 == 1 picks pred[arrive] = x
            int a = o2 == 0 ? arrive : x, b = o2 == 0 ? x : arrive;
            if (succ_[a] >= 0 || pred_[b] >= 0 || closes_early(a, b, degree)) continue;
            succ_[a] = b;
            pred_[b] = a;
            advance(s0, x * 2 + o2);
            succ_[a] = -1;
            pred_[b] = -1;
        }
    }

    void advance(int s0, int ns) {
        if (ns == s0) {
            close_face();
            return;
        }
        if (covered_[ns]) throw std::logic_error("face walk entered a traced face");
        walk_.push_back(ns);
        if (faces_ + future_faces(static_cast<int>(walk_.size())) >= target_) step(s0);
        walk_.pop_back();
    }

    void close_face() {
        std::vector<int> face = walk_;
        for (int s : face) covered_[s] = 1;
        for (int s : face) {
            int m = mirror(s);
            if (covered_[m]) throw std::logic_error("face walk meets its own mirror");
            covered_[m] = 1;
        }
        int len = static_cast<int>(face.size());
        ++faces_;
        uncovered_ -= 2 * len;
        next_face();
        --faces_;
        uncovered_ += 2 * len;
        for (int s : face) covered_[s] = covered_[mirror(s)] = 0;
        walk_ = std::move(face);
    }

    void leaf() {
        if (faces_ < target_) return;
        found_ = true;
        best_faces_ = faces_;
        best_.rotation.assign(g_.n(), {});
        best_.twisted.clear();
        for (Vertex v = 0; v < g_.n(); ++v) {
            if (half_at_[v].empty()) continue;
            int h = half_at_[v].front();
            do {
                best_.rotation[v].push_back(g_.edges()[h >> 1].id);
                h = succ_[h];
            } while (h != half_at_[v].front());
        }
        for (int i = 0; i < E_; ++i)
            if (tw_[i] == 1) best_.twisted.insert(g_.edges()[i].id);
    }

    const Multigraph& g_;
    std::uint64_t budget_;
    int E_ = 0, S_ = 0;
    std::vector<int> endpoint_;
    std::vector<std::vector<int>> half_at_;
    std::vector<int> tw_;
    std::vector<int> succ_, pred_;
    std::vector<char> covered_;
    std::vector<int> walk_;
    int first_ = 0;
    int min_face_ = 3;
    int target_ = 0;
    int faces_ = 0;
    int uncovered_ = 0;
    bool found_ = false;
    std::uint64_t steps_ = 0;
    RotationSystem best_;
    int best_faces_ = 0;
};

// Working copy of one block with a log of genus-preserving reductions.
struct ReducedBlock {
    Multigraph graph;  // same vertex set as the block; suppressed vertices become isolated
    struct Step {
        enum Kind { suppress, drop_parallel } kind;
        Vertex x = -1;       // suppressed vertex
        EdgeId e1 = -1, e2 = -1, merged = -1;
        EdgeId parallel = -1, twin = -1;
    };
    std::vector<Step> log;
    Multigraph original_block;
};

inline ReducedBlock reduce_block(const Multigraph& block) {
    ReducedBlock r{block, {}, block};
    bool changed = true;
    while (changed) {
        changed = false;
        // drop parallel edges
        std::map<std::pair<int, int>, EdgeId> seen;
        for (const auto& e : r.graph.edges()) {
            auto [it, fresh] = seen.emplace(std::pair{e.u, e.v}, e.id);
            if (!fresh) {
                r.log.push_back({ReducedBlock::Step::drop_parallel, -1, -1, -1, -1, e.id, it->second});
                r.graph = delete_edge(r.graph, e.id);
                changed = true;
                break;
            }
        }
        if (changed) continue;
        auto deg = r.graph.degrees();
        if (r.graph.m() <= 3) break;
        for (Vertex x = 0; x < r.graph.n(); ++x) {
            if (deg[x] != 2) continue;
            std::vector<Edge> at;
            for (const auto& e : r.graph.edges())
                if (e.u == x || e.v == x) at.push_back(e);
            Vertex a = at[0].other(x), b = at[1].other(x);
            if (a == b) continue;
            Multigraph h = delete_edge(delete_edge(r.graph, at[0].id), at[1].id);
            EdgeId merged = h.add_edge(a, b);
            ReducedBlock::Step s{ReducedBlock::Step::suppress};
            s.x = x;
            s.e1 = at[0].id;
            s.e2 = at[1].id;
            s.merged = merged;
            r.log.push_back(s);
            r.graph = std::move(h);
            changed = true;
            break;
        }
    }
    return r;
}

// Replays the reduction log backwards on an embedding of r.graph.
inline RotationSystem lift_block_embedding(const ReducedBlock& r, RotationSystem rs) {
    // rebuild the intermediate graphs so face counting sees the right edges
    std::vector<Multigraph> stages{r.original_block};
    for (const auto& s : r.log) {
        const Multigraph& cur = stages.back();
        if (s.kind == ReducedBlock::Step::drop_parallel) {
            stages.push_back(delete_edge(cur, s.parallel));
        } else {
            Multigraph h = delete_edge(delete_edge(cur, s.e1), s.e2);
            const Edge& a = cur.edge(s.e1);
            const Edge& b = cur.edge(s.e2);
            h.add_edge_with_id(a.other(s.x), b.other(s.x), s.merged);
            stages.push_back(std::move(h));
        }
    }
    for (std::size_t i = r.log.size(); i-- > 0;) {
        const auto& s = r.log[i];
        const Multigraph& before = stages[i];
        if (s.kind == ReducedBlock::Step::drop_parallel) {
            insert_parallel(before, rs, s.parallel, s.twin);
        } else {
            const Edge& a = before.edge(s.e1);
            const Edge& b = before.edge(s.e2);
            Vertex ea = a.other(s.x), eb = b.other(s.x);
            bool tw = rs.is_twisted(s.merged);
            rs.twisted.erase(s.merged);
            for (auto& e : rs.rotation[ea])
                if (e == s.merged) e = s.e1;
            for (auto& e : rs.rotation[eb])
                if (e == s.merged) e = s.e2;
            rs.rotation[s.x] = {s.e1, s.e2};
            if (tw) rs.twisted.insert(s.e1);
        }
    }
    return rs;
}

struct BlockGenus {
    std::optional<int> genus;
    int lower_bound = 0;
    RotationSystem embedding;  // in block-local vertex numbering, block edge ids
    std::uint64_t steps = 0;
};

inline BlockGenus block_genus(const Multigraph& block, std::uint64_t budget) {
    BlockGenus out;
    auto planar = is_planar(block);
    if (planar.planar) {
        out.genus = 0;
        out.embedding = *planar.embedding;
        return out;
    }
    ReducedBlock r = reduce_block(block);
    Multigraph& h = r.graph;
    int E = h.m();
    int V = 0;
    for (int d : h.degrees())
        if (d > 0) ++V;
    int min_face = std::max(3, girth(h));
    int max_faces = (2 * E) / min_face;
    int lb = std::max(1, 2 - V + E - max_faces);
    int ub = E - V + 1;
    out.lower_bound = lb;
    GenusSearch search(h, budget);
    for (int g = lb; g <= ub; ++g) {
        try {
            if (search.search(2 - V + E - g)) {
                out.genus = 2 - V + E - search.best_faces();
                out.lower_bound = *out.genus;
                out.embedding = lift_block_embedding(r, search.best());
                out.steps = search.steps();
                return out;
            }
        } catch (const GenusSearch::BudgetExceeded&) {
            out.steps = search.steps();
            return out;
        }
        out.lower_bound = g + 1;
    }
    throw std::logic_error("genus search exhausted every target");
}

}  // namespace detail

/// Exact minimum Euler genus of a connected multigraph, or a lower bound
/// when the step budget is exhausted.
inline GenusResult euler_genus(const Multigraph& g, std::uint64_t budget = default_genus_budget) {
    if (!is_connected(g)) throw std::invalid_argument("euler_genus requires a connected graph");
    GenusResult res;
    auto planar = is_planar(g);
    if (planar.planar) {
        GenusCertificate c;
        c.genus = 0;
        c.embedding = *planar.embedding;
        c.face_count = count_faces(g, c.embedding);
        c.orientable = true;
        if (g.m() > 0 && g.n() - g.m() + c.face_count != 2) throw std::logic_error("planar embedding violates Euler's formula");
        if (g.m() == 0) c.face_count = 1;
        res.certificate = std::move(c);
        return res;
    }
    Multigraph simple = underlying_simple(g);
    auto bd = blocks_of(simple);
    struct Piece {
        std::vector<Vertex> verts;  // block-local -> global
        Multigraph local;
        detail::BlockGenus result;
    };
    std::vector<Piece> pieces;
    int total_lb = 0, total = 0;
    bool all_exact = true;
    std::uint64_t remaining = budget;
    for (const auto& blk : bd.blocks) {
        Piece p;
        std::map<Vertex, int> local;
        for (int ei : blk)
            for (Vertex x : {simple.edges()[ei].u, simple.edges()[ei].v})
                if (!local.count(x)) {
                    local[x] = static_cast<int>(p.verts.size());
                    p.verts.push_back(x);
                }
        p.local = Multigraph(static_cast<int>(p.verts.size()));
        for (int ei : blk) {
            const Edge& e = simple.edges()[ei];
            p.local.add_edge_with_id(local[e.u], local[e.v], e.id);
        }
        p.local.reserve_ids_from(simple.next_edge_id());
        p.result = detail::block_genus(p.local, remaining);
        res.steps += p.result.steps;
        remaining = remaining > p.result.steps ? remaining - p.result.steps : 0;
        if (p.result.genus) {
            total += *p.result.genus;
            total_lb += *p.result.genus;
        } else {
            all_exact = false;
            total_lb += p.result.lower_bound;
        }
        pieces.push_back(std::move(p));
    }
    res.lower_bound = std::max({total_lb, 1, euler_lower_bound(g)});
    if (!all_exact) return res;

    // merge block embeddings along the block-cut tree
    RotationSystem merged;
    merged.rotation.assign(g.n(), {});
    std::vector<char> embedded_vertex(g.n(), 0), used(pieces.size(), 0);
    Multigraph partial(g.n());
    partial.reserve_ids_from(simple.next_edge_id());
    int faces = 0;
    for (std::size_t round = 0; round < pieces.size(); ++round) {
        std::size_t pick = pieces.size();
        Vertex cut = -1;
        for (std::size_t i = 0; i < pieces.size() && pick == pieces.size(); ++i) {
            if (used[i]) continue;
            if (round == 0) {
                pick = i;
                break;
            }
            for (Vertex x : pieces[i].verts)
                if (embedded_vertex[x]) {
                    pick = i;
                    cut = x;
                    break;
                }
        }
        if (pick == pieces.size()) throw std::logic_error("block-cut tree traversal failed");
        used[pick] = 1;
        const Piece& p = pieces[pick];
        int block_faces = count_faces(p.local, p.result.embedding);
        for (const auto& e : p.local.edges()) partial.add_edge_with_id(p.verts[e.u], p.verts[e.v], e.id);
        if (round == 0) {
            for (int lv = 0; lv < p.local.n(); ++lv) merged.rotation[p.verts[lv]] = p.result.embedding.rotation[lv];
            merged.twisted = p.result.embedding.twisted;
            faces = block_faces;
        } else {
            bool placed = false;
            for (int mirror = 0; mirror < 2 && !placed; ++mirror) {
                RotationSystem blk = p.result.embedding;
                if (mirror)
                    for (auto& rot : blk.rotation) std::reverse(rot.begin(), rot.end());
                int local_cut = static_cast<int>(std::find(p.verts.begin(), p.verts.end(), cut) - p.verts.begin());
                std::size_t slots = merged.rotation[cut].size() + 1;
                for (std::size_t at = 0; at < slots && !placed; ++at) {
                    RotationSystem trial = merged;
                    for (int lv = 0; lv < p.local.n(); ++lv)
                        if (lv != local_cut) trial.rotation[p.verts[lv]] = blk.rotation[lv];
                    auto& rot = trial.rotation[cut];
                    rot.insert(rot.begin() + static_cast<long>(at), blk.rotation[local_cut].begin(), blk.rotation[local_cut].end());
                    trial.twisted.insert(blk.twisted.begin(), blk.twisted.end());
                    if (count_faces(partial, trial) == faces + block_faces - 1) {
                        merged = std::move(trial);
                        faces += block_faces - 1;
                        placed = true;
                    }
                }
            }
            if (!placed) throw std::logic_error("could not merge block embeddings at a cut vertex");
        }
        for (Vertex x : p.verts) embedded_vertex[x] = 1;
    }
    detail::lift_parallels(g, merged);
    GenusCertificate c;
    c.embedding = std::move(merged);
    c.face_count = count_faces(g, c.embedding);
    c.genus = 2 - g.n() + g.m() - c.face_count;
    c.orientable = is_orientable(g, c.embedding);
    if (c.genus != total) throw std::logic_error("lifted embedding does not attain the block genus sum");
    res.lower_bound = c.genus;
    res.certificate = std::move(c);
    return res;
}

/// g(G) >= g(G/B) + g(G[B]); nullopt when a genus computation ran out of budget.
inline std::optional<bool> check_genus_subadditivity(const Multigraph& g, const std::vector<Vertex>& B,
                                                     std::uint64_t budget = default_genus_budget) {
    if (!induces_connected(g, B)) throw std::invalid_argument("B must induce a connected subgraph");
    auto whole = euler_genus(g, budget);
    auto quotient = euler_genus(contract_set(g, B).graph, budget);
    auto inner = euler_genus(induced_subgraph(g, B).graph, budget);
    if (!whole.exact() || !quotient.exact() || !inner.exact()) return std::nullopt;
    return *whole.genus() >= *quotient.genus() + *inner.genus();
}

// ---------------------------------------------------------------------------
// Plane duals

struct PlaneDual {
    Multigraph graph;                     // one vertex per face; edge ids match the primal
    std::vector<FaceWalk> faces;
};

/// Dual of an orientable embedding; rejects bridges (they would become loops).
inline PlaneDual plane_dual(const Multigraph& g, const RotationSystem& rs) {
    if (!rs.twisted.empty()) throw std::invalid_argument("plane_dual expects an orientable (untwisted) embedding");
    detail::FaceTracer tr(g, rs);
    PlaneDual d;
    d.faces = tr.positive_faces();
    std::map<std::pair<EdgeId, Vertex>, int> face_of_dart;
    for (int f = 0; f < static_cast<int>(d.faces.size()); ++f)
        for (auto [v, e] : d.faces[f].darts) face_of_dart[{e, v}] = f;
    d.graph = Multigraph(static_cast<int>(d.faces.size()));
    for (const auto& e : g.edges()) {
        auto a = face_of_dart.find({e.id, e.u});
        auto b = face_of_dart.find({e.id, e.v});
        if (a == face_of_dart.end() || b == face_of_dart.end()) throw std::logic_error("edge missing from face walks");
        if (a->second == b->second) throw std::invalid_argument("bridge in plane graph: dual would have a loop");
        d.graph.add_edge_with_id(a->second, b->second, e.id);
    }
    return d;
}

}  // namespace nzflow
