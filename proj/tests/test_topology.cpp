#include <random>

#include <gtest/gtest.h>

#include <nzflow/nzflow.hpp>

#include "oracles.hpp"

using namespace nzflow;

namespace {

// rotation by edge index, for the flag oracle (graphs here have ids == indices)
std::vector<std::vector<int>> as_indices(const Multigraph& g, const RotationSystem& rs) {
    std::vector<std::vector<int>> out(g.n());
    for (Vertex v = 0; v < g.n(); ++v)
        for (EdgeId id : rs.rotation[v]) out[v].push_back(static_cast<int>(*g.index_of(id)));
    return out;
}

std::vector<char> twisted_mask(const Multigraph& g, const RotationSystem& rs) {
    std::vector<char> out(g.m(), 0);
    for (EdgeId id : rs.twisted) out[*g.index_of(id)] = 1;
    return out;
}

// number of rotation systems times cotree signatures the oracle would visit
double oracle_cost(const Multigraph& g) {
    double cost = 1;
    for (int d : g.degrees())
        for (int k = 2; k < d; ++k) cost *= k;
    for (int i = 0; i < g.m() - g.n() + 1; ++i) cost *= 2;
    return cost;
}

void expect_valid_certificate(const Multigraph& g, const GenusCertificate& c) {
    ASSERT_TRUE(is_complete_rotation(g, c.embedding));
    int faces = oracle::count_faces_flags(g, as_indices(g, c.embedding), twisted_mask(g, c.embedding));
    EXPECT_EQ(faces, c.face_count);
    EXPECT_EQ(count_faces(g, c.embedding), c.face_count);
    EXPECT_EQ(c.genus, 2 - g.n() + g.m() - c.face_count);
    EXPECT_EQ(c.orientable, is_orientable(g, c.embedding));
}

Multigraph two_k5_sharing_vertex() {
    Multigraph g = disjoint_union(complete_graph(5), complete_graph(4));
    for (Vertex v = 5; v < 9; ++v) g.add_edge(0, v);
    return g;
}

bool three_connected(const Multigraph& g) {
    if (g.n() < 4) return false;
    for (Vertex a = 0; a < g.n(); ++a)
        for (Vertex b = a + 1; b < g.n(); ++b) {
            std::vector<Vertex> rest;
            for (Vertex v = 0; v < g.n(); ++v)
                if (v != a && v != b) rest.push_back(v);
            if (!induces_connected(g, rest)) return false;
        }
    return true;
}

Multigraph cube() {
    return from_edge_list(8, {{0, 1}, {1, 2}, {2, 3}, {3, 0}, {4, 5}, {5, 6}, {6, 7}, {7, 4}, {0, 4}, {1, 5}, {2, 6}, {3, 7}});
}

}  // namespace

TEST(Faces, FlagOracleAgreesWithTracer) {
    std::mt19937 rng(31);
    for (int t = 0; t < 200; ++t) {
        int n = std::uniform_int_distribution<int>(2, 7)(rng);
        int m = std::uniform_int_distribution<int>(n - 1, n + 5)(rng);
        Multigraph g = oracle::random_connected_graph(rng, n, m, false);
        RotationSystem rs;
        rs.rotation.resize(n);
        auto inc = g.incidence();
        for (Vertex v = 0; v < n; ++v) {
            auto r = inc[v];
            std::shuffle(r.begin(), r.end(), rng);
            for (int i : r) rs.rotation[v].push_back(g.edges()[i].id);
        }
        for (const auto& e : g.edges())
            if (std::uniform_int_distribution<int>(0, 2)(rng) == 0) rs.twisted.insert(e.id);
        EXPECT_EQ(count_faces(g, rs), oracle::count_faces_flags(g, as_indices(g, rs), twisted_mask(g, rs)));
        // every edge side is used exactly twice over all face walks
        std::map<EdgeId, int> uses;
        for (const auto& f : trace_faces(g, rs))
            for (auto [v, e] : f.darts) ++uses[e];
        for (const auto& e : g.edges()) EXPECT_EQ(uses[e.id], 2);
    }
}

TEST(Planarity, Examples) {
    EXPECT_TRUE(is_planar(complete_graph(4)).planar);
    EXPECT_FALSE(is_planar(complete_graph(5)).planar);
    EXPECT_FALSE(is_planar(complete_bipartite(3, 3)).planar);
    EXPECT_FALSE(is_planar(k3n_plus(7)).planar);
    EXPECT_FALSE(is_planar(petersen_graph()).planar);
    EXPECT_TRUE(is_planar(cube()).planar);
    EXPECT_TRUE(is_planar(Multigraph(1)).planar);
    EXPECT_TRUE(is_planar(from_edge_list(2, {{0, 1}, {0, 1}, {0, 1}})).planar);
}

TEST(Planarity, CertificatesCheckOut) {
    std::mt19937 rng(32);
    for (int t = 0; t < 150; ++t) {
        int n = std::uniform_int_distribution<int>(3, 9)(rng);
        int m = std::uniform_int_distribution<int>(n - 1, std::min(3 * n, n * (n - 1) / 2))(rng);
        Multigraph g = oracle::random_connected_graph(rng, n, m, t % 3 != 0);
        auto r = is_planar(g);
        if (r.planar) {
            ASSERT_TRUE(r.embedding);
            EXPECT_TRUE(is_complete_rotation(g, *r.embedding));
            EXPECT_TRUE(r.embedding->twisted.empty());
            EXPECT_EQ(g.n() - g.m() + count_faces(g, *r.embedding), 2);
        } else {
            EXPECT_TRUE(oracle::is_kuratowski_subdivision(g, r.kuratowski_edges)) << encode_graph_line(g);
        }
    }
}

TEST(Planarity, AgreesWithExhaustiveGenusOnSmallGraphs) {
    std::mt19937 rng(33);
    int tried = 0;
    for (int t = 0; t < 400 && tried < 60; ++t) {
        int n = std::uniform_int_distribution<int>(3, 6)(rng);
        int m = std::uniform_int_distribution<int>(n, std::min(10, n * (n - 1) / 2))(rng);
        Multigraph g = oracle::random_connected_graph(rng, n, m);
        if (oracle_cost(g) > 2e5) continue;
        ++tried;
        EXPECT_EQ(is_planar(g).planar, oracle::euler_genus_exhaustive(g) == 0);
    }
    EXPECT_GE(tried, 30);
}

TEST(Genus, Examples) {
    EXPECT_EQ(euler_genus(complete_graph(4)).genus(), 0);
    EXPECT_EQ(euler_genus(complete_graph(5)).genus(), 1);
    EXPECT_EQ(euler_genus(complete_bipartite(3, 3)).genus(), 1);
    EXPECT_EQ(euler_genus(k3n_plus(7)).genus(), 1);
    EXPECT_EQ(euler_genus(two_k5_sharing_vertex()).genus(), 2);
    EXPECT_EQ(euler_genus(petersen_graph()).genus(), 1);
    EXPECT_EQ(euler_genus(Multigraph(1)).genus(), 0);
    EXPECT_THROW(euler_genus(Multigraph(2)), std::invalid_argument);
}

// Euler genus from the classical orientable and nonorientable genus formulas
// for complete and complete bipartite graphs: min(2 * orientable, nonorientable).
TEST(Genus, ClassicalFamilies) {
    auto ceil_div = [](int a, int b) { return (a + b - 1) / b; };
    for (int n = 5; n <= 8; ++n) {
        int orientable = ceil_div((n - 3) * (n - 4), 12);
        int nonorientable = n == 7 ? 3 : ceil_div((n - 3) * (n - 4), 6);
        auto r = euler_genus(complete_graph(n));
        ASSERT_TRUE(r.exact()) << "K" << n;
        EXPECT_EQ(*r.genus(), std::min(2 * orientable, nonorientable)) << "K" << n;
    }
    for (int a = 3; a <= 5; ++a)
        for (int b = a; b <= 6; ++b) {
            int orientable = ceil_div((a - 2) * (b - 2), 4);
            int nonorientable = ceil_div((a - 2) * (b - 2), 2);
            auto r = euler_genus(complete_bipartite(a, b));
            ASSERT_TRUE(r.exact()) << "K" << a << "," << b;
            EXPECT_EQ(*r.genus(), std::min(2 * orientable, nonorientable)) << "K" << a << "," << b;
            expect_valid_certificate(complete_bipartite(a, b), *r.certificate);
        }
}

TEST(Genus, ExamplesMatchExhaustiveOracle) {
    EXPECT_EQ(oracle::euler_genus_exhaustive(complete_graph(5)), 1);
    EXPECT_EQ(oracle::euler_genus_exhaustive(complete_bipartite(3, 3)), 1);
    EXPECT_EQ(oracle::euler_genus_exhaustive(complete_graph(4)), 0);
}

TEST(Genus, CertificatesAreValid) {
    for (const auto& g : {complete_graph(4), complete_graph(5), complete_bipartite(3, 3), k3n_plus(7), two_k5_sharing_vertex(),
                          petersen_graph(), cube(), from_edge_list(3, {{0, 1}, {0, 1}, {1, 2}, {1, 2}, {0, 2}})}) {
        auto r = euler_genus(g);
        ASSERT_TRUE(r.exact());
        EXPECT_EQ(r.lower_bound, *r.genus());
        expect_valid_certificate(g, *r.certificate);
    }
}

TEST(Genus, AgreesWithExhaustiveOracleOnRandomGraphs) {
    std::mt19937 rng(34);
    int tried = 0;
    for (int t = 0; t < 600 && tried < 60; ++t) {
        int n = std::uniform_int_distribution<int>(3, 7)(rng);
        bool simple = t % 4 == 0;
        int m = std::uniform_int_distribution<int>(n, std::min(12, n * (n - 1) / 2 + (simple ? 0 : 2)))(rng);
        Multigraph g = oracle::random_connected_graph(rng, n, m, simple);
        if (oracle_cost(g) > 3e5) continue;
        ++tried;
        auto r = euler_genus(g);
        ASSERT_TRUE(r.exact());
        EXPECT_EQ(*r.genus(), oracle::euler_genus_exhaustive(g)) << encode_graph_line(g);
        expect_valid_certificate(g, *r.certificate);
    }
    EXPECT_GE(tried, 40);
}

TEST(Genus, BudgetExhaustionReportsLowerBoundOnly) {
    for (const auto& g : {complete_graph(5), k3n_plus(7), petersen_graph(), complete_bipartite(4, 4)}) {
        auto small = euler_genus(g, 5);
        if (small.exact()) continue;
        EXPECT_FALSE(small.genus());
        auto full = euler_genus(g, 50'000'000);
        if (full.exact()) EXPECT_LE(small.lower_bound, *full.genus());
    }
    EXPECT_FALSE(euler_genus(k3n_plus(7), 5).exact());
}

TEST(Genus, EulerLowerBound) {
    EXPECT_EQ(euler_lower_bound(complete_graph(5)), 1);
    EXPECT_EQ(euler_lower_bound(complete_graph(4)), 0);
    EXPECT_EQ(euler_lower_bound(complete_graph(7)), 2);
    for (int n = 3; n <= 6; ++n)
        for (const auto& g : enumerate_connected_graphs(n)) {
            auto r = euler_genus(g);
            if (r.exact()) EXPECT_GE(*r.genus(), euler_lower_bound(g));
        }
}

TEST(Genus, MonotoneUnderEdgeDeletion) {
    for (const auto& g : {complete_graph(5), complete_bipartite(3, 3), k3n_plus(7)}) {
        int whole = *euler_genus(g).genus();
        for (const auto& e : g.edges()) {
            Multigraph h = delete_edge(g, e.id);
            auto r = euler_genus(h);
            ASSERT_TRUE(r.exact());
            EXPECT_LE(*r.genus(), whole);
        }
    }
}

TEST(Genus, MonotoneUnderContraction) {
    for (const auto& g : {complete_graph(5), complete_bipartite(3, 3), k3n_plus(7)}) {
        int whole = *euler_genus(g).genus();
        for (const auto& e : g.edges()) {
            auto r = euler_genus(contract_set(g, {e.u, e.v}).graph);
            ASSERT_TRUE(r.exact());
            EXPECT_LE(*r.genus(), whole);
        }
    }
}

TEST(Genus, InvariantUnderRelabeling) {
    std::mt19937 rng(35);
    for (const auto& g : {complete_graph(5), k3n_plus(7), two_k5_sharing_vertex()}) {
        int base = *euler_genus(g).genus();
        for (int t = 0; t < 3; ++t) EXPECT_EQ(euler_genus(oracle::permute_vertices_random(g, rng)).genus(), base);
    }
}

TEST(Subadditivity, Examples) {
    EXPECT_EQ(check_genus_subadditivity(complete_graph(5), {0, 1, 2}), true);
    EXPECT_EQ(check_genus_subadditivity(complete_graph(5), {3}), true);
    Multigraph two = two_k5_sharing_vertex();
    EXPECT_EQ(check_genus_subadditivity(two, {0, 1, 2, 3, 4}), true);
    EXPECT_EQ(euler_genus(contract_set(two, {0, 1, 2, 3, 4}).graph).genus(), 1);
    EXPECT_EQ(euler_genus(induced_subgraph(two, {0, 1, 2, 3, 4}).graph).genus(), 1);
    EXPECT_THROW(check_genus_subadditivity(complete_graph(4), {}), std::invalid_argument);
    EXPECT_THROW(check_genus_subadditivity(cycle_graph(5), {0, 2}), std::invalid_argument);
}

TEST(Subadditivity, RandomInstances) {
    std::mt19937 rng(36);
    int checked = 0;
    for (int t = 0; t < 400 && checked < 50; ++t) {
        int n = std::uniform_int_distribution<int>(4, 8)(rng);
        int m = std::uniform_int_distribution<int>(n, std::min(16, n * (n - 1) / 2))(rng);
        Multigraph g = oracle::random_connected_graph(rng, n, m);
        std::vector<Vertex> B;
        for (Vertex v = 0; v < n; ++v)
            if (std::uniform_int_distribution<int>(0, 1)(rng)) B.push_back(v);
        if (B.empty() || !induces_connected(g, B)) continue;
        auto ok = check_genus_subadditivity(g, B, 2'000'000);
        if (!ok) continue;
        EXPECT_TRUE(*ok) << encode_graph_line(g);
        ++checked;
    }
    EXPECT_GE(checked, 50);
}

TEST(PlaneDual, Examples) {
    auto k4 = is_planar(complete_graph(4));
    auto d = plane_dual(complete_graph(4), *k4.embedding);
    EXPECT_TRUE(is_isomorphic(d.graph, complete_graph(4)));
    auto c = is_planar(cube());
    auto oct = plane_dual(cube(), *c.embedding);
    EXPECT_EQ(oct.graph.n(), 6);
    EXPECT_EQ(oct.graph.m(), 12);
    for (int deg : oct.graph.degrees()) EXPECT_EQ(deg, 4);
    auto c5 = is_planar(cycle_graph(5));
    auto theta = plane_dual(cycle_graph(5), *c5.embedding);
    EXPECT_EQ(theta.graph.n(), 2);
    EXPECT_EQ(theta.graph.multiplicity(0, 1), 5);
    auto p3 = is_planar(path_graph(3));
    EXPECT_THROW(plane_dual(path_graph(3), *p3.embedding), std::invalid_argument);
}

TEST(PlaneDual, DualOfDualIsOriginal) {
    std::mt19937 rng(37);
    int done = 0;
    for (int t = 0; t < 300 && done < 40; ++t) {
        int n = std::uniform_int_distribution<int>(3, 8)(rng);
        int m = std::uniform_int_distribution<int>(n, std::min(3 * n - 6, n * (n - 1) / 2))(rng);
        if (m < n) continue;
        Multigraph g = oracle::random_connected_graph(rng, n, m);
        if (!is_two_connected(g)) continue;
        auto p = is_planar(g);
        if (!p.planar) continue;
        auto d = plane_dual(g, *p.embedding);
        EXPECT_EQ(g.n() - g.m() + d.graph.n(), 2);
        auto dp = is_planar(d.graph);
        ASSERT_TRUE(dp.planar);
        auto dd = plane_dual(d.graph, *dp.embedding);
        EXPECT_EQ(dd.graph.n(), g.n());
        // 3-connected planar graphs have a unique embedding, so the double dual is G itself
        if (three_connected(g)) EXPECT_TRUE(is_isomorphic(dd.graph, g));
        ++done;
    }
    EXPECT_GE(done, 20);
}
