// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>

#include <nzflow/nzflow.hpp>

#include "oracles.hpp"

using namespace nzflow;

namespace {

const Group Z3({3});
const Group Z4({4});
const Group Z22({2, 2});

struct Outcome {
    bool pass = true;
    std::string detail;
};

// Shared by criteria 5-7.
const CensusResult& zero_census_up_to_six() {
    static const CensusResult res = [] {
        CensusJob job = CensusJob::generated(1, 6);
        job.brute_rate = 0.1;
        return run_census(job);
    }();
    return res;
}

Outcome exceptional_fingerprint() {
    Outcome o;
    const auto& cat = dual_4ore_catalog(10);
    int bad = 0;
    for (const auto& e : cat) {
        const Multigraph& g = e.graph;
        auto gr = euler_genus(g);
        if (!gr.exact()) {
            ++bad;
            continue;
        }
        auto r = density_functionals(g, *gr.genus());
        if (2 * g.m() != 5 * g.n() - 8 || r.pi != 8) ++bad;
    }
    o.pass = bad == 0 && !cat.empty();
    o.detail = std::to_string(cat.size()) + " entries, " + std::to_string(bad) + " off";
    return o;
}

Outcome catalog_is_critical() {
    Outcome o;
    const auto& cat = dual_4ore_catalog(10);
    int non_critical = 0, disagree = 0, brute = 0;
    for (std::size_t i = 0; i < cat.size(); ++i) {
        const auto& e = cat[i];
        std::vector<int> zero(e.graph.n(), 0);
        bool fast = is_flow_critical_codes(e.graph, Z3, zero, CriticalityMode::fast);
        if (!fast) ++non_critical;
        if (i % 10 == 0) {
            ++brute;
            if (is_flow_critical_codes(e.graph, Z3, zero, CriticalityMode::brute) != fast) ++disagree;
        }
    }
    o.pass = non_critical == 0 && disagree == 0 && brute * 10 >= static_cast<int>(cat.size());
    o.detail = std::to_string(cat.size()) + " entries, " + std::to_string(non_critical) + " not critical, " + std::to_string(brute) +
               " brute-checked, " + std::to_string(disagree) + " disagreements";
    return o;
}

Outcome nonzero_boundaries_have_flows() {
    Outcome o;
    std::size_t boundaries = 0, failures = 0;
    for (const auto& e : dual_4ore_catalog(8)) {
        for_each_boundary(e.graph, Z3, [&](const std::vector<int>& beta) {
            if (std::all_of(beta.begin(), beta.end(), [](int c) { return c == 0; })) return true;
            ++boundaries;
            if (!has_nz_flow_codes(e.graph, Z3, beta)) ++failures;
            return true;
        });
    }
    o.pass = failures == 0 && boundaries > 0;
    o.detail = std::to_string(boundaries) + " nonzero boundaries, " + std::to_string(failures) + " without flow";
    return o;
}

Outcome k3n_plus_family() {
    Outcome o;
    std::ostringstream os;
    for (int n : {7, 8, 9}) {
        Multigraph g = k3n_plus(n);
        bool crit = is_flow_critical_codes(g, Z3, std::vector<int>(n, 0), CriticalityMode::fast);
        bool edges = g.m() == 3 * n - 8;
        if (!crit || !edges) o.pass = false;
        os << "n=" << n << " m=" << g.m() << (crit ? " critical; " : " NOT critical; ");
    }
    auto gr = euler_genus(k3n_plus(7));
    int expect = (7 - 5 + 1) / 2;
    if (!gr.exact() || *gr.genus() != expect) o.pass = false;
    os << "genus(n=7)=" << (gr.exact() ? std::to_string(*gr.genus()) : "unknown");
    o.detail = os.str();
    return o;
}

Outcome main_theorem_census() {
    Outcome o;
    const auto& res = zero_census_up_to_six();
    int critical = 0, violations = 0, tight = 0, mismatched = 0, unknown = 0;
    for (const auto& r : res.records) {
        if (!r.critical_zero_boundary) continue;
        ++critical;
        if (!r.genus) {
            ++unknown;
            continue;
        }
        int g = *r.genus;
        if (2 * r.m > 5 * r.n + 5 * g - 8) ++violations;
        bool is_tight = 2 * r.m == 5 * r.n + 5 * g - 8;
        tight += is_tight;
        if (!r.exceptional || is_tight != *r.exceptional) ++mismatched;
    }
    o.pass = violations == 0 && mismatched == 0 && unknown == 0 && res.summary.disagreements.empty() && critical > 0;
    o.detail = std::to_string(res.records.size()) + " graphs, " + std::to_string(critical) + " critical, " + std::to_string(tight) +
               " tight, " + std::to_string(violations) + " violations, " + std::to_string(mismatched) + " tight/exceptional mismatches";
    return o;
}

Outcome planar_nonexceptional_bound() {
    Outcome o;
    int checked = 0, violations = 0;
    for (const auto& r : zero_census_up_to_six().records) {
        if (!r.critical_zero_boundary || !r.genus || *r.genus != 0 || !r.exceptional || *r.exceptional) continue;
        ++checked;
        if (2 * r.m > 5 * r.n - 9) ++violations;
    }
    o.pass = violations == 0;
    o.detail = std::to_string(checked) + " planar non-exceptional critical graphs, " + std::to_string(violations) + " violations";
    return o;
}

Outcome li_bound() {
    Outcome o;
    int checked = 0, violations = 0;
    for (const auto& r : zero_census_up_to_six().records) {
        if (!r.critical_zero_boundary || (r.n == 2 && r.m == 1)) continue;
        ++checked;
        if (r.m > 4 * r.n - 10) ++violations;
    }
    o.pass = violations == 0 && checked > 0;
    o.detail = std::to_string(checked) + " critical graphs other than K2, " + std::to_string(violations) + " violations";
    return o;
}

Outcome no_small_sigma() {
    Outcome o;
    CensusJob job = CensusJob::generated(1, 5);
    job.mode = BoundaryMode::all;
    auto res = run_census(job);
    int hits = 0;
    for (const auto& r : res.records)
        if (r.critical_boundaries_count && *r.critical_boundaries_count > 0 && 3 * r.n - r.m < 5) ++hits;
    o.pass = hits == 0 && res.summary.sigma_below_five.empty();
    o.detail = std::to_string(res.records.size()) + " graphs, " + std::to_string(res.summary.critical_pairs) + " critical pairs, " +
               std::to_string(hits) + " with sigma < 5";
    return o;
}

Outcome tutte_duality() {
    Outcome o;
    int checked = 0, disagree = 0, from_catalog = 0;
    auto check = [&](const Multigraph& g, const RotationSystem& rs) {
        auto d = plane_dual(g, rs);
        bool colorable = is_k_colorable(g, 3);
        bool flow = has_nz_flow_codes(d.graph, Z3, std::vector<int>(d.graph.n(), 0));
        ++checked;
        if (colorable != flow) ++disagree;
    };
    for (const auto& g : primal_4ore_catalog(7)) {
        auto p = is_planar(g);
        if (!p.planar || !is_two_connected(g)) continue;
        // the dual of the entry and the entry itself, both as primals
        auto d = plane_dual(g, *p.embedding);
        check(g, *p.embedding);
        auto pd = is_planar(d.graph);
        if (pd.planar && is_two_connected(d.graph)) check(d.graph, *pd.embedding);
        ++from_catalog;
    }
    std::mt19937 rng(9001);
    for (int t = 0; t < 2000 && checked < 40; ++t) {
        int n = std::uniform_int_distribution<int>(4, 9)(rng);
        int m = std::uniform_int_distribution<int>(n, std::min(3 * n - 6, n * (n - 1) / 2))(rng);
        Multigraph g = oracle::random_connected_graph(rng, n, m);
        if (!is_two_connected(g)) continue;
        auto p = is_planar(g);
        if (!p.planar) continue;
        check(g, *p.embedding);
    }
    o.pass = disagree == 0 && checked >= 20 && from_catalog > 0;
    o.detail = std::to_string(checked) + " plane graphs (" + std::to_string(from_catalog) + " catalog entries), " +
               std::to_string(disagree) + " disagreements";
    return o;
}

Outcome group_independence() {
    Outcome o;
    std::mt19937 rng(9002);
    int checked = 0, mismatches = 0;
    while (checked < 60) {
        int n = std::uniform_int_distribution<int>(2, 6)(rng);
        int max_m = std::min(8, n * (n - 1) / 2);
        int m = std::uniform_int_distribution<int>(n - 1, max_m)(rng);
        Multigraph g = oracle::random_connected_graph(rng, n, m);
        auto z4 = count_nz_flows(BorderedGraph::zero(g, Z4));
        auto z22 = count_nz_flows(BorderedGraph::zero(g, Z22));
        auto dc = count_nz_flows_dc(g, 4);
        ++checked;
        if (z4 != z22 || static_cast<std::int64_t>(z4) != dc) ++mismatches;
    }
    o.pass = mismatches == 0;
    o.detail = std::to_string(checked) + " graphs, " + std::to_string(mismatches) + " mismatches";
    return o;
}

Outcome oracle_agreement() {
    Outcome o;
    int zero_checked = 0, sampled = 0, disagree = 0;
    std::vector<Multigraph> pool;
    for (int n = 1; n <= 5; ++n)
        for (auto& g : enumerate_connected_graphs(n)) {
            std::vector<int> zero(n, 0);
            ++zero_checked;
            if (is_flow_critical_codes(g, Z3, zero, CriticalityMode::fast) != is_flow_critical_codes(g, Z3, zero, CriticalityMode::brute))
                ++disagree;
            if (n >= 2) pool.push_back(std::move(g));
        }
    std::mt19937 rng(9003);
    while (sampled < 1000) {
        const Multigraph& g = pool[std::uniform_int_distribution<std::size_t>(0, pool.size() - 1)(rng)];
        auto beta = oracle::random_boundary(rng, Z3, g.n());
        if (std::all_of(beta.begin(), beta.end(), [](int c) { return c == 0; })) continue;
        ++sampled;
        if (is_flow_critical_codes(g, Z3, beta, CriticalityMode::fast) != is_flow_critical_codes(g, Z3, beta, CriticalityMode::brute))
            ++disagree;
    }
    o.pass = disagree == 0;
    o.detail = std::to_string(zero_checked) + " zero-boundary graphs, " + std::to_string(sampled) + " nonzero samples, " +
               std::to_string(disagree) + " disagreements";
    return o;
}

Outcome flower_snark_criterion() {
    Outcome o;
    Multigraph j5 = flower_snark(5);
    BorderedGraph bg = BorderedGraph::zero(j5, Z22);
    bool flow = has_nz_flow(bg).exists;
    bool critical = is_flow_critical(bg).is_critical;
    // direct check: contracting any single edge leaves a graph with a flow
    int edge_contractions_without_flow = 0;
    for (const auto& e : j5.edges()) {
        auto q = contract(bg, Partition::from_set(j5.n(), {e.u, e.v}));
        if (!has_nz_flow(q.bordered).exists) ++edge_contractions_without_flow;
    }
    o.pass = !flow && critical && edge_contractions_without_flow == 0;
    o.detail = std::string("n=") + std::to_string(j5.n()) + " m=" + std::to_string(j5.m()) + (flow ? ", has a Z2^2 flow" : ", no Z2^2 flow") +
               (critical ? ", critical" : ", not critical") + ", " +
               std::to_string(edge_contractions_without_flow) + " edge contractions without flow";
    return o;
}

Outcome genus_subadditivity() {
    Outcome o;
    std::mt19937 rng(9004);
    int held = 0, failed = 0, skipped = 0;
    for (int t = 0; t < 2000 && held + failed < 60; ++t) {
        int n = std::uniform_int_distribution<int>(4, 8)(rng);
        int m = std::uniform_int_distribution<int>(n, std::min(n * (n - 1) / 2, 3 * n))(rng);
        Multigraph g = oracle::random_connected_graph(rng, n, m);
        // a connected B grown from a random vertex
        int size = std::uniform_int_distribution<int>(2, n - 1)(rng);
        std::vector<Vertex> B{std::uniform_int_distribution<int>(0, n - 1)(rng)};
        while (static_cast<int>(B.size()) < size) {
            std::vector<Vertex> frontier;
            const auto inc = g.incidence();
            for (Vertex v : B)
                for (auto idx : inc[v]) {
                    Vertex w = g.edges()[idx].other(v);
                    if (std::find(B.begin(), B.end(), w) == B.end()) frontier.push_back(w);
                }
            if (frontier.empty()) break;
            B.push_back(frontier[std::uniform_int_distribution<std::size_t>(0, frontier.size() - 1)(rng)]);
        }
        auto r = check_genus_subadditivity(g, B);
        if (!r)
            ++skipped;
        else if (*r)
            ++held;
        else
            ++failed;
    }
    o.pass = failed == 0 && held >= 50;
    o.detail = std::to_string(held) + " held, " + std::to_string(failed) + " failed, " + std::to_string(skipped) + " over budget";
    return o;
}

Outcome contraction_monotonicity() {
    Outcome o;
    std::mt19937 rng(9005);
    int transported = 0, failed = 0;
    for (int t = 0; t < 20000 && transported < 600; ++t) {
        int n = std::uniform_int_distribution<int>(2, 6)(rng);
        int m = std::uniform_int_distribution<int>(n - 1, std::min(8, n * (n - 1) / 2 + 2))(rng);
        Multigraph g = oracle::random_connected_graph(rng, n, m, false);
        const Group& A = t % 3 == 0 ? Z4 : (t % 3 == 1 ? Z22 : Z3);
        BorderedGraph bg = BorderedGraph::from_codes(g, A, oracle::random_boundary(rng, A, n));
        auto v = has_nz_flow(bg);
        if (!v.exists) continue;
        Partition p = oracle::random_partition(rng, n);
        auto q = contract(bg, p);
        ++transported;
        try {
            Flow moved = transport_flow(A, *v.witness, g, q.bordered.graph, q.vertex_map);
            if (!check_flow(q.bordered, moved)) ++failed;
        } catch (const std::exception&) {
            ++failed;
        }
    }
    o.pass = failed == 0 && transported >= 500;
    o.detail = std::to_string(transported) + " triples, " + std::to_string(failed) + " failures";
    return o;
}

// K2,n-2 with (0,1) everywhere except one hub, which gets (0,0).
std::vector<int> k2n_boundary(int n) {
    std::vector<int> codes(n, Z22.encode(GroupElement{{0, 1}}));
    codes[0] = 0;
    return codes;
}

// Criticality checked with oracle flow counts on G and on every G/e.
bool critical_by_oracle(const Multigraph& g, const Group& A, const std::vector<int>& beta) {
    if (oracle::count_flows(g, A, beta) != 0) return false;
    BorderedGraph bg = BorderedGraph::from_codes(g, A, beta);
    for (const auto& e : g.edges()) {
        auto q = contract(bg, Partition::from_set(g.n(), {e.u, e.v}));
        std::vector<int> qb;
        for (const auto& x : q.bordered.beta) qb.push_back(A.encode(x));
        if (oracle::count_flows(q.bordered.graph, A, qb) == 0) return false;
    }
    return true;
}

Outcome bordered_k2n() {
    Outcome o;
    int bad = 0;
    std::ostringstream os;
    for (int n : {5, 7}) {
        Multigraph g = complete_bipartite(2, n - 2);
        if (g.m() != 2 * n - 4 || !is_planar(g).planar) ++bad;
        auto beta = k2n_boundary(n);
        if (!is_flow_critical_codes(g, Z22, beta, CriticalityMode::fast) || !critical_by_oracle(g, Z22, beta)) ++bad;
        auto z4 = critical_boundaries(g, Z4, true);
        if (z4.empty()) {
            ++bad;
        } else {
            std::vector<int> codes;
            for (const auto& x : z4.front()) codes.push_back(Z4.encode(x));
            if (!critical_by_oracle(g, Z4, codes)) ++bad;
        }
        os << "K2," << n - 2 << ": " << z4.size() << " Z4 classes; ";
    }
    // every bordered Z2^2 / Z4 critical graph other than K2 has m <= 2n - 4
    int pairs = 0, over = 0;
    for (const Group* A : {&Z22, &Z4}) {
        CensusJob job = CensusJob::generated(3, 5);
        job.group = *A;
        job.mode = BoundaryMode::all;
        job.genus = false;
        for (const auto& r : run_census(job).records) {
            if (!r.critical_boundaries_count || *r.critical_boundaries_count == 0) continue;
            pairs += *r.critical_boundaries_count;
            if (r.m > 2 * r.n - 4) ++over;
        }
    }
    o.pass = bad == 0 && over == 0 && pairs > 0;
    os << pairs << " critical pairs on 3-5 vertices, " << over << " above 2n - 4";
    o.detail = os.str();
    return o;
}

}  // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
        {"exceptional fingerprint: catalog(10) has 2m = 5n - 8 and pi = 8", exceptional_fingerprint},
        {"catalog(10) entries are Z3-flow-critical (10% brute cross-check)", catalog_is_critical},
        {"catalog entries up to 8 vertices have flows for every nonzero boundary", nonzero_boundaries_have_flows},
        {"k3n_plus(7,8,9) critical with 3n - 8 edges; genus(k3n_plus(7)) = 1", k3n_plus_family},
        {"main theorem over the n <= 6 census; tight exactly when exceptional", main_theorem_census},
        {"planar non-exceptional critical graphs satisfy 2m <= 5n - 9", planar_nonexceptional_bound},
        {"critical graphs other than K2 satisfy m <= 4n - 10", li_bound},
        {"all-boundaries census n <= 5 finds no critical pair with sigma < 5", no_small_sigma},
        {"3-colorability of a plane graph equals Z3-flow existence in its dual", tutte_duality},
        {"Z4, Z2^2 and deletion-contraction flow counts agree", group_independence},
        {"fast and brute criticality agree (n <= 5 zero boundary, 1000 nonzero samples)", oracle_agreement},
        {"flower_snark(5) has no Z2^2 flow and is Z2^2-flow-critical", flower_snark_criterion},
        {"genus subadditivity on random within-budget instances", genus_subadditivity},
        {"flows transport through contractions", contraction_monotonicity},
        {"K2,n-2 is flow-critical with bordered Z2^2 and Z4 boundaries; bordered pairs stay within 2n - 4", bordered_k2n},
    };
    int failures = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (!o.pass) ++failures;
        std::printf("%s  %2zu  %s  [%s; %.1fs]\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(), o.detail.c_str(), secs);
        std::fflush(stdout);
    }
    std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
    return failures == 0 ? 0 : 1;
}
