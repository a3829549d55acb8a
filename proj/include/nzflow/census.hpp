#pragma once

// Exhaustive small-graph census: enumerate (or ingest) graphs, run the
// criticality / genus / density pipeline on each, and summarize bound
// compliance. Output order is by canonical key, independent of scheduling.

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <functional>
#include <map>
#include <mutex>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "canonical.hpp"
#include "constructions.hpp"
#include "criticality.hpp"
#include "density.hpp"
#include "flow.hpp"
#include "topology.hpp"

namespace nzflow {

inline constexpr int generator_cap = 8;

/// All simple graphs on n vertices up to isomorphism (sorted by canonical
/// key), by adding one edge at a time and deduplicating canonical forms.
inline std::vector<Multigraph> enumerate_graphs(int n, std::optional<int> edge_count = std::nullopt) {
    if (n < 0) throw std::invalid_argument("negative vertex count");
    if (n > generator_cap) throw CapExceeded("built-in generator is capped at n = " + std::to_string(generator_cap));
    int max_m = n * (n - 1) / 2;
    int stop = edge_count ? std::min(*edge_count, max_m) : max_m;
    std::vector<std::pair<std::string, Multigraph>> out;
    std::map<std::string, Multigraph> level;
    Multigraph empty(n);
    level.emplace(canonical_form(empty), empty);
    for (int m = 0; m <= stop; ++m) {
        if (!edge_count || *edge_count == m)
            for (const auto& [k, g] : level) out.emplace_back(k, g);
        if (m == stop) break;
        std::map<std::string, Multigraph> next;
        for (const auto& [k, g] : level)
            for (Vertex a = 0; a < n; ++a)
                for (Vertex b = a + 1; b < n; ++b) {
                    if (g.multiplicity(a, b)) continue;
                    Multigraph h = g;
                    h.add_edge(a, b);
                    Multigraph c = canonical_graph(h);
                    std::string key = canonical_form(c);
                    next.emplace(std::move(key), std::move(c));
                }
        level = std::move(next);
    }
    std::sort(out.begin(), out.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
    std::vector<Multigraph> graphs;
    for (auto& [k, g] : out) graphs.push_back(std::move(g));
    return graphs;
}

inline std::vector<Multigraph> enumerate_connected_graphs(int n, std::optional<int> edge_count = std::nullopt) {
    std::vector<Multigraph> out;
    for (auto& g : enumerate_graphs(n, edge_count))
        if (is_connected(g)) out.push_back(std::move(g));
    return out;
}

inline constexpr int multigraph_generator_cap = 5;

/// Connected loopless multigraphs on n vertices with every edge multiplicity
/// at most max_mult, up to isomorphism, sorted by canonical key.
inline std::vector<Multigraph> enumerate_connected_multigraphs(int n, int max_mult) {
    if (n < 0 || max_mult < 1) throw std::invalid_argument("bad multigraph generator arguments");
    if (max_mult == 1) return enumerate_connected_graphs(n);
    if (n > multigraph_generator_cap)
        throw CapExceeded("multigraph generator is capped at n = " + std::to_string(multigraph_generator_cap));
    std::map<std::string, Multigraph> all, level;
    Multigraph empty(n);
    level.emplace(canonical_form(empty), empty);
    while (!level.empty()) {
        std::map<std::string, Multigraph> next;
        for (const auto& [k, g] : level) {
            all.emplace(k, g);
            for (Vertex a = 0; a < n; ++a)
                for (Vertex b = a + 1; b < n; ++b) {
                    if (g.multiplicity(a, b) >= max_mult) continue;
                    Multigraph h = g;
                    h.add_edge(a, b);
                    Multigraph c = canonical_graph(h);
                    std::string key = canonical_form(c);
                    if (!all.count(key)) next.emplace(std::move(key), std::move(c));
                }
        }
        level = std::move(next);
    }
    std::vector<Multigraph> out;
    for (auto& [k, g] : all)
        if (is_connected(g)) out.push_back(std::move(g));
    return out;
}

enum class BoundaryMode { zero, all };

struct CensusJob {
    std::vector<Multigraph> graphs;  // filled from a generator range or a graph6 file
    Group group = Group({3});
    BoundaryMode mode = BoundaryMode::zero;
    bool genus = true;
    std::uint64_t genus_budget = default_genus_budget;
    double brute_rate = 0.0;  // fraction of verdicts re-checked by brute force
    int all_boundaries_max_n = 6;
    int threads = 0;  // 0 = hardware concurrency

    /// max_mult > 1 adds multigraphs (off by default).
    static CensusJob generated(int min_n, int max_n, int max_mult = 1) {
        CensusJob job;
        for (int n = min_n; n <= max_n; ++n)
            for (auto& g : enumerate_connected_multigraphs(n, max_mult)) job.graphs.push_back(std::move(g));
        return job;
    }
};

struct CensusRecord {
    std::string canonical;
    int n = 0, m = 0;
    bool critical_zero_boundary = false;
    std::optional<int> critical_boundaries_count;          // all-boundaries mode
    std::vector<std::vector<int>> critical_boundaries;     // orbit representatives (codes)
    std::optional<int> genus;
    int genus_lower_bound = 0;
    std::optional<bool> exceptional;
    bool brute_checked = false;
    DensityReport report;
};

/// Largest num/den seen, with the graph attaining it. Reported, not judged.
struct EmpiricalRatio {
    long num = 0, den = 0;
    std::string witness;

    void offer(long a, long b, const std::string& key) {
        if (b <= 0) return;
        if (den == 0 || a * den > num * b) {
            num = a;
            den = b;
            witness = key;
        }
    }
    std::optional<double> value() const {
        if (den == 0) return std::nullopt;
        return static_cast<double>(num) / static_cast<double>(den);
    }
};

struct CensusSummary {
    std::size_t graphs = 0;
    std::vector<std::string> critical;                       // canonical keys, zero boundary
    std::vector<std::pair<std::string, std::string>> violations;  // (canonical, what)
    std::vector<std::string> tight;                          // main-theorem tight
    std::vector<std::string> disagreements;                  // fast vs brute, with witnesses
    std::vector<std::string> genus_unknown;
    std::size_t critical_pairs = 0;                          // all-boundaries: critical (G, beta) classes
    std::vector<std::string> sigma_below_five;               // all-boundaries, Z3: critical pairs with sigma < 5
    std::size_t brute_checks = 0;
    EmpiricalRatio edges_per_vertex;         // critical, zero boundary: m / n
    EmpiricalRatio genus_slope;              // critical with genus g > 0: (m - 5n/2 + 4) / g
    EmpiricalRatio bordered_edges_per_vertex;  // all-boundaries: m / n over critical pairs

    bool ok() const { return violations.empty() && disagreements.empty(); }
};

struct CensusResult {
    std::vector<CensusRecord> records;
    CensusSummary summary;
};

namespace detail {

// FNV-1a; stable across runs so brute sampling is reproducible.
inline std::uint64_t stable_hash(const std::string& s) {
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

inline bool sampled(const std::string& key, double rate) {
    if (rate <= 0) return false;
    if (rate >= 1) return true;
    return static_cast<double>(stable_hash(key) % 1000000) < rate * 1e6;
}

inline std::string codes_to_string(const std::vector<int>& codes) {
    std::string s;
    for (std::size_t i = 0; i < codes.size(); ++i) s += (i ? "," : "") + std::to_string(codes[i]);
    return s;
}

inline std::string partition_to_string(const Partition& p) {
    std::string s = "{";
    for (std::size_t i = 0; i < p.parts().size(); ++i) {
        s += i ? "|" : "";
        for (std::size_t j = 0; j < p.parts()[i].size(); ++j) s += (j ? "," : "") + std::to_string(p.parts()[i][j]);
    }
    return s + "}";
}

struct Analysis {
    CensusRecord record;
    std::vector<std::string> disagreements;
};

inline std::string compare_modes(const Multigraph& g, const Group& A, const std::vector<int>& beta, const std::string& key) {
    std::optional<Partition> wf, wb;
    bool fast = is_flow_critical_codes(g, A, beta, CriticalityMode::fast, &wf);
    bool brute = is_flow_critical_codes(g, A, beta, CriticalityMode::brute, &wb);
    if (fast == brute) return {};
    std::ostringstream os;
    os << key << " beta=" << codes_to_string(beta) << " fast=" << fast << " brute=" << brute;
    if (wf) os << " fast_witness=" << partition_to_string(*wf);
    if (wb) os << " brute_witness=" << partition_to_string(*wb);
    return os.str();
}

inline Analysis analyze(const Multigraph& input, const CensusJob& job) {
    Analysis a;
    CensusRecord& r = a.record;
    Multigraph g = canonical_graph(input);
    r.canonical = canonical_form(g);
    r.n = g.n();
    r.m = g.m();
    const Group& A = job.group;
    std::vector<int> zero(g.n(), 0);
    r.critical_zero_boundary = is_connected(g) && is_flow_critical_codes(g, A, zero, CriticalityMode::fast);
    bool check = detail::sampled(r.canonical, job.brute_rate) && is_connected(g);
    if (check) {
        r.brute_checked = true;
        auto d = compare_modes(g, A, zero, r.canonical);
        if (!d.empty()) a.disagreements.push_back(d);
    }
    if (job.mode == BoundaryMode::all && g.n() <= job.all_boundaries_max_n && is_connected(g)) {
        std::vector<std::vector<int>> gens = canonical_form_full(g).automorphisms;
        int count = 0;
        for_each_boundary(g, A, [&](const std::vector<int>& codes) {
            if (detail::orbit_minimum(A, gens, codes) != codes) return true;
            bool crit = is_flow_critical_codes(g, A, codes, CriticalityMode::fast);
            if (check) {
                auto d = compare_modes(g, A, codes, r.canonical);
                if (!d.empty()) a.disagreements.push_back(d);
            }
            if (crit) {
                ++count;
                r.critical_boundaries.push_back(codes);
            }
            return true;
        });
        r.critical_boundaries_count = count;
    }
    if (job.genus && is_connected(g)) {
        auto gr = euler_genus(g, job.genus_budget);
        r.genus = gr.genus();
        r.genus_lower_bound = gr.lower_bound;
    }
    if (r.critical_zero_boundary) r.exceptional = is_exceptional(g);
    CriticalityContext ctx{r.critical_zero_boundary, r.exceptional};
    r.report = density_report(g, r.genus, ctx);
    return a;
}

}  // namespace detail

/// Runs the job over a worker pool; records come back sorted by canonical key.
inline CensusResult run_census(const CensusJob& job) {
    std::size_t total = job.graphs.size();
    std::vector<detail::Analysis> results(total);
    std::atomic<std::size_t> next{0};
    std::mutex err_mu;
    std::exception_ptr error;
    unsigned workers = job.threads > 0 ? static_cast<unsigned>(job.threads) : std::max(1u, std::thread::hardware_concurrency());
    workers = static_cast<unsigned>(std::min<std::size_t>(workers, std::max<std::size_t>(total, 1)));
    // build the exceptional catalog before workers start
    if (!job.graphs.empty()) {
        int max_n = 0;
        for (const auto& g : job.graphs) max_n = std::max(max_n, g.n());
        dual_4ore_catalog(std::min(max_n, default_catalog_cap));
    }
    auto work = [&] {
        while (true) {
            std::size_t i = next.fetch_add(1);
            if (i >= total) return;
            try {
                results[i] = detail::analyze(job.graphs[i], job);
            } catch (...) {
                std::lock_guard<std::mutex> lock(err_mu);
                if (!error) error = std::current_exception();
                next = total;
                return;
            }
        }
    };
    std::vector<std::thread> pool;
    for (unsigned t = 1; t < workers; ++t) pool.emplace_back(work);
    work();
    for (auto& t : pool) t.join();
    if (error) std::rethrow_exception(error);

    std::stable_sort(results.begin(), results.end(),
                     [](const detail::Analysis& x, const detail::Analysis& y) { return x.record.canonical < y.record.canonical; });
    CensusResult out;
    CensusSummary& s = out.summary;
    s.graphs = total;
    bool z3 = job.group.orders() == std::vector<int>{3};
    for (auto& a : results) {
        CensusRecord& r = a.record;
        for (auto& d : a.disagreements) s.disagreements.push_back(d);
        if (r.brute_checked) ++s.brute_checks;
        if (r.n > 0 && !r.genus && job.genus) s.genus_unknown.push_back(r.canonical);
        if (r.critical_zero_boundary) {
            s.critical.push_back(r.canonical);
            s.edges_per_vertex.offer(r.m, r.n, r.canonical);
            if (r.genus && *r.genus > 0) s.genus_slope.offer(2L * r.m - 5L * r.n + 8, 2L * *r.genus, r.canonical);
            if (z3) {
                for (const auto& [name, st] : r.report.bounds)
                    if (st == BoundStatus::fail) s.violations.emplace_back(r.canonical, name);
                auto tight = r.report.main_theorem_tight();
                if (tight && *tight) s.tight.push_back(r.canonical);
                if (tight && r.exceptional && *tight != *r.exceptional)
                    s.violations.emplace_back(r.canonical, "tightness_differs_from_exceptional");
            }
        }
        if (r.critical_boundaries_count) {
            s.critical_pairs += static_cast<std::size_t>(*r.critical_boundaries_count);
            if (*r.critical_boundaries_count > 0) s.bordered_edges_per_vertex.offer(r.m, r.n, r.canonical);
            if (z3 && *r.critical_boundaries_count > 0 && r.report.sigma < 5)
                for (const auto& b : r.critical_boundaries) s.sigma_below_five.push_back(r.canonical + " beta=" + detail::codes_to_string(b));
        }
        out.records.push_back(std::move(r));
    }
    return out;
}

}  // namespace nzflow
