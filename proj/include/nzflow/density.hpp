#pragma once

// Density functionals and edge-count bounds for flow-critical graphs.
// All arithmetic is integral; halves are cleared by doubling both sides.

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "constructions.hpp"
#include "multigraph.hpp"

namespace nzflow {

enum class BoundStatus { pass, fail, not_applicable, unknown };

inline std::string to_string(BoundStatus s) {
    switch (s) {
        case BoundStatus::pass: return "pass";
        case BoundStatus::fail: return "fail";
        case BoundStatus::not_applicable: return "not-applicable";
        case BoundStatus::unknown: return "unknown";
    }
    return "unknown";
}

// Bound names used as report keys.
inline constexpr const char* bound_main_theorem = "main_theorem";            // 2m <= 5n + 5g - 8
inline constexpr const char* bound_conjecture_general = "conjecture_general";  // m <= 3n - 5
inline constexpr const char* bound_conjecture_n7 = "conjecture_n7";          // m <= 3n - 8 for n >= 7
inline constexpr const char* bound_li_theorem = "li_theorem";                // m <= 4n - 10 unless K2
inline constexpr const char* bound_planar_nonexceptional = "planar_nonexceptional";  // 2m <= 5n - 9 (planar, not exceptional)

struct CriticalityContext {
    bool critical = true;               // bounds are claims about critical graphs
    std::optional<bool> exceptional;    // needed for the planar non-exceptional bound
};

struct DensityReport {
    int n = 0, m = 0;
    std::optional<int> genus;
    std::optional<int> pi;
    int sigma = 0;
    int sigma_prime = 0;
    std::map<std::string, BoundStatus> bounds;
    bool vacuous = false;  // graph not critical: raw inequalities only

    bool any_failure() const {
        if (vacuous) return false;
        for (const auto& [k, v] : bounds)
            if (v == BoundStatus::fail) return true;
        return false;
    }
    /// 2m == 5n + 5g - 8.
    std::optional<bool> main_theorem_tight() const {
        if (!genus) return std::nullopt;
        return 2 * m == 5 * n + 5 * *genus - 8;
    }
};

inline std::optional<int> pi_value(int n, int m, std::optional<int> genus) {
    if (!genus) return std::nullopt;
    return 5 * n - 2 * m + 5 * *genus;
}

inline DensityReport density_functionals(const Multigraph& g, std::optional<int> genus) {
    if (genus && *genus < 0) throw std::invalid_argument("genus must be nonnegative");
    DensityReport r;
    r.n = g.n();
    r.m = g.m();
    r.genus = genus;
    r.pi = pi_value(r.n, r.m, genus);
    r.sigma = 3 * r.n - r.m;
    r.sigma_prime = 4 * r.n - r.m;
    return r;
}

/// Exceptional, or pi >= 9. nullopt when neither can be decided.
inline std::optional<bool> is_sparse(const Multigraph& g, std::optional<int> genus, int cap = default_catalog_cap) {
    auto pi = pi_value(g.n(), g.m(), genus);
    if (pi && *pi >= 9) return true;
    auto ex = is_exceptional(g, cap);
    if (ex && *ex) return true;
    if (!pi || !ex) return std::nullopt;
    return false;
}

struct PartitionWeight {
    int n_p = 0;  // parts of size > 1 not inducing an exceptional graph
    int k_p = 0;  // parts inducing an exceptional graph
    int w = 0;    // 4 n_p + 3 k_p

    friend bool operator==(const PartitionWeight&, const PartitionWeight&) = default;
};

inline PartitionWeight partition_weight(const Multigraph& g, const Partition& p, int cap = default_catalog_cap) {
    if (p.n() != g.n()) throw std::invalid_argument("partition size does not match graph");
    PartitionWeight pw;
    for (const auto& part : p.parts()) {
        if (part.size() < 2) continue;
        auto ex = is_exceptional(induced_subgraph(g, part).graph, cap);
        if (!ex) throw CapExceeded("partition_weight: part too large for exceptional recognition");
        if (*ex)
            ++pw.k_p;
        else
            ++pw.n_p;
    }
    pw.w = 4 * pw.n_p + 3 * pw.k_p;
    return pw;
}

inline std::map<std::string, BoundStatus> check_bounds(const Multigraph& g, std::optional<int> genus, const CriticalityContext& ctx = {}) {
    int n = g.n(), m = g.m();
    auto cmp = [](bool ok) { return ok ? BoundStatus::pass : BoundStatus::fail; };
    std::map<std::string, BoundStatus> b;
    b[bound_main_theorem] = genus ? cmp(2 * m <= 5 * n + 5 * *genus - 8) : BoundStatus::unknown;
    b[bound_conjecture_general] = cmp(m <= 3 * n - 5);
    b[bound_conjecture_n7] = n >= 7 ? cmp(m <= 3 * n - 8) : BoundStatus::not_applicable;
    b[bound_li_theorem] = is_k2(g) ? BoundStatus::not_applicable : cmp(m <= 4 * n - 10);
    if (!genus)
        b[bound_planar_nonexceptional] = BoundStatus::unknown;
    else if (*genus != 0)
        b[bound_planar_nonexceptional] = BoundStatus::not_applicable;
    else if (!ctx.exceptional)
        b[bound_planar_nonexceptional] = BoundStatus::unknown;
    else if (*ctx.exceptional)
        b[bound_planar_nonexceptional] = BoundStatus::not_applicable;
    else
        b[bound_planar_nonexceptional] = cmp(2 * m <= 5 * n - 9);
    return b;
}

/// Functionals plus bounds; bounds are marked vacuous for non-critical graphs.
inline DensityReport density_report(const Multigraph& g, std::optional<int> genus, const CriticalityContext& ctx) {
    DensityReport r = density_functionals(g, genus);
    r.bounds = check_bounds(g, genus, ctx);
    r.vacuous = !ctx.critical;
    return r;
}

}  // namespace nzflow
