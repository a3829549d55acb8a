#pragma once

// JSON / CSV serialization and graph input (JSON edge lists, DIMACS,
// graph6 / sparse6 lines, or literal graph6 / sparse6 strings).

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "census.hpp"
#include "constructions.hpp"
#include "density.hpp"
#include "flow.hpp"
#include "graph6.hpp"
#include "topology.hpp"

namespace nzflow {

using json = nlohmann::json;

inline json to_json(const Multigraph& g) {
    json edges = json::array();
    bool plain_ids = true;
    for (std::size_t i = 0; i < g.edges().size(); ++i) {
        const Edge& e = g.edges()[i];
        edges.push_back({e.u, e.v});
        if (e.id != static_cast<EdgeId>(i)) plain_ids = false;
    }
    json j{{"n", g.n()}, {"edges", edges}};
    if (!plain_ids) {
        json ids = json::array();
        for (const auto& e : g.edges()) ids.push_back(e.id);
        j["ids"] = ids;
    }
    return j;
}

inline Multigraph graph_from_json(const json& j) {
    if (!j.contains("n") || !j.contains("edges")) throw FormatError("graph JSON needs \"n\" and \"edges\"");
    Multigraph g(j.at("n").get<int>());
    const json& edges = j.at("edges");
    bool with_ids = j.contains("ids");
    if (with_ids && j.at("ids").size() != edges.size()) throw FormatError("\"ids\" and \"edges\" differ in length");
    for (std::size_t i = 0; i < edges.size(); ++i) {
        const json& e = edges[i];
        if (!e.is_array() || e.size() != 2) throw FormatError("each edge must be a pair [u, v]");
        int u = e[0].get<int>(), v = e[1].get<int>();
        if (with_ids)
            g.add_edge_with_id(u, v, j.at("ids")[i].get<int>());
        else
            g.add_edge(u, v);
    }
    return g;
}

inline json to_json(const RotationSystem& rs) {
    json j{{"rotation", rs.rotation}};
    if (!rs.twisted.empty()) j["twisted"] = std::vector<EdgeId>(rs.twisted.begin(), rs.twisted.end());
    return j;
}

inline RotationSystem rotation_from_json(const json& j) {
    RotationSystem rs;
    rs.rotation = j.at("rotation").get<std::vector<std::vector<EdgeId>>>();
    if (j.contains("twisted"))
        for (EdgeId e : j.at("twisted").get<std::vector<EdgeId>>()) rs.twisted.insert(e);
    return rs;
}

inline json to_json(const GenusCertificate& c) {
    json j = to_json(c.embedding);
    j["genus"] = c.genus;
    j["face_count"] = c.face_count;
    j["orientable"] = c.orientable;
    return j;
}

/// {"n", "edges", optional "rotation"}; without a rotation the planarity
/// test supplies one.
inline PlaneGraph plane_graph_from_json(const json& j) {
    Multigraph g = graph_from_json(j);
    if (j.contains("rotation")) return PlaneGraph(g, rotation_from_json(j));
    return PlaneGraph::from_planar(g);
}

inline json to_json(const PlaneGraph& p) {
    json j = to_json(p.graph());
    j["rotation"] = p.rotation().rotation;
    return j;
}

inline json element_json(const Group& A, const GroupElement& x) {
    if (A.rank() == 1) return x.residues[0];
    return x.residues;
}

inline json to_json(const Group& A, const Flow& f) {
    json j = json::array();
    for (const auto& [id, x] : f.values) j.push_back({{"edge", id}, {"value", element_json(A, x)}});
    return j;
}

inline json to_json(const Partition& p) { return p.parts(); }

inline json to_json(const DensityReport& r) {
    json j{{"n", r.n}, {"m", r.m}, {"sigma", r.sigma}, {"sigma_prime", r.sigma_prime}, {"vacuous", r.vacuous}};
    j["genus"] = r.genus ? json(*r.genus) : json("unknown");
    j["pi"] = r.pi ? json(*r.pi) : json("unknown");
    json b = json::object();
    for (const auto& [k, v] : r.bounds) b[k] = to_string(v);
    j["bounds"] = b;
    return j;
}

inline json to_json(const CensusRecord& r) {
    json j{{"canonical", r.canonical}, {"n", r.n}, {"m", r.m}, {"critical_zero_boundary", r.critical_zero_boundary}};
    if (r.critical_boundaries_count) {
        j["critical_boundaries_count"] = *r.critical_boundaries_count;
        j["critical_boundaries"] = r.critical_boundaries;
    }
    j["genus"] = r.genus ? json(*r.genus) : json("unknown");
    j["genus_lower_bound"] = r.genus_lower_bound;
    if (r.exceptional) j["exceptional"] = *r.exceptional;
    j["brute_checked"] = r.brute_checked;
    j["report"] = to_json(r.report);
    return j;
}

inline json to_json(const EmpiricalRatio& r) {
    if (!r.value()) return nullptr;
    return json{{"num", r.num}, {"den", r.den}, {"value", *r.value()}, {"witness", r.witness}};
}

inline json to_json(const CensusSummary& s) {
    json v = json::array();
    for (const auto& [k, what] : s.violations) v.push_back({{"canonical", k}, {"bound", what}});
    return json{{"graphs", s.graphs},
                {"critical", s.critical},
                {"violations", v},
                {"tight", s.tight},
                {"disagreements", s.disagreements},
                {"genus_unknown", s.genus_unknown},
                {"critical_pairs", s.critical_pairs},
                {"sigma_below_five", s.sigma_below_five},
                {"brute_checks", s.brute_checks},
                {"empirical",
                 {{"edges_per_vertex", to_json(s.edges_per_vertex)},
                  {"genus_slope", to_json(s.genus_slope)},
                  {"bordered_edges_per_vertex", to_json(s.bordered_edges_per_vertex)}}},
                {"ok", s.ok()}};
}

inline std::string census_csv(const std::vector<CensusRecord>& records) {
    std::ostringstream os;
    os << "canonical,n,m,critical_zero_boundary,critical_boundaries_count,genus,genus_lower_bound,pi,sigma,sigma_prime,"
          "main_theorem,conjecture_general,conjecture_n7,li_theorem,planar_nonexceptional,vacuous\n";
    for (const auto& r : records) {
        // sparse6 never contains commas or quotes, so no escaping is needed
        os << r.canonical << ',' << r.n << ',' << r.m << ',' << (r.critical_zero_boundary ? 1 : 0) << ',';
        if (r.critical_boundaries_count) os << *r.critical_boundaries_count;
        os << ',' << (r.genus ? std::to_string(*r.genus) : "unknown") << ',' << r.genus_lower_bound << ','
           << (r.report.pi ? std::to_string(*r.report.pi) : "unknown") << ',' << r.report.sigma << ',' << r.report.sigma_prime;
        for (const char* b : {bound_main_theorem, bound_conjecture_general, bound_conjecture_n7, bound_li_theorem, bound_planar_nonexceptional}) {
            auto it = r.report.bounds.find(b);
            os << ',' << (it == r.report.bounds.end() ? "" : to_string(it->second));
        }
        os << ',' << (r.report.vacuous ? 1 : 0) << '\n';
    }
    return os.str();
}

inline json provenance_json(const Provenance& p) {
    if (p.is_base()) return json{{"base", "K4"}};
    return json{{"left", p.left}, {"right", p.right}, {"u1", p.u1}, {"v1", p.v1}, {"edge", p.edge}, {"swap_ends", p.swap_ends}};
}

/// Writes <prefix>.s6 (one sparse6 line per entry) and <prefix>.json.
inline void save_catalog(const std::vector<CatalogEntry>& cat, const std::filesystem::path& prefix) {
    std::ofstream s6(prefix.string() + ".s6");
    json side = json::array();
    for (std::size_t i = 0; i < cat.size(); ++i) {
        s6 << encode_sparse6(cat[i].graph) << '\n';
        side.push_back({{"index", i},
                        {"canonical", cat[i].canonical},
                        {"provenance", provenance_json(cat[i].provenance)},
                        {"embedding", to_json(cat[i].embedding)}});
    }
    std::ofstream js(prefix.string() + ".json");
    js << side.dump(2) << '\n';
    if (!s6 || !js) throw std::runtime_error("could not write catalog files at " + prefix.string());
}

namespace detail {

// DIMACS lines are "p edge ..." / "c ..."; graph6 can also start with 'p' or 'c'.
inline bool looks_like_dimacs(const std::string& text, std::size_t start) {
    if (start + 1 >= text.size()) return false;
    char c = text[start], d = text[start + 1];
    return (c == 'p' || c == 'c') && (d == ' ' || d == '\t' || d == '\n' || d == '\r');
}

}  // namespace detail

inline std::string read_file(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + p.string());
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

/// All graph6 / sparse6 lines of a text (blank lines skipped).
inline std::vector<Multigraph> parse_graph_lines(const std::string& text) {
    std::vector<Multigraph> out;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        auto t = detail::trim_line(line);
        if (t.empty()) continue;
        out.push_back(parse_graph_line(t));
    }
    return out;
}

/// A file path (JSON, DIMACS, or graph6/sparse6 - first line) or a literal
/// graph6/sparse6 string.
inline Multigraph read_graph(const std::string& arg) {
    std::error_code ec;
    if (!std::filesystem::is_regular_file(arg, ec)) return parse_graph_line(arg);
    std::string text = read_file(arg);
    std::size_t start = text.find_first_not_of(" \t\r\n");
    if (start == std::string::npos) throw FormatError("empty graph file " + arg);
    char c = text[start];
    if (c == '{') return graph_from_json(json::parse(text));
    if (detail::looks_like_dimacs(text, start)) return parse_dimacs(text);
    auto gs = parse_graph_lines(text);
    return gs.front();
}

/// Every graph in a file: JSON (one object or an array), DIMACS, or one
/// graph6/sparse6 per line.
inline std::vector<Multigraph> read_graphs(const std::string& path) {
    std::string text = read_file(path);
    std::size_t start = text.find_first_not_of(" \t\r\n");
    if (start == std::string::npos) return {};
    char c = text[start];
    if (c == '{') return {graph_from_json(json::parse(text))};
    if (c == '[') {
        std::vector<Multigraph> out;
        for (const auto& j : json::parse(text)) out.push_back(graph_from_json(j));
        return out;
    }
    if (detail::looks_like_dimacs(text, start)) return {parse_dimacs(text)};
    return parse_graph_lines(text);
}

}  // namespace nzflow
