// Command-line front end: flow, critical, census, construct, genus, bounds, duality.
// Exit codes: 0 = checks pass, 1 = usage or input error, 2 = violation or disagreement.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include <nzflow/nzflow.hpp>

using namespace nzflow;

namespace {

constexpr int exit_violation = 2;

BorderedGraph bordered(const std::string& graph_arg, const std::string& group_spec, const std::string& beta_spec) {
    Multigraph g = read_graph(graph_arg);
    Group A = parse_group(group_spec);
    if (beta_spec.empty()) return BorderedGraph::zero(std::move(g), std::move(A));
    auto beta = parse_boundary(A, beta_spec);
    return BorderedGraph{std::move(g), std::move(A), std::move(beta)};
}

void emit(const json& j) { std::cout << j.dump(2) << '\n'; }

int cmd_flow(const std::string& graph, const std::string& group, const std::string& beta, bool count) {
    BorderedGraph bg = bordered(graph, group, beta);
    auto verdict = has_nz_flow(bg);
    json j{{"group", bg.group.name()}, {"exists", verdict.exists}};
    if (verdict.witness) j["witness"] = to_json(bg.group, *verdict.witness);
    if (count) j["count"] = count_nz_flows(bg);
    emit(j);
    return 0;
}

int cmd_critical(const std::string& graph, const std::string& group, const std::string& beta, const std::string& mode, bool all,
                 bool unreduced) {
    BorderedGraph bg = bordered(graph, group, beta);
    if (mode != "fast" && mode != "brute") throw CLI::ValidationError("--mode", "must be fast or brute");
    CriticalityMode cm = mode == "fast" ? CriticalityMode::fast : CriticalityMode::brute;
    if (all) {
        auto list = critical_boundaries(bg.graph, bg.group, !unreduced);
        json arr = json::array();
        for (const auto& b : list) {
            json one = json::array();
            for (const auto& x : b) one.push_back(element_json(bg.group, x));
            arr.push_back(one);
        }
        emit(json{{"group", bg.group.name()}, {"up_to_symmetry", !unreduced}, {"count", list.size()}, {"critical_boundaries", arr}});
        return 0;
    }
    auto v = is_flow_critical(bg, cm);
    json j{{"group", bg.group.name()}, {"mode", mode}, {"critical", v.is_critical}, {"witness_kind", nullptr}, {"witness", nullptr}};
    if (v.flow_witness) {
        j["witness_kind"] = "flow";
        j["witness"] = to_json(bg.group, *v.flow_witness);
    } else if (v.partition_witness) {
        j["witness_kind"] = "partition";
        j["witness"] = to_json(*v.partition_witness);
    }
    emit(j);
    return 0;
}

int cmd_census(std::optional<int> max_n, int min_n, int max_mult, const std::string& input, const std::string& group, bool all, bool genus,
               std::uint64_t budget, double brute_rate, int threads, const std::string& out_dir) {
    CensusJob job;
    if (!input.empty())
        job.graphs = read_graphs(input);
    else if (max_n)
        job = CensusJob::generated(min_n, *max_n, max_mult);
    else
        throw CLI::ValidationError("census", "either --n or --input is required");
    job.group = parse_group(group);
    job.mode = all ? BoundaryMode::all : BoundaryMode::zero;
    job.genus = genus;
    job.genus_budget = budget;
    job.brute_rate = brute_rate;
    job.threads = threads;
    auto result = run_census(job);
    json records = json::array();
    for (const auto& r : result.records) records.push_back(to_json(r));
    json summary = to_json(result.summary);
    std::filesystem::create_directories(out_dir);
    std::ofstream(std::filesystem::path(out_dir) / "records.json") << records.dump(2) << '\n';
    std::ofstream(std::filesystem::path(out_dir) / "records.csv") << census_csv(result.records);
    std::ofstream(std::filesystem::path(out_dir) / "summary.json") << summary.dump(2) << '\n';
    emit(summary);
    for (const auto& d : result.summary.disagreements) std::cerr << "disagreement: " << d << '\n';
    for (const auto& [k, what] : result.summary.violations) std::cerr << "violation: " << k << " " << what << '\n';
    return result.summary.ok() ? 0 : exit_violation;
}

int cmd_construct(const std::string& family, int param, const std::string& out) {
    if (family == "dual4ore") {
        const auto& cat = dual_4ore_catalog(param);
        if (!out.empty()) save_catalog(cat, out);
        for (const auto& e : cat) std::cout << encode_graph_line(e.graph) << '\n';
        return 0;
    }
    std::vector<Multigraph> gs;
    if (family == "4ore")
        gs = primal_4ore_catalog(param);
    else if (family == "k3nplus")
        gs.push_back(k3n_plus(param));
    else if (family == "flower")
        gs.push_back(flower_snark(param));
    else
        throw CLI::ValidationError("--family", "unknown family '" + family + "'");
    std::ofstream file;
    if (!out.empty()) file.open(out);
    for (const auto& g : gs) {
        std::string line = encode_graph_line(g);
        std::cout << line << '\n';
        if (file) file << line << '\n';
    }
    return 0;
}

int cmd_genus(const std::string& graph, std::uint64_t budget) {
    Multigraph g = read_graph(graph);
    auto r = euler_genus(g, budget);
    json j{{"n", g.n()}, {"m", g.m()}, {"lower_bound", r.lower_bound}, {"steps", r.steps}};
    if (r.certificate) {
        j["genus"] = r.certificate->genus;
        j["certificate"] = to_json(*r.certificate);
    } else {
        j["genus"] = "unknown";
    }
    emit(j);
    return 0;
}

int cmd_bounds(const std::string& graph, std::optional<int> genus, std::uint64_t budget) {
    Multigraph g = read_graph(graph);
    if (!genus && is_connected(g)) genus = euler_genus(g, budget).genus();
    bool critical = is_connected(g) && is_flow_critical_codes(g, Group({3}), std::vector<int>(g.n(), 0), CriticalityMode::fast);
    std::optional<bool> exceptional = is_exceptional(g);
    auto report = density_report(g, genus, CriticalityContext{critical, exceptional});
    json j = to_json(report);
    j["critical_z3"] = critical;
    j["exceptional"] = exceptional ? json(*exceptional) : json("unknown");
    emit(j);
    return report.any_failure() ? exit_violation : 0;
}

int cmd_duality(const std::string& path) {
    PlaneGraph p = plane_graph_from_json(json::parse(read_file(path)));
    auto dual = plane_dual(p.graph(), p.rotation());
    bool colorable = is_k_colorable(p.graph(), 3);
    bool flow = has_nz_flow_codes(dual.graph, Group({3}), std::vector<int>(dual.graph.n(), 0));
    emit(json{{"primal_3_colorable", colorable}, {"dual_nz_z3_flow", flow}, {"agree", colorable == flow}, {"dual", to_json(dual.graph)}});
    return colorable == flow ? 0 : exit_violation;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Nowhere-zero group flows: existence, criticality, genus, density censuses"};
    app.require_subcommand(1);

    std::string graph, group = "3", beta, mode = "fast", input, out, family, plane;
    bool count = false, all = false, unreduced = false, genus_flag = false;
    std::optional<int> max_n, genus_value;
    int min_n = 1, max_mult = 1, param = 0, threads = 0;
    double brute_rate = 0.1;
    std::uint64_t budget = default_genus_budget;

    auto* flow = app.add_subcommand("flow", "nowhere-zero flow existence (and count)");
    flow->add_option("--graph", graph, "graph file or graph6/sparse6 string")->required();
    flow->add_option("--group", group, "cyclic factor orders, e.g. 3 or 2,2");
    flow->add_option("--beta", beta, "boundary, e.g. 1,1,1,0 or 1,0;0,1;... for products");
    flow->add_flag("--count", count, "also count nowhere-zero flows");

    auto* crit = app.add_subcommand("critical", "flow-criticality test");
    crit->add_option("--graph", graph)->required();
    crit->add_option("--group", group);
    crit->add_option("--beta", beta);
    crit->add_option("--mode", mode, "fast or brute");
    crit->add_flag("--all-boundaries", all, "list all critical boundaries");
    crit->add_flag("--unreduced", unreduced, "do not reduce boundaries by symmetry");

    auto* census = app.add_subcommand("census", "exhaustive census over small graphs");
    census->add_option("--n", max_n, "largest vertex count (built-in generator, <= 8)");
    census->add_option("--min-n", min_n, "smallest vertex count");
    census->add_option("--max-multiplicity", max_mult, "also generate multigraphs (n <= 5)")->check(CLI::PositiveNumber);
    census->add_option("--input", input, "graph6/sparse6 file instead of the generator");
    census->add_option("--group", group);
    census->add_flag("--all-boundaries", all);
    census->add_flag("--genus", genus_flag, "compute Euler genus for each graph");
    census->add_option("--genus-budget", budget);
    census->add_option("--brute-rate", brute_rate, "fraction of verdicts re-checked by brute force");
    census->add_option("--threads", threads);
    census->add_option("--out", out, "output directory")->required();

    auto* construct = app.add_subcommand("construct", "emit a graph family member");
    construct->add_option("--family", family, "dual4ore | 4ore | k3nplus | flower")->required();
    construct->add_option("--param", param, "max_n, n, or k")->required();
    construct->add_option("--out", out, "file (or catalog prefix for dual4ore)");

    auto* genus = app.add_subcommand("genus", "exact Euler genus with certificate");
    genus->add_option("--graph", graph)->required();
    genus->add_option("--budget", budget);

    auto* bounds = app.add_subcommand("bounds", "density functionals and bound checks");
    bounds->add_option("--graph", graph)->required();
    bounds->add_option("--genus", genus_value);
    bounds->add_option("--budget", budget);

    auto* duality = app.add_subcommand("duality", "3-colorability of a plane graph vs Z3 flows in its dual");
    duality->add_option("--plane-graph", plane, "JSON with n, edges and optional rotation")->required();

    CLI11_PARSE(app, argc, argv);
    try {
        if (*flow) return cmd_flow(graph, group, beta, count);
        if (*crit) return cmd_critical(graph, group, beta, mode, all, unreduced);
        if (*census) return cmd_census(max_n, min_n, max_mult, input, group, all, genus_flag, budget, brute_rate, threads, out);
        if (*construct) return cmd_construct(family, param, out);
        if (*genus) return cmd_genus(graph, budget);
        if (*bounds) return cmd_bounds(graph, genus_value, budget);
        if (*duality) return cmd_duality(plane);
    } catch (const CLI::Error& e) {
        return app.exit(e);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 1;
}
