// Builds the exceptional catalog and prints the density report of each entry,
// then the report for a non-planar critical graph.

#include <iostream>

#include <nzflow/nzflow.hpp>

using namespace nzflow;

int main(int argc, char** argv) {
    int max_n = argc > 1 ? std::stoi(argv[1]) : 10;
    const auto& catalog = dual_4ore_catalog(max_n);
    std::cout << catalog.size() << " exceptional graphs with at most " << max_n << " vertices\n";
    for (const auto& e : catalog) {
        auto report = density_report(e.graph, 0, {true, true});
        std::cout << "  " << e.canonical << "  n=" << report.n << " m=" << report.m << " pi=" << *report.pi
                  << (e.provenance.is_base() ? "  (K4)" : "") << "\n";
    }

    Multigraph g = k3n_plus(7);
    auto genus = euler_genus(g);
    auto report = density_report(g, genus.genus(), {true, is_exceptional(g)});
    std::cout << "k3n_plus(7): genus " << *genus.genus() << ", pi " << *report.pi << ", sigma " << report.sigma << "\n";
    for (const auto& [bound, status] : report.bounds) std::cout << "  " << bound << ": " << to_string(status) << "\n";
}
