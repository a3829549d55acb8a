// Flow existence, counting and criticality on a few small graphs.

#include <iostream>

#include <nzflow/nzflow.hpp>

using namespace nzflow;

int main() {
    const Group z3({3});
    const Group z22({2, 2});

    Multigraph petersen = petersen_graph();
    std::cout << "Petersen graph, nowhere-zero flows:\n";
    for (const auto& orders : {std::vector<int>{3}, std::vector<int>{4}, std::vector<int>{2, 2}, std::vector<int>{5}}) {
        Group a(orders);
        BorderedGraph bg = BorderedGraph::zero(petersen, a);
        std::cout << "  " << a.name() << ": " << (has_nz_flow(bg).exists ? "yes" : "no") << "\n";
    }

    // K4 has no nowhere-zero Z3 flow, but every proper contraction does
    BorderedGraph k4 = BorderedGraph::zero(complete_graph(4), z3);
    auto verdict = is_flow_critical(k4);
    std::cout << "K4 is Z3-flow-critical: " << std::boolalpha << verdict.is_critical << "\n";

    // a triangle with a flow, and the boundary that makes it critical
    Multigraph c3 = cycle_graph(3);
    std::cout << "C3 has " << count_nz_flows(BorderedGraph::zero(c3, z3)) << " nowhere-zero Z3 flows\n";
    for (const auto& beta : critical_boundaries(c3, z3, true)) {
        std::cout << "  critical boundary:";
        for (const auto& x : beta) std::cout << ' ' << z3.encode(x);
        std::cout << "\n";
    }

    // flow counts depend only on the group order
    Multigraph k4g = complete_graph(4);
    std::cout << "K4 flows: Z4 " << count_nz_flows(BorderedGraph::zero(k4g, Group({4}))) << ", Z2^2 "
              << count_nz_flows(BorderedGraph::zero(k4g, z22)) << ", flow polynomial at 4 " << count_nz_flows_dc(k4g, 4) << "\n";
}
