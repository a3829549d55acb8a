// Exact Euler genus with an embedding certificate for graphs given as
// graph6/sparse6 strings on the command line.

#include <iostream>

#include <nzflow/nzflow.hpp>

int main(int argc, char** argv) {
    if (argc < 2) {
        std::cerr << "usage: sample_genus <graph6> [...]\n";
        return 1;
    }
    for (int i = 1; i < argc; ++i) {
        nzflow::Multigraph g = nzflow::parse_graph_line(argv[i]);
        auto r = nzflow::euler_genus(g);
        std::cout << argv[i] << ": n=" << g.n() << " m=" << g.m();
        if (r.exact())
            std::cout << " genus=" << *r.genus() << (r.certificate->orientable ? " (orientable embedding)" : " (nonorientable embedding)")
                      << " faces=" << r.certificate->face_count;
        else
            std::cout << " genus>=" << r.lower_bound << " (budget exhausted)";
        std::cout << " steps=" << r.steps << "\n";
    }
}
