// Duality picture for a cusp cycle: dual cycle, complete-intersection test,
// the hypersurface cover shape, and mutual duality of the cover attached to
// the full homology lattice.

#include <cusp/discriminant.hpp>
#include <cusp/json_io.hpp>

#include <iostream>
#include <vector>

using namespace cusp;

namespace {

void print_cycle(const char* label, const CuspCycle& c) {
    std::cout << label;
    for (const BigInt& x : c.entries()) std::cout << x.get_str() << " ";
    std::cout << "\n";
}

}  // namespace

int main(int argc, char** argv) {
    try {
        CuspCycle c(parse_int_list(argc > 1 ? argv[1] : "2,4,2,2,5"));
        Monodromy a = monodromy(c);

        print_cycle("cycle:        ", c);
        std::cout << "trace:        " << a.trace().get_str() << "\n";
        std::cout << "|D|:          " << discriminant_of_graph(c).order().get_str() << "\n";
        print_cycle("dual:         ", dual_cusp(c));
        std::cout << "ci:           " << (is_complete_intersection(c) ? "yes" : "no") << "\n";
        print_cycle("hypersurface: ", hypersurface_cover(a));

        DualityReport r = verify_mutual_duality(a, Lattice2::standard());
        print_cycle("cover:        ", r.cover_cycle);
        print_cycle("complement:   ", r.complement_cycle);
        std::cout << "orders:       D " << r.discriminant_order.get_str() << ", W "
                  << r.subgroup_order.get_str() << ", W' " << r.complement_order.get_str()
                  << "\n";
        std::cout << "dual pair:    " << (r.mutually_dual ? "yes" : "no") << "\n";
        return 0;
    } catch (const Error& err) {
        std::cerr << err.code() << ": " << err.what() << "\n";
        return 2;
    }
}
