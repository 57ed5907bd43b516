// Universal abelian cover of a quotient-cusp class (a, b, c, d): degree,
// cover cycle, defining equations, the covering group with its structure,
// and the fixed-point census of the diagonal action.

#include <cusp/covers.hpp>
#include <cusp/group_action.hpp>
#include <cusp/json_io.hpp>

#include <iostream>
#include <vector>

using namespace cusp;

int main(int argc, char** argv) {
    try {
        QcClass q = parse_qc(argc > 1 ? argv[1] : "2,1,1,1");

        UacResult u = uac_cycle(q);
        std::cout << "class:      (" << q.a.get_str() << ", " << q.b.get_str() << ", "
                  << q.c.get_str() << ", " << q.d.get_str() << ")\n";
        std::cout << "degree:     " << u.degree.get_str() << "\n";
        std::cout << "cycle:      ";
        for (const BigInt& x : u.cycle.entries()) std::cout << x.get_str() << " ";
        std::cout << "\ntrace:      " << monodromy(u.cycle).trace().get_str() << "\n";
        std::cout << "equations:  " << u.equations.first << "\n";
        std::cout << "            " << u.equations.second << "\n";

        ExponentGroup g = build_group(q);
        FiniteAbelianGroup st = group_structure(g);
        std::cout << "group:      ";
        for (const BigInt& f : st.invariant_factors) std::cout << "Z/" << f.get_str() << " ";
        std::cout << " (order " << g.order().get_str() << ")\n";

        for (const FixedPointEntry& r : fixed_point_census(g))
            std::cout << "fixes " << r.plane << ":   "
                      << (r.only_origin ? "origin only" : "a curve") << "\n";
        return 0;
    } catch (const Error& err) {
        std::cerr << err.code() << ": " << err.what() << "\n";
        return 2;
    }
}
