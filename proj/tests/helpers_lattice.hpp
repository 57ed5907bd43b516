#pragma once

// Helpers that need the lattice/discriminant machinery: subgroup-lattice
// enumeration and random hyperbolic matrices with bounded trace.

#include "helpers.hpp"

#include <cusp/discriminant.hpp>

namespace testutil {

// All lattices W with (A-I)Z^2 <= W <= Z^2, one per subgroup of the
// discriminant group, found by scanning canonical triples {(p,0),(q,r)}.
inline std::vector<cusp::Lattice2> subgroup_lattices(const cusp::Monodromy& a) {
    cusp::Lattice2 rel =
        cusp::Lattice2::from_int_columns(cusp::detail::translation_relations(a));
    long d = static_cast<long>(cusp::BigInt(a.trace() - 2).get_si());
    std::vector<cusp::Lattice2> out;
    for (long p = 1; p <= d; ++p)
        for (long r = 1; p * r <= d; ++r) {
            if (d % (p * r) != 0) continue;
            for (long q = 0; q < p; ++q) {
                cusp::IntMatrix b(2, 2);
                b.at(0, 0) = p;
                b.at(0, 1) = q;
                b.at(1, 1) = r;
                cusp::Lattice2 w = cusp::Lattice2::from_int_columns(b);
                if (w.contains(rel)) out.push_back(w);
            }
        }
    return out;
}

// Random SL2(Z) conjugate of a random cycle monodromy, trace <= tmax.
inline cusp::Monodromy random_hyperbolic(std::mt19937_64& rng, long tmax) {
    for (;;) {
        cusp::CuspCycle c{random_cycle(rng, 4, 4)};
        cusp::Monodromy m = cusp::monodromy(c);
        if (m.trace() > tmax) continue;
        cusp::UniMat2 g = cusp::UniMat2::identity();
        for (int i = 0; i < 3; ++i) g = g * cusp::mat_M(rand_in(rng, -3, 3));
        return g.inverse() * m * g;
    }
}

}  // namespace testutil
