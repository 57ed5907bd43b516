#pragma once

// Abelian covers of a quotient-cusp: the abelianized link group, the matrix
// of the central deck transformation z, the 16b-fold universal abelian cover
// (a complete-intersection cusp with explicit equations), the canonical cusp
// double cover, and the two quotient-cusp double covers branched at the
// boundary leaf pairs.

#include <cusp/exact.hpp>
#include <cusp/graphs.hpp>
#include <cusp/words.hpp>

#include <algorithm>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

namespace cusp {

// Pair of formal equations in the variables x, y, u, v rendered as plain
// text: '*' for products, '^' for powers, spaces around '=' and '+'.
struct EquationPair {
    std::string first, second;

    bool operator==(const EquationPair&) const = default;
};

namespace detail {

inline std::string power_text(char var, const BigInt& e) {
    ensure(e >= 0, "power_text: negative exponent");
    if (e == 0) return "1";
    std::string s(1, var);
    if (e != 1) s += "^" + e.get_str();
    return s;
}

inline std::string monomial_text(char x1, const BigInt& e1, char x2, const BigInt& e2) {
    if (e1 == 0 && e2 == 0) return "1";
    if (e1 == 0) return power_text(x2, e2);
    if (e2 == 0) return power_text(x1, e1);
    return power_text(x1, e1) + "*" + power_text(x2, e2);
}

}  // namespace detail

// Symmetric form x*y = u^2a + v^2a, u*v = x^2d + y^2d.
inline EquationPair karras_equations(const BigInt& a, const BigInt& d) {
    require(a >= 1 && d >= 1, "InvalidSequence", "exponent halves must be >= 1");
    return {"x*y = " + detail::power_text('u', 2 * a) + " + " + detail::power_text('v', 2 * a),
            "u*v = " + detail::power_text('x', 2 * d) + " + " + detail::power_text('y', 2 * d)};
}

// Split form x^2 + y^2 = u^al * v^be, u^2 + v^2 = x^ga * y^de: each
// right-hand side has positive even total degree and all four exponents
// share one parity.
inline EquationPair split_equations(const BigInt& al, const BigInt& be, const BigInt& ga,
                                    const BigInt& de) {
    require(al >= 0 && be >= 0 && ga >= 0 && de >= 0, "InvalidSequence",
            "exponents must be >= 0");
    require((al - be) % 2 == 0 && (ga - de) % 2 == 0 && (al - ga) % 2 == 0, "InvalidSequence",
            "exponents must share one parity");
    require(al + be >= 2 && ga + de >= 2, "InvalidSequence",
            "right-hand sides need positive total degree");
    return {"x^2 + y^2 = " + detail::monomial_text('u', al, 'v', be),
            "u^2 + v^2 = " + detail::monomial_text('x', ga, 'y', de)};
}

// Relation matrix of the abelianized link group together with its cokernel.
// The cokernel is finite of order 16b (the relation matrix has determinant
// -16b).
struct AbelianizationData {
    IntMatrix relations;
    FiniteAbelianGroup group;
};

inline AbelianizationData abelianization_order(const QcClass& q) {
    IntMatrix r(4, 4,
                {BigInt(0), BigInt(2), BigInt(0), BigInt(0),
                 BigInt(0), BigInt(0), BigInt(0), BigInt(2),
                 BigInt(2 * q.a), q.c, BigInt(-2), BigInt(0),
                 BigInt(2 * q.b), q.d, BigInt(0), BigInt(-1)});
    AbelianQuotient quo = abelian_quotient(r);
    ensure(quo.free_rank == 0, "abelianization_order: cokernel must be finite");
    ensure(quo.torsion.order() == 16 * q.b, "abelianization_order: order must be 16b");
    return {std::move(r), std::move(quo.torsion)};
}

// Matrix of z on the invariant rank-2 sublattice: [[ad+bc, 2a],
// [2bcd, ad+bc]], trace 2(ad+bc), determinant (ad-bc)^2 = 1.  Conjugating
// by U = [[0,-1],[1,d]] carries it to the inverse of M(2a)M(2d); the
// identity is re-verified by exact multiplication.
inline UniMat2 z_action_matrix(const QcClass& q) {
    BigInt p = q.a * q.d + q.b * q.c;
    UniMat2 z{p, BigInt(2 * q.a), BigInt(2 * q.b * q.c * q.d), p};
    ensure(z.det() == 1, "z_action_matrix: determinant drifted from +1");
    UniMat2 u{BigInt(0), BigInt(-1), BigInt(1), q.d};
    ensure(u.inverse() * z * u == (mat_M(2 * q.a) * mat_M(2 * q.d)).inverse(),
           "z_action_matrix: conjugation to the inverse word failed");
    return z;
}

// Canonical double cover by a cusp: the chain is reflected into a cycle
// with both end weights doubled, and the monodromy is [[d,b],[c,a]] times
// [[a,b],[c,d]] = [[ad+bc, 2bd],[2ac, ad+bc]].  The cycle's monodromy trace
// must equal that matrix's trace 2(ad+bc).
struct CuspDoubleCover {
    CuspCycle cycle;
    Monodromy matrix;
};

inline CuspDoubleCover cusp_double_cover(const QcClass& q) {
    std::vector<BigInt> e = bseq_to_eseq(factor_positive(q.matrix()));
    std::size_t k = e.size();  // class words always have k >= 2
    std::vector<BigInt> cyc;
    cyc.reserve(2 * k - 2);
    cyc.push_back(2 * e.front() - 2);
    for (std::size_t i = 1; i + 1 < k; ++i) cyc.push_back(e[i]);
    cyc.push_back(2 * e.back() - 2);
    for (std::size_t i = k - 2; i >= 1; --i) cyc.push_back(e[i]);

    CuspCycle cycle{std::move(cyc)};
    Monodromy m = UniMat2{q.d, q.b, q.c, q.a} * q.matrix();
    ensure(m == UniMat2{BigInt(q.a * q.d + q.b * q.c), BigInt(2 * q.b * q.d),
                        BigInt(2 * q.a * q.c), BigInt(q.a * q.d + q.b * q.c)},
           "cusp_double_cover: product differs from the closed form");
    ensure(monodromy(cycle).trace() == m.trace(),
           "cusp_double_cover: cycle trace differs from the matrix trace");
    return {std::move(cycle), m};
}

// Universal abelian cover of the quotient-cusp with class matrix
// [[a,b],[c,d]]: a complete-intersection cusp of covering degree 16b.  The
// cycle is defined by dualizing [2a,2d] and doubling; the stored entries use
// the explicit-string orientation ([3,2^(2a-3),3,2^(2d-3)] twice, or
// [4,2^(2m-3)] twice with m = max(a,d) when a or d is 1), checked equal to
// the constructive route.  Three more certified identities: degree equals
// the abelianization order, the cycle's weight excess is 4, and the cycle
// monodromy trace equals trace(z^2) = 4(ad+bc)^2 - 2.
struct UacResult {
    QcClass qc;
    BigInt degree;
    CuspCycle cycle;
    EquationPair equations;
    UniMat2 z_matrix;
    FiniteAbelianGroup abelianization;
};

inline UacResult uac_cycle(const QcClass& q) {
    ensure(!(q.a == 1 && q.d == 1), "uac_cycle: a = d = 1 cannot satisfy ad - bc = 1");
    ensure(4 * (q.a + q.d) <= BigInt(1L << 24), "uac_cycle: cycle too large to lay out");
    CuspCycle doubled = double_cover_cycle(dual_cusp(CuspCycle({BigInt(2 * q.a), BigInt(2 * q.d)})));

    std::vector<BigInt> e;
    auto run = [&e](long head, const BigInt& twos) {
        e.emplace_back(head);
        for (BigInt t(0); t < twos; ++t) e.emplace_back(2);
    };
    if (q.a >= 2 && q.d >= 2) {
        for (int rep = 0; rep < 2; ++rep) {
            run(3, 2 * q.a - 3);
            run(3, 2 * q.d - 3);
        }
    } else {
        BigInt m = std::max(q.a, q.d);
        for (int rep = 0; rep < 2; ++rep) run(4, 2 * m - 3);
    }
    CuspCycle cycle{std::move(e)};
    ensure(cycle == doubled, "uac_cycle: explicit strings differ from the dual-double route");
    ensure(cycle.excess() == 4, "uac_cycle: weight excess must be 4");
    ensure(is_complete_intersection(cycle), "uac_cycle: cover cycle must be a complete intersection");

    AbelianizationData ab = abelianization_order(q);
    BigInt degree = 16 * q.b;
    ensure(ab.group.order() == degree, "uac_cycle: degree differs from the abelianization order");

    UniMat2 z = z_action_matrix(q);
    BigInt p = q.a * q.d + q.b * q.c;
    ensure((z * z).trace() == 4 * p * p - 2, "uac_cycle: z^2 trace drifted");
    ensure(monodromy(cycle).trace() == 4 * p * p - 2, "uac_cycle: cycle trace oracle failed");

    return {q, std::move(degree), std::move(cycle), karras_equations(q.a, q.d), z,
            std::move(ab.group)};
}

namespace detail {

// Pre-resolution graph of the quotient-cusp double cover branched at the
// e_k-end leaf pair: the chain reflected through a doubled center -2e_k
// carrying two -1 curves, four -2 leaves at the outer ends.  Vertex and
// edge order match weighted_graph on the blown-down chain, with the -1
// curves appended last.
inline WeightedGraph branched_double_graph(const std::vector<BigInt>& e) {
    std::size_t k = e.size();
    WeightedGraph g;
    for (std::size_t i = 0; i + 1 < k; ++i) g.weights.push_back(-e[i]);
    g.weights.push_back(-2 * e.back());
    for (std::size_t i = k - 1; i >= 1; --i) g.weights.push_back(-e[i - 1]);

    std::size_t n = 2 * k - 1;
    for (std::size_t i = 0; i + 1 < n; ++i) g.add_edge(i, i + 1);
    for (int leaf = 0; leaf < 4; ++leaf) g.weights.emplace_back(-2);
    g.add_edge(n, 0);
    g.add_edge(n + 1, 0);
    g.add_edge(n + 2, n - 1);
    g.add_edge(n + 3, n - 1);
    g.weights.emplace_back(-1);
    g.weights.emplace_back(-1);
    g.add_edge(n + 4, k - 1);
    g.add_edge(n + 5, k - 1);
    return g;
}

// Closed form of the same cover: (e_1,...,e_{k-1}, 2e_k - 2, e_{k-1},...,e_1).
inline QuotientCuspGraph branched_double_chain(const std::vector<BigInt>& e) {
    std::size_t k = e.size();
    std::vector<BigInt> out;
    out.reserve(2 * k - 1);
    for (std::size_t i = 0; i + 1 < k; ++i) out.push_back(e[i]);
    out.push_back(2 * e.back() - 2);
    for (std::size_t i = k - 1; i >= 1; --i) out.push_back(e[i - 1]);
    return QuotientCuspGraph(std::move(out));
}

}  // namespace detail

// The three connected double covers of a quotient-cusp: one quotient-cusp
// per boundary leaf pair (v doubles the e_k end, w the e_1 end) and the
// canonical cusp cover for their sum.  Both chain covers are certified by
// blowing down the pre-resolution cover graph and matching the closed form.
struct OrderTwoCovers {
    QuotientCuspGraph v_cover;
    QuotientCuspGraph w_cover;
    CuspCycle vw_cover;
};

inline OrderTwoCovers order_two_covers(const QuotientCuspGraph& g) {
    require(!g.internal_only(), "InvalidSequence", "cover needs a chain with its four leaves");
    const std::vector<BigInt>& e = g.entries();
    const std::vector<BigInt> rev(e.rbegin(), e.rend());

    for (const auto* chain : {&e, &rev}) {
        WeightedGraph down = blow_down(detail::branched_double_graph(*chain), true);
        WeightedGraph want = weighted_graph(detail::branched_double_chain(*chain));
        ensure(down.weights == want.weights && down.edges == want.edges,
               "order_two_covers: blow-down differs from the closed form");
    }

    CuspDoubleCover c = cusp_double_cover(class_of_graph(g));
    return {detail::branched_double_chain(e), detail::branched_double_chain(rev),
            std::move(c.cycle)};
}

}  // namespace cusp
