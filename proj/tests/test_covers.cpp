// Abelian-cover pipeline: equation rendering, abelianization order 16b,
// z-action matrix with its conjugation certificate, the universal abelian
// cover cycle (explicit strings = dual-then-double), the canonical cusp
// double cover, and the leaf-pair double covers with blow-down certificates.

#include <cusp/covers.hpp>
#include <cusp/discriminant.hpp>

#include <catch_amalgamated.hpp>

#include <functional>
#include <initializer_list>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "helpers.hpp"

using namespace cusp;

namespace {

QcClass qc(long a, long b, long c, long d) {
    return QcClass(BigInt(a), BigInt(b), BigInt(c), BigInt(d));
}

QuotientCuspGraph chain(std::initializer_list<long> xs) {
    return QuotientCuspGraph(std::vector<BigInt>(xs.begin(), xs.end()));
}

std::vector<BigInt> iv(std::initializer_list<long> xs) {
    return std::vector<BigInt>(xs.begin(), xs.end());
}

UniMat2 m2(long a, long b, long c, long d) { return {a, b, c, d}; }

std::string thrown_code(const std::function<void()>& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.code();
    }
    return "";
}

QcClass random_class(std::mt19937_64& rng, long kmax, long emax) {
    UniMat2 m = build_B(testutil::random_word(rng, kmax, emax));
    return QcClass(m.a, m.b, m.c, m.d);
}

QcClass random_b1_class(std::mt19937_64& rng, long max) {
    for (;;) {
        BigInt a = testutil::rand_in(rng, 1, max);
        BigInt d = testutil::rand_in(rng, 1, max);
        if (a == 1 && d == 1) continue;
        return QcClass(a, BigInt(1), a * d - 1, d);
    }
}

}  // namespace

TEST_CASE("equation rendering") {
    EquationPair k1 = karras_equations(2, 1);
    CHECK(k1.first == "x*y = u^4 + v^4");
    CHECK(k1.second == "u*v = x^2 + y^2");

    EquationPair k2 = karras_equations(1, 3);
    CHECK(k2.first == "x*y = u^2 + v^2");
    CHECK(k2.second == "u*v = x^6 + y^6");

    EquationPair s1 = split_equations(1, 3, 1, 1);
    CHECK(s1.first == "x^2 + y^2 = u*v^3");
    CHECK(s1.second == "u^2 + v^2 = x*y");

    EquationPair s2 = split_equations(0, 4, 2, 2);
    CHECK(s2.first == "x^2 + y^2 = v^4");
    CHECK(s2.second == "u^2 + v^2 = x^2*y^2");

    EquationPair s3 = split_equations(4, 0, 0, 2);
    CHECK(s3.first == "x^2 + y^2 = u^4");
    CHECK(s3.second == "u^2 + v^2 = y^2");

    CHECK(thrown_code([] { karras_equations(0, 1); }) == "InvalidSequence");
    CHECK(thrown_code([] { split_equations(1, 2, 1, 1); }) == "InvalidSequence");
    CHECK(thrown_code([] { split_equations(2, 2, 1, 1); }) == "InvalidSequence");
    CHECK(thrown_code([] { split_equations(0, 0, 2, 2); }) == "InvalidSequence");
    CHECK(thrown_code([] { split_equations(-1, 3, 1, 1); }) == "InvalidSequence");
}

TEST_CASE("abelianization relation matrix and order") {
    AbelianizationData a1 = abelianization_order(qc(2, 1, 1, 1));
    CHECK(a1.relations == testutil::make_mat({{0, 2, 0, 0},
                                              {0, 0, 0, 2},
                                              {4, 1, -2, 0},
                                              {2, 1, 0, -1}}));
    CHECK(a1.group.order() == 16);
    CHECK(a1.group.invariant_factors == iv({4, 4}));

    AbelianizationData a2 = abelianization_order(qc(2, 1, 3, 2));
    CHECK(a2.relations == testutil::make_mat({{0, 2, 0, 0},
                                              {0, 0, 0, 2},
                                              {4, 3, -2, 0},
                                              {2, 2, 0, -1}}));
    CHECK(a2.group.order() == 16);
    CHECK(a2.group.invariant_factors == iv({4, 4}));

    AbelianizationData a3 = abelianization_order(qc(3, 2, 4, 3));
    CHECK(a3.group.order() == 32);
    CHECK(a3.group.invariant_factors == iv({2, 2, 8}));

    // Same group as the discriminant group of the resolution graph: two
    // presentations of the link's first homology.
    for (const QcClass& q : {qc(2, 1, 1, 1), qc(2, 1, 3, 2), qc(3, 2, 4, 3), qc(1, 1, 1, 2)}) {
        AbelianizationData ab = abelianization_order(q);
        DiscriminantData dd = discriminant_of_graph(graph_of_class(q));
        CHECK(ab.group == dd.group);
        CHECK(ab.group.order() == 16 * q.b);
    }
}

TEST_CASE("z action matrix") {
    UniMat2 z1 = z_action_matrix(qc(2, 1, 1, 1));
    CHECK(z1 == m2(3, 4, 2, 3));
    UniMat2 u1{BigInt(0), BigInt(-1), BigInt(1), BigInt(1)};
    CHECK(u1.inverse() * z1 * u1 == m2(7, 2, -4, -1));
    CHECK(u1.inverse() * z1 * u1 == (mat_M(4) * mat_M(2)).inverse());

    CHECK(z_action_matrix(qc(2, 1, 3, 2)) == m2(7, 4, 12, 7));

    std::mt19937_64 rng(9101);
    for (int i = 0; i < 60; ++i) {
        QcClass q = random_class(rng, 5, 4);
        UniMat2 z = z_action_matrix(q);
        CHECK(z.det() == 1);
        CHECK(z.trace() == 2 * (q.a * q.d + q.b * q.c));
        CHECK(z.a == z.d);
        CHECK(z.b == 2 * q.a);
        CHECK(z.c == 2 * q.b * q.c * q.d);
    }
}

TEST_CASE("cusp double cover") {
    CuspDoubleCover c1 = cusp_double_cover(qc(2, 1, 1, 1));
    CHECK(c1.cycle.entries() == iv({2, 4}));
    CHECK(c1.matrix == m2(3, 2, 4, 3));
    CHECK(c1.matrix.trace() == 6);

    CuspDoubleCover c2 = cusp_double_cover(qc(2, 1, 3, 2));
    CHECK(c2.cycle.entries() == iv({2, 3, 2, 3}));
    CHECK(c2.matrix == m2(7, 4, 12, 7));
    CHECK(monodromy(c2.cycle).trace() == 14);

    CuspDoubleCover c3 = cusp_double_cover(qc(3, 1, 2, 1));  // chain (2,2,3)
    CHECK(c3.cycle.entries() == iv({2, 2, 4, 2}));
    CHECK(c3.matrix.trace() == 10);

    std::mt19937_64 rng(9102);
    for (int i = 0; i < 60; ++i) {
        QcClass q = random_class(rng, 5, 4);
        CuspDoubleCover c = cusp_double_cover(q);
        CHECK(monodromy(c.cycle).trace() == 2 * (q.a * q.d + q.b * q.c));
        CHECK(c.matrix.det() == 1);
        // Reversing the chain yields the same cycle class.
        QcClass qr = class_of_graph(graph_of_class(q).reversed());
        CHECK(cusp_double_cover(qr).cycle == c.cycle);
    }
}

TEST_CASE("universal abelian cover frozen values") {
    UacResult u1 = uac_cycle(qc(2, 1, 1, 1));
    CHECK(u1.degree == 16);
    CHECK(u1.cycle.entries() == iv({4, 2, 4, 2}));
    CHECK(u1.equations.first == "x*y = u^4 + v^4");
    CHECK(u1.equations.second == "u*v = x^2 + y^2");
    CHECK(u1.z_matrix == m2(3, 4, 2, 3));
    CHECK(u1.abelianization.invariant_factors == iv({4, 4}));
    CHECK(monodromy(u1.cycle).trace() == 34);
    CHECK(dual_cusp(u1.cycle) == CuspCycle(iv({4, 2, 4, 2})));

    UacResult u2 = uac_cycle(qc(2, 1, 3, 2));
    CHECK(u2.degree == 16);
    CHECK(u2.cycle.entries() == iv({3, 2, 3, 2, 3, 2, 3, 2}));
    CHECK(u2.equations.first == "x*y = u^4 + v^4");
    CHECK(u2.equations.second == "u*v = x^4 + y^4");
    CHECK(monodromy(u2.cycle).trace() == 194);
    CHECK(dual_cusp(u2.cycle) == CuspCycle(iv({4, 4, 4, 4})));

    UacResult u3 = uac_cycle(qc(3, 2, 4, 3));
    CHECK(u3.degree == 32);
    CHECK(u3.cycle.entries() == iv({3, 2, 2, 2, 3, 2, 2, 2, 3, 2, 2, 2, 3, 2, 2, 2}));
    CHECK(monodromy(u3.cycle).trace() == 1154);
    CHECK(u3.abelianization.invariant_factors == iv({2, 2, 8}));

    // Degenerate strings when a = 1 (two 4's instead of four 3's).
    UacResult u4 = uac_cycle(qc(1, 1, 1, 2));
    CHECK(u4.degree == 16);
    CHECK(u4.cycle.entries() == iv({4, 2, 4, 2}));
    CHECK(u4.equations.first == "x*y = u^2 + v^2");
    CHECK(u4.equations.second == "u*v = x^4 + y^4");
    CHECK(monodromy(u4.cycle).trace() == 34);

    UacResult u5 = uac_cycle(qc(1, 2, 1, 3));
    CHECK(u5.degree == 32);
    CHECK(u5.cycle.entries() == iv({4, 2, 2, 2, 4, 2, 2, 2}));
    CHECK(monodromy(u5.cycle).trace() == 98);

    for (const UacResult* u : {&u1, &u2, &u3, &u4, &u5}) {
        CHECK(u->cycle.excess() == 4);
        CHECK(is_complete_intersection(u->cycle));
        CHECK(u->degree == u->abelianization.order());
    }

    CHECK_THROWS_AS(uac_cycle(qc(1L << 23, 1, (1L << 23) - 1, 1)), std::logic_error);
}

TEST_CASE("universal abelian cover properties") {
    std::mt19937_64 rng(9103);
    for (int i = 0; i < 50; ++i) {
        QcClass q = random_class(rng, 5, 4);
        UacResult u = uac_cycle(q);

        // Degree, abelianization order, and graph discriminant order agree.
        DiscriminantData dd = discriminant_of_graph(graph_of_class(q));
        CHECK(u.degree == 16 * q.b);
        CHECK(u.abelianization.order() == u.degree);
        CHECK(dd.order() == u.degree);
        CHECK(u.abelianization == dd.group);

        // Trace oracle against the square of the z-action.
        BigInt p = q.a * q.d + q.b * q.c;
        CHECK((u.z_matrix * u.z_matrix).trace() == 4 * p * p - 2);
        CHECK(monodromy(u.cycle).trace() == 4 * p * p - 2);

        // Reducing z^-1 to a cycle and dualizing-then-doubling reproduces
        // the cover cycle.
        CycleReduction red = reduce_to_cycle(u.z_matrix.inverse());
        CHECK(red.cycle == CuspCycle({BigInt(2 * q.a), BigInt(2 * q.d)}));
        CHECK(double_cover_cycle(dual_cusp(red.cycle)) == u.cycle);

        // The dual of the cover cycle is [2a, 2d, 2a, 2d].
        CHECK(dual_cusp(u.cycle) ==
              CuspCycle({BigInt(2 * q.a), BigInt(2 * q.d), BigInt(2 * q.a), BigInt(2 * q.d)}));
    }

    // For b = 1 the canonical cusp cover's cycle is the dual of [2a,2d] and
    // the universal abelian cover doubles it.
    for (int i = 0; i < 40; ++i) {
        QcClass q = random_b1_class(rng, 5);
        CuspDoubleCover c = cusp_double_cover(q);
        CHECK(c.cycle == dual_cusp(CuspCycle({BigInt(2 * q.a), BigInt(2 * q.d)})));
        CHECK(uac_cycle(q).cycle == double_cover_cycle(c.cycle));
    }
}

TEST_CASE("order-two covers") {
    OrderTwoCovers o1 = order_two_covers(chain({2, 3}));
    CHECK(o1.v_cover.entries() == iv({2, 4, 2}));
    CHECK(o1.w_cover.entries() == iv({3, 2, 3}));
    CHECK(o1.vw_cover.entries() == iv({2, 4}));

    OrderTwoCovers o2 = order_two_covers(chain({2, 3, 2}));
    CHECK(o2.v_cover.entries() == iv({2, 3, 2, 3, 2}));
    CHECK(o2.w_cover.entries() == iv({2, 3, 2, 3, 2}));
    CHECK(o2.vw_cover.entries() == iv({2, 3, 2, 3}));

    OrderTwoCovers o3 = order_two_covers(chain({2, 2, 3}));
    CHECK(o3.v_cover.entries() == iv({2, 2, 4, 2, 2}));
    CHECK(o3.w_cover.entries() == iv({3, 2, 2, 2, 3}));
    CHECK(o3.vw_cover.entries() == iv({2, 2, 4, 2}));
    CHECK(monodromy(o3.vw_cover).trace() == 10);

    CHECK(thrown_code([] { order_two_covers(QuotientCuspGraph::internal_chain({BigInt(5)})); }) ==
          "InvalidSequence");

    std::mt19937_64 rng(9104);
    for (int i = 0; i < 60; ++i) {
        QuotientCuspGraph g(bseq_to_eseq(BSeq(testutil::random_word(rng, 6, 5))));
        OrderTwoCovers o = order_two_covers(g);

        // Reversing the chain swaps the two quotient-cusp covers.
        OrderTwoCovers orev = order_two_covers(g.reversed());
        CHECK(orev.v_cover == o.w_cover);
        CHECK(orev.w_cover == o.v_cover);
        CHECK(orev.vw_cover == o.vw_cover);

        // The cusp cover agrees with cusp_double_cover on the chain's class.
        QcClass q = class_of_graph(g);
        CHECK(o.vw_cover == cusp_double_cover(q).cycle);
        CHECK(monodromy(o.vw_cover).trace() == 2 * (q.a * q.d + q.b * q.c));

        // Both chain covers keep a -2-leaf chain shape: correct length and
        // a doubled center.
        CHECK(o.v_cover.size() == 2 * g.size() - 1);
        CHECK(o.w_cover.size() == 2 * g.size() - 1);
    }
}
