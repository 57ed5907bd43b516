#include <catch_amalgamated.hpp>

#include <cusp/graphs.hpp>

#include "helpers.hpp"

#include <functional>
#include <vector>

using namespace cusp;

namespace {

CuspCycle cyc(std::initializer_list<long> xs) {
    return CuspCycle(std::vector<BigInt>(xs.begin(), xs.end()));
}

QuotientCuspGraph chain(std::initializer_list<long> xs) {
    return QuotientCuspGraph(std::vector<BigInt>(xs.begin(), xs.end()));
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

// Random det-+1 conjugator from three elementary letters.
UniMat2 random_sl2(std::mt19937_64& rng) {
    UniMat2 g = UniMat2::identity();
    for (int i = 0; i < 3; ++i) g = g * mat_M(testutil::rand_in(rng, -3, 3));
    return g;
}

}  // namespace

TEST_CASE("cycle type: validation, rotation/reversal equality") {
    CHECK(thrown_code([] { cyc({}); }) == "InvalidSequence");
    CHECK(thrown_code([] { cyc({2, 2}); }) == "InvalidSequence");
    CHECK(thrown_code([] { cyc({1, 3}); }) == "InvalidSequence");
    CHECK(thrown_code([] { cyc({3}); }).empty());

    CuspCycle c = cyc({2, 4, 2, 2, 5});
    CHECK(c == c.rotated(3));
    CHECK(c == c.reversed());
    CHECK(c.canonical() == cyc({2, 2, 4, 2, 5}).entries());
    CHECK(!(c == cyc({2, 4, 2, 2, 6})));
}

TEST_CASE("monodromy: frozen words") {
    CHECK(monodromy(cyc({3})) == m2(0, -1, 1, 3));
    CHECK(monodromy(cyc({2, 4})) == m2(-1, -2, 4, 7));
    CHECK(monodromy(cyc({2, 4, 2, 2, 5})) == m2(-10, -17, 43, 73));
    CHECK(monodromy(cyc({2, 4, 2, 2, 5})).trace() == 63);
}

TEST_CASE("rotation conjugates the monodromy by its first letter") {
    std::mt19937_64 rng(7001);
    for (int trial = 0; trial < 100; ++trial) {
        std::vector<BigInt> e = testutil::random_cycle(rng, 7, 6);
        CuspCycle c{e};
        if (c.size() < 2) continue;
        UniMat2 lhs = monodromy(c.rotated(1));
        UniMat2 rhs = mat_M(e[0]) * monodromy(c) * mat_M(e[0]).inverse();
        CHECK(lhs == rhs);
    }
}

TEST_CASE("dual cycle: frozen values") {
    CHECK(dual_cusp(cyc({3})) == cyc({3}));
    CHECK(dual_cusp(cyc({5})) == cyc({3, 2, 2}));
    CHECK(dual_cusp(cyc({2, 4})) == cyc({2, 4}));
    CHECK(dual_cusp(cyc({2, 4, 2, 2, 5})) == cyc({2, 4, 2, 2, 5}));
    CHECK(dual_cusp(cyc({4, 4})) == cyc({3, 2, 3, 2}));
    CHECK(dual_cusp(cyc({4, 6})) == cyc({3, 2, 3, 2, 2, 2}));
}

TEST_CASE("dual cycle: involution, length, trace preservation") {
    std::mt19937_64 rng(7002);
    for (int trial = 0; trial < 300; ++trial) {
        CuspCycle c{testutil::random_cycle(rng, 8, 7)};
        CuspCycle d = dual_cusp(c);
        CHECK(BigInt(d.size()) == c.excess());
        CHECK(dual_cusp(d) == c);
        CHECK(monodromy(d).trace() == monodromy(c).trace());
    }
}

TEST_CASE("complete-intersection bound") {
    CHECK(is_complete_intersection(cyc({3})));
    CHECK(is_complete_intersection(cyc({3, 2, 3, 2, 3, 2, 3, 2})));
    CHECK(!is_complete_intersection(cyc({2, 4, 2, 2, 5})));
}

TEST_CASE("intersection matrices: frozen shapes") {
    CHECK(intersection_matrix(cyc({5})) == testutil::make_mat({{-3}}));
    CHECK(intersection_matrix(cyc({2, 4})) == testutil::make_mat({{-2, 2}, {2, -4}}));

    IntMatrix q = intersection_matrix(chain({2, 3}));
    CHECK(q.rows() == 6);  // two chain vertices plus four leaves
    CHECK(q == q.transpose());
    BigInt dq = det(q);
    CHECK((dq < 0 ? -dq : dq) == 16);
}

TEST_CASE("trace law: |det intersection| = trace - 2") {
    std::mt19937_64 rng(7003);
    for (int trial = 0; trial < 300; ++trial) {
        CuspCycle c{testutil::random_cycle(rng, 8, 7)};
        BigInt d = det(intersection_matrix(c));
        if (d < 0) d = -d;
        CHECK(d == monodromy(c).trace() - 2);
    }
}

TEST_CASE("doubled cycle multiplies the word") {
    CHECK(double_cover_cycle(cyc({3, 2})).entries() == cyc({3, 2, 3, 2}).entries());
    CHECK(monodromy(cyc({4, 2, 4, 2})).trace() == 34);
    std::mt19937_64 rng(7004);
    for (int trial = 0; trial < 100; ++trial) {
        CuspCycle c{testutil::random_cycle(rng, 6, 6)};
        UniMat2 a = monodromy(c);
        CHECK(monodromy(double_cover_cycle(c)) == a * a);
    }
}

TEST_CASE("blow-down: leaves, chains, stability") {
    SECTION("two -1 leaves on a center") {
        WeightedGraph g;
        g.weights = {BigInt(-8), BigInt(-1), BigInt(-1)};
        g.add_edge(1, 0);
        g.add_edge(2, 0);
        WeightedGraph r = blow_down(g);
        REQUIRE(r.size() == 1);
        CHECK(r.weights[0] == -6);
        CHECK(r.edges.empty());
    }
    SECTION("valence-2 contraction fuses neighbors") {
        WeightedGraph g;
        g.weights = {BigInt(-3), BigInt(-1), BigInt(-3)};
        g.add_edge(0, 1);
        g.add_edge(1, 2);
        WeightedGraph r = blow_down(g);
        REQUIRE(r.size() == 2);
        CHECK(r.weights[0] == -2);
        CHECK(r.weights[1] == -2);
        REQUIRE(r.edges.size() == 1);
    }
    SECTION("no -1 vertex") {
        WeightedGraph g;
        g.weights = {BigInt(-2), BigInt(-3)};
        g.add_edge(0, 1);
        WeightedGraph r = blow_down(g);
        CHECK(r.weights == g.weights);
        CHECK(thrown_code([&] { blow_down(g, true); }) == "NoBlowdownableVertex");
    }
}

TEST_CASE("reduction to a cycle: frozen cases") {
    SECTION("already a cycle word") {
        CycleReduction r = reduce_to_cycle(m2(0, -1, 1, 3));
        CHECK(r.cycle.entries() == cyc({3}).entries());
        CHECK(r.conjugator == UniMat2::identity());
    }
    SECTION("stored order matches the input factorization") {
        CycleReduction r = reduce_to_cycle(m2(-1, -2, 4, 7));
        CHECK(r.cycle.entries() == cyc({2, 4}).entries());
        CHECK(r.conjugator == UniMat2::identity());
    }
    SECTION("symmetric matrix off the cycle form") {
        CycleReduction r = reduce_to_cycle(m2(3, 4, 2, 3));
        CHECK(r.cycle.entries() == cyc({2, 4}).entries());
        CHECK(r.conjugator == m2(2, 1, -1, 0));
        UniMat2 u = r.conjugator;
        CHECK(u.inverse() * m2(3, 4, 2, 3) * u == monodromy(r.cycle));
    }
    SECTION("rejections") {
        CHECK(thrown_code([] { reduce_to_cycle(m2(1, 1, 0, 1)); }) == "TraceTooSmall");
        CHECK(thrown_code([] { reduce_to_cycle(m2(2, 0, 0, 1)); }) == "NotUnimodular");
        CHECK(thrown_code([] { reduce_to_cycle(m2(0, 1, 1, 0)); }) == "NotUnimodular");
    }
}

TEST_CASE("reduction recovers the class of random conjugated cycles") {
    std::mt19937_64 rng(7005);
    for (int trial = 0; trial < 120; ++trial) {
        CuspCycle c{testutil::random_cycle(rng, 7, 6)};
        UniMat2 a = monodromy(c);

        CycleReduction plain = reduce_to_cycle(a);
        CHECK(plain.cycle == c);
        CHECK(plain.conjugator == UniMat2::identity());
        CHECK(monodromy(plain.cycle) == a);

        UniMat2 g = random_sl2(rng);
        UniMat2 twisted = g * a * g.inverse();
        CycleReduction r = reduce_to_cycle(twisted);
        CHECK(r.cycle == c);
        CHECK(r.conjugator.det() == 1);
        CHECK(r.conjugator.inverse() * twisted * r.conjugator == monodromy(r.cycle));
    }
}

TEST_CASE("chain type and classifying matrix round trip") {
    CHECK(thrown_code([] { chain({4}); }) == "InvalidSequence");
    CHECK(thrown_code([] { chain({2, 2}); }) == "InvalidSequence");
    CHECK(!QuotientCuspGraph::internal_chain({BigInt(4)}).entries().empty());
    CHECK(QuotientCuspGraph::internal_chain({BigInt(4)}).internal_only());
    CHECK(chain({2, 3}) == chain({3, 2}));

    std::mt19937_64 rng(7006);
    for (int trial = 0; trial < 100; ++trial) {
        UniMat2 m = build_B(testutil::random_word(rng, 7, 8));
        QcClass q{m.a, m.b, m.c, m.d};
        QuotientCuspGraph g = graph_of_class(q);
        CHECK(class_of_graph(g) == q);
        CHECK(graph_of_class(class_of_graph(g)) == g);
    }
}

TEST_CASE("dot emission is stable") {
    std::string dot = to_dot(cyc({3}));
    CHECK(dot.find("layout=circo") != std::string::npos);
    CHECK(dot.find("n0 -- n0") != std::string::npos);
    CHECK(dot.find("label=\"-3\"") != std::string::npos);

    std::string chain_dot = to_dot(chain({2, 3}));
    CHECK(chain_dot.find("layout") == std::string::npos);
    for (int i = 0; i < 6; ++i)
        CHECK(chain_dot.find("n" + std::to_string(i) + " ") != std::string::npos);
    CHECK(chain_dot.find("n0 -- n2") != std::string::npos);
    CHECK(chain_dot.find("n1 -- n5") != std::string::npos);
}
