#pragma once

// Resolution-graph data model: cusp cycles and quotient-cusp chains, their
// monodromy words, dual cycles, intersection forms, double covers,
// blow-downs, and reduction of a trace>=3 matrix back to a cycle with an
// exact conjugacy certificate.

#include <cusp/exact.hpp>
#include <cusp/words.hpp>

#include <algorithm>
#include <cstddef>
#include <map>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace cusp {

using Monodromy = UniMat2;

namespace detail {

inline bool cycle_weights_valid(const std::vector<BigInt>& e) {
    if (e.empty()) return false;
    bool big = false;
    for (const BigInt& w : e) {
        if (w < 2) return false;
        big = big || w >= 3;
    }
    return big;
}

inline std::vector<BigInt> rotate_left(const std::vector<BigInt>& v, std::size_t i) {
    std::vector<BigInt> r;
    r.reserve(v.size());
    r.insert(r.end(), v.begin() + static_cast<std::ptrdiff_t>(i), v.end());
    r.insert(r.end(), v.begin(), v.begin() + static_cast<std::ptrdiff_t>(i));
    return r;
}

}  // namespace detail

// Plumbing cycle [-e_1,...,-e_k]: k >= 1, e_i >= 2, some e_j >= 3.  Two
// cycles are the same space when the weight sequences agree up to cyclic
// rotation and reversal; the stored order is preserved (monodromy and the
// reduction certificate depend on it).
class CuspCycle {
public:
    explicit CuspCycle(std::vector<BigInt> e) : e_(std::move(e)) {
        require(detail::cycle_weights_valid(e_), "InvalidSequence",
                "cycle needs k >= 1, weights >= 2, at least one >= 3");
    }

    const std::vector<BigInt>& entries() const { return e_; }
    std::size_t size() const { return e_.size(); }
    const BigInt& operator[](std::size_t i) const { return e_[i]; }

    // Sum of (e_i - 2); equals the length of the dual cycle.
    BigInt excess() const {
        BigInt s(0);
        for (const BigInt& w : e_) s += w - 2;
        return s;
    }

    // Lexicographically smallest among all rotations of the sequence and of
    // its reversal.
    std::vector<BigInt> canonical() const {
        std::vector<BigInt> best = e_;
        std::vector<BigInt> rev(e_.rbegin(), e_.rend());
        for (std::size_t i = 0; i < e_.size(); ++i) {
            best = std::min(best, detail::rotate_left(e_, i));
            best = std::min(best, detail::rotate_left(rev, i));
        }
        return best;
    }

    CuspCycle canonicalized() const { return CuspCycle(canonical()); }
    CuspCycle rotated(std::size_t i) const { return CuspCycle(detail::rotate_left(e_, i)); }
    CuspCycle reversed() const { return CuspCycle({e_.rbegin(), e_.rend()}); }

    bool operator==(const CuspCycle& o) const { return canonical() == o.canonical(); }

private:
    std::vector<BigInt> e_;
};

// Quotient-cusp chain (e_1,...,e_k) with four implicit -2 leaves, two at
// each end.  k >= 2 for caller-constructed graphs; single-vertex chains
// arise inside cover constructions and are flagged.  Equality up to
// reversal.
class QuotientCuspGraph {
public:
    explicit QuotientCuspGraph(std::vector<BigInt> e) : e_(std::move(e)) {
        require(e_.size() >= 2 && detail::cycle_weights_valid(e_), "InvalidSequence",
                "chain needs k >= 2, weights >= 2, at least one >= 3");
    }

    static QuotientCuspGraph internal_chain(std::vector<BigInt> e) {
        require(detail::cycle_weights_valid(e), "InvalidSequence",
                "chain needs weights >= 2, at least one >= 3");
        QuotientCuspGraph g;
        g.e_ = std::move(e);
        g.internal_ = g.e_.size() < 2;
        return g;
    }

    const std::vector<BigInt>& entries() const { return e_; }
    std::size_t size() const { return e_.size(); }
    bool internal_only() const { return internal_; }

    QuotientCuspGraph reversed() const {
        return internal_chain({e_.rbegin(), e_.rend()});
    }

    std::vector<BigInt> canonical() const {
        std::vector<BigInt> rev(e_.rbegin(), e_.rend());
        return std::min(e_, rev);
    }

    bool operator==(const QuotientCuspGraph& o) const { return canonical() == o.canonical(); }

private:
    QuotientCuspGraph() = default;

    std::vector<BigInt> e_;
    bool internal_ = false;
};

// Chain <-> classifying matrix.  The chain weights are the e-sequence of
// the word factorization of the class matrix.
inline QuotientCuspGraph graph_of_class(const QcClass& q) {
    return QuotientCuspGraph(bseq_to_eseq(factor_positive(q.matrix())));
}

inline QcClass class_of_graph(const QuotientCuspGraph& g) {
    require(!g.internal_only(), "InvalidSequence",
            "single-vertex chains carry no classifying matrix");
    UniMat2 m = build_B(eseq_to_bseq(g.entries()));
    return {m.a, m.b, m.c, m.d};
}

// Scratch graph for blow-down sequences: arbitrary integer weights,
// undirected edge list, multi-edges and loops allowed.
struct WeightedGraph {
    std::vector<BigInt> weights;
    std::vector<std::pair<std::size_t, std::size_t>> edges;

    std::size_t size() const { return weights.size(); }

    void add_edge(std::size_t i, std::size_t j) {
        ensure(i < size() && j < size(), "WeightedGraph::add_edge: vertex out of range");
        edges.emplace_back(std::min(i, j), std::max(i, j));
    }

    bool is_connected() const {
        if (weights.empty()) return true;
        std::vector<bool> seen(size(), false);
        std::vector<std::size_t> stack{0};
        seen[0] = true;
        while (!stack.empty()) {
            std::size_t v = stack.back();
            stack.pop_back();
            for (const auto& [x, y] : edges) {
                if (x == v && !seen[y]) { seen[y] = true; stack.push_back(y); }
                if (y == v && !seen[x]) { seen[x] = true; stack.push_back(x); }
            }
        }
        return std::all_of(seen.begin(), seen.end(), [](bool b) { return b; });
    }
};

inline WeightedGraph weighted_graph(const CuspCycle& c) {
    WeightedGraph g;
    for (const BigInt& e : c.entries()) g.weights.push_back(-e);
    std::size_t k = c.size();
    if (k == 1) {
        g.add_edge(0, 0);
    } else if (k == 2) {
        g.add_edge(0, 1);
        g.add_edge(0, 1);
    } else {
        for (std::size_t i = 0; i < k; ++i) g.add_edge(i, (i + 1) % k);
    }
    return g;
}

// Vertex order: chain 0..k-1, then the two leaves at the e_1 end, then the
// two at the e_k end (a single-vertex chain holds all four).
inline WeightedGraph weighted_graph(const QuotientCuspGraph& q) {
    WeightedGraph g;
    for (const BigInt& e : q.entries()) g.weights.push_back(-e);
    std::size_t k = q.size();
    for (std::size_t i = 0; i + 1 < k; ++i) g.add_edge(i, i + 1);
    for (int leaf = 0; leaf < 4; ++leaf) g.weights.emplace_back(-2);
    g.add_edge(k, 0);
    g.add_edge(k + 1, 0);
    g.add_edge(k + 2, k - 1);
    g.add_edge(k + 3, k - 1);
    return g;
}

// Intersection form: diagonal = weight + 2*(loops at the vertex), off
// diagonal = edge multiplicity.  The loop rule yields the one-vertex cycle
// value -e+2 and the two-vertex double edge yields off-diagonal 2.
inline IntMatrix intersection_matrix(const WeightedGraph& g) {
    std::size_t n = g.size();
    IntMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = g.weights[i];
    for (const auto& [x, y] : g.edges) {
        if (x == y) {
            m.at(x, x) += 2;
        } else {
            m.at(x, y) += 1;
            m.at(y, x) += 1;
        }
    }
    return m;
}

inline IntMatrix intersection_matrix(const CuspCycle& c) {
    return intersection_matrix(weighted_graph(c));
}

inline IntMatrix intersection_matrix(const QuotientCuspGraph& q) {
    return intersection_matrix(weighted_graph(q));
}

// Monodromy word A = M(e_k) *** M(e_1); det +1 and trace >= 3 for every
// valid cycle.
inline Monodromy monodromy(const CuspCycle& c) {
    UniMat2 a = UniMat2::identity();
    for (const BigInt& e : c.entries()) a = mat_M(e) * a;
    ensure(a.det() == 1, "monodromy: det drifted from +1");
    ensure(a.trace() >= 3, "monodromy: trace below 3 on a valid cycle");
    return a;
}

// Dual cycle: each weight e >= 3 becomes a run of e-3 twos, each maximal
// run of d >= 0 twos between such weights becomes a single vertex d+3,
// traversed in cycle order starting at a weight >= 3.
inline CuspCycle dual_cusp(const CuspCycle& c) {
    const std::vector<BigInt>& e = c.entries();
    std::size_t k = e.size();
    std::size_t start = 0;
    while (e[start] < 3) ++start;  // exists: some e_j >= 3

    std::vector<BigInt> out;
    std::size_t i = 0;
    while (i < k) {
        const BigInt& w = e[(start + i) % k];
        ensure(w >= 3, "dual_cusp: block traversal lost alignment");
        for (BigInt t(0); t < w - 3; ++t) out.emplace_back(2);
        std::size_t gap = 0;
        while (i + gap + 1 < k && e[(start + i + gap + 1) % k] == 2) ++gap;
        out.emplace_back(gap + 3);
        i += gap + 1;
    }
    CuspCycle dual{std::move(out)};
    ensure(BigInt(dual.size()) == c.excess(), "dual_cusp: length must equal the weight excess");
    return dual;
}

inline bool is_complete_intersection(const CuspCycle& c) { return c.excess() <= 4; }

// Doubled cycle C*C; its monodromy is the square of C's up to rotation
// conjugacy.
inline CuspCycle double_cover_cycle(const CuspCycle& c) {
    std::vector<BigInt> e = c.entries();
    e.insert(e.end(), c.entries().begin(), c.entries().end());
    return CuspCycle(std::move(e));
}

// Repeatedly contract weight -1 vertices of valence 1 or 2 (valence-2
// contraction fuses the two neighbor endpoints with a new edge); each
// neighbor endpoint gains +1 per removed incidence.  Vertices with loops
// are never contracted.  With require_progress, the first pass must find a
// contractible vertex.
inline WeightedGraph blow_down(WeightedGraph g, bool require_progress = false) {
    ensure(g.is_connected(), "blow_down: graph must be connected");
    bool first = true;
    for (;;) {
        std::size_t victim = g.size();
        std::vector<std::size_t> incident;
        for (std::size_t v = 0; v < g.size() && victim == g.size(); ++v) {
            if (g.weights[v] != -1) continue;
            incident.clear();
            bool loops = false;
            for (std::size_t idx = 0; idx < g.edges.size(); ++idx) {
                const auto& [x, y] = g.edges[idx];
                if (x == v && y == v) loops = true;
                else if (x == v || y == v) incident.push_back(idx);
            }
            if (!loops && (incident.size() == 1 || incident.size() == 2)) victim = v;
        }
        if (victim == g.size()) {
            require(!(first && require_progress), "NoBlowdownableVertex",
                    "no weight -1 vertex of valence 1 or 2");
            return g;
        }
        first = false;

        std::vector<std::size_t> ends;
        for (std::size_t idx : incident) {
            const auto& [x, y] = g.edges[idx];
            ends.push_back(x == victim ? y : x);
        }
        for (std::size_t e : ends) g.weights[e] += 1;

        WeightedGraph next;
        std::vector<std::size_t> remap(g.size());
        for (std::size_t v = 0; v < g.size(); ++v) {
            if (v == victim) continue;
            remap[v] = next.weights.size();
            next.weights.push_back(g.weights[v]);
        }
        for (const auto& [x, y] : g.edges)
            if (x != victim && y != victim) next.add_edge(remap[x], remap[y]);
        if (ends.size() == 2) next.add_edge(remap[ends[0]], remap[ends[1]]);
        g = std::move(next);
    }
}

// --- reduction of a hyperbolic matrix to a cycle -------------------------

namespace detail {

// Letter N(e) = [[e,-1],[1,0]]: with D = diag(1,-1), a cycle word satisfies
// D * monodromy(word)^-1 * D = N(e_1) *** N(e_k), so expanding the fixed
// point of that product in the minus continued fraction recovers the word.
inline UniMat2 mat_N(const BigInt& e) { return {e, -1, 1, 0}; }

inline UniMat2 mat_D() { return {1, 0, 0, -1}; }

// floor((P + sqrt(delta)) / Q) for non-square delta > 0, f = isqrt(delta).
inline BigInt floor_quadratic(const BigInt& P, const BigInt& Q, const BigInt& f) {
    ensure(Q != 0, "floor_quadratic: zero denominator");
    if (Q > 0) return floor_div(P + f, Q);
    return floor_div(-P - f - 1, -Q);
}

}  // namespace detail

struct CycleReduction {
    CuspCycle cycle;
    UniMat2 conjugator;  // det +1; conjugator^-1 * A * conjugator = monodromy(cycle)
};

// Conjugate a det-+1, trace>=3 matrix to the monodromy of a cycle.  The
// attracting fixed point x0 = (p-s+sqrt(tr^2-4))/(2r) of D*A^-1*D is
// expanded in the minus continued fraction with exact state (P,Q),
// x = (P+sqrt(delta))/Q, Q | delta-P^2; the digit tail from index 1 on is
// >= 2 and eventually periodic, the primitive period gives the cycle (taken
// to the power matching the trace), and the preperiod letters give the
// conjugator.  The certificate is verified by exact multiplication before
// returning.
inline CycleReduction reduce_to_cycle(const UniMat2& A) {
    require(A.det() == 1, "NotUnimodular", "determinant must be +1");
    require(A.trace() >= 3, "TraceTooSmall", "trace must be >= 3");

    const UniMat2 D = detail::mat_D();
    const UniMat2 At = D * A.inverse() * D;
    ensure(At.c != 0, "reduce_to_cycle: off-diagonal vanishes on a hyperbolic matrix");

    const BigInt t = A.trace();
    const BigInt delta = t * t - 4;
    const BigInt f = isqrt(delta);
    ensure(f * f != delta, "reduce_to_cycle: discriminant cannot be a square");

    BigInt P = At.a - At.d;
    BigInt Q = 2 * At.c;
    ensure((delta - P * P) % Q == 0, "reduce_to_cycle: state invariant broken at start");

    std::vector<BigInt> digits;
    std::map<std::pair<BigInt, BigInt>, std::size_t> seen;
    std::size_t period_start = 0, period_len = 0;
    for (;;) {
        if (!digits.empty()) {  // digit 0 may be < 2; never part of the period
            auto [it, fresh] = seen.try_emplace({P, Q}, digits.size());
            if (!fresh) {
                period_start = it->second;
                period_len = digits.size() - it->second;
                break;
            }
        }
        BigInt e = detail::floor_quadratic(P, Q, f) + 1;
        digits.push_back(e);
        BigInt P2 = e * Q - P;
        Q = exact_div(P2 * P2 - delta, Q);
        P = P2;
    }

    std::vector<BigInt> period(digits.begin() + static_cast<std::ptrdiff_t>(period_start),
                               digits.begin() + static_cast<std::ptrdiff_t>(period_start + period_len));
    UniMat2 base = UniMat2::identity();
    for (const BigInt& e : period) base = base * detail::mat_N(e);

    std::vector<BigInt> word = period;
    UniMat2 power = base;
    while (power.trace() < t) {
        power = power * base;
        word.insert(word.end(), period.begin(), period.end());
    }
    ensure(power.trace() == t, "reduce_to_cycle: no period power matches the trace");

    UniMat2 V = UniMat2::identity();
    for (std::size_t i = 0; i < period_start; ++i) V = V * detail::mat_N(digits[i]);
    ensure(V.inverse() * At * V == power, "reduce_to_cycle: period certificate failed");

    CuspCycle cycle{word};
    UniMat2 U = D * V * D;
    ensure(U.det() == 1, "reduce_to_cycle: conjugator must have det +1");
    ensure(U.inverse() * A * U == monodromy(cycle), "reduce_to_cycle: conjugacy certificate failed");

    // If A is itself the monodromy of a rotation of the cycle, report that
    // rotation with the identity conjugator.
    for (std::size_t i = 0; i < cycle.size(); ++i) {
        CuspCycle rot = cycle.rotated(i);
        if (monodromy(rot) == A) return {rot, UniMat2::identity()};
    }
    return {cycle, U};
}

// --- DOT emission ---------------------------------------------------------

inline std::string to_dot(const WeightedGraph& g, bool circular = false) {
    std::ostringstream out;
    out << "graph plumbing {\n";
    if (circular) out << "  layout=circo;\n";
    for (std::size_t i = 0; i < g.size(); ++i)
        out << "  n" << i << " [label=\"" << g.weights[i].get_str() << "\"];\n";
    for (const auto& [x, y] : g.edges) out << "  n" << x << " -- n" << y << ";\n";
    out << "}\n";
    return out.str();
}

inline std::string to_dot(const CuspCycle& c) { return to_dot(weighted_graph(c), true); }

inline std::string to_dot(const QuotientCuspGraph& q) { return to_dot(weighted_graph(q)); }

}  // namespace cusp
