#pragma once

#include <array>
#include <cstddef>
#include <utility>
#include <vector>

#include "cusp/exact.hpp"
#include "cusp/graphs.hpp"
#include "cusp/words.hpp"

namespace cusp {

// --- Discriminant groups with linking forms --------------------------------

enum class LinkingKind {
    plumbing,      // D = Z^n / S Z^n, classes pair by -x^T S^-1 y mod 1
    torus_bundle,  // D = Z^2 / (A-I) Z^2, classes pair by skew((A-I)^-1 x, y) mod 1
};

// Finite group Z^n / R Z^n with its linking pairing.  Class representatives
// are integer vectors; two vectors represent the same class iff their
// difference lies in R Z^n.
struct DiscriminantData {
    LinkingKind kind;
    IntMatrix relations;                          // S or A - I, nonsingular
    RatMatrix relations_inverse;                  // exact inverse
    FiniteAbelianGroup group;                     // invariant factors > 1
    std::vector<std::vector<BigInt>> generators;  // one class per invariant factor

    BigInt order() const { return group.order(); }

    std::size_t rank() const { return relations.rows(); }

    // [x] = 0 iff x lies in the relation lattice.
    bool is_zero(const std::vector<BigInt>& x) const {
        std::vector<BigRat> c = relations_inverse * to_rational(x);
        for (const BigRat& q : c)
            if (!is_integer(q)) return false;
        return true;
    }

    // Order of [x]: least n >= 1 with n*x in the relation lattice.
    BigInt order_of(const std::vector<BigInt>& x) const {
        std::vector<BigRat> c = relations_inverse * to_rational(x);
        BigInt n(1);
        for (BigRat q : c) {
            q.canonicalize();
            n = lcm(n, BigInt(q.get_den()));
        }
        return n;
    }

    // Linking pairing on integer class representatives, valued in [0,1).
    BigRat pair_classes(const std::vector<BigInt>& x, const std::vector<BigInt>& y) const {
        require(x.size() == rank() && y.size() == rank(), "BadShape",
                "class representative has wrong length");
        std::vector<BigRat> u = relations_inverse * to_rational(x);
        BigRat acc(0);
        if (kind == LinkingKind::plumbing) {
            for (std::size_t i = 0; i < u.size(); ++i) acc -= u[i] * BigRat(y[i]);
        } else {
            acc = u[0] * BigRat(y[1]) - u[1] * BigRat(y[0]);
        }
        return mod_one(acc);
    }

    // Plumbing pairing on dual-lattice vectors v, w (S v and S w integral):
    // -v^T S w mod 1.  Equivalent to pair_classes(S v, S w).
    BigRat pair_rational(const std::vector<BigRat>& v, const std::vector<BigRat>& w) const {
        require(kind == LinkingKind::plumbing, "BadShape",
                "rational representatives only pair against an intersection form");
        require(v.size() == rank() && w.size() == rank(), "BadShape",
                "dual-lattice vector has wrong length");
        RatMatrix s = RatMatrix::from_int(relations);
        std::vector<BigRat> sv = s * v;
        std::vector<BigRat> sw = s * w;
        for (const BigRat& q : sv)
            require(is_integer(q), "NotInGroup", "vector is not in the dual lattice");
        for (const BigRat& q : sw)
            require(is_integer(q), "NotInGroup", "vector is not in the dual lattice");
        BigRat acc(0);
        for (std::size_t i = 0; i < v.size(); ++i) acc -= v[i] * sw[i];
        return mod_one(acc);
    }

    // Exhaustive nonsingularity check: every nonzero class pairs nontrivially
    // with some generator.  By bilinearity it suffices to scan generator
    // coefficient tuples against the generator Gram values.
    bool pairing_nonsingular(const BigInt& cap = BigInt(1 << 20)) const {
        const std::vector<BigInt>& inv = group.invariant_factors;
        if (inv.empty()) return true;
        require(order() <= cap, "EnumerationTooLarge",
                "group order exceeds the nonsingularity enumeration cap");
        std::size_t r = inv.size();
        std::vector<std::vector<BigRat>> gram(r, std::vector<BigRat>(r));
        for (std::size_t i = 0; i < r; ++i)
            for (std::size_t j = 0; j < r; ++j)
                gram[i][j] = pair_classes(generators[i], generators[j]);
        std::vector<BigInt> c(r, BigInt(0));
        for (;;) {
            std::size_t pos = 0;
            while (pos < r && c[pos] + 1 == inv[pos]) c[pos++] = 0;
            if (pos == r) break;
            ++c[pos];
            bool all_zero = true;
            for (std::size_t j = 0; j < r && all_zero; ++j) {
                BigRat acc(0);
                for (std::size_t i = 0; i < r; ++i) acc += BigRat(c[i]) * gram[i][j];
                if (mod_one(acc) != 0) all_zero = false;
            }
            if (all_zero) return false;  // nonzero class with trivial pairing
        }
        return true;
    }
};

namespace detail {

// A - I as an integer matrix.
inline IntMatrix translation_relations(const Monodromy& a) {
    IntMatrix r(2, 2);
    r.at(0, 0) = a.a - 1;
    r.at(0, 1) = a.b;
    r.at(1, 0) = a.c;
    r.at(1, 1) = a.d - 1;
    return r;
}

inline DiscriminantData discriminant_from_relations(IntMatrix r, LinkingKind kind) {
    require(r.rows() == r.cols(), "BadShape", "relation matrix must be square");
    BigInt d = det(r);
    require(d != 0, "SingularIntersectionForm", "relation matrix is singular");

    DiscriminantData out;
    out.kind = kind;
    out.relations_inverse = rat_inverse(r);
    out.relations = std::move(r);

    SnfResult s = snf(out.relations);
    RatMatrix u_inv = rat_inverse(s.u);
    for (std::size_t i = 0; i < s.d.size(); ++i) {
        if (s.d[i] <= 1) continue;
        out.group.invariant_factors.push_back(s.d[i]);
        std::vector<BigInt> gen;
        gen.reserve(out.relations.rows());
        for (std::size_t j = 0; j < out.relations.rows(); ++j) {
            const BigRat& q = u_inv.at(j, i);
            ensure(is_integer(q), "discriminant: row transform inverse must be integral");
            gen.push_back(q.get_num());
        }
        out.generators.push_back(std::move(gen));
    }
    ensure(out.group.order() == abs(d), "discriminant: invariant factors must multiply to |det|");
    for (std::size_t i = 0; i < out.generators.size(); ++i)
        ensure(out.order_of(out.generators[i]) == out.group.invariant_factors[i],
               "discriminant: generator order must match its invariant factor");
    return out;
}

}  // namespace detail

inline DiscriminantData discriminant_of_graph(const WeightedGraph& g) {
    return detail::discriminant_from_relations(intersection_matrix(g), LinkingKind::plumbing);
}

inline DiscriminantData discriminant_of_graph(const CuspCycle& c) {
    return detail::discriminant_from_relations(intersection_matrix(c), LinkingKind::plumbing);
}

inline DiscriminantData discriminant_of_graph(const QuotientCuspGraph& q) {
    return detail::discriminant_from_relations(intersection_matrix(q), LinkingKind::plumbing);
}

// D = Z^2 / (A-I) Z^2; |D| = trace(A) - 2.
inline DiscriminantData discriminant_of_monodromy(const Monodromy& a) {
    require(a.det() == 1, "NotUnimodular", "determinant must be +1");
    require(a.trace() >= 3, "TraceTooSmall", "trace must be >= 3");
    DiscriminantData out = detail::discriminant_from_relations(detail::translation_relations(a),
                                                               LinkingKind::torus_bundle);
    ensure(out.order() == a.trace() - 2, "discriminant: order must be trace - 2");
    return out;
}

// --- Rank-2 lattices in Q^2 -------------------------------------------------

// Full-rank lattice in Q^2 given by a column basis.  Canonical form is the
// unique basis {(p,0),(q,r)} with p > 0, r > 0, 0 <= q < p.
class Lattice2 {
public:
    Lattice2(std::array<BigRat, 2> w1, std::array<BigRat, 2> w2)
        : w1_(std::move(w1)), w2_(std::move(w2)) {
        for (auto* v : {&w1_, &w2_}) {
            (*v)[0].canonicalize();
            (*v)[1].canonicalize();
        }
        require(det() != 0, "SingularMatrix", "lattice basis must be independent");
    }

    static Lattice2 standard() {
        return Lattice2({BigRat(1), BigRat(0)}, {BigRat(0), BigRat(1)});
    }

    static Lattice2 from_int_columns(const IntMatrix& b) {
        require(b.rows() == 2 && b.cols() == 2, "BadShape", "lattice basis must be 2x2");
        return Lattice2({BigRat(b.at(0, 0)), BigRat(b.at(1, 0))},
                        {BigRat(b.at(0, 1)), BigRat(b.at(1, 1))});
    }

    const std::array<BigRat, 2>& w1() const { return w1_; }
    const std::array<BigRat, 2>& w2() const { return w2_; }

    BigRat det() const { return w1_[0] * w2_[1] - w1_[1] * w2_[0]; }

    // Basis-change to {(p,0),(q,r)}: scale to integer vectors, combine by the
    // extended gcd of the second coordinates, reduce q modulo p.
    std::array<BigRat, 3> canonical() const {  // {p, q, r}
        BigInt mu = lcm(lcm(BigInt(w1_[0].get_den()), BigInt(w1_[1].get_den())),
                        lcm(BigInt(w2_[0].get_den()), BigInt(w2_[1].get_den())));
        auto scaled = [&](const BigRat& x) {
            BigRat p = BigRat(mu) * x;
            ensure(is_integer(p), "lattice canonical: scaling must clear denominators");
            return BigInt(p.get_num());
        };
        std::array<BigInt, 2> u{scaled(w1_[0]), scaled(w1_[1])};
        std::array<BigInt, 2> v{scaled(w2_[0]), scaled(w2_[1])};
        GcdExt e = gcd_ext(u[1], v[1]);
        ensure(e.g > 0, "lattice canonical: basis cannot lie on the first axis");
        BigInt p = exact_div(v[1], e.g) * u[0] - exact_div(u[1], e.g) * v[0];
        BigInt q = e.x * u[0] + e.y * v[0];
        if (p < 0) p = -p;
        ensure(p > 0, "lattice canonical: degenerate first vector");
        q = mod_floor(q, p);
        std::array<BigRat, 3> out{BigRat(p, mu), BigRat(q, mu), BigRat(e.g, mu)};
        for (BigRat& x : out) x.canonicalize();
        return out;
    }

    bool operator==(const Lattice2& o) const { return canonical() == o.canonical(); }
    bool operator!=(const Lattice2& o) const { return !(*this == o); }

    bool is_integral() const {
        return is_integer(w1_[0]) && is_integer(w1_[1]) && is_integer(w2_[0]) &&
               is_integer(w2_[1]);
    }

    // Membership: the basis coordinates of v are integers.
    bool contains(const std::array<BigRat, 2>& v) const {
        BigRat d = det();
        BigRat c1 = (v[0] * w2_[1] - v[1] * w2_[0]) / d;
        BigRat c2 = (w1_[0] * v[1] - w1_[1] * v[0]) / d;
        return is_integer(c1) && is_integer(c2);
    }

    bool contains(const Lattice2& o) const { return contains(o.w1_) && contains(o.w2_); }

    // [super : this], finite because both lattices have full rank.
    BigInt index_in(const Lattice2& super) const {
        require(super.contains(*this), "NotASubgroupLattice",
                "index is defined only for a sublattice");
        BigRat ratio = abs(det() / super.det());
        ratio.canonicalize();
        ensure(ratio.get_den() == 1, "lattice index: determinant ratio must be integral");
        return ratio.get_num();
    }

    // Integral basis matrix with positive determinant (columns swapped if
    // needed).  Rejects non-integral lattices.
    IntMatrix oriented_int_basis() const {
        require(is_integral(), "NotASubgroupLattice", "lattice basis is not integral");
        IntMatrix b(2, 2);
        b.at(0, 0) = w1_[0].get_num();
        b.at(1, 0) = w1_[1].get_num();
        b.at(0, 1) = w2_[0].get_num();
        b.at(1, 1) = w2_[1].get_num();
        if (det() < 0) b.swap_cols(0, 1);
        return b;
    }

private:
    std::array<BigRat, 2> w1_, w2_;
};

namespace detail {

// Guards shared by the subgroup-lattice operations: W integral and
// (A-I) Z^2 contained in W, so W/(A-I)Z^2 is a subgroup of the discriminant.
inline void require_subgroup_lattice(const Monodromy& a, const Lattice2& w) {
    require(w.is_integral(), "NotASubgroupLattice", "lattice basis is not integral");
    require(w.contains(Lattice2::from_int_columns(translation_relations(a))),
            "NotASubgroupLattice", "lattice does not contain (A-I) Z^2");
}

}  // namespace detail

// Orthogonal complement of K = W/(A-I)Z^2 inside D: the lattice |K| (A-I)^-1 W.
// Satisfies (A-I)Z^2 <= W' <= Z^2 and [W':(A-I)Z^2] = |D| / |K|.
inline Lattice2 orthogonal_complement(const Monodromy& a, const Lattice2& w) {
    require(a.det() == 1, "NotUnimodular", "determinant must be +1");
    require(a.trace() >= 3, "TraceTooSmall", "trace must be >= 3");
    detail::require_subgroup_lattice(a, w);

    IntMatrix r = detail::translation_relations(a);
    BigInt d_order = abs(det(r));
    BigInt w_index = w.index_in(Lattice2::standard());
    ensure(d_order % w_index == 0, "orthogonal complement: subgroup order must divide |D|");
    BigInt k_order = exact_div(d_order, w_index);

    RatMatrix basis(2, 2);
    basis.at(0, 0) = w.w1()[0];
    basis.at(1, 0) = w.w1()[1];
    basis.at(0, 1) = w.w2()[0];
    basis.at(1, 1) = w.w2()[1];
    RatMatrix scaled = rat_inverse(r) * basis;
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j) scaled.at(i, j) *= BigRat(k_order);

    Lattice2 out({scaled.at(0, 0), scaled.at(1, 0)}, {scaled.at(0, 1), scaled.at(1, 1)});
    ensure(out.is_integral(), "orthogonal complement: result must be integral");
    ensure(out.contains(Lattice2::from_int_columns(r)),
           "orthogonal complement: result must contain (A-I) Z^2");
    ensure(out.index_in(Lattice2::standard()) == k_order,
           "orthogonal complement: index must equal the subgroup order");
    return out;
}

// Matrix of A on an A-invariant integral lattice, in an oriented basis.
inline Monodromy cover_monodromy(const Monodromy& a, const Lattice2& w) {
    require(a.det() == 1, "NotUnimodular", "determinant must be +1");
    IntMatrix b = w.oriented_int_basis();
    RatMatrix c = rat_inverse(b) *
                  RatMatrix::from_int(a.to_matrix()) * RatMatrix::from_int(b);
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j)
            require(is_integer(c.at(i, j)), "NotInvariant", "lattice is not A-invariant");
    Monodromy out{c.at(0, 0).get_num(), c.at(0, 1).get_num(), c.at(1, 0).get_num(),
                  c.at(1, 1).get_num()};
    ensure(out.det() == 1, "cover monodromy: determinant drifted from +1");
    ensure(out.trace() == a.trace(), "cover monodromy: trace must be preserved");
    return out;
}

struct DualityReport {
    CuspCycle cover_cycle;              // cycle of A acting on W
    CuspCycle complement_cycle;         // cycle of A acting on the complement lattice
    BigInt discriminant_order;          // |D| = trace - 2
    BigInt subgroup_order;              // |K|
    BigInt complement_order;            // |K-perp| = |D| / |K|
    bool mutually_dual;                 // always true on return
};

// The covers attached to K and its orthogonal complement resolve to dual
// cusp cycles of each other.  Throws if any certificate fails.
inline DualityReport verify_mutual_duality(const Monodromy& a, const Lattice2& w) {
    Lattice2 wp = orthogonal_complement(a, w);
    CuspCycle c1 = reduce_to_cycle(cover_monodromy(a, w)).cycle.canonicalized();
    CuspCycle c2 = reduce_to_cycle(cover_monodromy(a, wp)).cycle.canonicalized();
    ensure(dual_cusp(c1) == c2 && dual_cusp(c2) == c1,
           "mutual duality: reduced covers must be dual cycles");

    BigInt d_order = a.trace() - 2;
    BigInt k_order = exact_div(d_order, w.index_in(Lattice2::standard()));
    BigInt kp_order = exact_div(d_order, wp.index_in(Lattice2::standard()));
    ensure(k_order * kp_order == d_order,
           "mutual duality: |K| |K-perp| must equal |D|");
    return {std::move(c1), std::move(c2), std::move(d_order), std::move(k_order),
            std::move(kp_order), true};
}

// Every trace-t cusp is covered by the hypersurface cusp [3, 2^(t-3)]: the
// action of A on span{(1,0),(a,c)} (or on Z^2 when a = 0) is the trace-t
// companion matrix. The resulting cycle has weight excess 1.
inline CuspCycle hypersurface_cover(const Monodromy& a) {
    require(a.det() == 1, "NotUnimodular", "determinant must be +1");
    require(a.trace() >= 3, "TraceTooSmall", "trace must be >= 3");
    const BigInt t = a.trace();

    if (a.a != 0) {
        ensure(a.c != 0, "hypersurface cover: lower-left entry cannot vanish");
        IntMatrix h(2, 2);
        h.at(0, 0) = 1;
        h.at(1, 0) = 0;
        h.at(0, 1) = a.a;
        h.at(1, 1) = a.c;
        RatMatrix action = rat_inverse(h) *
                           RatMatrix::from_int(a.to_matrix()) * RatMatrix::from_int(h);
        RatMatrix companion = RatMatrix::from_int(mat_M(t).to_matrix());
        ensure(action == companion, "hypersurface cover: action must be the companion matrix");
    }

    ensure(t - 2 <= BigInt(1L << 24), "hypersurface cover: trace too large to lay out the cycle");
    std::vector<BigInt> e;
    e.reserve(static_cast<std::size_t>(t.get_ui()) - 2);
    e.emplace_back(3);
    for (BigInt i(3); i < t; ++i) e.emplace_back(2);
    CuspCycle out{std::move(e)};
    ensure(is_complete_intersection(out), "hypersurface cover: excess must be 1");
    return out;
}

// A cusp whose discriminant group has prime order admits no complete
// intersection abelian cover iff the cusp and its dual both fail the excess
// criterion: every abelian cover repeats one of the two cycles, and
// repetition preserves excess > 4.
inline bool prime_order_obstruction(const CuspCycle& c) {
    BigInt n = monodromy(c).trace() - 2;
    require(is_probable_prime(n), "OrderNotPrime", "discriminant order must be prime");
    return !is_complete_intersection(c) && !is_complete_intersection(dual_cusp(c));
}

struct KleinReport {
    BigInt discriminant_order;  // |D| = 16 b
    BigInt b;                   // upper-right entry of the classifying matrix
    BigInt quotient_order;      // |D / K| = 4 b
};

// The half-sums of the leaf classes at each chain end span a self-orthogonal
// Klein four-group K in the discriminant, with |D / K| = 4 b.
inline KleinReport klein_subgroup_check(const QuotientCuspGraph& g) {
    QcClass cls = class_of_graph(g);
    DiscriminantData dd = discriminant_of_graph(g);
    std::size_t k = g.size();
    std::size_t n = k + 4;

    std::vector<BigRat> v(n, BigRat(0)), w(n, BigRat(0));
    v[k + 2] = v[k + 3] = BigRat(1, 2);  // leaves at the far chain end
    w[k] = w[k + 1] = BigRat(1, 2);      // leaves at the near chain end

    RatMatrix s = RatMatrix::from_int(dd.relations);
    auto to_class = [&](const std::vector<BigRat>& x) {
        std::vector<BigRat> sx = s * x;
        std::vector<BigInt> out;
        out.reserve(n);
        for (BigRat q : sx) {
            q.canonicalize();
            ensure(is_integer(q), "klein subgroup: half-sum must lie in the dual lattice");
            out.push_back(q.get_num());
        }
        return out;
    };
    std::vector<BigInt> cv = to_class(v), cw = to_class(w);

    ensure(dd.order_of(cv) == 2 && dd.order_of(cw) == 2,
           "klein subgroup: generators must have order 2");
    ensure(!dd.is_zero(cv) && !dd.is_zero(cw), "klein subgroup: generators must be nonzero");
    ensure(dd.pair_rational(v, v) == 0 && dd.pair_rational(v, w) == 0 &&
               dd.pair_rational(w, w) == 0,
           "klein subgroup: K must be self-orthogonal");

    IntMatrix rel(n, n + 2);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) rel.at(i, j) = dd.relations.at(i, j);
        rel.at(i, n) = cv[i];
        rel.at(i, n + 1) = cw[i];
    }
    AbelianQuotient q = abelian_quotient(rel);
    ensure(q.free_rank == 0, "klein subgroup: quotient must be finite");

    KleinReport rep{dd.order(), cls.b, q.torsion.order()};
    ensure(rep.discriminant_order == 16 * rep.b,
           "klein subgroup: discriminant order must be 16 b");
    ensure(rep.quotient_order == 4 * rep.b, "klein subgroup: |D / K| must be 4 b");
    ensure(4 * rep.quotient_order == rep.discriminant_order,
           "klein subgroup: K must be a four-group");
    return rep;
}

}  // namespace cusp
