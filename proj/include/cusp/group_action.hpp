#pragma once

// Diagonal root-of-unity action on the cover equations: the exponent group
// G inside (Z/4b)^4 generated by S1..S4, its S1^j T^k S3^l normal form, its
// abstract structure, the fixed-point census with restricted-monomial
// analysis, the equation characters, the eta character, and the admissible
// split exponents.

#include <cusp/exact.hpp>
#include <cusp/words.hpp>

#include <algorithm>
#include <array>
#include <cstddef>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace cusp {

// Residue 4-tuple (g_x, g_y, g_u, g_v) mod 4b standing for the diagonal
// matrix diag(w^g_x, w^g_y, w^g_u, w^g_v), w a fixed primitive 4b-th root
// of unity; matrix multiplication is residue addition, scalar -1 is the
// all-2b shift.
class ExponentVector {
public:
    ExponentVector(BigInt modulus, std::array<BigInt, 4> g)
        : m_(std::move(modulus)), g_(std::move(g)) {
        require(m_ >= 4 && m_ % 4 == 0, "InvalidClass", "modulus must be 4b for some b >= 1");
        for (BigInt& x : g_) x = mod_floor(x, m_);
    }

    const BigInt& modulus() const { return m_; }
    const std::array<BigInt, 4>& residues() const { return g_; }
    const BigInt& operator[](std::size_t i) const { return g_[i]; }

    bool is_identity() const {
        return std::all_of(g_.begin(), g_.end(), [](const BigInt& x) { return x == 0; });
    }

    std::size_t zero_count() const {
        return static_cast<std::size_t>(
            std::count_if(g_.begin(), g_.end(), [](const BigInt& x) { return x == 0; }));
    }

    // Order as an element of (Z/m)^4.
    BigInt order() const {
        BigInt o(1);
        for (const BigInt& x : g_) o = lcm(o, m_ / gcd(m_, x));
        return o;
    }

    ExponentVector operator+(const ExponentVector& o) const {
        require(m_ == o.m_, "InvalidClass", "modulus mismatch");
        return {m_, {g_[0] + o.g_[0], g_[1] + o.g_[1], g_[2] + o.g_[2], g_[3] + o.g_[3]}};
    }

    ExponentVector operator-() const { return {m_, {-g_[0], -g_[1], -g_[2], -g_[3]}}; }

    // n-fold sum (n may be negative).
    ExponentVector times(const BigInt& n) const {
        return {m_, {n * g_[0], n * g_[1], n * g_[2], n * g_[3]}};
    }

    bool operator==(const ExponentVector& o) const { return m_ == o.m_ && g_ == o.g_; }
    bool operator<(const ExponentVector& o) const { return g_ < o.g_; }

private:
    BigInt m_;
    std::array<BigInt, 4> g_;
};

// Subgroup of (Z/4b)^4 given by generators, enumerated by closure.  Carries
// its quotient-cusp class so the canonical generators S1..S4 and the T and
// -1 elements stay available on subgroups too.
class ExponentGroup {
public:
    ExponentGroup(QcClass q, std::vector<ExponentVector> generators)
        : qc_(std::move(q)), m_(4 * qc_.b), gens_(std::move(generators)) {
        require(!gens_.empty(), "InvalidClass", "need at least one generator");
        for (const ExponentVector& g : gens_)
            require(g.modulus() == m_, "InvalidClass", "generator modulus must be 4b");

        std::set<ExponentVector> seen{identity()};
        std::vector<ExponentVector> frontier{identity()};
        while (!frontier.empty()) {
            ExponentVector x = std::move(frontier.back());
            frontier.pop_back();
            for (const ExponentVector& g : gens_) {
                ExponentVector y = x + g;
                if (seen.insert(y).second) {
                    require(seen.size() <= (1u << 20), "EnumerationTooLarge",
                            "group closure exceeds the enumeration cap");
                    frontier.push_back(std::move(y));
                }
            }
        }
        elements_.assign(seen.begin(), seen.end());
    }

    const QcClass& qc() const { return qc_; }
    const BigInt& modulus() const { return m_; }
    const std::vector<ExponentVector>& generators() const { return gens_; }
    const std::vector<ExponentVector>& elements() const { return elements_; }
    BigInt order() const { return BigInt(elements_.size()); }

    bool contains(const ExponentVector& x) const {
        if (x.modulus() != m_) return false;
        return std::binary_search(elements_.begin(), elements_.end(), x);
    }

    ExponentVector identity() const {
        return {m_, {BigInt(0), BigInt(0), BigInt(0), BigInt(0)}};
    }

    // T = S1 - S2 = (2b, 2b, 0, 0), the scalar -1 on the (x,y)-coordinates.
    ExponentVector t_element() const {
        BigInt hb = m_ / 2;
        return {m_, {hb, hb, BigInt(0), BigInt(0)}};
    }

    // The scalar matrix -1: all residues 2b.
    ExponentVector minus_identity() const {
        BigInt hb = m_ / 2;
        return {m_, {hb, hb, hb, hb}};
    }

    // Canonical generator S_i of the class (i in 1..4), independent of the
    // generators this instance was built from.
    ExponentVector s(int i) const {
        BigInt hb = m_ / 2;
        switch (i) {
            case 1: return {m_, {qc_.a + hb, qc_.a, BigInt(1), BigInt(1)}};
            case 2: return {m_, {qc_.a, qc_.a + hb, BigInt(1), BigInt(1)}};
            case 3: return {m_, {BigInt(1), BigInt(1), qc_.d + hb, qc_.d}};
            case 4: return {m_, {BigInt(1), BigInt(1), qc_.d, qc_.d + hb}};
            default: ensure(false, "ExponentGroup::s: index must be 1..4");
        }
        return identity();  // unreachable
    }

private:
    QcClass qc_;
    BigInt m_;
    std::vector<ExponentVector> gens_;
    std::vector<ExponentVector> elements_;
};

// Unique digits of x = S1^j T^k S3^l with 0 <= j < 4b and k, l in {0,1}.
struct NormalForm {
    BigInt j, k, l;

    bool operator==(const NormalForm&) const = default;
};

inline NormalForm normal_form(const ExponentGroup& g, const ExponentVector& x) {
    require(g.contains(x), "NotInGroup", "element is not in the group");
    const BigInt& m = g.modulus();
    BigInt hb = m / 2;

    // g_u - g_v = 2b*l picks l, then g_v = j + l*d picks j, then T^k is the
    // leftover.
    BigInt du = mod_floor(x[2] - x[3], m);
    BigInt l;
    if (du == 0) l = 0;
    else if (du == hb) l = 1;
    else fail("NotInGroup", "no S3 digit matches the u,v residues");

    BigInt j = mod_floor(x[3] - l * g.qc().d, m);
    ExponentVector base = g.s(1).times(j) + g.s(3).times(l);
    BigInt k;
    if (x == base) k = 0;
    else if (x == base + g.t_element()) k = 1;
    else fail("NotInGroup", "no T digit matches the x,y residues");

    ensure(g.s(1).times(j) + g.t_element().times(k) + g.s(3).times(l) == x,
           "normal_form: reconstruction failed");
    return {std::move(j), std::move(k), std::move(l)};
}

// Invariant factors of the group: Smith form of [generators | 4b*I] gives a
// basis matrix B = u^-1 * diag(d) of the generated lattice L, and the group
// L / 4bZ^4 is the cokernel of 4b * B^-1 = diag(d)^-1 * 4b * u.  The result
// must match the parity dichotomy: c odd -> C_4 x C_{n/4}, c even ->
// C_2 x C_2 x C_{n/4}, witnessed by [-1,1,-1,1] (order 2) resp.
// S1^d S3^-1 (order 4, squaring to T).
inline FiniteAbelianGroup group_structure(const ExponentGroup& g) {
    const BigInt& m = g.modulus();
    const auto& gens = g.generators();
    std::size_t r = gens.size();

    IntMatrix a(4, r + 4);
    for (std::size_t i = 0; i < 4; ++i) {
        for (std::size_t jj = 0; jj < r; ++jj) a.at(i, jj) = gens[jj][i];
        a.at(i, r + i) = m;
    }
    SnfResult s = snf(a);
    IntMatrix c(4, 4);
    for (std::size_t i = 0; i < 4; ++i) {
        ensure(s.d[i] > 0, "group_structure: lattice must have full rank");
        for (std::size_t jj = 0; jj < 4; ++jj) c.at(i, jj) = exact_div(m * s.u.at(i, jj), s.d[i]);
    }
    AbelianQuotient quo = abelian_quotient(c);
    ensure(quo.free_rank == 0, "group_structure: quotient must be finite");
    ensure(quo.torsion.order() == g.order(), "group_structure: order differs from enumeration");

    BigInt n = g.order();
    bool c_even = mod_floor(g.qc().c, 2) == 0;
    std::vector<BigInt> expect =
        c_even ? std::vector<BigInt>{BigInt(2), BigInt(2), n / 4}
               : std::vector<BigInt>{BigInt(4), n / 4};
    ensure(quo.torsion.invariant_factors == expect, "group_structure: parity dichotomy failed");

    if (c_even) {
        BigInt hb = m / 2;
        ExponentVector w(m, {hb, BigInt(0), hb, BigInt(0)});
        ensure(g.contains(w), "group_structure: [-1,1,-1,1] must lie in the group");
        ensure(w.order() == 2, "group_structure: [-1,1,-1,1] must have order 2");
    } else {
        ExponentVector w = g.s(1).times(g.qc().d) + (-g.s(3));
        ensure(g.contains(w), "group_structure: S1^d S3^-1 must lie in the group");
        ensure(w.order() == 4, "group_structure: S1^d S3^-1 must have order 4");
        ensure(w + w == g.t_element(), "group_structure: (S1^d S3^-1)^2 must equal T");
    }
    return quo.torsion;
}

// Split equation exponents for the class: alpha+beta = 2a, gamma+delta = 2d,
// all nonnegative and congruent to c mod 2.
struct CiExponents {
    BigInt alpha, beta, gamma, delta;

    bool operator==(const CiExponents&) const = default;
};

inline CiExponents ci_exponents(const QcClass& q, BigInt alpha, BigInt beta, BigInt gamma,
                                BigInt delta) {
    require(alpha >= 0 && beta >= 0 && gamma >= 0 && delta >= 0, "InvalidSequence",
            "exponents must be >= 0");
    require(alpha + beta == 2 * q.a && gamma + delta == 2 * q.d, "InvalidSequence",
            "exponent sums must be 2a and 2d");
    require(mod_floor(alpha - q.c, 2) == 0 && mod_floor(gamma - q.c, 2) == 0, "InvalidSequence",
            "exponents must match the parity of c");
    return {std::move(alpha), std::move(beta), std::move(gamma), std::move(delta)};
}

// Every valid (alpha, gamma) pair, alpha ascending then gamma ascending.
inline std::vector<CiExponents> admissible_exponents(const QcClass& q) {
    require((2 * q.a + 1) * (2 * q.d + 1) <= BigInt(1L << 20), "EnumerationTooLarge",
            "exponent enumeration exceeds the cap");
    BigInt par = mod_floor(q.c, 2);
    std::vector<CiExponents> out;
    for (BigInt al = par; al <= 2 * q.a; al += 2)
        for (BigInt ga = par; ga <= 2 * q.d; ga += 2)
            out.push_back(ci_exponents(q, al, 2 * q.a - al, ga, 2 * q.d - ga));
    ensure(!out.empty(), "admissible_exponents: enumeration cannot be empty");
    return out;
}

// Whether the two equations restricted to a fixed coordinate plane vanish
// only at the origin.  On the xy- and uv-planes both right-hand sides die
// and a sum of two squares plus a vanishing monomial forces 0.  On a mixed
// plane the system stays alive exactly when both surviving right-hand sides
// keep exponent 0 on the killed coordinate, e.g. x = u = 0 leaves
// y^2 = v^beta, v^2 = y^delta solvable at (1,1) iff alpha = gamma = 0.
inline bool restricted_only_origin(const std::string& plane, const CiExponents& ce) {
    if (plane == "xy" || plane == "uv") return true;
    if (plane == "yv") return !(ce.alpha == 0 && ce.gamma == 0);
    if (plane == "yu") return !(ce.beta == 0 && ce.gamma == 0);
    if (plane == "xv") return !(ce.alpha == 0 && ce.delta == 0);
    if (plane == "xu") return !(ce.beta == 0 && ce.delta == 0);
    ensure(false, "restricted_only_origin: unknown plane");
    return true;  // unreachable
}

// Non-identity elements fixing a coordinate plane pointwise (>= 2 residues
// zero), with the plane and the restricted-equation analysis.  c odd gives
// exactly {T, -T}; c even gives the 6 elements with residues {0,0,2b,2b}.
struct FixedPointEntry {
    ExponentVector element;
    std::string plane;
    bool only_origin;
};

inline std::vector<FixedPointEntry> fixed_point_census(const ExponentGroup& g,
                                                       const CiExponents& ce) {
    static const char coord[4] = {'x', 'y', 'u', 'v'};
    BigInt hb = g.modulus() / 2;
    bool c_even = mod_floor(g.qc().c, 2) == 0;

    std::vector<FixedPointEntry> out;
    for (const ExponentVector& x : g.elements()) {
        if (x.is_identity() || x.zero_count() < 2) continue;
        std::string plane;
        for (std::size_t i = 0; i < 4; ++i) {
            if (x[i] == 0) plane += coord[i];
            else ensure(x[i] == hb, "fixed_point_census: residues must be 0 or 2b");
        }
        ensure(plane.size() == 2, "fixed_point_census: fixed locus must be a plane");
        bool origin = restricted_only_origin(plane, ce);
        ensure(origin || (c_even && ce.alpha * ce.beta == 0 && ce.gamma * ce.delta == 0),
               "fixed_point_census: extra fixed points need c even and a vanishing end exponent");
        out.push_back({x, std::move(plane), origin});
    }

    ensure(out.size() == (c_even ? 6u : 2u), "fixed_point_census: census size contradicts c");
    if (!c_even) {
        ExponentVector t = g.t_element();
        ensure(out[0].element == g.minus_identity() + t && out[1].element == t,
               "fixed_point_census: census for odd c must be {T, -T}");
    }
    return out;
}

inline std::vector<FixedPointEntry> fixed_point_census(const ExponentGroup& g) {
    return fixed_point_census(g, admissible_exponents(g.qc()).front());
}

// The generators must scale both defining equations by characters: all
// three monomial weights of x^2 + y^2 = u^alpha v^beta agree mod 4b, and
// likewise for u^2 + v^2 = x^gamma y^delta.  Raw exponents are accepted so
// broken parities can be probed; `violation` (if given) receives the first
// failing congruence.
inline bool character_check(const ExponentGroup& g, const BigInt& alpha, const BigInt& beta,
                            const BigInt& gamma, const BigInt& delta,
                            std::string* violation = nullptr) {
    const BigInt& m = g.modulus();
    for (int i = 1; i <= 4; ++i) {
        ExponentVector s = g.s(i);
        BigInt w1 = mod_floor(2 * s[0], m);
        BigInt w2 = mod_floor(2 * s[1], m);
        BigInt w3 = mod_floor(alpha * s[2] + beta * s[3], m);
        if (!(w1 == w2 && w2 == w3)) {
            if (violation)
                *violation = "S" + std::to_string(i) + ": 2g_x = " + w1.get_str() +
                             ", 2g_y = " + w2.get_str() +
                             ", alpha*g_u + beta*g_v = " + w3.get_str();
            return false;
        }
        BigInt v1 = mod_floor(2 * s[2], m);
        BigInt v2 = mod_floor(2 * s[3], m);
        BigInt v3 = mod_floor(gamma * s[0] + delta * s[1], m);
        if (!(v1 == v2 && v2 == v3)) {
            if (violation)
                *violation = "S" + std::to_string(i) + ": 2g_u = " + v1.get_str() +
                             ", 2g_v = " + v2.get_str() +
                             ", gamma*g_x + delta*g_y = " + v3.get_str();
            return false;
        }
    }
    return true;
}

inline bool character_check(const ExponentGroup& g, const CiExponents& ce,
                            std::string* violation = nullptr) {
    return character_check(g, ce.alpha, ce.beta, ce.gamma, ce.delta, violation);
}

// Character by which an element scales the residual 2-form:
// e(g) = -g_x + g_y - g_u + g_v mod 4b.
inline BigInt eta_value(const ExponentVector& x) {
    return mod_floor(-x[0] + x[1] - x[2] + x[3], x.modulus());
}

// Full eta table: linear, image {0, 2b}, kernel of index 2, and
// e(S1) = e(S3) = 2b (both generators negate the form).
inline std::map<ExponentVector, BigInt> eta_character(const ExponentGroup& g) {
    BigInt hb = g.modulus() / 2;
    ensure(eta_value(g.s(1)) == hb && eta_value(g.s(3)) == hb,
           "eta_character: S1 and S3 must negate the form");
    ensure(eta_value(g.identity()) == 0, "eta_character: identity must fix the form");
    for (int i = 1; i <= 4; ++i)
        for (int jj = 1; jj <= 4; ++jj)
            ensure(eta_value(g.s(i) + g.s(jj)) ==
                       mod_floor(eta_value(g.s(i)) + eta_value(g.s(jj)), g.modulus()),
                   "eta_character: character must be additive");

    std::map<ExponentVector, BigInt> out;
    BigInt kernel(0);
    for (const ExponentVector& x : g.elements()) {
        BigInt e = eta_value(x);
        ensure(e == 0 || e == hb, "eta_character: image must be {0, 2b}");
        if (e == 0) kernel += 1;
        out.emplace(x, std::move(e));
    }
    ensure(2 * kernel == g.order(), "eta_character: kernel must have index 2");
    return out;
}

// The canonical exponent group of a class: S1 = (a+2b, a, 1, 1),
// S2 = (a, a+2b, 1, 1), S3 = (1, 1, d+2b, d), S4 = (1, 1, d, d+2b) mod 4b,
// with the certified relations S2 = T S1, S4 = -T S3, S3^2 = S1^2d T^c,
// -1 = S1^2b (a odd) or S1^2b T (a even), |G| = 16b, and the normal-form
// bijection G <-> [0,4b) x {0,1}^2.
inline ExponentGroup build_group(const QcClass& q) {
    require(16 * q.b <= BigInt(1L << 20), "EnumerationTooLarge",
            "group enumeration exceeds the cap");
    BigInt m = 4 * q.b;
    BigInt hb = 2 * q.b;
    std::vector<ExponentVector> gens{
        ExponentVector(m, {q.a + hb, q.a, BigInt(1), BigInt(1)}),
        ExponentVector(m, {q.a, q.a + hb, BigInt(1), BigInt(1)}),
        ExponentVector(m, {BigInt(1), BigInt(1), q.d + hb, q.d}),
        ExponentVector(m, {BigInt(1), BigInt(1), q.d, q.d + hb})};
    ExponentGroup g(q, std::move(gens));
    ensure(g.order() == 16 * q.b, "build_group: order must be 16b");
    for (int i = 1; i <= 4; ++i)
        ensure(g.generators()[static_cast<std::size_t>(i - 1)] == g.s(i),
               "build_group: generators must be S1..S4");

    ExponentVector t = g.t_element();
    ensure(g.s(2) == t + g.s(1), "build_group: S2 must equal T S1");
    ensure(g.s(4) == g.minus_identity() + t + g.s(3), "build_group: S4 must equal -T S3");
    ensure(g.s(3) + g.s(3) == g.s(1).times(2 * q.d) + t.times(q.c),
           "build_group: S3^2 must equal S1^2d T^c");

    ExponentVector minus = g.s(1).times(2 * q.b);
    if (mod_floor(q.a, 2) == 0) minus = minus + t;
    ensure(minus == g.minus_identity(), "build_group: -1 realization failed");

    for (const ExponentVector& x : g.elements()) normal_form(g, x);
    return g;
}

// For odd b: the order-16 subgroup generated by S1^b together with the
// named structure witnesses (T and [-1,1,-1,1] for c even, S1^d S3^-1 for
// c odd); its invariant factors equal the b = 1 pattern of the same
// c-parity.
inline ExponentGroup b_odd_subgroup(const ExponentGroup& g) {
    const QcClass& q = g.qc();
    require(mod_floor(q.b, 2) == 1, "BEven", "subgroup reduction needs odd b");

    std::vector<ExponentVector> gens{g.s(1).times(q.b)};
    if (mod_floor(q.c, 2) == 0) {
        BigInt hb = g.modulus() / 2;
        gens.push_back(g.t_element());
        gens.push_back(ExponentVector(g.modulus(), {hb, BigInt(0), hb, BigInt(0)}));
    } else {
        gens.push_back(g.s(1).times(q.d) + (-g.s(3)));
    }

    ExponentGroup sub(q, std::move(gens));
    ensure(sub.order() == 16, "b_odd_subgroup: order must be 16");
    for (const ExponentVector& x : sub.elements())
        ensure(g.contains(x), "b_odd_subgroup: closure escaped the group");

    FiniteAbelianGroup st = group_structure(sub);
    std::vector<BigInt> twin = mod_floor(q.c, 2) == 0
                                   ? std::vector<BigInt>{BigInt(2), BigInt(2), BigInt(4)}
                                   : std::vector<BigInt>{BigInt(4), BigInt(4)};
    ensure(st.invariant_factors == twin, "b_odd_subgroup: structure must match the b = 1 pattern");
    return sub;
}

}  // namespace cusp
