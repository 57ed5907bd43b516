#pragma once

// Positive unimodular 2x2 matrices and their unique factorization into the
// elementary letters M(b) = [[0,-1],[1,b]], plus the plumbing pasting-matrix
// product that collapses to the same classifying matrix.

#include <cusp/exact.hpp>

#include <algorithm>
#include <array>
#include <vector>

namespace cusp {

// 2x2 integer matrix [[a,b],[c,d]] with exact arithmetic.  Determinant is
// checked by the call sites that need unimodularity, not by the type itself:
// intermediate products (e.g. pasting factors) legitimately have det -1.
struct UniMat2 {
    BigInt a{0}, b{0}, c{0}, d{0};

    UniMat2() = default;
    UniMat2(BigInt a_, BigInt b_, BigInt c_, BigInt d_)
        : a(std::move(a_)), b(std::move(b_)), c(std::move(c_)), d(std::move(d_)) {}

    static UniMat2 identity() { return {1, 0, 0, 1}; }

    BigInt det() const { return a * d - b * c; }
    BigInt trace() const { return a + d; }

    UniMat2 operator*(const UniMat2& o) const {
        return {a * o.a + b * o.c, a * o.b + b * o.d,
                c * o.a + d * o.c, c * o.b + d * o.d};
    }

    bool operator==(const UniMat2& o) const = default;

    // Inverse for det = +-1 (integral); anything else is a caller bug.
    UniMat2 inverse() const {
        BigInt dt = det();
        ensure(dt == 1 || dt == -1, "UniMat2::inverse: matrix is not unimodular");
        if (dt == 1) return {d, -b, -c, a};
        return {-d, b, c, -a};
    }

    UniMat2 transpose() const { return {a, c, b, d}; }

    IntMatrix to_matrix() const {
        return IntMatrix(2, 2, {a, b, c, d});
    }

    static UniMat2 from_matrix(const IntMatrix& m) {
        ensure(m.rows() == 2 && m.cols() == 2, "UniMat2::from_matrix: need 2x2");
        return {m.at(0, 0), m.at(0, 1), m.at(1, 0), m.at(1, 1)};
    }

    bool all_positive() const { return a >= 1 && b >= 1 && c >= 1 && d >= 1; }
};

// Elementary letter M(e) = [[0,-1],[1,e]].
inline UniMat2 mat_M(const BigInt& e) { return {0, -1, 1, e}; }

// Quarter turn S = [[0,1],[-1,0]]; S^-1 = -S.
inline UniMat2 mat_S() { return {0, 1, -1, 0}; }

// Swap J = [[0,1],[1,0]] (det -1).
inline UniMat2 mat_J() { return {0, 1, 1, 0}; }

// Pasting factor H(b) = [[-1,0],[b,1]] (det -1); H(b)*J = M(b).
inline UniMat2 mat_H(const BigInt& b) { return {-1, 0, b, 1}; }

// Weight word (b_1,...,b_k): k >= 2, ends >= 1, interior >= 2, and at least
// one of those bounds strict.  These are exactly the words whose letter
// product S*M(b_k)***M(b_1) has four positive entries.
class BSeq {
public:
    explicit BSeq(std::vector<BigInt> b) : b_(std::move(b)) {
        require(valid(b_), "InvalidSequence",
                "need k >= 2, ends >= 1, interior >= 2, one bound strict");
    }

    static bool valid(const std::vector<BigInt>& b) {
        if (b.size() < 2) return false;
        if (b.front() < 1 || b.back() < 1) return false;
        bool strict = b.front() > 1 || b.back() > 1;
        for (std::size_t i = 1; i + 1 < b.size(); ++i) {
            if (b[i] < 2) return false;
            if (b[i] > 2) strict = true;
        }
        return strict;
    }

    const std::vector<BigInt>& entries() const { return b_; }
    std::size_t size() const { return b_.size(); }
    const BigInt& operator[](std::size_t i) const { return b_[i]; }

    BSeq reversed() const {
        std::vector<BigInt> r(b_.rbegin(), b_.rend());
        return BSeq(std::move(r));
    }

    bool operator==(const BSeq& o) const { return b_ == o.b_; }

private:
    std::vector<BigInt> b_;
};

// Chain weights e_i and word letters b_i determine each other by
// (b_1,...,b_k) = (e_1-1, e_2,...,e_{k-1}, e_k-1); validity matches on both
// sides (ends >= 1 <-> e >= 2, strictness <-> some e >= 3).
inline std::vector<BigInt> bseq_to_eseq(const BSeq& bs) {
    std::vector<BigInt> e = bs.entries();
    e.front() += 1;
    e.back() += 1;
    return e;
}

inline BSeq eseq_to_bseq(const std::vector<BigInt>& e) {
    require(e.size() >= 2, "InvalidSequence", "chain needs at least two weights");
    std::vector<BigInt> b = e;
    b.front() -= 1;
    b.back() -= 1;
    return BSeq(std::move(b));
}

// B(b_1,...,b_k) = S * M(b_k) *** M(b_1); det +1, all entries positive.
inline UniMat2 build_B(const BSeq& bs) {
    UniMat2 p = UniMat2::identity();
    for (const BigInt& b : bs.entries()) p = mat_M(b) * p;
    UniMat2 result = mat_S() * p;
    ensure(result.det() == 1, "build_B: det drifted from +1");
    ensure(result.all_positive(), "build_B: entries not all positive");
    return result;
}

inline UniMat2 build_B(std::vector<BigInt> b) { return build_B(BSeq(std::move(b))); }

// Which entry of B = [[a,b],[c,d]] is strictly largest.  Writing the letter
// product as S^-1*B = [[-c,-d],[a,b]], the largest entry pins down whether
// the word starts and/or ends with a 1:
//   b largest <-> b_1 > 1 and b_k > 1      a largest <-> b_1 = 1 < b_k
//   d largest <-> b_1 > 1 = b_k            c largest <-> b_1 = 1 = b_k
enum class LargestEntry { a, b, c, d };

namespace detail {

inline void require_positive_unimodular(const UniMat2& m) {
    require(m.all_positive(), "NotPositive", "all four entries must be >= 1");
    require(m.det() == 1, "NotUnimodular", "determinant must be +1");
}

inline LargestEntry strictly_largest(const UniMat2& m) {
    const std::array<const BigInt*, 4> v{&m.a, &m.b, &m.c, &m.d};
    std::size_t best = 0;
    for (std::size_t i = 1; i < 4; ++i)
        if (*v[i] > *v[best]) best = i;
    for (std::size_t i = 0; i < 4; ++i)
        ensure(i == best || *v[i] < *v[best],
               "strictly_largest: tie impossible for positive det-+1 matrices");
    return static_cast<LargestEntry>(best);
}

}  // namespace detail

// Unique word with build_B(word) = m.  Case split on the strictly largest
// entry: strip a leading/trailing letter 1 where the table says one exists,
// then peel b = ceil(d/c) letters off what remains (the peeled state
// [[-c',-d'],[a',b']] keeps 0 <= c' < c, so the loop terminates and ends at
// a single letter M(b') with c' = 0).
inline BSeq factor_positive(const UniMat2& m) {
    detail::require_positive_unimodular(m);
    LargestEntry which = detail::strictly_largest(m);
    bool starts_with_one = (which == LargestEntry::a || which == LargestEntry::c);
    bool ends_with_one = (which == LargestEntry::d || which == LargestEntry::c);

    UniMat2 p = mat_S().inverse() * m;  // = M(b_k) *** M(b_1)
    const UniMat2 strip = mat_M(1).inverse();
    if (starts_with_one) p = p * strip;
    if (ends_with_one) p = strip * p;

    std::vector<BigInt> word;
    if (starts_with_one) word.push_back(1);
    // p = [[-c,-d],[a,b]] for the residual all->=2 word.
    BigInt c = -p.a, d = -p.b;
    while (c != 0) {
        ensure(c > 0, "factor_positive: peel state left the positive cone");
        BigInt b = ceil_div(d, c);
        ensure(b >= 2, "factor_positive: residual word must have letters >= 2");
        word.push_back(b);
        p = p * mat_M(b).inverse();
        BigInt c2 = -p.a;
        ensure(c2 >= 0 && c2 < c, "factor_positive: peel metric failed to decrease");
        c = c2;
        d = -p.b;
    }
    ensure(p.a == 0 && p.b == -1 && p.c == 1, "factor_positive: base case is not a letter");
    word.push_back(p.d);
    if (ends_with_one) word.push_back(1);

    BSeq result(std::move(word));
    ensure(build_B(result) == m, "factor_positive: certificate product mismatch");
    return result;
}

// Largest-entry classification, cross-checked against the factorization's
// (b_1 > 1, b_k > 1) flags.
inline LargestEntry classify_largest(const UniMat2& m) {
    detail::require_positive_unimodular(m);
    LargestEntry which = detail::strictly_largest(m);
    BSeq word = factor_positive(m);
    bool first_big = word[0] > 1;
    bool last_big = word[word.size() - 1] > 1;
    LargestEntry expect = first_big ? (last_big ? LargestEntry::b : LargestEntry::d)
                                    : (last_big ? LargestEntry::a : LargestEntry::c);
    ensure(which == expect, "classify_largest: table disagrees with factorization");
    return which;
}

// Literal pasting product diag(1,-1) * J * H_k * J * ... * J * H_1 * J with
// k+1 single-J separators, H_i built from the word letter (chain ends use
// e-1, interior uses e).  Collapses to build_B of the word since H(b)*J = M(b)
// and diag(1,-1)*J = S.
inline UniMat2 pasting_matrix(const std::vector<BigInt>& e) {
    BSeq word = eseq_to_bseq(e);  // validates the chain
    UniMat2 p = mat_J();
    for (const BigInt& b : word.entries()) p = mat_J() * mat_H(b) * p;
    UniMat2 flip{1, 0, 0, -1};
    UniMat2 result = flip * p;
    ensure(result == build_B(word), "pasting_matrix: product differs from classifying matrix");
    return result;
}

// Classifying data (a b / c d) of a quotient-cusp family: det +1, all
// entries >= 1.  Two tuples describe the same family when they differ by
// swapping a and d, so equality goes through a canonical representative;
// the stored fields keep the caller's orientation (formulas downstream are
// written in terms of it).
class QcClass {
public:
    QcClass(BigInt a_, BigInt b_, BigInt c_, BigInt d_)
        : a(std::move(a_)), b(std::move(b_)), c(std::move(c_)), d(std::move(d_)) {
        require(a >= 1 && b >= 1 && c >= 1 && d >= 1, "InvalidClass",
                "all four entries must be >= 1");
        require(a * d - b * c == 1, "InvalidClass", "determinant must be +1");
    }

    UniMat2 matrix() const { return {a, b, c, d}; }

    // Lexicographically smaller of (a,b,c,d) and (d,b,c,a).
    std::array<BigInt, 4> canonical() const {
        std::array<BigInt, 4> fwd{a, b, c, d}, swp{d, b, c, a};
        return std::min(fwd, swp);
    }

    bool operator==(const QcClass& o) const { return canonical() == o.canonical(); }

    BigInt a, b, c, d;
};

}  // namespace cusp
