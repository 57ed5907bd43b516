#pragma once

// Exact integer/rational linear algebra: dense BigInt matrices, Bareiss
// determinants, exact inverses, Smith normal form, and invariant factors
// of finitely generated abelian groups.  No floating point anywhere.

#include <gmpxx.h>

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace cusp {

using BigInt = mpz_class;
using BigRat = mpq_class;

// Carries a stable machine-readable code alongside the human message so the
// CLI can map failures to structured error objects.
class Error : public std::runtime_error {
public:
    Error(std::string code, const std::string& message)
        : std::runtime_error(message), code_(std::move(code)) {}
    const std::string& code() const { return code_; }

private:
    std::string code_;
};

[[noreturn]] inline void fail(const std::string& code, const std::string& message) {
    throw Error(code, message);
}

inline void require(bool ok, const std::string& code, const std::string& message) {
    if (!ok) fail(code, message);
}

// Internal-consistency assertion: a failure here is a bug, not bad input.
inline void ensure(bool ok, const std::string& message) {
    if (!ok) throw std::logic_error(message);
}

// Quotient-and-sign-safe helpers on GMP scalars.
inline BigInt exact_div(const BigInt& a, const BigInt& b) {
    ensure(b != 0 && a % b == 0, "exact_div: inexact division");
    BigInt q;
    mpz_divexact(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
}

inline BigInt gcd(const BigInt& a, const BigInt& b) {
    BigInt g;
    mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return g;
}

inline BigInt lcm(const BigInt& a, const BigInt& b) {
    BigInt l;
    mpz_lcm(l.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return l;
}

struct GcdExt {
    BigInt g, x, y;  // g = gcd(a,b) = a*x + b*y, g >= 0
};

inline GcdExt gcd_ext(const BigInt& a, const BigInt& b) {
    GcdExt r;
    mpz_gcdext(r.g.get_mpz_t(), r.x.get_mpz_t(), r.y.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return r;
}

// Floor of a/b for b != 0 (GMP fdiv semantics).
inline BigInt floor_div(const BigInt& a, const BigInt& b) {
    ensure(b != 0, "floor_div: zero divisor");
    BigInt q;
    mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
}

inline BigInt ceil_div(const BigInt& a, const BigInt& b) {
    ensure(b != 0, "ceil_div: zero divisor");
    BigInt q;
    mpz_cdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
}

// Nonnegative representative of a mod m, m > 0.
inline BigInt mod_floor(const BigInt& a, const BigInt& m) {
    ensure(m > 0, "mod_floor: modulus must be positive");
    BigInt r;
    mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
    return r;
}

// Largest f with f*f <= n (n >= 0).
inline BigInt isqrt(const BigInt& n) {
    ensure(n >= 0, "isqrt: negative argument");
    BigInt r;
    mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
    return r;
}

inline bool is_probable_prime(const BigInt& n) {
    return mpz_probab_prime_p(n.get_mpz_t(), 40) != 0;
}

// Dense row-major BigInt matrix.  Values are immutable by convention once an
// operation returns them; all algorithms below are pure functions.
class IntMatrix {
public:
    IntMatrix() : rows_(0), cols_(0) {}
    IntMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), a_(rows * cols, BigInt(0)) {}
    IntMatrix(std::size_t rows, std::size_t cols, std::vector<BigInt> entries)
        : rows_(rows), cols_(cols), a_(std::move(entries)) {
        require(a_.size() == rows_ * cols_, "BadShape", "entry count does not match rows*cols");
    }

    static IntMatrix identity(std::size_t n) {
        IntMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    BigInt& at(std::size_t r, std::size_t c) { return a_[r * cols_ + c]; }
    const BigInt& at(std::size_t r, std::size_t c) const { return a_[r * cols_ + c]; }

    bool operator==(const IntMatrix& o) const {
        return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_;
    }
    bool operator!=(const IntMatrix& o) const { return !(*this == o); }

    IntMatrix transpose() const {
        IntMatrix t(cols_, rows_);
        for (std::size_t r = 0; r < rows_; ++r)
            for (std::size_t c = 0; c < cols_; ++c) t.at(c, r) = at(r, c);
        return t;
    }

    void swap_rows(std::size_t i, std::size_t j) {
        if (i == j) return;
        for (std::size_t c = 0; c < cols_; ++c) std::swap(at(i, c), at(j, c));
    }
    void swap_cols(std::size_t i, std::size_t j) {
        if (i == j) return;
        for (std::size_t r = 0; r < rows_; ++r) std::swap(at(r, i), at(r, j));
    }
    // row_i += q * row_j
    void add_row(std::size_t i, std::size_t j, const BigInt& q) {
        for (std::size_t c = 0; c < cols_; ++c) at(i, c) += q * at(j, c);
    }
    // col_i += q * col_j
    void add_col(std::size_t i, std::size_t j, const BigInt& q) {
        for (std::size_t r = 0; r < rows_; ++r) at(r, i) += q * at(r, j);
    }
    void negate_row(std::size_t i) {
        for (std::size_t c = 0; c < cols_; ++c) at(i, c) = -at(i, c);
    }
    void negate_col(std::size_t i) {
        for (std::size_t r = 0; r < rows_; ++r) at(r, i) = -at(r, i);
    }

private:
    std::size_t rows_, cols_;
    std::vector<BigInt> a_;
};

inline IntMatrix operator*(const IntMatrix& x, const IntMatrix& y) {
    require(x.cols() == y.rows(), "BadShape", "matrix product shape mismatch");
    IntMatrix z(x.rows(), y.cols());
    for (std::size_t i = 0; i < x.rows(); ++i)
        for (std::size_t k = 0; k < x.cols(); ++k) {
            if (x.at(i, k) == 0) continue;
            for (std::size_t j = 0; j < y.cols(); ++j) z.at(i, j) += x.at(i, k) * y.at(k, j);
        }
    return z;
}

inline IntMatrix operator-(const IntMatrix& x, const IntMatrix& y) {
    require(x.rows() == y.rows() && x.cols() == y.cols(), "BadShape", "matrix difference shape mismatch");
    IntMatrix z(x.rows(), x.cols());
    for (std::size_t i = 0; i < x.rows(); ++i)
        for (std::size_t j = 0; j < x.cols(); ++j) z.at(i, j) = x.at(i, j) - y.at(i, j);
    return z;
}

class RatMatrix {
public:
    RatMatrix() : rows_(0), cols_(0) {}
    RatMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), a_(rows * cols, BigRat(0)) {}

    static RatMatrix identity(std::size_t n) {
        RatMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
        return m;
    }
    static RatMatrix from_int(const IntMatrix& m) {
        RatMatrix r(m.rows(), m.cols());
        for (std::size_t i = 0; i < m.rows(); ++i)
            for (std::size_t j = 0; j < m.cols(); ++j) r.at(i, j) = BigRat(m.at(i, j));
        return r;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    BigRat& at(std::size_t r, std::size_t c) { return a_[r * cols_ + c]; }
    const BigRat& at(std::size_t r, std::size_t c) const { return a_[r * cols_ + c]; }

    bool operator==(const RatMatrix& o) const {
        return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_;
    }

private:
    std::size_t rows_, cols_;
    std::vector<BigRat> a_;
};

inline RatMatrix operator*(const RatMatrix& x, const RatMatrix& y) {
    require(x.cols() == y.rows(), "BadShape", "matrix product shape mismatch");
    RatMatrix z(x.rows(), y.cols());
    for (std::size_t i = 0; i < x.rows(); ++i)
        for (std::size_t k = 0; k < x.cols(); ++k) {
            if (x.at(i, k) == 0) continue;
            for (std::size_t j = 0; j < y.cols(); ++j) z.at(i, j) += x.at(i, k) * y.at(k, j);
        }
    return z;
}

inline bool is_integer(const BigRat& q) {
    BigRat c = q;
    c.canonicalize();
    return c.get_den() == 1;
}

// Representative of q mod Z in [0, 1).
inline BigRat mod_one(const BigRat& q) {
    BigRat c = q;
    c.canonicalize();
    BigInt fl = floor_div(c.get_num(), c.get_den());
    return c - BigRat(fl);
}

inline std::vector<BigInt> operator*(const IntMatrix& m, const std::vector<BigInt>& v) {
    require(m.cols() == v.size(), "BadShape", "matrix-vector shape mismatch");
    std::vector<BigInt> out(m.rows(), BigInt(0));
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) out[i] += m.at(i, j) * v[j];
    return out;
}

inline std::vector<BigRat> operator*(const RatMatrix& m, const std::vector<BigRat>& v) {
    require(m.cols() == v.size(), "BadShape", "matrix-vector shape mismatch");
    std::vector<BigRat> out(m.rows(), BigRat(0));
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) out[i] += m.at(i, j) * v[j];
    return out;
}

inline std::vector<BigRat> to_rational(const std::vector<BigInt>& v) {
    std::vector<BigRat> out;
    out.reserve(v.size());
    for (const BigInt& x : v) out.emplace_back(x);
    return out;
}

// Fraction-free Bareiss elimination; exact for any square BigInt matrix.
inline BigInt det(const IntMatrix& m) {
    require(m.rows() == m.cols(), "BadShape", "determinant of non-square matrix");
    const std::size_t n = m.rows();
    if (n == 0) return BigInt(1);
    IntMatrix a = m;
    BigInt sign(1), prev(1);
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (a.at(k, k) == 0) {
            std::size_t p = k + 1;
            while (p < n && a.at(p, k) == 0) ++p;
            if (p == n) return BigInt(0);
            a.swap_rows(k, p);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j)
                a.at(i, j) = exact_div(a.at(i, j) * a.at(k, k) - a.at(i, k) * a.at(k, j), prev);
        prev = a.at(k, k);
    }
    return sign * a.at(n - 1, n - 1);
}

// Gauss-Jordan over exact rationals.
inline RatMatrix rat_inverse(const IntMatrix& m) {
    require(m.rows() == m.cols(), "BadShape", "inverse of non-square matrix");
    const std::size_t n = m.rows();
    RatMatrix a = RatMatrix::from_int(m);
    RatMatrix inv = RatMatrix::identity(n);
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t p = k;
        while (p < n && a.at(p, k) == 0) ++p;
        require(p < n, "SingularMatrix", "matrix is singular");
        if (p != k)
            for (std::size_t j = 0; j < n; ++j) {
                std::swap(a.at(k, j), a.at(p, j));
                std::swap(inv.at(k, j), inv.at(p, j));
            }
        BigRat piv = a.at(k, k);
        for (std::size_t j = 0; j < n; ++j) {
            a.at(k, j) /= piv;
            inv.at(k, j) /= piv;
        }
        for (std::size_t i = 0; i < n; ++i) {
            if (i == k || a.at(i, k) == 0) continue;
            BigRat f = a.at(i, k);
            for (std::size_t j = 0; j < n; ++j) {
                a.at(i, j) -= f * a.at(k, j);
                inv.at(i, j) -= f * inv.at(k, j);
            }
        }
    }
    return inv;
}

struct SnfResult {
    IntMatrix u;             // unimodular row transform
    IntMatrix v;             // unimodular column transform
    std::vector<BigInt> d;   // nonnegative diagonal, d[i] | d[i+1] over nonzero entries
    IntMatrix diagonal() const {
        IntMatrix m(u.rows(), v.cols());
        for (std::size_t i = 0; i < d.size(); ++i) m.at(i, i) = d[i];
        return m;
    }
};

namespace detail {

// Smallest nonzero |entry| in the trailing submatrix starting at (t,t).
inline bool find_pivot(const IntMatrix& a, std::size_t t, std::size_t& pr, std::size_t& pc) {
    bool found = false;
    BigInt best;
    for (std::size_t i = t; i < a.rows(); ++i)
        for (std::size_t j = t; j < a.cols(); ++j) {
            if (a.at(i, j) == 0) continue;
            BigInt mag = abs(a.at(i, j));
            if (!found || mag < best) {
                found = true;
                best = mag;
                pr = i;
                pc = j;
            }
        }
    return found;
}

}  // namespace detail

// Smith normal form with transforms: u * a * v = diag(d).  Pivot choice is
// the smallest nonzero magnitude; a divisibility-repair pass fixes the chain.
inline SnfResult snf(const IntMatrix& input) {
    const std::size_t n = input.rows(), m = input.cols();
    IntMatrix a = input;
    IntMatrix u = IntMatrix::identity(n);
    IntMatrix v = IntMatrix::identity(m);
    const std::size_t steps = n < m ? n : m;

    for (std::size_t t = 0; t < steps; ++t) {
        std::size_t pr = t, pc = t;
        if (!detail::find_pivot(a, t, pr, pc)) break;
        a.swap_rows(t, pr);
        u.swap_rows(t, pr);
        a.swap_cols(t, pc);
        v.swap_cols(t, pc);

        for (;;) {
            bool dirty = false;
            for (std::size_t i = t + 1; i < n; ++i) {
                if (a.at(i, t) == 0) continue;
                BigInt q = floor_div(a.at(i, t), a.at(t, t));
                a.add_row(i, t, -q);
                u.add_row(i, t, -q);
                if (a.at(i, t) != 0) {  // remainder smaller than pivot: promote it
                    a.swap_rows(t, i);
                    u.swap_rows(t, i);
                    dirty = true;
                }
            }
            for (std::size_t j = t + 1; j < m; ++j) {
                if (a.at(t, j) == 0) continue;
                BigInt q = floor_div(a.at(t, j), a.at(t, t));
                a.add_col(j, t, -q);
                v.add_col(j, t, -q);
                if (a.at(t, j) != 0) {
                    a.swap_cols(t, j);
                    v.swap_cols(t, j);
                    dirty = true;
                }
            }
            if (dirty) continue;

            // Row and column t are clear; make the pivot divide the rest.
            bool repaired = false;
            for (std::size_t i = t + 1; i < n && !repaired; ++i)
                for (std::size_t j = t + 1; j < m && !repaired; ++j)
                    if (a.at(i, j) % a.at(t, t) != 0) {
                        a.add_row(t, i, BigInt(1));
                        u.add_row(t, i, BigInt(1));
                        repaired = true;
                    }
            if (!repaired) break;
        }
    }

    std::vector<BigInt> d;
    for (std::size_t t = 0; t < steps; ++t) {
        if (a.at(t, t) < 0) {
            a.negate_row(t);
            u.negate_row(t);
        }
        d.push_back(a.at(t, t));
    }

    SnfResult r{std::move(u), std::move(v), std::move(d)};
    ensure(r.u * input * r.v == r.diagonal(), "snf: reconstruction failed");
    ensure(abs(det(r.u)) == 1 && abs(det(r.v)) == 1, "snf: transform not unimodular");
    for (std::size_t i = 0; i + 1 < r.d.size(); ++i)
        ensure(r.d[i + 1] == 0 || (r.d[i] != 0 && r.d[i + 1] % r.d[i] == 0) || (r.d[i] == 0 && r.d[i + 1] == 0),
               "snf: divisibility chain broken");
    return r;
}

// Invariant factors (each >= 2, divisibility-ordered).  Factors of 1 are
// dropped so equal groups compare equal.
struct FiniteAbelianGroup {
    std::vector<BigInt> invariant_factors;

    BigInt order() const {
        BigInt o(1);
        for (const auto& f : invariant_factors) o *= f;
        return o;
    }
    bool trivial() const { return invariant_factors.empty(); }
    bool operator==(const FiniteAbelianGroup& o) const {
        return invariant_factors == o.invariant_factors;
    }
    bool operator!=(const FiniteAbelianGroup& o) const { return !(*this == o); }
};

struct AbelianQuotient {
    std::size_t free_rank = 0;
    FiniteAbelianGroup torsion;
};

// Cokernel of `relations` acting on Z^rows: Z^rows / (relations * Z^cols).
inline AbelianQuotient abelian_quotient(const IntMatrix& relations) {
    SnfResult s = snf(relations);
    AbelianQuotient q;
    std::size_t nonzero = 0;
    for (const auto& di : s.d)
        if (di != 0) ++nonzero;
    q.free_rank = relations.rows() - nonzero;
    for (const auto& di : s.d)
        if (di > 1) q.torsion.invariant_factors.push_back(di);
    return q;
}

// Order of an element given in smith coordinates of a finite quotient.
inline BigInt element_order_in_quotient(const std::vector<BigInt>& smith_coords,
                                        const std::vector<BigInt>& moduli) {
    ensure(smith_coords.size() == moduli.size(), "element order: shape mismatch");
    BigInt o(1);
    for (std::size_t i = 0; i < moduli.size(); ++i) {
        ensure(moduli[i] != 0, "element order: infinite quotient");
        BigInt g = gcd(smith_coords[i], moduli[i]);
        o = lcm(o, exact_div(moduli[i], g));
    }
    return o;
}

}  // namespace cusp
