#pragma once

// Shared helpers for the test suite: literal matrix builders, canonical
// rationals, and deterministic RNG utilities.

#include <cusp/exact.hpp>

#include <cstdint>
#include <initializer_list>
#include <random>
#include <vector>

namespace testutil {

inline cusp::IntMatrix make_mat(std::initializer_list<std::initializer_list<long>> rows) {
    std::size_t r = rows.size();
    std::size_t c = r ? rows.begin()->size() : 0;
    cusp::IntMatrix m(r, c);
    std::size_t i = 0;
    for (const auto& row : rows) {
        std::size_t j = 0;
        for (long v : row) m.at(i, j++) = v;
        ++i;
    }
    return m;
}

inline cusp::BigRat rat(long num, long den) {
    cusp::BigRat q(num, den);
    q.canonicalize();
    return q;
}

inline long rand_in(std::mt19937_64& rng, long lo, long hi) {
    std::uniform_int_distribution<long> dist(lo, hi);
    return dist(rng);
}

// Random valid weight word: k in [2,kmax], ends in [1,emax], interior in
// [2,emax], resampled until one bound is strict.
inline std::vector<cusp::BigInt> random_word(std::mt19937_64& rng, long kmax, long emax) {
    for (;;) {
        std::size_t k = static_cast<std::size_t>(rand_in(rng, 2, kmax));
        std::vector<cusp::BigInt> b(k);
        b.front() = rand_in(rng, 1, emax);
        b.back() = rand_in(rng, 1, emax);
        for (std::size_t i = 1; i + 1 < k; ++i) b[i] = rand_in(rng, 2, emax);
        bool strict = b.front() > 1 || b.back() > 1;
        for (std::size_t i = 1; i + 1 < k; ++i) strict = strict || b[i] > 2;
        if (strict) return b;
    }
}

// Random cusp cycle: k in [1,kmax], weights in [2,emax], at least one >= 3.
inline std::vector<cusp::BigInt> random_cycle(std::mt19937_64& rng, long kmax, long emax) {
    for (;;) {
        std::size_t k = static_cast<std::size_t>(rand_in(rng, 1, kmax));
        std::vector<cusp::BigInt> e(k);
        bool big = false;
        for (auto& w : e) {
            w = rand_in(rng, 2, emax);
            big = big || w >= 3;
        }
        if (big) return e;
    }
}

}  // namespace testutil
