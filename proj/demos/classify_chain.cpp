// Chain weights to classifying matrix and back: the pasting product, its
// factorization, the largest-entry class, and the plumbing graph with its
// first homology order.

#include <cusp/discriminant.hpp>
#include <cusp/json_io.hpp>

#include <iostream>
#include <vector>

using namespace cusp;

int main(int argc, char** argv) {
    try {
        std::vector<BigInt> e = parse_int_list(argc > 1 ? argv[1] : "2,3");

        UniMat2 m = pasting_matrix(e);
        std::cout << "chain:   ";
        for (const BigInt& x : e) std::cout << x.get_str() << " ";
        std::cout << "\nmatrix:  [[" << m.a.get_str() << ", " << m.b.get_str() << "], ["
                  << m.c.get_str() << ", " << m.d.get_str() << "]]\n";

        BSeq w = factor_positive(m);
        std::cout << "word:    ";
        for (const BigInt& x : w.entries()) std::cout << x.get_str() << " ";

        std::cout << "\nlargest: ";
        switch (classify_largest(m)) {
            case LargestEntry::a: std::cout << "a"; break;
            case LargestEntry::b: std::cout << "b"; break;
            case LargestEntry::c: std::cout << "c"; break;
            case LargestEntry::d: std::cout << "d"; break;
        }
        std::cout << "\n";

        QuotientCuspGraph g(e);
        std::cout << "|H1|:    " << discriminant_of_graph(g).order().get_str() << "\n\n";
        std::cout << to_dot(g);
        return 0;
    } catch (const Error& err) {
        std::cerr << err.code() << ": " << err.what() << "\n";
        return 2;
    }
}
