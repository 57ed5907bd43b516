#pragma once

// JSON bridges: exact integers to JSON (decimal strings above the 53-bit
// safe bound), cycles/matrices/groups to arrays, and comma-separated
// integer lists back to exact vectors.

#include <cusp/discriminant.hpp>
#include <cusp/exact.hpp>
#include <cusp/graphs.hpp>
#include <cusp/words.hpp>

#include <nlohmann/json.hpp>

#include <cstdint>
#include <string>
#include <vector>

namespace cusp {

using Json = nlohmann::json;

// Exceeding 2^53 - 1 in either direction switches to a decimal string so
// consumers that read doubles stay exact.
inline Json json_int(const BigInt& x) {
    static const BigInt safe = (BigInt(1) << 53) - 1;
    if (-safe <= x && x <= safe) return Json(static_cast<std::int64_t>(x.get_si()));
    return Json(x.get_str());
}

inline Json json_rat(const BigRat& x) {
    if (x.get_den() == 1) return json_int(BigInt(x.get_num()));
    return Json(x.get_num().get_str() + "/" + x.get_den().get_str());
}

inline Json json_list(const std::vector<BigInt>& xs) {
    Json out = Json::array();
    for (const BigInt& x : xs) out.push_back(json_int(x));
    return out;
}

inline Json json_matrix(const IntMatrix& m) {
    Json out = Json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        Json row = Json::array();
        for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(json_int(m.at(i, j)));
        out.push_back(std::move(row));
    }
    return out;
}

inline Json json_matrix(const UniMat2& m) { return json_matrix(m.to_matrix()); }

inline Json json_cycle(const CuspCycle& c) { return json_list(c.entries()); }

inline Json json_chain(const QuotientCuspGraph& g) { return json_list(g.entries()); }

inline Json json_group(const FiniteAbelianGroup& g) {
    return Json{{"invariant_factors", json_list(g.invariant_factors)},
                {"order", json_int(g.order())}};
}

inline Json json_lattice(const Lattice2& w) {
    auto row = [](const std::array<BigRat, 2>& v) {
        return Json::array({json_rat(v[0]), json_rat(v[1])});
    };
    return Json{{"w1", row(w.w1())}, {"w2", row(w.w2())}};
}

// Comma-separated integers ("2,4,-1"); rejects empty lists, empty tokens,
// and non-numeric characters.
inline std::vector<BigInt> parse_int_list(const std::string& text) {
    std::vector<BigInt> out;
    std::size_t pos = 0;
    while (true) {
        std::size_t next = text.find(',', pos);
        std::string tok = text.substr(pos, next == std::string::npos ? next : next - pos);
        std::size_t start = tok.empty() ? 0 : (tok[0] == '+' || tok[0] == '-' ? 1 : 0);
        require(tok.size() > start, "InvalidSequence", "empty integer token in '" + text + "'");
        for (std::size_t i = start; i < tok.size(); ++i)
            require(tok[i] >= '0' && tok[i] <= '9', "InvalidSequence",
                    "non-numeric token '" + tok + "'");
        BigInt val(tok.substr(start), 10);
        out.push_back(tok[0] == '-' ? BigInt(-val) : val);
        if (next == std::string::npos) break;
        pos = next + 1;
    }
    return out;
}

inline std::vector<BigInt> parse_int_list(const std::string& text, std::size_t count,
                                          const std::string& what) {
    std::vector<BigInt> out = parse_int_list(text);
    require(out.size() == count, "BadShape",
            what + " needs exactly " + std::to_string(count) + " comma-separated integers");
    return out;
}

inline UniMat2 parse_unimat(const std::string& text) {
    std::vector<BigInt> v = parse_int_list(text, 4, "a matrix");
    return {v[0], v[1], v[2], v[3]};
}

inline QcClass parse_qc(const std::string& text) {
    std::vector<BigInt> v = parse_int_list(text, 4, "a class");
    return QcClass(v[0], v[1], v[2], v[3]);
}

inline Lattice2 parse_lattice(const std::string& text) {
    std::vector<BigInt> v = parse_int_list(text, 4, "a lattice");
    return Lattice2({BigRat(v[0]), BigRat(v[1])}, {BigRat(v[2]), BigRat(v[3])});
}

}  // namespace cusp
