#pragma once

// Command-line front end: every pipeline behind one subcommand each, JSON
// (sorted keys, exact integers) or DOT/text on stdout.  Exit codes: 0 on
// success, 2 on validation failure (machine-readable error object), 64 on
// usage errors (unknown subcommand, malformed flags).

#include <cusp/covers.hpp>
#include <cusp/discriminant.hpp>
#include <cusp/group_action.hpp>
#include <cusp/json_io.hpp>

#include <CLI11.hpp>

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace cusp::cli {

struct Result {
    bool text_mode = false;
    std::string text;
    Json data;
    int code = 0;
};

inline Result json_result(Json j) { return {false, std::string(), std::move(j), 0}; }

inline Result text_result(std::string t, int code = 0) {
    return {true, std::move(t), Json(), code};
}

// Flag-structure problem detected after CLI parsing (e.g. none of an
// either-or option pair given); mapped to exit 64 like other usage errors.
struct UsageError {
    std::string message;
};

namespace detail {

inline Json exponents_json(const CiExponents& ce) {
    return Json::array(
        {json_int(ce.alpha), json_int(ce.beta), json_int(ce.gamma), json_int(ce.delta)});
}

inline Json census_json(const std::vector<FixedPointEntry>& rows) {
    Json out = Json::array();
    for (const FixedPointEntry& e : rows) {
        const auto& r = e.element.residues();
        out.push_back({{"element", json_list(std::vector<BigInt>(r.begin(), r.end()))},
                       {"only_origin", e.only_origin},
                       {"plane", e.plane}});
    }
    return out;
}

inline Result run_verify(const QcClass& q) {
    std::ostringstream rep;
    bool all = true;

    std::optional<UacResult> uac_cache;
    std::optional<ExponentGroup> grp_cache;
    auto the_uac = [&]() -> const UacResult& {
        if (!uac_cache) uac_cache = uac_cycle(q);
        return *uac_cache;
    };
    auto the_grp = [&]() -> const ExponentGroup& {
        if (!grp_cache) grp_cache = build_group(q);
        return *grp_cache;
    };
    auto check = [&](const std::string& name, const std::function<std::string()>& body) {
        try {
            std::string witness = body();
            rep << name << ": pass";
            if (!witness.empty()) rep << " (" << witness << ")";
            rep << "\n";
        } catch (const std::exception& e) {
            all = false;
            rep << name << ": fail (" << e.what() << ")\n";
        }
    };

    check("order-triple", [&] {
        BigInt n1 = abelianization_order(q).group.order();
        BigInt n2 = discriminant_of_graph(graph_of_class(q)).order();
        BigInt n3 = the_grp().order();
        ensure(n1 == 16 * q.b && n2 == n1 && n3 == n1,
               "relation, graph, and group orders disagree");
        return "order " + n1.get_str();
    });
    check("trace-oracle", [&] {
        BigInt p = q.a * q.d + q.b * q.c;
        BigInt t = monodromy(the_uac().cycle).trace();
        ensure(t == 4 * p * p - 2, "trace differs from 4(ad+bc)^2 - 2");
        return "trace " + t.get_str();
    });
    check("ci-sum", [&] {
        ensure(the_uac().cycle.excess() == 4 && is_complete_intersection(the_uac().cycle),
               "weight excess of the cover cycle must be 4");
        return "sum 4";
    });
    check("duality-involution", [&] {
        CuspCycle c = the_uac().cycle;
        ensure(dual_cusp(dual_cusp(c)).canonicalized() == c.canonicalized(),
               "double dual differs from the cycle");
        return std::string();
    });
    check("klein-duality", [&] {
        KleinReport r = klein_subgroup_check(graph_of_class(q));
        ensure(r.quotient_order == 4 * q.b, "quotient order must be 4b");
        return "|D/K| " + r.quotient_order.get_str();
    });
    check("fixed-points", [&] {
        std::size_t n = fixed_point_census(the_grp()).size();
        std::size_t want = mod_floor(q.c, 2) == 0 ? 6 : 2;
        ensure(n == want, "census size contradicts the parity of c");
        return std::to_string(n) + " elements";
    });
    check("characters", [&] {
        std::vector<CiExponents> tuples = admissible_exponents(q);
        for (const CiExponents& ce : tuples) {
            std::string violation;
            ensure(character_check(the_grp(), ce, &violation),
                   "character violated: " + violation);
        }
        return std::to_string(tuples.size()) + " exponent tuples";
    });

    rep << "overall: " << (all ? "pass" : "fail") << "\n";
    return text_result(rep.str(), all ? 0 : 2);
}

}  // namespace detail

inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Exact invariants of cusp and quotient-cusp singularities"};
    app.require_subcommand(1);

    struct Flags {
        std::string matrix, cycle, e, qc, lattice, exponents;
    };
    auto fl = std::make_shared<Flags>();

    static const char* matrix_help = "matrix a,b,c,d (row-major integers)";
    static const char* cycle_help = "cycle weights e1,e2,... (positive, signs stripped)";
    static const char* chain_help = "chain weights e1,e2,... (positive, signs stripped)";
    static const char* qc_help = "classifying entries a,b,c,d (all >= 1, ad - bc = 1)";
    static const char* lattice_help = "lattice rows w11,w12,w21,w22";

    std::map<CLI::App*, std::function<Result()>> handlers;

    auto* factor = app.add_subcommand("factor", "Factor a positive unimodular matrix into chain weights");
    factor->add_option("--matrix", fl->matrix, matrix_help)->required();
    handlers[factor] = [fl] {
        BSeq w = factor_positive(parse_unimat(fl->matrix));
        return json_result({{"e", json_list(bseq_to_eseq(w))}});
    };

    auto* build = app.add_subcommand("build", "Classifying matrix of a chain via the pasting product");
    build->add_option("--e", fl->e, chain_help)->required();
    handlers[build] = [fl] {
        std::vector<BigInt> e = parse_int_list(fl->e);
        UniMat2 m = pasting_matrix(e);
        return json_result({{"b", json_list(eseq_to_bseq(e).entries())},
                            {"matrix", json_matrix(m)}});
    };

    auto* mono = app.add_subcommand("monodromy", "Trace >= 3 monodromy matrix of a cycle");
    mono->add_option("--cycle", fl->cycle, cycle_help)->required();
    handlers[mono] = [fl] {
        Monodromy m = monodromy(CuspCycle(parse_int_list(fl->cycle)));
        return json_result({{"matrix", json_matrix(m)}, {"trace", json_int(m.trace())}});
    };

    auto* dual = app.add_subcommand("dual", "Dual cusp cycle");
    dual->add_option("--cycle", fl->cycle, cycle_help)->required();
    handlers[dual] = [fl] {
        return json_result({{"dual", json_cycle(dual_cusp(CuspCycle(parse_int_list(fl->cycle))))}});
    };

    auto* isci = app.add_subcommand("is-ci", "Weight-excess complete-intersection test");
    isci->add_option("--cycle", fl->cycle, cycle_help)->required();
    handlers[isci] = [fl] {
        CuspCycle c(parse_int_list(fl->cycle));
        return json_result({{"ci", is_complete_intersection(c)}, {"sum", json_int(c.excess())}});
    };

    auto* reduce = app.add_subcommand("reduce", "Conjugate a trace >= 3 matrix to a cycle monodromy");
    reduce->add_option("--matrix", fl->matrix, matrix_help)->required();
    handlers[reduce] = [fl] {
        CycleReduction r = reduce_to_cycle(parse_unimat(fl->matrix));
        return json_result({{"conjugator", json_matrix(r.conjugator)},
                            {"cycle", json_cycle(r.cycle)}});
    };

    auto* uac = app.add_subcommand("uac", "Universal abelian cover of a quotient-cusp");
    uac->add_option("--qc", fl->qc, qc_help)->required();
    handlers[uac] = [fl] {
        UacResult r = uac_cycle(parse_qc(fl->qc));
        return json_result({{"cycle", json_cycle(r.cycle)},
                            {"degree", json_int(r.degree)},
                            {"equations", Json::array({r.equations.first, r.equations.second})}});
    };

    auto* dc = app.add_subcommand("double-cover", "Canonical cusp double cover of a quotient-cusp");
    dc->add_option("--qc", fl->qc, qc_help)->required();
    handlers[dc] = [fl] {
        CuspDoubleCover r = cusp_double_cover(parse_qc(fl->qc));
        return json_result({{"cycle", json_cycle(r.cycle)},
                            {"matrix", json_matrix(r.matrix)},
                            {"trace", json_int(r.matrix.trace())}});
    };

    auto* c2 = app.add_subcommand("covers2", "The three connected order-two covers of a chain");
    c2->add_option("--e", fl->e, chain_help)->required();
    handlers[c2] = [fl] {
        OrderTwoCovers r = order_two_covers(QuotientCuspGraph(parse_int_list(fl->e)));
        return json_result({{"v_cover", json_chain(r.v_cover)},
                            {"vw_cover", json_cycle(r.vw_cover)},
                            {"w_cover", json_chain(r.w_cover)}});
    };

    auto* disc = app.add_subcommand("discriminant", "Discriminant group with linking form");
    auto* disc_cycle = disc->add_option("--cycle", fl->cycle, cycle_help);
    auto* disc_qc = disc->add_option("--qc", fl->qc, qc_help);
    auto* disc_matrix = disc->add_option("--matrix", fl->matrix, matrix_help);
    disc_cycle->excludes(disc_qc)->excludes(disc_matrix);
    disc_qc->excludes(disc_matrix);
    handlers[disc] = [fl] {
        DiscriminantData dd = [&] {
            if (!fl->cycle.empty()) return discriminant_of_graph(CuspCycle(parse_int_list(fl->cycle)));
            if (!fl->qc.empty()) return discriminant_of_graph(graph_of_class(parse_qc(fl->qc)));
            if (!fl->matrix.empty()) return discriminant_of_monodromy(parse_unimat(fl->matrix));
            throw UsageError{"discriminant: give exactly one of --cycle, --qc, --matrix"};
        }();
        return json_result(
            {{"invariant_factors", json_list(dd.group.invariant_factors)},
             {"kind", dd.kind == LinkingKind::plumbing ? "plumbing" : "torus_bundle"},
             {"order", json_int(dd.order())}});
    };

    auto* comp = app.add_subcommand("complement", "Orthogonal complement of a subgroup lattice");
    comp->add_option("--matrix", fl->matrix, matrix_help)->required();
    comp->add_option("--lattice", fl->lattice, lattice_help)->required();
    handlers[comp] = [fl] {
        Lattice2 w = orthogonal_complement(parse_unimat(fl->matrix), parse_lattice(fl->lattice));
        return json_result(json_lattice(w));
    };

    auto* dch = app.add_subcommand("duality-check", "Mutual duality of the covers of K and its complement");
    dch->add_option("--matrix", fl->matrix, matrix_help)->required();
    dch->add_option("--lattice", fl->lattice, lattice_help)->required();
    handlers[dch] = [fl] {
        DualityReport r = verify_mutual_duality(parse_unimat(fl->matrix), parse_lattice(fl->lattice));
        return json_result({{"complement_cycle", json_cycle(r.complement_cycle)},
                            {"complement_order", json_int(r.complement_order)},
                            {"cover_cycle", json_cycle(r.cover_cycle)},
                            {"discriminant_order", json_int(r.discriminant_order)},
                            {"mutually_dual", r.mutually_dual},
                            {"subgroup_order", json_int(r.subgroup_order)}});
    };

    auto* hyp = app.add_subcommand("hypersurface", "Hypersurface cusp cover of a trace-t matrix");
    hyp->add_option("--matrix", fl->matrix, matrix_help)->required();
    handlers[hyp] = [fl] {
        CuspCycle c = hypersurface_cover(parse_unimat(fl->matrix));
        return json_result({{"cycle", json_cycle(c)}, {"sum", json_int(c.excess())}});
    };

    auto* grp = app.add_subcommand("group", "Diagonal exponent group acting on the cover equations");
    grp->add_option("--qc", fl->qc, qc_help)->required();
    grp->add_option("--exponents", fl->exponents,
                    "split exponents alpha,beta,gamma,delta (default: first admissible)");
    handlers[grp] = [fl] {
        QcClass q = parse_qc(fl->qc);
        ExponentGroup g = build_group(q);
        CiExponents ce = [&] {
            if (fl->exponents.empty()) return admissible_exponents(q).front();
            std::vector<BigInt> v = parse_int_list(fl->exponents, 4, "exponents");
            return ci_exponents(q, v[0], v[1], v[2], v[3]);
        }();
        return json_result({{"census", detail::census_json(fixed_point_census(g, ce))},
                            {"character", character_check(g, ce)},
                            {"exponents", detail::exponents_json(ce)},
                            {"modulus", json_int(g.modulus())},
                            {"order", json_int(g.order())},
                            {"structure", json_group(group_structure(g))}});
    };

    auto* verify = app.add_subcommand("verify", "Cross-check every pipeline on one class");
    verify->add_option("--qc", fl->qc, qc_help)->required();
    handlers[verify] = [fl] { return detail::run_verify(parse_qc(fl->qc)); };

    auto* dot = app.add_subcommand("emit-dot", "Graphviz DOT for a cycle or a quotient-cusp tree");
    auto* dot_cycle = dot->add_option("--cycle", fl->cycle, cycle_help);
    auto* dot_qc = dot->add_option("--qc", fl->qc, qc_help);
    dot_cycle->excludes(dot_qc);
    handlers[dot] = [fl]() -> Result {
        if (!fl->cycle.empty()) return text_result(to_dot(CuspCycle(parse_int_list(fl->cycle))));
        if (!fl->qc.empty()) return text_result(to_dot(graph_of_class(parse_qc(fl->qc))));
        throw UsageError{"emit-dot: give exactly one of --cycle, --qc"};
    };

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return 64;
    }

    try {
        for (const auto& [sub, fn] : handlers)
            if (sub->parsed()) {
                Result r = fn();
                if (r.text_mode) out << r.text;
                else out << r.data.dump(2) << "\n";
                return r.code;
            }
        err << "missing subcommand\n";
        return 64;
    } catch (const UsageError& u) {
        err << u.message << "\n";
        return 64;
    } catch (const Error& e) {
        out << Json{{"error", e.code()}, {"message", e.what()}}.dump(2) << "\n";
        return 2;
    } catch (const std::exception& e) {
        out << Json{{"error", "Internal"}, {"message", e.what()}}.dump(2) << "\n";
        return 2;
    }
}

}  // namespace cusp::cli
