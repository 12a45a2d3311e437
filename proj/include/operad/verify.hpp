#pragma once

#include "operad/builtins.hpp"
#include "operad/manin.hpp"
#include "operad/rewrite.hpp"

#include <functional>
#include <random>
#include <string>
#include <vector>

namespace operad {

enum class Status { Pass, Fail, Info };

inline const char* status_string(Status s) { return s == Status::Pass ? "PASS" : s == Status::Fail ? "FAIL" : "INFO"; }

struct VerifyInput {
    Presentation p;
    std::vector<std::string> colors = default_colors(2);
    SigmaChoice sigma;
    unsigned seed = 20240521;
};

struct VerifyResult {
    std::string id;
    Status status = Status::Pass;
    Report report;
};

// ------------------------------------------------------------ lin-encodes

// Substitutes every symbol by sum_w lam_w * symbol@w, expanding all colorings.
inline TreePoly substitute_combination(const TreePoly& f, const std::vector<std::string>& colors,
                                       const std::vector<Rational>& lam) {
    TreePoly out;
    const int k = static_cast<int>(colors.size());
    for (const auto& [t, a] : f.terms()) {
        const int w = t.weight();
        std::vector<int> word(static_cast<std::size_t>(w), 0);
        for (;;) {
            Rational c = a;
            for (int x : word) c *= lam[static_cast<std::size_t>(x)];
            out.add(color_tree(t, word, colors), c);
            int i = w - 1;
            while (i >= 0 && word[static_cast<std::size_t>(i)] == k - 1) word[static_cast<std::size_t>(i--)] = 0;
            if (i < 0) break;
            ++word[static_cast<std::size_t>(i)];
        }
    }
    return out;
}

// The relations satisfied by all linear combinations of the colored copies span
// exactly the Lin relations: sampled combinations stay inside, and enough of them
// fill the whole span.
inline Report verify_lin_encodes(const Presentation& p, const std::vector<std::string>& colors, unsigned seed) {
    Report rep;
    const auto lin = linear_compat(p, colors);
    Presentation sub = lin;
    sub.rels.clear();
    std::mt19937 rng(seed);
    std::uniform_int_distribution<int> d(-9, 9);
    std::size_t samples = 2;
    for (const auto& r : p.rels) samples += weak_compositions(static_cast<int>(colors.size()), r.poly.weight()).size();
    for (std::size_t s = 0; s < samples; ++s) {
        std::vector<Rational> lam;
        for (std::size_t i = 0; i < colors.size(); ++i) lam.push_back(Rational(d(rng)));
        for (const auto& r : p.rels) sub.rels.push_back({r.name + "_s" + std::to_string(s), substitute_combination(r.poly, colors, lam)});
    }
    auto cmp = compare_spans(sub, lin);
    rep.pass = cmp.rel == SpanRelation::Equal;
    rep.data["samples"] = samples;
    rep.data["seed"] = seed;
    rep.data["combinations_in_lin"] = cmp.rel == SpanRelation::Equal || cmp.rel == SpanRelation::Sub;
    if (!rep.pass) {
        rep.data["arity"] = cmp.arity;
        rep.data["weight"] = cmp.weight;
        rep.data["witness"] = cmp.witness;
    }
    rep.message = rep.pass ? "linear combinations of colored copies satisfy exactly the Lin relations" : "Lin span differs";
    return rep;
}

// ------------------------------------------------------------ duality

inline Report verify_lmt_self_dual(const Presentation& p, const std::vector<std::string>& colors) {
    Report rep;
    const auto lhs = koszul_dual(leveled_matching(p, colors));
    const auto rhs = leveled_matching(koszul_dual(p), colors);
    auto cmp = compare_spans(lhs, rhs);
    rep.pass = cmp.rel == SpanRelation::Equal;
    rep.data["dual_lmt_eq_lmt_dual"] = rep.pass;
    if (!rep.pass) rep.data["witness"] = cmp.witness;
    // when P is self-dual, so is LMT P
    if (find_isomorphism(koszul_dual(p), p, undual_full)) {
        auto iso = find_isomorphism(lhs, leveled_matching(p, colors), undual_full);
        rep.data["self_dual"] = iso.has_value();
        if (iso) rep.data["map"] = map_json(*iso);
        rep.pass = rep.pass && iso.has_value();
    }
    rep.message = rep.pass ? "(LMT P)! = LMT(P!)" : "dual of LMT differs";
    return rep;
}

inline Report verify_mt_dual_search(const Presentation& p, const std::vector<std::string>& colors, const SigmaChoice& sigma) {
    if (!matching_admissible(p, colors, sigma)) throw std::invalid_argument("sigma choice is not admissible");
    return verify_matching_duality(p, colors, sigma).report;
}

// ------------------------------------------------------------ gb

// confluent order on P, lifted to the colors
inline Report verify_lmt_confluence(const Presentation& p, const std::vector<std::string>& colors) {
    Report rep;
    auto base = find_confluent_order(p);
    rep.data["base_orders_tried"] = base.tried;
    if (!base.found) {
        rep.pass = false;
        rep.message = "no confluent path order found for " + p.name;
        return rep;
    }
    rep.data["base_order"] = base.found->order.describe();
    const auto lmt = leveled_matching(p, colors);
    auto run = run_groebner(lmt, base.found->order.colored(lmt.gens, colors));
    rep.pass = run.report.confluent;
    rep.data["order"] = run.order.describe();
    rep.data["rules"] = run.rules.size();
    rep.data["critical"] = run.report.checks.size();
    rep.data["failures"] = run.report.failures();
    nlohmann::ordered_json shapes = nlohmann::ordered_json::object();
    for (const auto& [k, v] : critical_shapes(run.report)) shapes[k] = std::vector<std::string>(v.begin(), v.end());
    rep.data["shapes"] = shapes;
    if (!run.error.empty()) rep.data["error"] = run.error;
    rep.data["certificate"] = certificate_json(run.report);
    rep.message = rep.pass ? "LMT rules are confluent" : std::to_string(run.report.failures()) + " critical monomials not joinable";
    return rep;
}

inline Report verify_totcom_dim4(const std::vector<std::string>& colors) {
    Report rep;
    const auto com = builtin("Com");
    const auto d = component_dimension(total_compat(com, colors), 4);
    const std::vector<mpz_class> ones(4, 1);
    rep.pass = d.dim == 4;
    rep.data["dim_tot_com_4"] = d.dim;
    rep.data["plethysm_com_com_4"] = plethysm_dimension(ones, ones, 4).get_str();
    rep.data["note"] = "the composite (Com o Com)(4) counts set partitions; reported, not compared";
    rep.message = "dim TotCom(4) = " + std::to_string(d.dim);
    return rep;
}

// ------------------------------------------------------------ registry

struct VerifyEntry {
    std::string id;
    std::string claim;
    bool needs_operad;
    std::function<Report(const VerifyInput&)> run;
};

inline const std::vector<VerifyEntry>& verify_registry() {
    static const std::vector<VerifyEntry> reg = {
        {"lin-encodes", "Lin P algebras are families whose every linear combination is a P structure", true,
         [](const VerifyInput& in) { return verify_lin_encodes(in.p, in.colors, in.seed); }},
        {"iterate-lin", "Lin(Lin P) over Omega equals Lin P over Omega x Omega", true,
         [](const VerifyInput& in) { return verify_iterate_lin(in.p, in.colors); }},
        {"lmt-lin-commute", "LMT commutes with Lin, and LMT(LMT P) = LMT P over Omega x Omega", true,
         [](const VerifyInput& in) { return verify_lmt_lin_commute(in.p, in.colors); }},
        {"lin-tot-dual", "(Lin P)! = Tot(P!) and (Tot P)! = Lin(P!)", true,
         [](const VerifyInput& in) { return verify_lin_tot_duality(in.p, in.colors); }},
        {"lmt-self-dual", "(LMT P)! = LMT(P!); self-dual P gives self-dual LMT P", true,
         [](const VerifyInput& in) { return verify_lmt_self_dual(in.p, in.colors); }},
        {"mt-dual-search", "the dual of a matching operad is a matching operad of the dual", true,
         [](const VerifyInput& in) { return verify_mt_dual_search(in.p, in.colors, in.sigma); }},
        {"black-lin", "Lin Lie (black) P = Lin P", true,
         [](const VerifyInput& in) {
             return verify_product_identity(black_product(linear_compat(builtin("Lie"), in.colors), in.p), linear_compat(in.p, in.colors));
         }},
        {"white-tot", "Tot Com (white) P = Tot P", true,
         [](const VerifyInput& in) {
             return verify_product_identity(white_product(total_compat(builtin("Com"), in.colors), in.p), total_compat(in.p, in.colors));
         }},
        {"black-lmt", "LMT Lie (black) P = LMT P", true,
         [](const VerifyInput& in) {
             return verify_product_identity(black_product(leveled_matching(builtin("Lie"), in.colors), in.p), leveled_matching(in.p, in.colors));
         }},
        {"white-lmt", "LMT Com (white) P = LMT P", true,
         [](const VerifyInput& in) {
             return verify_product_identity(white_product(leveled_matching(builtin("Com"), in.colors), in.p), leveled_matching(in.p, in.colors));
         }},
        {"lmt-confluence", "a quadratic Groebner basis of P induces one of LMT P", true,
         [](const VerifyInput& in) { return verify_lmt_confluence(in.p, in.colors); }},
        {"totcom-dim4", "dim TotCom(4) = 4, the four tree basis", false,
         [](const VerifyInput& in) { return verify_totcom_dim4(in.colors); }},
    };
    return reg;
}

inline const VerifyEntry& verify_entry(const std::string& id) {
    for (const auto& e : verify_registry())
        if (e.id == id) return e;
    throw std::invalid_argument("unknown verify id '" + id + "'");
}

inline VerifyResult run_verify(const std::string& id, const VerifyInput& in) {
    VerifyResult out;
    out.id = id;
    out.report = verify_entry(id).run(in);
    out.status = out.report.pass ? Status::Pass : Status::Fail;
    return out;
}

}  // namespace operad
