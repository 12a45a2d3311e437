#pragma once

#include "operad/compat.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace operad {

inline std::string dual_name(const std::string& n) {
    const std::string suf = "_dual";
    if (n.size() > suf.size() && n.compare(n.size() - suf.size(), suf.size(), suf) == 0)
        return n.substr(0, n.size() - suf.size());
    return n + suf;
}

// sign-twisted dual symbol: symmetric <-> antisymmetric for one-dimensional binary actions
inline Generator dual_generator(const Generator& g) {
    Generator h = g;
    h.name = dual_name(g.name);
    if (g.arity == 2 && g.sym == Sym::Symmetric)
        h.sym = Sym::Antisymmetric;
    else if (g.arity == 2 && g.sym == Sym::Antisymmetric)
        h.sym = Sym::Symmetric;
    return h;
}

inline std::vector<Generator> dual_generators(const std::vector<Generator>& gens) {
    std::vector<Generator> out;
    for (const auto& g : gens) out.push_back(dual_generator(g));
    return out;
}

// the mirror monomial over dual symbols
inline Tree dual_tree(const Tree& t) {
    Tree u = t;
    std::vector<Tree*> vs;
    u.vertices(vs);
    for (auto v : vs) {
        v->dec.name = dual_name(v->dec.name);
        if (v->kids.size() == 2 && v->dec.sym == Sym::Symmetric)
            v->dec.sym = Sym::Antisymmetric;
        else if (v->kids.size() == 2 && v->dec.sym == Sym::Antisymmetric)
            v->dec.sym = Sym::Symmetric;
    }
    return u;
}

// Sign of <t, t^dual>. Binary-binary shapes: ((1,2),3) -> +1, ((1,3),2) -> -1,
// (1,(2,3)) -> -1; each flipped regular vertex contributes -1. Components
// involving unary vertices pair with +1 up to flips.
inline int pairing_sign(const Tree& t) {
    int s = 1;
    std::vector<const Tree*> vs;
    t.vertices(vs);
    for (auto v : vs)
        if (v->dec.flipped()) s = -s;
    if (vs.size() == 2 && vs[0]->kids.size() == 2 && vs[1]->kids.size() == 2) {
        const auto& root = *vs[0];
        if (!root.kids[1].is_leaf()) return -s;
        auto inner = root.kids[0].leaves();
        std::sort(inner.begin(), inner.end());
        if (inner == std::vector<int>{1, 3}) return -s;
    }
    return s;
}

// rows: T(M)^{(2)}(n) basis, cols: T(M^dual)^{(2)}(n) basis
inline Matrix weight2_pairing(const std::vector<Generator>& gens, int n) {
    for (const auto& g : gens)
        if (g.arity > 2) throw std::invalid_argument("pairing: generator " + g.full() + " has arity > 2");
    Component a(gens, n, 2), b(dual_generators(gens), n, 2);
    if (a.dim() != b.dim()) throw std::logic_error("pairing: dual component has different dimension");
    Matrix m(a.dim(), b.dim());
    for (std::size_t i = 0; i < a.dim(); ++i) m(i, b.index(dual_tree(a.basis()[i]))) = pairing_sign(a.basis()[i]);
    return m;
}

inline std::vector<int> weight2_arities(const std::vector<Generator>& gens) {
    bool un = false, bin = false;
    for (const auto& g : gens) (g.arity == 1 ? un : bin) = true;
    std::vector<int> out;
    if (un) out.push_back(1);
    if (un && bin) out.push_back(2);
    if (bin) out.push_back(3);
    return out;
}

inline Presentation koszul_dual(const Presentation& p) {
    for (const auto& g : p.gens)
        if (g.arity < 1 || g.arity > 2) throw std::invalid_argument("dual: generator " + g.full() + " is not unary or binary");
    if (!p.quadratic()) throw std::invalid_argument("dual: presentation is not quadratic");
    Presentation q;
    q.name = dual_name(p.name);
    q.colors = p.colors;
    q.gens = dual_generators(p.gens);
    for (int n : weight2_arities(p.gens)) {
        Component comp(p.gens, n, 2), dcomp(q.gens, n, 2);
        auto perp = orthogonal_complement(closed_relations(p, comp).basis(), weight2_pairing(p.gens, n));
        std::vector<TreePoly> fs;
        const auto rs = span_of(perp, dcomp.dim());
        for (const auto& v : rs.basis()) fs.push_back(dcomp.poly(v));
        for (auto& f : orbit_representatives(dcomp, fs)) q.rels.push_back({"r" + std::to_string(q.rels.size() + 1), f});
    }
    return q;
}

// ------------------------------------------------------------ isomorphism

struct GenImage {
    std::string target;  // full name in the target presentation
    Rational scale = 1;
};
using GeneratorMap = std::map<std::string, GenImage>;

inline Presentation apply_map(const Presentation& p, const GeneratorMap& map, const std::vector<Generator>& target_gens) {
    std::map<std::string, const Generator*> tg;
    for (const auto& g : target_gens) tg[g.full()] = &g;
    std::map<std::string, std::pair<const Generator*, Rational>> img;
    std::set<std::string> used;
    for (const auto& g : p.gens) {
        auto it = map.find(g.full());
        if (it == map.end()) throw std::invalid_argument("map: generator " + g.full() + " has no image");
        auto jt = tg.find(it->second.target);
        if (jt == tg.end()) throw std::invalid_argument("map: unknown target " + it->second.target);
        if (jt->second->arity != g.arity || jt->second->sym != g.sym)
            throw std::invalid_argument("map: " + g.full() + " and " + it->second.target + " have different actions");
        if (sgn(it->second.scale) == 0) throw std::invalid_argument("map: zero scalar");
        if (!used.insert(it->second.target).second) throw std::invalid_argument("map: not bijective");
        img[g.full()] = {jt->second, it->second.scale};
    }
    if (used.size() != target_gens.size()) throw std::invalid_argument("map: not bijective");
    Presentation q;
    q.name = p.name;
    q.colors = p.colors;
    q.gens = target_gens;
    for (const auto& r : p.rels) {
        TreePoly f;
        for (const auto& [t, a] : r.poly.terms()) {
            Tree u = t;
            Rational c = a;
            std::vector<Tree*> vs;
            u.vertices(vs);
            for (auto v : vs) {
                const auto& [g, s] = img.at(v->dec.full());
                v->dec.name = g->name;
                v->dec.color = g->color;
                c *= s;
            }
            f.add(u, c);
        }
        q.rels.push_back({r.name, f});
    }
    return q;
}

inline bool presentations_isomorphic(const Presentation& p, const Presentation& q, const GeneratorMap& map) {
    return spans_equal(apply_map(p, map, q.gens), q);
}

// relation dimension per component, a cheap isomorphism invariant
inline std::map<std::pair<int, int>, std::size_t> relation_dims(const Presentation& p) {
    std::map<std::pair<int, int>, std::size_t> out;
    for (auto [n, m] : p.degrees()) out[{n, m}] = closed_relations(p, component(p, n, m)).size();
    return out;
}

// Searches name bijections (restricted by `names` when given) and scalars +-1.
inline std::optional<GeneratorMap> find_isomorphism(const Presentation& p, const Presentation& q,
                                                    const std::function<std::string(const Generator&)>& names = {}) {
    if (p.gens.size() != q.gens.size()) return std::nullopt;
    if (relation_dims(p) != relation_dims(q)) return std::nullopt;
    const std::size_t k = p.gens.size();
    std::vector<std::vector<std::size_t>> cand(k);
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j) {
            const auto& a = p.gens[i];
            const auto& b = q.gens[j];
            if (a.arity != b.arity || a.sym != b.sym) continue;
            if (names && names(a) != b.full()) continue;
            cand[i].push_back(j);
        }
    std::vector<std::size_t> pick(k);
    std::vector<bool> used(k, false);
    std::optional<GeneratorMap> found;
    std::function<void(std::size_t)> choose = [&](std::size_t i) {
        if (found) return;
        if (i == k) {
            for (unsigned long mask = 0; mask < (1UL << k) && !found; ++mask) {
                GeneratorMap m;
                for (std::size_t x = 0; x < k; ++x)
                    m[p.gens[x].full()] = {q.gens[pick[x]].full(), (mask >> x) & 1 ? Rational(-1) : Rational(1)};
                if (presentations_isomorphic(p, q, m)) found = m;
            }
            return;
        }
        for (auto j : cand[i]) {
            if (used[j]) continue;
            used[j] = true;
            pick[i] = j;
            choose(i + 1);
            used[j] = false;
        }
    };
    choose(0);
    return found;
}

inline nlohmann::ordered_json map_json(const GeneratorMap& m) {
    nlohmann::ordered_json j = nlohmann::ordered_json::object();
    for (const auto& [k, v] : m) j[k] = (v.scale == 1 ? "" : v.scale.get_str() + "*") + v.target;
    return j;
}

// identifies x_dual with x, keeping colors
inline std::string undual_full(const Generator& g) {
    Generator h = g;
    h.name = dual_name(g.name);
    return h.full();
}

// ------------------------------------------------------------ duality theorems

inline Report verify_lin_tot_duality(const Presentation& p, const std::vector<std::string>& colors) {
    Report rep;
    const auto pd = koszul_dual(p);
    auto c1 = compare_spans(koszul_dual(linear_compat(p, colors)), total_compat(pd, colors));
    auto c2 = compare_spans(koszul_dual(total_compat(p, colors)), linear_compat(pd, colors));
    const bool a = c1.rel == SpanRelation::Equal, b = c2.rel == SpanRelation::Equal;
    rep.pass = a && b;
    rep.data["dual_lin_eq_tot_dual"] = a;
    rep.data["dual_tot_eq_lin_dual"] = b;
    if (!a) rep.data["witness_1"] = c1.witness;
    if (!b) rep.data["witness_2"] = c2.witness;
    rep.message = rep.pass ? "(Lin P)! = Tot(P!) and (Tot P)! = Lin(P!)" : "duality identity failed";
    return rep;
}

struct MatchingDuality {
    Report report;
    std::optional<SigmaChoice> tau;
};

// dual(MT^sigma P) against MT^tau(P!) over every admissible tau
inline MatchingDuality verify_matching_duality(const Presentation& p, const std::vector<std::string>& colors,
                                               const SigmaChoice& sigma) {
    MatchingDuality out;
    const auto lhs = koszul_dual(matching_compat(p, colors, sigma));
    const auto pd = koszul_dual(p);
    // the dual relations are recomputed, so sigma indices refer to pd's listing
    std::size_t tried = 0;
    for (const auto& tau : all_sigma_choices(pd, colors)) {
        if (!matching_admissible(pd, colors, tau)) continue;
        ++tried;
        if (spans_equal(lhs, matching_compat(pd, colors, tau))) {
            out.tau = tau;
            break;
        }
    }
    out.report.pass = out.tau.has_value();
    out.report.data["sigma"] = render(sigma, p);
    out.report.data["candidates"] = tried;
    out.report.data["tau"] = out.tau ? render(*out.tau, pd) : "none";
    out.report.message = out.tau ? "dual matching found" : "no matching of the dual reproduces the dual";
    return out;
}

}  // namespace operad
