#pragma once

#include "operad/polarization.hpp"

#include <json.hpp>

#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace operad {

// verification outcome shared by the verify suites
struct Report {
    bool pass = true;
    std::string message;
    nlohmann::ordered_json data = nlohmann::ordered_json::object();
};

// ------------------------------------------------------------ span helpers

inline std::vector<std::string> generator_keys(const std::vector<Generator>& gens) {
    std::vector<std::string> out;
    for (const auto& g : gens) out.push_back(g.full() + "/" + std::to_string(g.arity) + "/" + sym_name(g.sym));
    std::sort(out.begin(), out.end());
    return out;
}

inline bool same_generators(const Presentation& p, const Presentation& q) {
    return generator_keys(p.gens) == generator_keys(q.gens);
}

inline std::vector<std::pair<int, int>> joint_degrees(const Presentation& p, const Presentation& q) {
    std::set<std::pair<int, int>> s;
    for (auto d : p.degrees()) s.insert(d);
    for (auto d : q.degrees()) s.insert(d);
    return {s.begin(), s.end()};
}

enum class SpanRelation { Equal, Sub, Super, Incomparable };

struct SpanComparison {
    SpanRelation rel = SpanRelation::Equal;
    // first component where the spans differ
    int arity = 0, weight = 0;
    std::size_t dim_p = 0, dim_q = 0;
    std::string witness;  // a relation of one side missing from the other
};

// compares closed relation spans of two presentations over the same generators
inline SpanComparison compare_spans(const Presentation& p, const Presentation& q) {
    if (!same_generators(p, q)) throw std::invalid_argument("compare_spans: generator sets differ");
    SpanComparison out;
    bool sub = true, super = true;
    for (auto [n, m] : joint_degrees(p, q)) {
        Component comp(p.gens, n, m);
        auto a = closed_relations(p, comp), b = closed_relations(q, comp);
        bool ab = true, ba = true;
        std::string w;
        for (const auto& v : a.basis())
            if (!b.contains(v)) {
                ab = false;
                if (w.empty()) w = render(comp.poly(v));
                break;
            }
        for (const auto& v : b.basis())
            if (!a.contains(v)) {
                ba = false;
                if (w.empty()) w = render(comp.poly(v));
                break;
            }
        if ((!ab || !ba) && out.witness.empty()) {
            out.arity = n;
            out.weight = m;
            out.dim_p = a.size();
            out.dim_q = b.size();
            out.witness = w;
        }
        sub = sub && ab;
        super = super && ba;
    }
    out.rel = sub && super ? SpanRelation::Equal
              : sub        ? SpanRelation::Sub
              : super      ? SpanRelation::Super
                           : SpanRelation::Incomparable;
    return out;
}

inline bool spans_equal(const Presentation& p, const Presentation& q) {
    return compare_spans(p, q).rel == SpanRelation::Equal;
}

inline bool spans_contained(const Presentation& p, const Presentation& q) {
    auto r = compare_spans(p, q).rel;
    return r == SpanRelation::Equal || r == SpanRelation::Sub;
}

// ------------------------------------------------------------ colorings

inline std::string type_suffix(const WeakComposition& c) {
    std::string s = "_c";
    for (std::size_t i = 0; i < c.size(); ++i) s += (i ? "_" : "") + std::to_string(c[i]);
    return s;
}

inline Presentation colored_shell(const Presentation& p, const std::vector<std::string>& colors, const std::string& tag) {
    if (colors.empty()) throw std::invalid_argument("color set must be nonempty");
    std::set<std::string> seen;
    for (const auto& c : colors) {
        if (c.empty()) throw std::invalid_argument("bad color name '" + c + "'");
        if (!seen.insert(c).second) throw std::invalid_argument("duplicate color '" + c + "'");
    }
    Presentation q;
    q.name = p.name + "_" + tag;
    q.colors = p.colors.empty() ? colors : color_product(p.colors, colors);
    q.gens = colored_generators(p.gens, colors);
    return q;
}

inline Presentation linear_compat(const Presentation& p, const std::vector<std::string>& colors) {
    Presentation q = colored_shell(p, colors, "Lin");
    const int k = static_cast<int>(colors.size());
    for (const auto& r : p.rels)
        for (const auto& c : weak_compositions(k, r.poly.weight()))
            q.rels.push_back({r.name + type_suffix(c), quasipolarize(r.poly, colors, c)});
    return q;
}

// ------------------------------------------------------------ matching

// sigma tuple per (relation index, type); absent entries mean identity
class SigmaChoice {
public:
    using Key = std::pair<std::size_t, WeakComposition>;

    void set(std::size_t rel, const WeakComposition& c, std::vector<Perm> s) { map_[{rel, c}] = std::move(s); }
    const std::map<Key, std::vector<Perm>>& entries() const { return map_; }

    std::vector<Perm> get(std::size_t rel, const WeakComposition& c, int beta, int s) const {
        auto it = map_.find({rel, c});
        if (it == map_.end()) return std::vector<Perm>(static_cast<std::size_t>(s), identity_perm(beta));
        return it->second;
    }

    bool is_identity() const {
        for (const auto& [k, v] : map_)
            for (const auto& s : v)
                if (!operad::is_identity(s)) return false;
        return true;
    }

private:
    std::map<Key, std::vector<Perm>> map_;
};

inline std::string render(const SigmaChoice& sc, const Presentation& p) {
    std::string out;
    for (const auto& [k, v] : sc.entries()) {
        bool trivial = true;
        for (const auto& s : v) trivial = trivial && is_identity(s);
        if (trivial) continue;
        if (!out.empty()) out += "; ";
        out += p.rels.at(k.first).name + ":c" + type_string(k.second) + "=";
        for (std::size_t i = 0; i < v.size(); ++i) out += (i ? "," : "") + cycle_string(v[i]);
    }
    return out.empty() ? "identity" : out;
}

inline std::vector<std::string> split_top(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    int depth = 0;
    for (char ch : s) {
        if (ch == '(') ++depth;
        if (ch == ')') --depth;
        if (ch == sep && depth == 0) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += ch;
        }
    }
    out.push_back(cur);
    return out;
}

inline std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t\n");
    if (b == std::string::npos) return "";
    auto e = s.find_last_not_of(" \t\n");
    return s.substr(b, e - b + 1);
}

// "r1:c(1,1)=(12),e; r3:c(1,1)=e,(12)"
inline SigmaChoice parse_sigma(const std::string& text, const Presentation& p, int ncolors) {
    SigmaChoice sc;
    for (auto item : split_top(text, ';')) {
        item = trim(item);
        if (item.empty()) continue;
        auto colon = item.find(':');
        auto eq = item.find('=');
        if (colon == std::string::npos || eq == std::string::npos || eq < colon)
            throw std::invalid_argument("sigma: expected REL:c(TYPE)=PERMS in '" + item + "'");
        const auto rname = trim(item.substr(0, colon));
        std::size_t ri = p.rels.size();
        for (std::size_t i = 0; i < p.rels.size(); ++i)
            if (p.rels[i].name == rname) ri = i;
        if (ri == p.rels.size()) throw std::invalid_argument("sigma: unknown relation '" + rname + "'");
        auto ty = trim(item.substr(colon + 1, eq - colon - 1));
        if (ty.size() < 3 || ty[0] != 'c' || ty[1] != '(' || ty.back() != ')')
            throw std::invalid_argument("sigma: bad type '" + ty + "'");
        WeakComposition c;
        for (auto x : split_top(ty.substr(2, ty.size() - 3), ',')) c.push_back(std::stoi(trim(x)));
        if (static_cast<int>(c.size()) != ncolors) throw std::invalid_argument("sigma: type '" + ty + "' has wrong length");
        int m = 0;
        for (int x : c) m += x;
        if (m != p.rels[ri].poly.weight()) throw std::invalid_argument("sigma: type '" + ty + "' has wrong weight");
        const int beta = static_cast<int>(multinomial(c).get_si());
        const int s = static_cast<int>(p.rels[ri].poly.size()) - 1;
        std::vector<Perm> perms;
        for (auto x : split_top(item.substr(eq + 1), ',')) perms.push_back(parse_cycles(trim(x), beta));
        if (static_cast<int>(perms.size()) != s)
            throw std::invalid_argument("sigma: relation " + rname + " needs " + std::to_string(s) + " permutations");
        sc.set(ri, c, perms);
    }
    return sc;
}

// part k = a_0 lift_k(t_0) + sum_i a_i lift_{sigma_i(k)}(t_i), support in storage order
inline std::vector<TreePoly> foliation_split(const TreePoly& r, const std::vector<std::string>& colors,
                                             const WeakComposition& c, const std::vector<Perm>& sigma) {
    if (sigma.size() + 1 != r.size())
        throw std::invalid_argument("foliation_split: expected " + std::to_string(r.size() - 1) + " permutations");
    const std::size_t beta = static_cast<std::size_t>(multinomial(c).get_si());
    for (const auto& s : sigma)
        if (s.size() != beta || !is_perm(s)) throw std::invalid_argument("foliation_split: permutation degree mismatch");
    std::vector<TreePoly> parts(beta);
    std::size_t i = 0;
    for (const auto& [t, a] : r.terms()) {
        auto lifts = lifts_of_type(t, colors, c);
        for (std::size_t k = 0; k < beta; ++k) {
            std::size_t src = i == 0 ? k : static_cast<std::size_t>(sigma[i - 1][k] - 1);
            parts[k].add(lifts[src].tree, a);
        }
        ++i;
    }
    return parts;
}

inline std::vector<TreePoly> sigma_parts(const Presentation& p, std::size_t ri, const std::vector<std::string>& colors,
                                         const WeakComposition& c, const SigmaChoice& sc) {
    const auto& r = p.rels[ri].poly;
    const int beta = static_cast<int>(multinomial(c).get_si());
    return foliation_split(r, colors, c, sc.get(ri, c, beta, static_cast<int>(r.size()) - 1));
}

// a = lambda * b
inline std::optional<Rational> proportional(const TreePoly& a, const TreePoly& b) {
    if (a.size() != b.size() || a.empty()) return std::nullopt;
    Rational lambda = a.terms().begin()->second / b.terms().begin()->second;
    auto i = a.terms().begin();
    auto j = b.terms().begin();
    for (; i != a.terms().end(); ++i, ++j)
        if (!(i->first == j->first) || i->second != lambda * j->second) return std::nullopt;
    return lambda;
}

inline bool same_multiset(const std::vector<TreePoly>& a, const std::vector<TreePoly>& b) {
    if (a.size() != b.size()) return false;
    std::vector<bool> used(b.size(), false);
    for (const auto& x : a) {
        bool hit = false;
        for (std::size_t j = 0; j < b.size() && !hit; ++j)
            if (!used[j] && x == b[j]) used[j] = hit = true;
        if (!hit) return false;
    }
    return true;
}

// Whenever r_a . rho = r_b exactly for listed relations a, b (a = b allowed),
// the split of r_a moved by rho must be the split of r_b. Translates that are
// not listed carry their split along (r^sigma . rho); r . rho = -r is a
// different element and imposes nothing.
inline bool matching_admissible(const Presentation& p, const std::vector<std::string>& colors, const SigmaChoice& sc,
                                std::string* witness = nullptr) {
    const int k = static_cast<int>(colors.size());
    for (std::size_t a = 0; a < p.rels.size(); ++a) {
        const auto& ra = p.rels[a].poly;
        const int n = ra.arity(), m = ra.weight();
        for (const auto& rho : all_perms(n)) {
            auto moved = act(ra, rho);
            for (std::size_t b = 0; b < p.rels.size(); ++b) {
                const auto& rb = p.rels[b].poly;
                if (rb.arity() != n || rb.weight() != m) continue;
                if (!(moved == rb)) continue;
                for (const auto& c : weak_compositions(k, m)) {
                    std::vector<TreePoly> lhs, rhs;
                    for (const auto& f : sigma_parts(p, a, colors, c, sc)) lhs.push_back(act(f, rho));
                    rhs = sigma_parts(p, b, colors, c, sc);
                    if (!same_multiset(lhs, rhs)) {
                        if (witness)
                            *witness = p.rels[a].name + " moved by " + cycle_string(rho) + " vs " + p.rels[b].name +
                                       " at type " + type_string(c);
                        return false;
                    }
                }
            }
        }
    }
    return true;
}

inline Presentation matching_compat(const Presentation& p, const std::vector<std::string>& colors, const SigmaChoice& sc,
                                    const std::string& tag = "MT") {
    std::string why;
    if (!matching_admissible(p, colors, sc, &why)) throw std::invalid_argument("inadmissible sigma: " + why);
    Presentation q = colored_shell(p, colors, tag);
    const int k = static_cast<int>(colors.size());
    for (std::size_t ri = 0; ri < p.rels.size(); ++ri) {
        const auto& r = p.rels[ri];
        for (const auto& c : weak_compositions(k, r.poly.weight())) {
            auto parts = sigma_parts(p, ri, colors, c, sc);
            for (std::size_t j = 0; j < parts.size(); ++j)
                q.rels.push_back({r.name + type_suffix(c) + "_" + std::to_string(j + 1), std::move(parts[j])});
        }
    }
    return q;
}

inline Presentation leveled_matching(const Presentation& p, const std::vector<std::string>& colors) {
    return matching_compat(p, colors, SigmaChoice{}, "LMT");
}

// listed relations not already in the S_n-closure of earlier ones
inline std::vector<std::size_t> orbit_rep_indices(const Presentation& p) {
    std::vector<std::size_t> out;
    std::map<std::pair<int, int>, std::pair<Component, std::vector<TreePoly>>> seen;
    for (std::size_t i = 0; i < p.rels.size(); ++i) {
        const auto& f = p.rels[i].poly;
        std::pair<int, int> d{f.arity(), f.weight()};
        auto it = seen.find(d);
        if (it == seen.end()) it = seen.emplace(d, std::make_pair(Component(p.gens, d.first, d.second), std::vector<TreePoly>{})).first;
        auto& [comp, reps] = it->second;
        if (!reps.empty() && closed_span(comp, reps).contains(comp.vec(f))) continue;
        reps.push_back(f);
        out.push_back(i);
    }
    return out;
}

// product formula over an S-basis of the relations
inline mpz_class count_matching(const Presentation& p, const std::vector<std::string>& colors) {
    const int k = static_cast<int>(colors.size());
    mpz_class total = 1;
    for (auto i : orbit_rep_indices(p)) {
        const auto& r = p.rels[i];
        const unsigned long s = r.poly.size() - 1;
        for (const auto& c : weak_compositions(k, r.poly.weight())) {
            mpz_class f;
            mpz_fac_ui(f.get_mpz_t(), multinomial(c).get_ui());
            mpz_class pw;
            mpz_pow_ui(pw.get_mpz_t(), f.get_mpz_t(), s);
            total *= pw;
        }
    }
    return total;
}

// every SigmaChoice over the listed relations (identity entries included)
inline std::vector<SigmaChoice> all_sigma_choices(const Presentation& p, const std::vector<std::string>& colors) {
    const int k = static_cast<int>(colors.size());
    struct Slot {
        std::size_t rel;
        WeakComposition c;
        std::vector<std::vector<Perm>> options;
    };
    std::vector<Slot> slots;
    for (std::size_t ri = 0; ri < p.rels.size(); ++ri) {
        const auto& r = p.rels[ri].poly;
        for (const auto& c : weak_compositions(k, r.weight())) {
            const int beta = static_cast<int>(multinomial(c).get_si());
            if (beta == 1 || r.size() == 1) continue;
            slots.push_back({ri, c, sigma_tuples(beta, static_cast<int>(r.size()) - 1)});
        }
    }
    std::vector<SigmaChoice> out;
    SigmaChoice cur;
    std::function<void(std::size_t)> rec = [&](std::size_t i) {
        if (i == slots.size()) {
            out.push_back(cur);
            return;
        }
        for (const auto& o : slots[i].options) {
            cur.set(slots[i].rel, slots[i].c, o);
            rec(i + 1);
        }
    };
    rec(0);
    return out;
}

// consecutive lift differences of every support tree of every relation
inline std::vector<Relation> tc_relations(const Presentation& p, const std::vector<std::string>& colors) {
    const int k = static_cast<int>(colors.size());
    std::vector<Relation> out;
    std::set<Tree, TreeLess> seen;
    for (const auto& r : p.rels)
        for (const auto& [t, a] : r.poly.terms()) {
            (void)a;
            if (!seen.insert(t).second) continue;
            for (const auto& c : weak_compositions(k, t.weight())) {
                auto lifts = lifts_of_type(t, colors, c);
                for (std::size_t j = 0; j + 1 < lifts.size(); ++j) {
                    TreePoly d;
                    d.add(lifts[j].tree, 1);
                    d.add(lifts[j + 1].tree, -1);
                    out.push_back({"tc" + std::to_string(out.size() + 1), d});
                }
            }
        }
    return out;
}

inline Presentation total_compat(const Presentation& p, const std::vector<std::string>& colors,
                                 const SigmaChoice& sc = SigmaChoice{}) {
    Presentation q = matching_compat(p, colors, sc, "Tot");
    for (auto& r : tc_relations(p, colors)) q.rels.push_back(std::move(r));
    return q;
}

// ------------------------------------------------------------ identities

// Lin ⊆ MT ⊆ MT ∪ TC, span by span
inline Report verify_epi_chain(const Presentation& p, const std::vector<std::string>& colors,
                               const SigmaChoice& sc = SigmaChoice{}) {
    Report rep;
    auto lin = linear_compat(p, colors);
    auto mt = matching_compat(p, colors, sc);
    auto tot = total_compat(p, colors, sc);
    mt.name = tot.name = lin.name;
    const bool a = spans_contained(lin, mt), b = spans_contained(mt, tot);
    rep.pass = a && b;
    rep.data["lin_in_mt"] = a;
    rep.data["mt_in_tot"] = b;
    rep.message = rep.pass ? "Lin -> MT -> Tot epimorphisms hold" : "inclusion failed";
    return rep;
}

// "a.b" -> "b.a" on the two outer coloring levels
inline std::string swap_outer_colors(const std::string& c) {
    auto pos = c.rfind('.');
    if (pos == std::string::npos) return c;
    auto head = c.substr(0, pos);
    auto pos2 = head.rfind('.');
    std::string base = pos2 == std::string::npos ? "" : head.substr(0, pos2 + 1);
    std::string a = pos2 == std::string::npos ? head : head.substr(pos2 + 1);
    return base + c.substr(pos + 1) + "." + a;
}

inline Presentation recolor(const Presentation& p, const std::function<std::string(const std::string&)>& f) {
    Presentation q = p;
    for (auto& g : q.gens) g.color = f(g.color);
    for (auto& c : q.colors) c = f(c);
    for (auto& r : q.rels) {
        TreePoly g;
        for (const auto& [t, a] : r.poly.terms()) {
            Tree u = t;
            std::vector<Tree*> vs;
            u.vertices(vs);
            for (auto v : vs) v->dec.color = f(v->dec.color);
            g.add(u, a);
        }
        r.poly = g;
    }
    return q;
}

inline Report verify_iterate_lin(const Presentation& p, const std::vector<std::string>& colors) {
    Report rep;
    auto twice = linear_compat(linear_compat(p, colors), colors);
    auto square = linear_compat(p, color_product(colors, colors));
    auto cmp = compare_spans(twice, square);
    rep.pass = cmp.rel == SpanRelation::Equal;
    const char* rel = cmp.rel == SpanRelation::Equal ? "equal"
                      : cmp.rel == SpanRelation::Sub ? "Lin(Lin) strictly inside Lin over the squared colors"
                      : cmp.rel == SpanRelation::Super ? "Lin(Lin) strictly contains Lin over the squared colors"
                                                       : "incomparable";
    rep.data["relation"] = rel;
    if (!rep.pass) {
        rep.data["arity"] = cmp.arity;
        rep.data["weight"] = cmp.weight;
        rep.data["dim_iterated"] = cmp.dim_p;
        rep.data["dim_squared"] = cmp.dim_q;
        rep.data["witness"] = cmp.witness;
    }
    rep.message = rel;
    return rep;
}

// LMT(Lin P) = Lin(LMT P) and LMT(LMT P) = LMT P over the squared colors
inline Report verify_lmt_lin_commute(const Presentation& p, const std::vector<std::string>& colors) {
    Report rep;
    auto a = leveled_matching(linear_compat(p, colors), colors);
    auto b = recolor(linear_compat(leveled_matching(p, colors), colors), swap_outer_colors);
    auto c1 = compare_spans(a, b);
    auto c = leveled_matching(leveled_matching(p, colors), colors);
    auto d = leveled_matching(p, color_product(colors, colors));
    auto c2 = compare_spans(c, d);
    const bool ok1 = c1.rel == SpanRelation::Equal, ok2 = c2.rel == SpanRelation::Equal;
    rep.pass = ok1 && ok2;
    rep.data["lmt_lin_eq_lin_lmt"] = ok1;
    rep.data["lmt_lmt_eq_lmt_square"] = ok2;
    if (!ok1) rep.data["witness_lin"] = c1.witness;
    if (!ok2) rep.data["witness_lmt"] = c2.witness;
    rep.message = rep.pass ? "both identities hold" : "an identity failed";
    return rep;
}

}  // namespace operad
