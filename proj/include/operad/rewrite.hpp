#pragma once

#include "operad/presentations.hpp"

#include <map>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

namespace operad {

// Path-lexicographic order on binary shuffle monomials. Each leaf gets the word
// of letters on its root path; words compare by length, then lexicographically.
// Letters are (generator, flip) pairs; the default ranking is generator-major in
// alphabet order. Variants prefer longer words or compare words from the leaf end.
// An optional primary stage first compares the words restricted to a set of
// generators, longer restricted words being smaller; a distributive-law order.
class PathLexOrder {
public:
    PathLexOrder() = default;
    explicit PathLexOrder(const std::vector<Generator>& alphabet) {
        for (const auto& g : alphabet) {
            const int i = static_cast<int>(index_.size());
            index_.emplace(g.full(), i);
            rank_.push_back(2 * i);
            rank_.push_back(2 * i + 1);
        }
        sync();
    }

    // rank of letter 2*i + flip, a permutation of 0..2k-1
    void set_letter_ranks(std::vector<int> r) {
        if (r.size() != rank_.size()) throw std::invalid_argument("path order: wrong letter count");
        rank_ = std::move(r);
        sync();
    }
    void set_longer_first(bool b) { longer_first_ = b; }
    void set_from_leaf_end(bool b) { from_end_ = b; }
    // keep[i] marks generator i (alphabet order) for the primary stage
    void set_primary(std::vector<bool> keep) {
        if (!keep.empty() && keep.size() != index_.size()) throw std::invalid_argument("path order: wrong primary mask size");
        keep_ = std::move(keep);
    }

    std::size_t letters() const { return rank_.size(); }

    // The order induced on a colored alphabet: a colored letter ranks by its base
    // letter first, then by the position of its last color in `colors`.
    PathLexOrder colored(const std::vector<Generator>& gens, const std::vector<std::string>& colors) const {
        PathLexOrder out(gens);
        const auto k = static_cast<int>(colors.size());
        std::vector<std::pair<int, std::size_t>> keyed;
        std::vector<bool> keep;
        for (std::size_t i = 0; i < gens.size(); ++i) {
            Generator base = gens[i];
            const auto dot = base.color.rfind('.');
            const std::string last = dot == std::string::npos ? base.color : base.color.substr(dot + 1);
            base.color = dot == std::string::npos ? "" : base.color.substr(0, dot);
            auto it = index_.find(base.full());
            if (it == index_.end()) throw std::invalid_argument("path order: " + gens[i].full() + " has no base letter");
            const auto ci = std::find(colors.begin(), colors.end(), last) - colors.begin();
            if (ci == k) throw std::invalid_argument("path order: unknown color in " + gens[i].full());
            for (int f = 0; f < 2; ++f)
                keyed.push_back({rank_[static_cast<std::size_t>(2 * it->second + f)] * k + static_cast<int>(ci), 2 * i + static_cast<std::size_t>(f)});
            if (!keep_.empty()) keep.push_back(keep_[static_cast<std::size_t>(it->second)]);
        }
        std::sort(keyed.begin(), keyed.end());
        std::vector<int> r(keyed.size());
        for (std::size_t j = 0; j < keyed.size(); ++j) r[keyed[j].second] = static_cast<int>(j);
        out.set_letter_ranks(r);
        out.set_longer_first(longer_first_);
        out.set_from_leaf_end(from_end_);
        out.set_primary(keep);
        return out;
    }

    std::string describe() const {
        std::vector<std::string> names(index_.size());
        for (const auto& [n, i] : index_) names[static_cast<std::size_t>(i)] = n;
        std::vector<std::pair<int, std::string>> ls;
        for (std::size_t l = 0; l < rank_.size(); ++l) ls.push_back({rank_[l], names[l / 2] + (l % 2 ? "'" : "")});
        std::sort(ls.begin(), ls.end());
        std::string s;
        for (const auto& [r, n] : ls) s += (s.empty() ? "" : "<") + n;
        if (longer_first_) s += ";longer-first";
        if (from_end_) s += ";from-leaf-end";
        if (!keep_.empty()) {
            s += ";primary:";
            bool first = true;
            for (std::size_t i = 0; i < keep_.size(); ++i)
                if (keep_[i]) {
                    s += (first ? "" : ",") + names[i];
                    first = false;
                }
        }
        return s;
    }

    // <0, 0, >0
    int compare(const Tree& a, const Tree& b) const {
        auto pa = paths(a), pb = paths(b);
        if (pa.size() != pb.size()) throw std::invalid_argument("path order: arity mismatch");
        if (!keep_.empty())
            for (std::size_t i = 0; i < pa.size(); ++i) {
                auto fa = restrict_word(pa[i]), fb = restrict_word(pb[i]);
                if (fa.size() != fb.size()) return fa.size() > fb.size() ? -1 : 1;
                if (fa != fb) return fa < fb ? -1 : 1;
            }
        for (std::size_t i = 0; i < pa.size(); ++i) {
            if (pa[i].size() != pb[i].size()) return (pa[i].size() < pb[i].size()) != longer_first_ ? -1 : 1;
            if (pa[i] == pb[i]) continue;
            if (from_end_) return std::lexicographical_compare(pa[i].rbegin(), pa[i].rend(), pb[i].rbegin(), pb[i].rend()) ? -1 : 1;
            return pa[i] < pb[i] ? -1 : 1;
        }
        auto la = a.leaves(), lb = b.leaves();
        if (la != lb) return la < lb ? -1 : 1;
        return compare_storage(a, b);
    }
    bool less(const Tree& a, const Tree& b) const { return compare(a, b) < 0; }

private:
    std::vector<int> restrict_word(const std::vector<int>& w) const {
        std::vector<int> out;
        for (int l : w)
            if (keep_[static_cast<std::size_t>(letter_gen_[static_cast<std::size_t>(l)])]) out.push_back(l);
        return out;
    }

    int letter(const Dec& d) const {
        auto it = index_.find(d.full());
        if (it == index_.end()) throw std::invalid_argument("path order: generator " + d.full() + " outside alphabet");
        return rank_[static_cast<std::size_t>(2 * it->second + (d.flipped() ? 1 : 0))];
    }

    void walk(const Tree& t, std::vector<int>& word, std::vector<std::vector<int>>& out) const {
        if (t.is_leaf()) {
            out[static_cast<std::size_t>(t.leaf - 1)] = word;
            return;
        }
        if (t.kids.size() != 2) throw std::invalid_argument("path order: non-binary vertex " + t.dec.full());
        word.push_back(letter(t.dec));
        for (const auto& k : t.kids) walk(k, word, out);
        word.pop_back();
    }

    std::vector<std::vector<int>> paths(const Tree& t) const {
        std::vector<std::vector<int>> out(static_cast<std::size_t>(t.arity()));
        std::vector<int> word;
        walk(t, word, out);
        return out;
    }

    void sync() {
        letter_gen_.assign(rank_.size(), 0);
        for (std::size_t l = 0; l < rank_.size(); ++l) letter_gen_[static_cast<std::size_t>(rank_[l])] = static_cast<int>(l / 2);
    }

    std::map<std::string, int> index_;
    std::vector<int> rank_;
    std::vector<int> letter_gen_;  // letter rank -> generator index
    std::vector<bool> keep_;
    bool longer_first_ = false;
    bool from_end_ = false;
};

struct RewriteRule {
    Tree lead;
    TreePoly rest;  // lead -> rest
};

inline TreePoly rule_relation(const RewriteRule& r) {
    TreePoly f;
    f.add(r.lead, 1);
    f.add(r.rest, -1);
    return f;
}

// Interreduced rules from the S_n-closed relation space, one component at a time.
inline std::vector<RewriteRule> orient(const Presentation& p, const PathLexOrder& ord) {
    std::vector<RewriteRule> out;
    for (auto [n, m] : p.degrees()) {
        const auto comp = component(p, n, m);
        const auto rs = closed_relations(p, comp);
        if (rs.size() == 0) continue;
        std::vector<std::size_t> cols(comp.dim());
        std::iota(cols.begin(), cols.end(), 0);
        std::sort(cols.begin(), cols.end(), [&](std::size_t x, std::size_t y) { return ord.less(comp.basis()[y], comp.basis()[x]); });
        Matrix a(rs.size(), comp.dim());
        const auto basis = rs.basis();
        for (std::size_t i = 0; i < basis.size(); ++i)
            for (std::size_t j = 0; j < cols.size(); ++j) a(i, j) = basis[i][cols[j]];
        const auto red = rref(a);
        for (std::size_t i = 0; i < red.rank; ++i) {
            RewriteRule r;
            const auto piv = red.pivots[i];
            r.lead = comp.basis()[cols[piv]];
            for (std::size_t j = piv + 1; j < cols.size(); ++j)
                if (sgn(red.reduced(i, j)) != 0) r.rest.add(comp.basis()[cols[j]], -red.reduced(i, j));
            out.push_back(std::move(r));
        }
    }
    return out;
}

class RewriteSystem {
public:
    RewriteSystem(std::vector<RewriteRule> rules, PathLexOrder ord) : rules_(std::move(rules)), ord_(std::move(ord)) {
        for (std::size_t i = 0; i < rules_.size(); ++i) {
            if (rules_[i].lead.weight() != 2) throw std::invalid_argument("rewrite: only quadratic leads are supported");
            for (const auto& [t, c] : rules_[i].rest.terms()) {
                (void)c;
                if (!ord_.less(t, rules_[i].lead)) throw std::logic_error("rewrite: rule lead is not maximal");
            }
            if (!index_.emplace(rules_[i].lead, i).second) throw std::invalid_argument("rewrite: duplicate lead");
        }
    }

    const std::vector<RewriteRule>& rules() const { return rules_; }
    const PathLexOrder& order() const { return ord_; }

    // a lead occurrence: vertex v (by child path) with internal child kid
    struct Occurrence {
        std::vector<int> path;
        int kid;
        std::size_t rule;
    };

    std::vector<Occurrence> occurrences(const Tree& t) const {
        std::vector<Occurrence> out;
        std::vector<int> path;
        scan(t, path, out);
        return out;
    }

    // one rewriting step of the monomial t at occ
    TreePoly step(const Tree& t, const Occurrence& occ) const {
        const Tree* v = &t;
        for (int i : occ.path) v = &v->kids[static_cast<std::size_t>(i)];
        const auto ins = inputs(*v, occ.kid);
        TreePoly out;
        for (const auto& [u, c] : rules_[occ.rule].rest.terms()) {
            Tree whole = t;
            Tree* slot = &whole;
            for (int i : occ.path) slot = &slot->kids[static_cast<std::size_t>(i)];
            *slot = substitute(u, ins);
            out.add_raw(whole, c);
        }
        return out;
    }

    // rewrites until no lead occurs; chain receives every intermediate polynomial
    TreePoly normal_form(const TreePoly& f, std::vector<TreePoly>* chain = nullptr, std::mt19937* rng = nullptr) const {
        TreePoly cur = f;
        if (chain) chain->push_back(cur);
        for (;;) {
            std::vector<std::pair<const Tree*, std::vector<Occurrence>>> red;
            for (const auto& [t, c] : cur.terms()) {
                (void)c;
                auto occ = occurrences(t);
                if (!occ.empty()) red.push_back({&t, std::move(occ)});
            }
            if (red.empty()) return cur;
            std::size_t pick = 0, which = 0;
            if (rng) {
                pick = std::uniform_int_distribution<std::size_t>(0, red.size() - 1)(*rng);
                which = std::uniform_int_distribution<std::size_t>(0, red[pick].second.size() - 1)(*rng);
            } else {
                for (std::size_t i = 1; i < red.size(); ++i)
                    if (ord_.less(*red[pick].first, *red[i].first)) pick = i;
            }
            const Tree t = *red[pick].first;
            const Rational c = cur.coeff(t);
            const auto repl = step(t, red[pick].second[which]);
            for (const auto& [u, x] : repl.terms()) {
                (void)x;
                if (!ord_.less(u, t)) throw std::logic_error("rewrite: step does not decrease " + render(t));
            }
            cur.add(t, -c);
            cur.add(repl, c);
            if (chain) chain->push_back(cur);
        }
    }

    bool reducible(const Tree& t) const { return !occurrences(t).empty(); }

private:
    static std::vector<Tree> inputs(const Tree& v, int kid) {
        const auto& w = v.kids[static_cast<std::size_t>(kid)];
        std::vector<Tree> ins = {w.kids[0], w.kids[1], v.kids[static_cast<std::size_t>(1 - kid)]};
        std::sort(ins.begin(), ins.end(), [](const Tree& a, const Tree& b) { return a.min_leaf() < b.min_leaf(); });
        return ins;
    }

    static Tree substitute(const Tree& u, const std::vector<Tree>& ins) {
        if (u.is_leaf()) return ins[static_cast<std::size_t>(u.leaf - 1)];
        Tree out;
        out.dec = u.dec;
        for (const auto& k : u.kids) out.kids.push_back(substitute(k, ins));
        return out;
    }

    static Tree pattern(const Tree& v, int kid) {
        const auto ins = inputs(v, kid);
        auto label = [&](const Tree& s) {
            for (std::size_t i = 0; i < ins.size(); ++i)
                if (ins[i].min_leaf() == s.min_leaf()) return Tree::make_leaf(static_cast<int>(i) + 1);
            throw std::logic_error("rewrite: lost input");
        };
        const auto& w = v.kids[static_cast<std::size_t>(kid)];
        Tree inner = Tree::node(w.dec, {label(w.kids[0]), label(w.kids[1])});
        std::vector<Tree> ks(2);
        ks[static_cast<std::size_t>(kid)] = inner;
        ks[static_cast<std::size_t>(1 - kid)] = label(v.kids[static_cast<std::size_t>(1 - kid)]);
        return Tree::node(v.dec, std::move(ks));
    }

    void scan(const Tree& t, std::vector<int>& path, std::vector<Occurrence>& out) const {
        if (t.is_leaf()) return;
        if (t.kids.size() != 2) throw std::invalid_argument("rewrite: non-binary vertex " + t.dec.full());
        for (int k = 0; k < 2; ++k) {
            if (t.kids[static_cast<std::size_t>(k)].is_leaf()) continue;
            auto it = index_.find(pattern(t, k));
            if (it != index_.end()) out.push_back({path, k, it->second});
        }
        for (int k = 0; k < 2; ++k) {
            path.push_back(k);
            scan(t.kids[static_cast<std::size_t>(k)], path, out);
            path.pop_back();
        }
    }

    std::vector<RewriteRule> rules_;
    PathLexOrder ord_;
    std::map<Tree, std::size_t, TreeLess> index_;
};

// weight-3 monomials with at least two lead occurrences, in storage order
inline std::vector<Tree> critical_monomials(const RewriteSystem& rs, const std::vector<Generator>& gens) {
    for (const auto& g : gens)
        if (g.arity != 2) throw std::invalid_argument("critical monomials: generator " + g.full() + " is not binary");
    std::vector<Tree> out;
    if (rs.rules().empty()) return out;
    for (const auto& t : enumerate_basis(gens, 4, 3))
        if (rs.occurrences(t).size() >= 2) out.push_back(t);
    return out;
}

struct CriticalCheck {
    Tree monomial;
    std::vector<std::vector<TreePoly>> chains;  // one per lead occurrence
    bool joinable = true;
};

struct ConfluenceReport {
    bool confluent = true;
    std::vector<CriticalCheck> checks;
    std::size_t failures() const {
        std::size_t n = 0;
        for (const auto& c : checks) n += c.joinable ? 0 : 1;
        return n;
    }
};

inline ConfluenceReport is_confluent(const RewriteSystem& rs, const std::vector<Generator>& gens) {
    ConfluenceReport rep;
    for (const auto& m : critical_monomials(rs, gens)) {
        CriticalCheck c;
        c.monomial = m;
        std::optional<TreePoly> first;
        for (const auto& occ : rs.occurrences(m)) {
            std::vector<TreePoly> chain;
            TreePoly start;
            start.add(m, 1);
            chain.push_back(start);
            auto nf = rs.normal_form(rs.step(m, occ), &chain);
            if (!first)
                first = nf;
            else if (!(nf == *first))
                c.joinable = false;
            c.chains.push_back(std::move(chain));
        }
        rep.confluent = rep.confluent && c.joinable;
        rep.checks.push_back(std::move(c));
    }
    return rep;
}

inline nlohmann::ordered_json certificate_json(const ConfluenceReport& rep) {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto& c : rep.checks) {
        nlohmann::ordered_json e;
        e["monomial"] = render(c.monomial);
        e["joinable"] = c.joinable;
        nlohmann::ordered_json chains = nlohmann::ordered_json::array();
        for (const auto& ch : c.chains) {
            nlohmann::ordered_json steps = nlohmann::ordered_json::array();
            for (const auto& f : ch) steps.push_back(render(f));
            chains.push_back(steps);
        }
        e["chains"] = chains;
        arr.push_back(e);
    }
    return arr;
}

// left combs forgetting leaf labels and decorations: "(((1,2),3),4)"
inline std::string shape_string(const Tree& t) {
    if (t.is_leaf()) return std::to_string(t.leaf);
    std::string s = "(";
    for (std::size_t i = 0; i < t.kids.size(); ++i) s += (i ? "," : "") + shape_string(t.kids[i]);
    return s + ")";
}

// shapes of the critical monomials, keyed by vertex colors in preorder
inline std::map<std::string, std::set<std::string>> critical_shapes(const ConfluenceReport& rep) {
    std::map<std::string, std::set<std::string>> out;
    for (const auto& c : rep.checks) {
        std::vector<const Tree*> vs;
        c.monomial.vertices(vs);
        std::string key;
        for (auto v : vs) key += (key.empty() ? "" : ",") + v->dec.color;
        out[key].insert(shape_string(c.monomial));
    }
    return out;
}

struct GroebnerRun {
    PathLexOrder order;
    std::vector<RewriteRule> rules;
    ConfluenceReport report;
    std::string error;  // set when the order is not compatible with the rules
};

inline GroebnerRun run_groebner(const Presentation& p, const PathLexOrder& ord, const std::string& drop_lead = "") {
    GroebnerRun run{ord, orient(p, ord), {}, {}};
    if (!drop_lead.empty()) {
        auto it = std::find_if(run.rules.begin(), run.rules.end(), [&](const RewriteRule& r) { return render(r.lead) == drop_lead; });
        if (it == run.rules.end()) throw std::invalid_argument("gb: no rule with lead " + drop_lead);
        run.rules.erase(it);
    }
    try {
        RewriteSystem rs(run.rules, ord);
        run.report = is_confluent(rs, p.gens);
    } catch (const std::logic_error& e) {
        run.report.confluent = false;
        run.error = e.what();
    }
    return run;
}

// Deterministic sweep: primary masks (none first), then the two flags, then
// letter permutations in lexicographic order. Alphabets above max_letters only
// get the identity permutation.
inline std::vector<PathLexOrder> order_candidates(const std::vector<Generator>& gens, std::size_t max_letters = 4) {
    std::vector<PathLexOrder> out;
    const std::size_t k = gens.size();
    std::vector<std::vector<bool>> masks = {{}};
    if (k > 1 && k <= 4)
        for (unsigned long m = 1; m + 1 < (1UL << k); ++m) {
            std::vector<bool> keep(k);
            for (std::size_t i = 0; i < k; ++i) keep[i] = (m >> i) & 1;
            masks.push_back(keep);
        }
    for (const auto& keep : masks)
        for (int flags = 0; flags < 4; ++flags) {
            std::vector<int> r(2 * k);
            std::iota(r.begin(), r.end(), 0);
            do {
                PathLexOrder o(gens);
                o.set_letter_ranks(r);
                o.set_longer_first(flags & 1);
                o.set_from_leaf_end(flags & 2);
                o.set_primary(keep);
                out.push_back(o);
            } while (2 * k <= max_letters && std::next_permutation(r.begin(), r.end()));
        }
    return out;
}

struct OrderSearch {
    std::optional<GroebnerRun> found;
    std::size_t tried = 0;
};

inline OrderSearch find_confluent_order(const Presentation& p, const std::vector<PathLexOrder>& candidates) {
    OrderSearch s;
    for (const auto& o : candidates) {
        ++s.tried;
        auto run = run_groebner(p, o);
        if (run.report.confluent) {
            s.found = std::move(run);
            break;
        }
    }
    return s;
}

inline OrderSearch find_confluent_order(const Presentation& p) { return find_confluent_order(p, order_candidates(p.gens)); }

// ------------------------------------------------------------ dimensions

// the operadic ideal generated by p's relations, arity n and weight m
inline std::vector<TreePoly> ideal_component(const Presentation& p, int n, int m,
                                             std::map<std::pair<int, int>, std::vector<TreePoly>>& memo) {
    auto key = std::make_pair(n, m);
    if (auto it = memo.find(key); it != memo.end()) return it->second;
    std::vector<TreePoly> fs;
    for (const auto& r : p.rels)
        if (r.poly.arity() == n && r.poly.weight() == m) fs.push_back(r.poly);
    if (m > 1) {
        for (const auto& g : p.gens) {
            const int k = g.arity;
            if (n - k + 1 < 1) continue;
            const auto sub = ideal_component(p, n - k + 1, m - 1, memo);
            if (sub.empty()) continue;
            std::vector<Tree> ls;
            for (int i = 1; i <= k; ++i) ls.push_back(Tree::make_leaf(i));
            for (const auto& d : decoration_basis(g)) {
                TreePoly G;
                G.add_raw(Tree::node(d, ls), 1);
                for (const auto& x : sub) {
                    for (int i = 1; i <= k; ++i) fs.push_back(compose(G, i, x));
                    for (int j = 1; j <= n - k + 1; ++j) fs.push_back(compose(x, j, G));
                }
            }
        }
    }
    std::vector<TreePoly> out;
    if (!fs.empty()) {
        Component comp(p.gens, n, m);
        const auto rs = closed_span(comp, fs);
        for (const auto& v : rs.basis()) out.push_back(comp.poly(v));
    }
    memo[key] = out;
    return out;
}

struct DimensionReport {
    int arity;
    std::map<int, std::pair<std::size_t, std::size_t>> by_weight;  // weight -> (dim T, dim ideal)
    std::size_t dim = 0;
};

// dim P(n) over all weights; only generators of arity >= 2 keep this finite
inline DimensionReport component_dimension(const Presentation& p, int n) {
    for (const auto& g : p.gens)
        if (g.arity < 2) throw std::invalid_argument("dims: generator " + g.full() + " has arity < 2");
    if (n < 1) throw std::invalid_argument("dims: arity must be positive");
    if (n > 5) throw std::invalid_argument("dims: arity " + std::to_string(n) + " exceeds the supported bound 5");
    DimensionReport rep;
    rep.arity = n;
    std::map<std::pair<int, int>, std::vector<TreePoly>> memo;
    for (int m = 0; m <= n - 1; ++m) {
        const auto basis = enumerate_basis(p.gens, n, m);
        if (basis.empty()) continue;
        const auto ideal = ideal_component(p, n, m, memo);
        rep.by_weight[m] = {basis.size(), ideal.size()};
        rep.dim += basis.size() - ideal.size();
    }
    return rep;
}

// sum over set partitions of [n] of P(#blocks) * prod Q(|block|); dims are 1-based
inline mpz_class plethysm_dimension(const std::vector<mpz_class>& dimsP, const std::vector<mpz_class>& dimsQ, int n) {
    auto at = [](const std::vector<mpz_class>& d, int i) { return i >= 1 && i <= static_cast<int>(d.size()) ? d[static_cast<std::size_t>(i - 1)] : mpz_class(0); };
    std::vector<int> s(static_cast<std::size_t>(n));
    std::iota(s.begin(), s.end(), 1);
    mpz_class total = 0;
    for (int k = 1; k <= n; ++k) {
        std::vector<std::vector<std::vector<int>>> parts;
        detail::set_partitions(s, k, parts);
        for (const auto& pi : parts) {
            mpz_class term = at(dimsP, k);
            for (const auto& b : pi) term *= at(dimsQ, static_cast<int>(b.size()));
            total += term;
        }
    }
    return total;
}

}  // namespace operad
