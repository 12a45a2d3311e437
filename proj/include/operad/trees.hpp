#pragma once

#include "operad/linalg.hpp"
#include "operad/perm.hpp"

#include <algorithm>
#include <cstdio>
#include <functional>
#include <map>
#include <numeric>
#include <stdexcept>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

namespace operad {

enum class Sym { Symmetric, Antisymmetric, Regular };

inline const char* sym_name(Sym s) {
    switch (s) {
        case Sym::Symmetric: return "symmetric";
        case Sym::Antisymmetric: return "antisymmetric";
        default: return "regular";
    }
}

struct Generator {
    std::string name;
    std::string color;  // empty when uncolored; "a.b" for iterated colorings
    int arity = 2;
    Sym sym = Sym::Regular;

    std::string full() const { return color.empty() ? name : name + "@" + color; }
    // dimension of the S_arity-module spanned by this symbol
    int basis_size() const {
        return (sym == Sym::Regular && arity >= 2) ? static_cast<int>(factorial(arity)) : 1;
    }
    bool operator==(const Generator& o) const {
        return name == o.name && color == o.color && arity == o.arity && sym == o.sym;
    }
};

// A basis element of a generator's S_k-module. For regular symbols, perm
// records which generator translate g.perm decorates the vertex; the vertex
// value is g(C[perm[0]], ..., C[perm[k-1]]) for canonically ordered children C.
struct Dec {
    std::string name;
    std::string color;
    std::vector<int> perm;  // 0-based; empty unless regular of arity >= 2
    Sym sym = Sym::Regular;

    std::string full() const { return color.empty() ? name : name + "@" + color; }
    bool flipped() const {
        for (std::size_t i = 0; i < perm.size(); ++i)
            if (perm[i] != static_cast<int>(i)) return true;
        return false;
    }
    auto key() const { return std::tie(name, color, perm); }
    bool operator==(const Dec& o) const { return key() == o.key(); }
    bool operator<(const Dec& o) const { return key() < o.key(); }
};

inline std::vector<Dec> decoration_basis(const Generator& g) {
    std::vector<Dec> out;
    if (g.sym == Sym::Regular && g.arity >= 2) {
        std::vector<int> p(static_cast<std::size_t>(g.arity));
        std::iota(p.begin(), p.end(), 0);
        do out.push_back(Dec{g.name, g.color, p, g.sym});
        while (std::next_permutation(p.begin(), p.end()));
    } else {
        out.push_back(Dec{g.name, g.color, {}, g.sym});
    }
    return out;
}

struct Tree {
    int leaf = 0;  // > 0 for a leaf
    Dec dec;
    std::vector<Tree> kids;

    static Tree make_leaf(int i) {
        Tree t;
        t.leaf = i;
        return t;
    }
    static Tree node(Dec d, std::vector<Tree> ks) {
        Tree t;
        t.dec = std::move(d);
        t.kids = std::move(ks);
        return t;
    }

    bool is_leaf() const { return kids.empty(); }

    int arity() const {
        if (is_leaf()) return 1;
        int n = 0;
        for (const auto& k : kids) n += k.arity();
        return n;
    }
    int weight() const {
        if (is_leaf()) return 0;
        int w = 1;
        for (const auto& k : kids) w += k.weight();
        return w;
    }
    int min_leaf() const {
        if (is_leaf()) return leaf;
        int m = kids[0].min_leaf();
        for (std::size_t i = 1; i < kids.size(); ++i) m = std::min(m, kids[i].min_leaf());
        return m;
    }

    void leaves(std::vector<int>& out) const {
        if (is_leaf()) {
            out.push_back(leaf);
            return;
        }
        for (const auto& k : kids) k.leaves(out);
    }
    std::vector<int> leaves() const {
        std::vector<int> out;
        leaves(out);
        return out;
    }

    void shape(std::vector<int>& out) const {
        out.push_back(static_cast<int>(kids.size()));
        for (const auto& k : kids) k.shape(out);
    }
    void decs(std::vector<const Dec*>& out) const {
        if (is_leaf()) return;
        out.push_back(&dec);
        for (const auto& k : kids) k.decs(out);
    }
    // internal vertices in preorder (mutable)
    void vertices(std::vector<Tree*>& out) {
        if (is_leaf()) return;
        out.push_back(this);
        for (auto& k : kids) k.vertices(out);
    }
    void vertices(std::vector<const Tree*>& out) const {
        if (is_leaf()) return;
        out.push_back(this);
        for (const auto& k : kids) k.vertices(out);
    }

    bool operator==(const Tree& o) const {
        if (leaf != o.leaf || kids.size() != o.kids.size()) return false;
        if (!is_leaf() && !(dec == o.dec)) return false;
        for (std::size_t i = 0; i < kids.size(); ++i)
            if (!(kids[i] == o.kids[i])) return false;
        return true;
    }
};

// Storage order: shape (preorder fan-in sequence), then decorations in
// preorder, then the planar leaf word.
inline int compare_storage(const Tree& a, const Tree& b) {
    std::vector<int> sa, sb;
    a.shape(sa);
    b.shape(sb);
    if (sa != sb) return sa < sb ? -1 : 1;
    std::vector<const Dec*> da, db;
    a.decs(da);
    b.decs(db);
    for (std::size_t i = 0; i < da.size(); ++i) {
        if (*da[i] < *db[i]) return -1;
        if (*db[i] < *da[i]) return 1;
    }
    auto la = a.leaves(), lb = b.leaves();
    if (la != lb) return la < lb ? -1 : 1;
    return 0;
}

struct TreeLess {
    bool operator()(const Tree& a, const Tree& b) const { return compare_storage(a, b) < 0; }
};

// ---------------------------------------------------------------- rendering

inline void render_to(const Tree& t, std::string& out) {
    if (t.is_leaf()) {
        out += std::to_string(t.leaf);
        return;
    }
    out += t.dec.full();
    out += '(';
    for (std::size_t i = 0; i < t.kids.size(); ++i) {
        if (i) out += ',';
        std::size_t j = t.dec.perm.empty() ? i : static_cast<std::size_t>(t.dec.perm[i]);
        render_to(t.kids[j], out);
    }
    out += ')';
}

inline std::string render(const Tree& t) {
    std::string s;
    render_to(t, s);
    return s;
}

// ---------------------------------------------------------- canonical form

struct Signed {
    int sign;
    Tree tree;
};

// Treats t as written: children read in display order (perm applied), so a
// raw tree (all perms empty) and an already canonical tree are both valid.
inline Signed canonicalize(const Tree& t) {
    if (t.is_leaf()) return {1, t};
    const std::size_t k = t.kids.size();
    int sign = 1;
    std::vector<Tree> raw;
    raw.reserve(k);
    for (std::size_t i = 0; i < k; ++i) {
        std::size_t j = t.dec.perm.empty() ? i : static_cast<std::size_t>(t.dec.perm[i]);
        auto c = canonicalize(t.kids[j]);
        sign *= c.sign;
        raw.push_back(std::move(c.tree));
    }
    std::vector<int> mins(k);
    for (std::size_t i = 0; i < k; ++i) mins[i] = raw[i].min_leaf();
    std::vector<int> order(k);  // order[pos] = raw index placed at pos
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int x, int y) { return mins[static_cast<std::size_t>(x)] < mins[static_cast<std::size_t>(y)]; });
    for (std::size_t i = 1; i < k; ++i)
        if (mins[static_cast<std::size_t>(order[i])] == mins[static_cast<std::size_t>(order[i - 1])])
            throw std::invalid_argument("duplicate leaf label");
    Tree out;
    out.dec = t.dec;
    out.dec.perm.clear();
    std::vector<int> rank(k);  // raw index -> sorted position
    for (std::size_t pos = 0; pos < k; ++pos) rank[static_cast<std::size_t>(order[pos])] = static_cast<int>(pos);
    if (t.dec.sym == Sym::Regular && k >= 2) {
        out.dec.perm = rank;
    } else if (t.dec.sym == Sym::Antisymmetric) {
        Perm p(k);
        for (std::size_t i = 0; i < k; ++i) p[i] = rank[i] + 1;
        sign *= perm_sign(p);
    }
    out.kids.reserve(k);
    for (std::size_t pos = 0; pos < k; ++pos) out.kids.push_back(std::move(raw[static_cast<std::size_t>(order[pos])]));
    return {sign, std::move(out)};
}

inline void check_leaves(const Tree& t) {
    auto l = t.leaves();
    std::vector<int> s = l;
    std::sort(s.begin(), s.end());
    for (std::size_t i = 0; i < s.size(); ++i)
        if (s[i] != static_cast<int>(i) + 1) {
            if (i > 0 && s[i] == s[i - 1]) throw std::invalid_argument("duplicate leaf label " + std::to_string(s[i]));
            throw std::invalid_argument("leaf labels must be 1..n");
        }
}

inline void relabel(Tree& t, const std::function<int(int)>& f) {
    if (t.is_leaf()) {
        t.leaf = f(t.leaf);
        return;
    }
    for (auto& k : t.kids) relabel(k, f);
}

// ----------------------------------------------------------------- TreePoly

class TreePoly {
public:
    using Map = std::map<Tree, Rational, TreeLess>;

    TreePoly() = default;
    explicit TreePoly(const Tree& t, const Rational& c = 1) { add(t, c); }

    void add(const Tree& t, const Rational& c) {
        if (sgn(c) == 0) return;
        auto it = terms_.find(t);
        if (it == terms_.end()) {
            terms_.emplace(t, c);
            return;
        }
        it->second += c;
        if (sgn(it->second) == 0) terms_.erase(it);
    }
    // adds c * (raw tree), canonicalizing first
    void add_raw(const Tree& t, const Rational& c) {
        auto s = canonicalize(t);
        add(s.tree, s.sign > 0 ? c : Rational(-c));
    }
    void add(const TreePoly& o, const Rational& c = 1) {
        for (const auto& [t, x] : o.terms_) add(t, x * c);
    }

    const Map& terms() const { return terms_; }
    bool empty() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }
    Rational coeff(const Tree& t) const {
        auto it = terms_.find(t);
        return it == terms_.end() ? Rational(0) : it->second;
    }
    const Tree& lead_storage() const { return terms_.begin()->first; }

    int arity() const { return empty() ? 0 : terms_.begin()->first.arity(); }
    int weight() const { return empty() ? 0 : terms_.begin()->first.weight(); }
    bool homogeneous() const {
        if (empty()) return true;
        const int n = arity(), m = weight();
        for (const auto& kv : terms_)
            if (kv.first.arity() != n || kv.first.weight() != m) return false;
        return true;
    }

    TreePoly operator+(const TreePoly& o) const {
        TreePoly r = *this;
        r.add(o);
        return r;
    }
    TreePoly operator-(const TreePoly& o) const {
        TreePoly r = *this;
        r.add(o, -1);
        return r;
    }
    TreePoly operator*(const Rational& c) const {
        TreePoly r;
        if (sgn(c) == 0) return r;
        for (const auto& [t, x] : terms_) r.terms_.emplace(t, x * c);
        return r;
    }
    bool operator==(const TreePoly& o) const {
        if (terms_.size() != o.terms_.size()) return false;
        auto i = terms_.begin();
        auto j = o.terms_.begin();
        for (; i != terms_.end(); ++i, ++j)
            if (!(i->first == j->first) || i->second != j->second) return false;
        return true;
    }

    // scale so the first stored term has coefficient 1
    TreePoly normalized() const {
        if (empty()) return *this;
        return *this * Rational(1 / terms_.begin()->second);
    }

private:
    Map terms_;
};

inline std::string render_coeff_term(const Rational& c, const std::string& body, bool first) {
    std::string out;
    Rational a = abs(c);
    if (sgn(c) < 0)
        out += first ? "-" : " - ";
    else if (!first)
        out += " + ";
    if (a != 1) out += a.get_str() + "*";
    out += body;
    return out;
}

inline std::string render(const TreePoly& f) {
    if (f.empty()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [t, c] : f.terms()) {
        out += render_coeff_term(c, render(t), first);
        first = false;
    }
    return out;
}

inline TreePoly canonicalize_poly(const TreePoly& f) {
    TreePoly r;
    for (const auto& [t, c] : f.terms()) r.add_raw(t, c);
    return r;
}

// leaf i receives label rho^{-1}(i); a right action: act(act(f,r),s) = act(f, r*s)
inline TreePoly act(const TreePoly& f, const Perm& rho) {
    if (f.empty()) return f;
    if (static_cast<int>(rho.size()) != f.arity()) throw std::invalid_argument("act: permutation degree differs from arity");
    const Perm inv = inverse(rho);
    TreePoly r;
    for (const auto& [t, c] : f.terms()) {
        Tree u = t;
        relabel(u, [&](int i) { return inv[static_cast<std::size_t>(i - 1)]; });
        r.add_raw(u, c);
    }
    return r;
}

// f o_i g: g's leaves occupy i..i+k-1
inline Tree compose_tree(const Tree& f, int i, const Tree& g) {
    const int k = g.arity();
    if (f.is_leaf()) {
        if (f.leaf != i) {
            Tree t = f;
            if (t.leaf > i) t.leaf += k - 1;
            return t;
        }
        Tree t = g;
        relabel(t, [&](int j) { return j + i - 1; });
        return t;
    }
    Tree t;
    t.dec = f.dec;
    t.kids.reserve(f.kids.size());
    for (const auto& c : f.kids) t.kids.push_back(compose_tree(c, i, g));
    return t;
}

inline TreePoly compose(const TreePoly& f, int i, const TreePoly& g) {
    TreePoly r;
    for (const auto& [a, x] : f.terms())
        for (const auto& [b, y] : g.terms()) r.add_raw(compose_tree(a, i, b), x * y);
    return r;
}

// outer(inner_1, ..., inner_k) with consecutive label blocks
inline TreePoly graft(const Tree& outer, const std::vector<TreePoly>& inners) {
    const int k = outer.arity();
    if (static_cast<int>(inners.size()) != k) throw std::invalid_argument("graft: arity mismatch");
    std::vector<int> offset(static_cast<std::size_t>(k) + 1, 0);
    for (int i = 0; i < k; ++i) {
        if (inners[static_cast<std::size_t>(i)].empty()) return {};
        offset[static_cast<std::size_t>(i) + 1] = offset[static_cast<std::size_t>(i)] + inners[static_cast<std::size_t>(i)].arity();
    }
    // expand multilinearly
    TreePoly acc;
    std::vector<std::pair<const Tree*, Rational>> pick(static_cast<std::size_t>(k));
    std::function<void(int, Rational)> rec = [&](int i, Rational c) {
        if (i == k) {
            std::function<Tree(const Tree&)> sub = [&](const Tree& t) -> Tree {
                if (t.is_leaf()) {
                    const auto idx = static_cast<std::size_t>(t.leaf - 1);
                    Tree s = *pick[idx].first;
                    relabel(s, [&](int j) { return j + offset[idx]; });
                    return s;
                }
                Tree u;
                u.dec = t.dec;
                for (const auto& ch : t.kids) u.kids.push_back(sub(ch));
                return u;
            };
            acc.add_raw(sub(outer), c);
            return;
        }
        for (const auto& [t, x] : inners[static_cast<std::size_t>(i)].terms()) {
            pick[static_cast<std::size_t>(i)] = {&t, x};
            rec(i + 1, c * x);
        }
    };
    rec(0, 1);
    return acc;
}

// ------------------------------------------------------------- enumeration

namespace detail {

// set partitions of s into exactly k blocks, blocks ordered by minimum
inline void set_partitions(const std::vector<int>& s, int k, std::vector<std::vector<std::vector<int>>>& out) {
    std::vector<std::vector<int>> blocks;
    std::function<void(std::size_t)> rec = [&](std::size_t i) {
        if (static_cast<int>(blocks.size()) > k) return;
        if (s.size() - i < static_cast<std::size_t>(k) - std::min<std::size_t>(blocks.size(), static_cast<std::size_t>(k))) return;
        if (i == s.size()) {
            if (static_cast<int>(blocks.size()) == k) out.push_back(blocks);
            return;
        }
        for (std::size_t b = 0, nb = blocks.size(); b < nb; ++b) {
            blocks[b].push_back(s[i]);
            rec(i + 1);
            blocks[b].pop_back();
        }
        blocks.push_back({s[i]});
        rec(i + 1);
        blocks.pop_back();
    };
    rec(0);
}

inline void weak_compositions_into(int total, int parts, std::vector<std::vector<int>>& out) {
    std::vector<int> cur(static_cast<std::size_t>(parts), 0);
    std::function<void(int, int)> rec = [&](int i, int left) {
        if (i == parts - 1) {
            cur[static_cast<std::size_t>(i)] = left;
            out.push_back(cur);
            return;
        }
        for (int v = 0; v <= left; ++v) {
            cur[static_cast<std::size_t>(i)] = v;
            rec(i + 1, left - v);
        }
    };
    if (parts == 0) {
        if (total == 0) out.push_back({});
        return;
    }
    rec(0, total);
}

inline std::vector<Tree> enumerate_on(const std::vector<Generator>& gens, const std::vector<int>& leaves, int m) {
    std::vector<Tree> out;
    if (m == 0) {
        if (leaves.size() == 1) out.push_back(Tree::make_leaf(leaves[0]));
        return out;
    }
    for (const auto& g : gens) {
        if (g.arity > static_cast<int>(leaves.size())) continue;
        std::vector<std::vector<std::vector<int>>> parts;
        set_partitions(leaves, g.arity, parts);
        std::vector<std::vector<int>> ws;
        weak_compositions_into(m - 1, g.arity, ws);
        const auto basis = decoration_basis(g);
        for (const auto& blocks : parts)
            for (const auto& w : ws) {
                std::vector<std::vector<Tree>> opts;
                bool ok = true;
                for (std::size_t j = 0; j < blocks.size() && ok; ++j) {
                    opts.push_back(enumerate_on(gens, blocks[j], w[j]));
                    ok = !opts.back().empty();
                }
                if (!ok) continue;
                std::vector<std::size_t> idx(opts.size(), 0);
                while (true) {
                    std::vector<Tree> ks;
                    for (std::size_t j = 0; j < opts.size(); ++j) ks.push_back(opts[j][idx[j]]);
                    for (const auto& d : basis) out.push_back(Tree::node(d, ks));
                    std::size_t j = 0;
                    while (j < idx.size() && ++idx[j] == opts[j].size()) idx[j++] = 0;
                    if (j == idx.size()) break;
                }
            }
    }
    return out;
}

}  // namespace detail

inline std::vector<Tree> enumerate_basis(const std::vector<Generator>& gens, int n, int m) {
    if (n > 5 || m > 3)
        std::fprintf(stderr, "warning: enumerating arity %d weight %d may be slow\n", n, m);
    std::vector<int> leaves(static_cast<std::size_t>(std::max(n, 0)));
    std::iota(leaves.begin(), leaves.end(), 1);
    auto out = detail::enumerate_on(gens, leaves, m);
    std::sort(out.begin(), out.end(), TreeLess{});
    return out;
}

// An ordered basis of T(M)^{(m)}(n) with coordinate maps.
class Component {
public:
    Component() = default;
    Component(const std::vector<Generator>& gens, int n, int m) : n_(n), m_(m), basis_(enumerate_basis(gens, n, m)) {
        for (std::size_t i = 0; i < basis_.size(); ++i) index_.emplace(basis_[i], i);
    }

    int arity() const { return n_; }
    int weight() const { return m_; }
    std::size_t dim() const { return basis_.size(); }
    const std::vector<Tree>& basis() const { return basis_; }

    bool has(const Tree& t) const { return index_.count(t) > 0; }
    std::size_t index(const Tree& t) const {
        auto it = index_.find(t);
        if (it == index_.end()) throw std::invalid_argument("monomial outside basis: " + render(t));
        return it->second;
    }

    Vector vec(const TreePoly& f) const {
        Vector v(basis_.size());
        for (const auto& [t, c] : f.terms()) v[index(t)] = c;
        return v;
    }
    TreePoly poly(const Vector& v) const {
        TreePoly f;
        for (std::size_t i = 0; i < v.size(); ++i)
            if (sgn(v[i]) != 0) f.add(basis_[i], v[i]);
        return f;
    }

private:
    int n_ = 0, m_ = 0;
    std::vector<Tree> basis_;
    std::map<Tree, std::size_t, TreeLess> index_;
};

inline Vector coefficient_vector(const TreePoly& f, const std::vector<Tree>& basis) {
    std::map<Tree, std::size_t, TreeLess> idx;
    for (std::size_t i = 0; i < basis.size(); ++i) idx.emplace(basis[i], i);
    Vector v(basis.size());
    for (const auto& [t, c] : f.terms()) {
        auto it = idx.find(t);
        if (it == idx.end()) throw std::invalid_argument("monomial outside basis: " + render(t));
        v[it->second] = c;
    }
    return v;
}

// S_n-closure of a family inside one component
inline RowSpace closed_span(const Component& comp, const std::vector<TreePoly>& fs) {
    RowSpace rs(comp.dim());
    std::vector<Vector> frontier;
    for (const auto& f : fs) {
        auto v = comp.vec(f);
        if (rs.add(v)) frontier.push_back(v);
    }
    const int n = comp.arity();
    std::vector<Perm> gensS;
    for (int i = 1; i < n; ++i) gensS.push_back(transposition(n, i, i + 1));
    while (!frontier.empty()) {
        std::vector<Vector> next;
        for (const auto& v : frontier) {
            auto f = comp.poly(v);
            for (const auto& s : gensS) {
                auto w = comp.vec(act(f, s));
                if (rs.add(w)) next.push_back(std::move(w));
            }
        }
        frontier = std::move(next);
    }
    return rs;
}

}  // namespace operad
