#pragma once

#include "operad/presentations.hpp"

#include <functional>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace operad {

// counts per color, in the declared color order
using WeakComposition = std::vector<int>;

// all weak compositions of total into parts, lexicographically ascending
inline std::vector<WeakComposition> weak_compositions(int parts, int total) {
    std::vector<WeakComposition> out;
    detail::weak_compositions_into(total, parts, out);
    return out;
}

inline mpz_class multinomial(const WeakComposition& c) {
    int m = 0;
    mpz_class r = 1;
    for (int x : c) {
        for (int i = 1; i <= x; ++i) {
            ++m;
            r *= m;
            r /= i;
        }
    }
    return r;
}

inline std::string type_string(const WeakComposition& c) {
    std::string s = "(";
    for (std::size_t i = 0; i < c.size(); ++i) s += (i ? "," : "") + std::to_string(c[i]);
    return s + ")";
}

// words over 0..k-1 with the given letter counts, lexicographically ascending
inline std::vector<std::vector<int>> color_words(const WeakComposition& c) {
    std::vector<int> w;
    for (std::size_t i = 0; i < c.size(); ++i) w.insert(w.end(), static_cast<std::size_t>(c[i]), static_cast<int>(i));
    std::vector<std::vector<int>> out;
    do out.push_back(w);
    while (std::next_permutation(w.begin(), w.end()));
    return out;
}

inline WeakComposition word_type(const std::vector<int>& w, int k) {
    WeakComposition c(static_cast<std::size_t>(k), 0);
    for (int x : w) ++c[static_cast<std::size_t>(x)];
    return c;
}

inline std::string add_color(const std::string& old, const std::string& c) { return old.empty() ? c : old + "." + c; }

inline std::string strip_color(const std::string& c) {
    auto pos = c.rfind('.');
    return pos == std::string::npos ? std::string() : c.substr(0, pos);
}

inline std::string last_color(const std::string& c) {
    auto pos = c.rfind('.');
    return pos == std::string::npos ? c : c.substr(pos + 1);
}

// colors the internal vertices in preorder by word
inline Tree color_tree(const Tree& t, const std::vector<int>& word, const std::vector<std::string>& colors) {
    Tree u = t;
    std::vector<Tree*> vs;
    u.vertices(vs);
    if (vs.size() != word.size()) throw std::invalid_argument("coloring: weight mismatch");
    for (std::size_t i = 0; i < vs.size(); ++i)
        vs[i]->dec.color = add_color(vs[i]->dec.color, colors[static_cast<std::size_t>(word[i])]);
    return u;
}

// vertex colors in preorder, relative to one coloring level
inline std::vector<std::string> vertex_colors(const Tree& t) {
    std::vector<const Tree*> vs;
    t.vertices(vs);
    std::vector<std::string> out;
    for (auto v : vs) out.push_back(v->dec.color);
    return out;
}

inline std::vector<Generator> colored_generators(const std::vector<Generator>& gens, const std::vector<std::string>& colors) {
    std::vector<Generator> out;
    for (const auto& g : gens)
        for (const auto& c : colors) {
            Generator h = g;
            h.color = add_color(g.color, c);
            out.push_back(h);
        }
    return out;
}

inline std::vector<std::string> color_product(const std::vector<std::string>& a, const std::vector<std::string>& b) {
    std::vector<std::string> out;
    for (const auto& x : a)
        for (const auto& y : b) out.push_back(x + "." + y);
    return out;
}

inline std::vector<std::string> default_colors(int n) {
    std::vector<std::string> out;
    for (int i = 0; i < n; ++i) out.push_back("c" + std::to_string(i));
    return out;
}

struct Lift {
    Tree tree;
    std::vector<int> word;  // color index per vertex in preorder
};

inline std::vector<Lift> lifts_of_type(const Tree& t, const std::vector<std::string>& colors, const WeakComposition& c) {
    if (c.size() != colors.size()) throw std::invalid_argument("lifts: type has wrong number of colors");
    int m = 0;
    for (int x : c) m += x;
    if (m != t.weight()) throw std::invalid_argument("lifts: weight mismatch");
    std::vector<Lift> out;
    for (auto& w : color_words(c)) out.push_back({color_tree(t, w, colors), w});
    return out;
}

inline TreePoly quasipolarize(const TreePoly& f, const std::vector<std::string>& colors, const WeakComposition& c) {
    TreePoly r;
    for (const auto& [t, a] : f.terms())
        for (const auto& l : lifts_of_type(t, colors, c)) r.add(l.tree, a);
    return r;
}

inline Tree restitute_tree(const Tree& t) {
    Tree u = t;
    std::vector<Tree*> vs;
    u.vertices(vs);
    for (auto v : vs) v->dec.color = strip_color(v->dec.color);
    return u;
}

// removes the outermost coloring level
inline TreePoly restitute(const TreePoly& g) {
    TreePoly r;
    for (const auto& [t, a] : g.terms()) r.add(restitute_tree(t), a);
    return r;
}

// ------------------------------------------------ polynomials (ordered words)

// x_var^{(copy)}; copy 0 means an unpolarized variable
struct PVar {
    int var;
    int copy;
    auto operator<=>(const PVar&) const = default;
};
using PWord = std::vector<PVar>;

class OrderedPoly {
public:
    void add(const PWord& w, const Rational& c) {
        if (sgn(c) == 0) return;
        auto& x = terms_[w];
        x += c;
        if (sgn(x) == 0) terms_.erase(w);
    }
    void add(const OrderedPoly& o, const Rational& c = 1) {
        for (const auto& [w, x] : o.terms_) add(w, x * c);
    }
    const std::map<PWord, Rational>& terms() const { return terms_; }
    bool empty() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }
    bool operator==(const OrderedPoly& o) const { return terms_ == o.terms_; }
    OrderedPoly operator*(const Rational& c) const {
        OrderedPoly r;
        r.add(*this, c);
        return r;
    }
    int degree() const { return empty() ? 0 : static_cast<int>(terms_.begin()->first.size()); }

private:
    std::map<PWord, Rational> terms_;
};

inline std::string render(const OrderedPoly& f) {
    if (f.empty()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [w, c] : f.terms()) {
        std::string body;
        for (std::size_t i = 0; i < w.size(); ++i) {
            if (i) body += ' ';
            body += "x" + std::to_string(w[i].var);
            if (w[i].copy) body += "^" + std::to_string(w[i].copy);
        }
        out += render_coeff_term(c, body, first);
        first = false;
    }
    return out;
}

// monomial-wise lifts: the copy word assigned to the positions of q
inline PWord lift_word(const PWord& q, const std::vector<int>& copies) {
    PWord w = q;
    for (std::size_t i = 0; i < w.size(); ++i) w[i].copy = copies[i] + 1;
    return w;
}

// coefficient of prod lambda_i^{c_i} in f(lambda_1 x^(1) + ... + lambda_k x^(k)),
// keeping variable order
inline OrderedPoly poly_quasipolarize(const OrderedPoly& f, int k, const WeakComposition& c) {
    if (static_cast<int>(c.size()) != k) throw std::invalid_argument("polarize: type length differs from copy count");
    int m = 0;
    for (int x : c) m += x;
    OrderedPoly r;
    for (const auto& [q, a] : f.terms()) {
        if (static_cast<int>(q.size()) != m) throw std::invalid_argument("polarize: degree mismatch");
        for (const auto& w : color_words(c)) r.add(lift_word(q, w), a);
    }
    return r;
}

inline OrderedPoly poly_restitute(const OrderedPoly& g) {
    OrderedPoly r;
    for (const auto& [w, a] : g.terms()) {
        PWord u = w;
        for (auto& v : u) v.copy = 0;
        r.add(u, a);
    }
    return r;
}

using Foliation = std::vector<OrderedPoly>;

// parts k = a_0 q_{0,k} + sum_i a_i q_{i,sigma_i(k)}
inline Foliation poly_foliation(const OrderedPoly& f, const WeakComposition& c, const std::vector<Perm>& sigma) {
    const auto words = color_words(c);
    const std::size_t beta = words.size();
    if (sigma.size() + 1 != f.size()) throw std::invalid_argument("foliation: need one permutation per non-leading monomial");
    Foliation parts(beta);
    std::size_t i = 0;
    for (const auto& [q, a] : f.terms()) {
        for (std::size_t k = 0; k < beta; ++k) {
            std::size_t src = k;
            if (i > 0) {
                const auto& s = sigma[i - 1];
                if (s.size() != beta) throw std::invalid_argument("foliation: permutation degree mismatch");
                src = static_cast<std::size_t>(s[k] - 1);
            }
            parts[k].add(lift_word(q, words[src]), a);
        }
        ++i;
    }
    return parts;
}

// every sigma tuple in S_beta^s, first component varying slowest
inline std::vector<std::vector<Perm>> sigma_tuples(int beta, int s) {
    const auto perms = all_perms(beta);
    std::vector<std::vector<Perm>> out;
    std::vector<Perm> cur(static_cast<std::size_t>(s));
    std::function<void(int)> rec = [&](int i) {
        if (i == s) {
            out.push_back(cur);
            return;
        }
        for (const auto& p : perms) {
            cur[static_cast<std::size_t>(i)] = p;
            rec(i + 1);
        }
    };
    rec(0);
    return out;
}

inline std::vector<Foliation> poly_foliations(const OrderedPoly& f, const WeakComposition& c) {
    const int beta = static_cast<int>(multinomial(c).get_si());
    std::vector<Foliation> out;
    for (const auto& sig : sigma_tuples(beta, static_cast<int>(f.size()) - 1)) out.push_back(poly_foliation(f, c, sig));
    return out;
}

// a foliation plus all consecutive lift differences of each monomial
inline std::vector<OrderedPoly> poly_unified_foliation(const OrderedPoly& f, const WeakComposition& c,
                                                       const std::vector<Perm>& sigma) {
    auto sys = poly_foliation(f, c, sigma);
    const auto words = color_words(c);
    for (const auto& [q, a] : f.terms()) {
        (void)a;
        for (std::size_t k = 0; k + 1 < words.size(); ++k) {
            OrderedPoly d;
            d.add(lift_word(q, words[k]), 1);
            d.add(lift_word(q, words[k + 1]), -1);
            sys.push_back(d);
        }
    }
    return sys;
}

inline bool poly_span_equal(const std::vector<OrderedPoly>& a, const std::vector<OrderedPoly>& b) {
    std::map<PWord, std::size_t> idx;
    for (const auto* fam : {&a, &b})
        for (const auto& f : *fam)
            for (const auto& kv : f.terms()) idx.emplace(kv.first, 0);
    std::size_t i = 0;
    for (auto& kv : idx) kv.second = i++;
    auto vecs = [&](const std::vector<OrderedPoly>& fam) {
        std::vector<Vector> out;
        for (const auto& f : fam) {
            Vector v(idx.size());
            for (const auto& [w, c] : f.terms()) v[idx[w]] = c;
            out.push_back(v);
        }
        return out;
    };
    auto va = vecs(a), vb = vecs(b);
    if (idx.empty()) return true;
    return span_equal(va, vb);
}

}  // namespace operad
