#pragma once

#include "operad/trees.hpp"

#include <json.hpp>

#include <cctype>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace operad {

struct Relation {
    std::string name;
    TreePoly poly;
};

struct Presentation {
    std::string name;
    std::vector<std::string> colors;
    std::vector<Generator> gens;
    std::vector<Relation> rels;

    const Generator* find(const std::string& n, const std::string& c) const {
        for (const auto& g : gens)
            if (g.name == n && g.color == c) return &g;
        return nullptr;
    }

    std::vector<TreePoly> relation_polys() const {
        std::vector<TreePoly> out;
        for (const auto& r : rels) out.push_back(r.poly);
        return out;
    }

    // distinct (arity, weight) pairs carried by relations
    std::vector<std::pair<int, int>> degrees() const {
        std::set<std::pair<int, int>> s;
        for (const auto& r : rels) s.insert({r.poly.arity(), r.poly.weight()});
        return {s.begin(), s.end()};
    }

    bool binary() const {
        for (const auto& g : gens)
            if (g.arity != 2) return false;
        return true;
    }
    bool quadratic() const {
        for (const auto& r : rels)
            if (r.poly.weight() != 2) return false;
        return true;
    }
};

// ------------------------------------------------------------------ parser

struct ParseError : std::runtime_error {
    int line, col;
    ParseError(int l, int c, const std::string& what)
        : std::runtime_error(std::to_string(l) + ":" + std::to_string(c) + ": " + what), line(l), col(c) {}
};

namespace dsl {

enum class Tok { Ident, Number, Punct, End };

struct Token {
    Tok kind;
    std::string text;
    int line, col;
};

inline bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
inline bool ident_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '.' || c == '\'';
}

inline std::vector<Token> lex(const std::string& src) {
    std::vector<Token> out;
    int line = 1, col = 1;
    std::size_t i = 0;
    auto adv = [&] {
        if (src[i] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
        ++i;
    };
    while (i < src.size()) {
        char c = src[i];
        if (std::isspace(static_cast<unsigned char>(c))) {
            adv();
            continue;
        }
        if (c == '#' || (c == '/' && i + 1 < src.size() && src[i + 1] == '/')) {
            while (i < src.size() && src[i] != '\n') adv();
            continue;
        }
        Token t{Tok::Punct, "", line, col};
        if (ident_start(c)) {
            t.kind = Tok::Ident;
            while (i < src.size() && ident_char(src[i])) {
                t.text += src[i];
                adv();
            }
        } else if (std::isdigit(static_cast<unsigned char>(c))) {
            t.kind = Tok::Number;
            while (i < src.size() && std::isdigit(static_cast<unsigned char>(src[i]))) {
                t.text += src[i];
                adv();
            }
        } else if (std::string("(),;:{}+-*/@").find(c) != std::string::npos) {
            t.text = std::string(1, c);
            adv();
        } else {
            throw ParseError(line, col, std::string("unexpected character '") + c + "'");
        }
        out.push_back(std::move(t));
    }
    out.push_back({Tok::End, "", line, col});
    return out;
}

class Parser {
public:
    Parser(const std::string& src, const Presentation* ctx = nullptr) : toks_(lex(src)), ctx_(ctx) {}

    Presentation presentation() {
        Presentation p;
        expect_word("operad");
        p.name = ident("operad name");
        expect("{");
        ctx_ = &p;
        bool colors_declared = false;
        while (!peek_is("}")) {
            const Token& t = peek();
            if (t.kind != Tok::Ident) throw err(t, "expected 'colors', 'gen' or 'rel'");
            if (t.text == "colors") {
                next();
                colors_declared = true;
                p.colors.push_back(ident("color name"));
                while (accept(",")) p.colors.push_back(ident("color name"));
                expect(";");
            } else if (t.text == "gen") {
                next();
                Generator g;
                const Token& at = peek();
                g.name = ident("generator name");
                if (accept("@")) {
                    g.color = ident("color name");
                    if (colors_declared) {
                        bool ok = false;
                        for (const auto& c : p.colors) ok = ok || c == g.color;
                        if (!ok) throw err(at, "undeclared color '" + g.color + "'");
                    } else {
                        bool seen = false;
                        for (const auto& c : p.colors) seen = seen || c == g.color;
                        if (!seen) p.colors.push_back(g.color);
                    }
                }
                if (p.find(g.name, g.color)) throw err(at, "duplicate generator '" + g.full() + "'");
                expect(":");
                const Token& nt = peek();
                if (nt.kind != Tok::Number) throw err(nt, "expected arity");
                g.arity = std::stoi(next().text);
                if (g.arity < 1) throw err(nt, "arity must be at least 1");
                g.sym = Sym::Regular;
                if (peek().kind == Tok::Ident) {
                    const Token& st = next();
                    if (st.text == "symmetric") g.sym = Sym::Symmetric;
                    else if (st.text == "antisymmetric") g.sym = Sym::Antisymmetric;
                    else if (st.text == "regular") g.sym = Sym::Regular;
                    else throw err(st, "unknown symmetry '" + st.text + "'");
                }
                if (g.arity == 1) g.sym = Sym::Symmetric;
                expect(";");
                p.gens.push_back(g);
            } else if (t.text == "rel") {
                next();
                Relation r;
                if (peek().kind == Tok::Ident && toks_[pos_ + 1].text == ":") {
                    r.name = next().text;
                    next();
                } else {
                    r.name = "r" + std::to_string(p.rels.size() + 1);
                }
                for (const auto& q : p.rels)
                    if (q.name == r.name) throw err(t, "duplicate relation name '" + r.name + "'");
                r.poly = expr();
                expect(";");
                p.rels.push_back(std::move(r));
            } else {
                throw err(t, "expected 'colors', 'gen' or 'rel'");
            }
        }
        expect("}");
        if (peek().kind != Tok::End) throw err(peek(), "trailing input");
        return p;
    }

    TreePoly expr() {
        const Token& start = peek();
        TreePoly f;
        int n = -1, m = -1;
        Rational sign = 1;
        if (accept("-")) sign = -1;
        else accept("+");
        while (true) {
            const Token& tt = peek();
            Rational c = coeff();
            Tree t = tree();
            const Token& after = peek();
            try {
                check_leaves(t);
            } catch (const std::invalid_argument& e) {
                throw err(tt, e.what());
            }
            const int tn = t.arity(), tm = t.weight();
            if (n < 0) {
                n = tn;
                m = tm;
            } else if (tn != n) {
                throw err(tt, "non-homogeneous relation: arities " + std::to_string(n) + " vs " + std::to_string(tn));
            } else if (tm != m) {
                throw err(tt, "non-homogeneous relation: weights " + std::to_string(m) + " vs " + std::to_string(tm));
            }
            (void)after;
            f.add_raw(t, sign * c);
            if (accept("+")) sign = 1;
            else if (accept("-")) sign = -1;
            else break;
        }
        if (f.empty()) throw err(start, "relation is zero");
        return f;
    }

    Tree tree() {
        const Token& t = peek();
        if (t.kind == Tok::Number) {
            next();
            return Tree::make_leaf(std::stoi(t.text));
        }
        if (t.kind != Tok::Ident) throw err(t, "expected a tree");
        next();
        std::string color;
        if (accept("@")) color = ident("color name");
        const Generator* g = ctx_ ? ctx_->find(t.text, color) : nullptr;
        if (!g) throw err(t, "unknown symbol '" + (color.empty() ? t.text : t.text + "@" + color) + "'");
        expect("(");
        std::vector<Tree> ks;
        ks.push_back(tree());
        while (accept(",")) ks.push_back(tree());
        expect(")");
        if (static_cast<int>(ks.size()) != g->arity)
            throw err(t, "arity mismatch: '" + g->full() + "' has arity " + std::to_string(g->arity) + ", got " +
                             std::to_string(ks.size()) + " children");
        return Tree::node(Dec{g->name, g->color, {}, g->sym}, std::move(ks));
    }

    bool at_end() const { return toks_[pos_].kind == Tok::End; }

private:
    Rational coeff() {
        const Token& t = peek();
        if (t.kind != Tok::Number) return 1;
        const Token& t1 = toks_[pos_ + 1];
        const bool is_coeff = t1.text == "/" || t1.text == "*" || t1.kind == Tok::Ident;
        if (!is_coeff) return 1;
        next();
        Rational c(t.text);
        if (accept("/")) {
            const Token& d = peek();
            if (d.kind != Tok::Number) throw err(d, "expected denominator");
            next();
            if (d.text.find_first_not_of('0') == std::string::npos) throw err(d, "zero denominator");
            c /= Rational(d.text);
        }
        accept("*");
        return c;
    }

    const Token& peek() const { return toks_[pos_]; }
    const Token& next() { return toks_[pos_ < toks_.size() - 1 ? pos_++ : pos_]; }
    bool peek_is(const std::string& s) const { return toks_[pos_].kind == Tok::Punct && toks_[pos_].text == s; }
    bool accept(const std::string& s) {
        if (!peek_is(s)) return false;
        ++pos_;
        return true;
    }
    void expect(const std::string& s) {
        if (!accept(s)) throw err(peek(), "expected '" + s + "'" + found());
    }
    void expect_word(const std::string& w) {
        const Token& t = peek();
        if (t.kind != Tok::Ident || t.text != w) throw err(t, "expected '" + w + "'" + found());
        next();
    }
    std::string ident(const char* what) {
        const Token& t = peek();
        if (t.kind != Tok::Ident) throw err(t, std::string("expected ") + what + found());
        return next().text;
    }
    std::string found() const {
        const Token& t = peek();
        return t.kind == Tok::End ? " at end of input" : ", found '" + t.text + "'";
    }
    static ParseError err(const Token& t, const std::string& what) { return ParseError(t.line, t.col, what); }

    std::vector<Token> toks_;
    std::size_t pos_ = 0;
    const Presentation* ctx_;
};

}  // namespace dsl

inline Presentation parse(const std::string& text) { return dsl::Parser(text).presentation(); }

// a polynomial in the generators of p, e.g. "m(m(1,2),3) - m(1,m(2,3))"
inline TreePoly parse_poly(const std::string& text, const Presentation& p) {
    dsl::Parser ps(text, &p);
    auto f = ps.expr();
    if (!ps.at_end()) throw ParseError(0, 0, "trailing input in polynomial");
    return f;
}

inline Tree parse_tree(const std::string& text, const Presentation& p) {
    dsl::Parser ps(text, &p);
    auto t = ps.tree();
    if (!ps.at_end()) throw ParseError(0, 0, "trailing input in tree");
    return canonicalize(t).tree;
}

// --------------------------------------------------------------- rendering

inline std::string render_generator(const Generator& g) {
    std::string s = "gen " + g.full() + ":" + std::to_string(g.arity);
    if (g.arity >= 2 && g.sym != Sym::Regular) s += std::string(" ") + sym_name(g.sym);
    return s + ";";
}

inline std::string render(const Presentation& p) {
    std::ostringstream os;
    os << "operad " << p.name << " {\n";
    if (!p.colors.empty()) {
        os << "  colors ";
        for (std::size_t i = 0; i < p.colors.size(); ++i) os << (i ? ", " : "") << p.colors[i];
        os << ";\n";
    }
    for (const auto& g : p.gens) os << "  " << render_generator(g) << "\n";
    for (const auto& r : p.rels) os << "  rel " << r.name << ": " << render(r.poly) << ";\n";
    os << "}\n";
    return os.str();
}

inline nlohmann::ordered_json rational_json(const mpz_class& z) {
    if (z.fits_slong_p()) return z.get_si();
    return z.get_str();
}

inline nlohmann::ordered_json poly_json(const TreePoly& f) {
    auto arr = nlohmann::ordered_json::array();
    for (const auto& [t, c] : f.terms())
        arr.push_back({rational_json(c.get_num()), rational_json(c.get_den()), render(t)});
    return arr;
}

inline nlohmann::ordered_json to_json(const Presentation& p) {
    nlohmann::ordered_json j;
    j["name"] = p.name;
    j["colors"] = p.colors;
    auto gens = nlohmann::ordered_json::array();
    for (const auto& g : p.gens) {
        nlohmann::ordered_json gj;
        gj["name"] = g.name;
        if (!g.color.empty()) gj["color"] = g.color;
        gj["arity"] = g.arity;
        gj["symmetry"] = sym_name(g.sym);
        gens.push_back(gj);
    }
    j["generators"] = gens;
    auto names = nlohmann::ordered_json::array();
    auto rels = nlohmann::ordered_json::array();
    for (const auto& r : p.rels) {
        names.push_back(r.name);
        rels.push_back(poly_json(r.poly));
    }
    j["relation_names"] = names;
    j["relations"] = rels;
    return j;
}

// ---------------------------------------------------------------- closure

inline Component component(const Presentation& p, int n, int m) { return Component(p.gens, n, m); }

inline RowSpace closed_relations(const Presentation& p, const Component& comp) {
    std::vector<TreePoly> fs;
    for (const auto& r : p.rels)
        if (r.poly.arity() == comp.arity() && r.poly.weight() == comp.weight()) fs.push_back(r.poly);
    return closed_span(comp, fs);
}

inline std::vector<Vector> relation_component(const Presentation& p, int n, int m) {
    auto comp = component(p, n, m);
    return closed_relations(p, comp).basis();
}

// spanning set of the S_n-module generated by homogeneous relations
inline std::vector<TreePoly> s_closure(const std::vector<TreePoly>& rels, const std::vector<Generator>& gens) {
    std::set<std::pair<int, int>> degs;
    for (const auto& r : rels)
        if (!r.empty()) degs.insert({r.arity(), r.weight()});
    std::vector<TreePoly> out;
    for (auto [n, m] : degs) {
        Component comp(gens, n, m);
        std::vector<TreePoly> fs;
        for (const auto& r : rels)
            if (r.arity() == n && r.weight() == m) fs.push_back(r);
        const auto rs = closed_span(comp, fs);
        for (const auto& v : rs.basis()) out.push_back(comp.poly(v));
    }
    return out;
}

inline std::vector<TreePoly> s_closure(const Presentation& p) { return s_closure(p.relation_polys(), p.gens); }

// Greedy subset of fs whose S_n-closure equals that of fs.
inline std::vector<TreePoly> orbit_representatives(const Component& comp, const std::vector<TreePoly>& fs) {
    std::vector<TreePoly> reps;
    RowSpace acc(comp.dim());
    for (const auto& f : fs) {
        if (acc.contains(comp.vec(f))) continue;
        reps.push_back(f);
        acc = closed_span(comp, reps);
    }
    return reps;
}

// relations from spans: one representative family per component
inline std::vector<Relation> relations_from_spans(const std::vector<std::pair<Component, std::vector<Vector>>>& parts,
                                                  bool reduce_orbits = true) {
    std::vector<Relation> out;
    for (const auto& [comp, vs] : parts) {
        std::vector<TreePoly> fs;
        for (const auto& v : vs) fs.push_back(comp.poly(v));
        if (reduce_orbits) fs = orbit_representatives(comp, fs);
        for (auto& f : fs) out.push_back({"r" + std::to_string(out.size() + 1), std::move(f)});
    }
    return out;
}

}  // namespace operad
