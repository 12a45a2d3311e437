#pragma once

#include "operad/koszul.hpp"

#include <array>
#include <map>
#include <string>
#include <tuple>
#include <vector>

namespace operad {

namespace detail {

inline int action_sign(Sym s) { return s == Sym::Antisymmetric ? -1 : 1; }

// mu(X, Y) for a basis decoration mu, written as a raw tree
inline Tree apply_dec(const Dec& mu, Tree x, Tree y) {
    Dec d = mu;
    const bool flip = d.flipped();
    d.perm.clear();
    return flip ? Tree::node(d, {std::move(y), std::move(x)}) : Tree::node(d, {std::move(x), std::move(y)});
}

inline Dec flip_dec(Dec d) {
    d.perm = {1, 0};
    return d;
}

}  // namespace detail

// the three coset slots (a,b,c) of mu(nu(a,b),c)
inline const std::vector<std::array<int, 3>>& manin_slots() {
    static const std::vector<std::array<int, 3>> s = {{1, 2, 3}, {2, 3, 1}, {3, 1, 2}};
    return s;
}

struct FrameEntry {
    int slot;
    Dec outer, inner;
    int sign;  // canonical basis tree = sign * frame monomial
};

// arity-3 weight-2 basis of binary generators in the slot frame
class SlotFrame {
public:
    explicit SlotFrame(const std::vector<Generator>& gens) : comp_(gens, 3, 2) {
        for (const auto& g : gens)
            if (g.arity != 2) throw std::invalid_argument("manin: generator " + g.full() + " is not binary");
        std::vector<Dec> decs;
        for (const auto& g : gens)
            for (auto& d : decoration_basis(g)) decs.push_back(d);
        entries_.resize(comp_.dim());
        std::vector<bool> hit(comp_.dim(), false);
        for (int s = 0; s < 3; ++s) {
            const auto& sl = manin_slots()[static_cast<std::size_t>(s)];
            for (const auto& mu : decs)
                for (const auto& nu : decs) {
                    auto raw = detail::apply_dec(mu, detail::apply_dec(nu, Tree::make_leaf(sl[0]), Tree::make_leaf(sl[1])),
                                                 Tree::make_leaf(sl[2]));
                    auto c = canonicalize(raw);
                    auto i = comp_.index(c.tree);
                    if (hit[i]) throw std::logic_error("slot frame is not a basis");
                    hit[i] = true;
                    entries_[i] = {s, mu, nu, c.sign};
                }
        }
    }

    const Component& component() const { return comp_; }
    const FrameEntry& entry(std::size_t i) const { return entries_[i]; }
    std::size_t dim() const { return comp_.dim(); }

private:
    Component comp_;
    std::vector<FrameEntry> entries_;
};

// Tensor products of binary generators and their basis decorations. With
// twist the product module is M (x) N (x) sgn (black product, Lie is the unit);
// without it the plain M (x) N (white product, Com is the unit).
class ProductGenerators {
public:
    ProductGenerators(const std::vector<Generator>& a, const std::vector<Generator>& b, bool twist) : twist_(twist) {
        for (const auto& g : a)
            for (const auto& h : b) add(g, h);
    }

    const std::vector<Generator>& gens() const { return gens_; }

    // mu (x) nu = sign * product decoration
    std::pair<int, Dec> product(const Dec& mu, const Dec& nu) const {
        auto it = table_.find({mu.key(), nu.key()});
        if (it == table_.end()) throw std::logic_error("manin: no product decoration");
        return it->second;
    }

    // inverse: product decoration -> (sign, mu, nu) with decoration = sign * mu (x) nu
    const std::tuple<int, Dec, Dec>& factor(const Dec& d) const {
        auto it = inverse_.find(d.key());
        if (it == inverse_.end()) throw std::logic_error("manin: unknown product decoration");
        return it->second;
    }

private:
    using K = std::tuple<std::string, std::string, std::vector<int>>;

    static std::string join_colors(const std::string& x, const std::string& y) {
        if (x.empty()) return y;
        if (y.empty()) return x;
        return x + "." + y;
    }

    void put(const Dec& mu, const Dec& nu, int sign, const Dec& d) {
        table_[{mu.key(), nu.key()}] = {sign, d};
        inverse_[d.key()] = {sign, mu, nu};
    }

    void add(const Generator& g, const Generator& h) {
        const bool rg = g.sym == Sym::Regular, rh = h.sym == Sym::Regular;
        const int t = twist_ ? -1 : 1;
        Generator G{g.name + "_" + h.name, join_colors(g.color, h.color), 2, Sym::Regular};
        auto gb = decoration_basis(g), hb = decoration_basis(h);
        if (!rg && !rh) {
            G.sym = t * detail::action_sign(g.sym) * detail::action_sign(h.sym) > 0 ? Sym::Symmetric : Sym::Antisymmetric;
            gens_.push_back(G);
            put(gb[0], hb[0], 1, decoration_basis(G)[0]);
            return;
        }
        gens_.push_back(G);
        const auto base = decoration_basis(G);
        // (g (x) h).(12) = t * (g.(12)) (x) (h.(12)) defines G'
        if (rg && !rh) {
            put(gb[0], hb[0], 1, base[0]);
            put(gb[1], hb[0], t * detail::action_sign(h.sym), base[1]);
            return;
        }
        if (!rg && rh) {
            put(gb[0], hb[0], 1, base[0]);
            put(gb[0], hb[1], t * detail::action_sign(g.sym), base[1]);
            return;
        }
        Generator G2 = G;
        G2.name += "_t";
        gens_.push_back(G2);
        const auto base2 = decoration_basis(G2);
        put(gb[0], hb[0], 1, base[0]);
        put(gb[1], hb[1], t, base[1]);
        put(gb[0], hb[1], 1, base2[0]);
        put(gb[1], hb[0], t, base2[1]);
    }

    bool twist_;
    std::vector<Generator> gens_;
    std::map<std::pair<K, K>, std::pair<int, Dec>> table_;
    std::map<K, std::tuple<int, Dec, Dec>> inverse_;
};

inline void check_binary_quadratic(const Presentation& p) {
    if (!p.binary()) throw std::invalid_argument("manin: " + p.name + " has non-binary generators");
    if (!p.quadratic()) throw std::invalid_argument("manin: " + p.name + " is not quadratic");
}

inline Presentation product_shell(const Presentation& p, const Presentation& q, const ProductGenerators& pg,
                                  const std::string& op) {
    Presentation out;
    out.name = p.name + "_" + op + "_" + q.name;
    out.gens = pg.gens();
    std::set<std::string> cs;
    for (const auto& g : out.gens)
        if (!g.color.empty()) cs.insert(g.color);
    out.colors.assign(cs.begin(), cs.end());
    return out;
}

// twist = false computes over the untwisted generators M (x) N shared with the white product
inline Presentation black_product(const Presentation& p, const Presentation& q, bool twist = true) {
    check_binary_quadratic(p);
    check_binary_quadratic(q);
    SlotFrame fp(p.gens), fq(q.gens);
    ProductGenerators pg(p.gens, q.gens, twist);
    Presentation out = product_shell(p, q, pg, "black");
    Component comp(out.gens, 3, 2);
    const auto R = closed_relations(p, fp.component());
    const auto S = closed_relations(q, fq.component());
    RowSpace acc(comp.dim());
    for (const auto& r : R.basis())
        for (const auto& s : S.basis()) {
            TreePoly f;
            for (std::size_t i = 0; i < r.size(); ++i) {
                if (sgn(r[i]) == 0) continue;
                const auto& a = fp.entry(i);
                for (std::size_t j = 0; j < s.size(); ++j) {
                    if (sgn(s[j]) == 0) continue;
                    const auto& b = fq.entry(j);
                    if (a.slot != b.slot) continue;
                    auto [so, outer] = pg.product(a.outer, b.outer);
                    auto [si, inner] = pg.product(a.inner, b.inner);
                    const auto& sl = manin_slots()[static_cast<std::size_t>(a.slot)];
                    auto raw = detail::apply_dec(outer, detail::apply_dec(inner, Tree::make_leaf(sl[0]), Tree::make_leaf(sl[1])),
                                                 Tree::make_leaf(sl[2]));
                    f.add_raw(raw, r[i] * s[j] * a.sign * b.sign * so * si);
                }
            }
            if (!f.empty()) acc.add(comp.vec(f));
        }
    std::vector<TreePoly> fs;
    for (const auto& v : acc.basis()) fs.push_back(comp.poly(v));
    for (auto& f : orbit_representatives(comp, fs)) out.rels.push_back({"r" + std::to_string(out.rels.size() + 1), f});
    return out;
}

// Phi on the basis of T(M (x) N)(3): column i is a single signed coordinate
// in T(M)(3) (x) T(N)(3), indexed a * dim T(N)(3) + b
struct PhiMap {
    Component product;
    std::vector<std::pair<std::size_t, int>> image;
};

inline PhiMap phi_map(const std::vector<Generator>& a, const std::vector<Generator>& b) {
    SlotFrame fa(a), fb(b);
    ProductGenerators pg(a, b, false);
    PhiMap out{Component(pg.gens(), 3, 2), {}};
    std::map<std::tuple<int, Dec, Dec>, std::size_t> ia, ib;
    for (std::size_t i = 0; i < fa.dim(); ++i) ia[{fa.entry(i).slot, fa.entry(i).outer, fa.entry(i).inner}] = i;
    for (std::size_t i = 0; i < fb.dim(); ++i) ib[{fb.entry(i).slot, fb.entry(i).outer, fb.entry(i).inner}] = i;
    SlotFrame fp(pg.gens());
    for (std::size_t i = 0; i < fp.dim(); ++i) {
        const auto& e = fp.entry(i);
        const auto& [so, mo, no] = pg.factor(e.outer);
        const auto& [si, mi, ni] = pg.factor(e.inner);
        // canonical = e.sign * frame; frame = so*si * (mo(mi) (x) no(ni)); frames = sign * canonical
        const auto x = ia.at({e.slot, mo, mi});
        const auto y = ib.at({e.slot, no, ni});
        const int sign = e.sign * so * si * fa.entry(x).sign * fb.entry(y).sign;
        out.image.push_back({x * fb.dim() + y, sign});
    }
    return out;
}

inline Vector phi_embed(const TreePoly& f, const std::vector<Generator>& a, const std::vector<Generator>& b) {
    auto phi = phi_map(a, b);
    const std::size_t da = Component(a, 3, 2).dim(), db = Component(b, 3, 2).dim();
    Vector out(da * db);
    auto v = phi.product.vec(f);
    for (std::size_t i = 0; i < v.size(); ++i)
        if (sgn(v[i]) != 0) out[phi.image[i].first] += v[i] * phi.image[i].second;
    return out;
}

// standard-dot-product complement of a span
inline std::vector<Vector> std_complement(const RowSpace& rs) {
    if (rs.size() == 0) {
        std::vector<Vector> all;
        for (std::size_t i = 0; i < rs.dim(); ++i) {
            Vector e(rs.dim());
            e[i] = 1;
            all.push_back(e);
        }
        return all;
    }
    return kernel_basis(Matrix::from_rows(rs.basis(), rs.dim()));
}

inline Presentation white_product(const Presentation& p, const Presentation& q) {
    check_binary_quadratic(p);
    check_binary_quadratic(q);
    auto phi = phi_map(p.gens, q.gens);
    ProductGenerators pg(p.gens, q.gens, false);
    Presentation out = product_shell(p, q, pg, "white");
    Component ca(p.gens, 3, 2), cb(q.gens, 3, 2);
    const auto U = std_complement(closed_relations(p, ca));
    const auto W = std_complement(closed_relations(q, cb));
    const auto& comp = phi.product;
    // x lies in Phi^{-1}(R (x) T + T (x) S) iff (u (x) w) . Phi x = 0 for u in R^perp, w in S^perp
    std::vector<Vector> rows;
    for (const auto& u : U)
        for (const auto& w : W) {
            Vector row(comp.dim());
            bool nz = false;
            for (std::size_t i = 0; i < comp.dim(); ++i) {
                auto [k, s] = phi.image[i];
                const auto& x = u[k / cb.dim()];
                const auto& y = w[k % cb.dim()];
                if (sgn(x) != 0 && sgn(y) != 0) {
                    row[i] = x * y * s;
                    nz = true;
                }
            }
            if (nz) rows.push_back(std::move(row));
        }
    std::vector<Vector> ker;
    if (rows.empty()) {
        for (std::size_t i = 0; i < comp.dim(); ++i) {
            Vector e(comp.dim());
            e[i] = 1;
            ker.push_back(e);
        }
    } else {
        ker = kernel_basis(Matrix::from_rows(rows, comp.dim()));
    }
    std::vector<TreePoly> fs;
    for (const auto& v : ker) fs.push_back(comp.poly(v));
    for (auto& f : orbit_representatives(comp, fs)) out.rels.push_back({"r" + std::to_string(out.rels.size() + 1), f});
    return out;
}

// name of the second factor of a product generator: "b_m" -> "m"
inline std::string second_factor(const Generator& g) {
    auto pos = g.name.find('_');
    std::string n = pos == std::string::npos ? g.name : g.name.substr(pos + 1);
    Generator h = g;
    h.name = n;
    return h.full();
}

inline Report verify_product_identity(const Presentation& prod, const Presentation& target) {
    Report rep;
    auto iso = find_isomorphism(prod, target, second_factor);
    rep.pass = iso.has_value();
    rep.data["product"] = prod.name;
    rep.data["target"] = target.name;
    if (iso) rep.data["map"] = map_json(*iso);
    rep.message = iso ? prod.name + " is isomorphic to " + target.name : "no monomial isomorphism found";
    return rep;
}

}  // namespace operad
