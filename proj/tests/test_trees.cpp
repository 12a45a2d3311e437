#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "operad/builtins.hpp"

#include <random>

using namespace operad;

namespace {

Tree leaf(int i) { return Tree::make_leaf(i); }
Tree raw(const std::string& name, Sym s, std::vector<Tree> kids) { return Tree::node(Dec{name, "", {}, s}, std::move(kids)); }

TreePoly poly(const std::string& text, const Presentation& p) { return parse_poly(text, p); }

// shuffle trees counted by recursion on the label set, independent of enumerate_basis
mpz_class binom(int n, int k) {
    mpz_class r;
    mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
    return r;
}

mpz_class count_trees(const std::vector<Generator>& gens, int n, int m) {
    if (m == 0) return n == 1 ? 1 : 0;
    mpz_class total = 0;
    for (const auto& g : gens) {
        const int b = g.basis_size();
        if (g.arity == 1) {
            total += b * count_trees(gens, n, m - 1);
        } else if (g.arity == 2) {
            // ordered pairs of complementary blocks, halved
            mpz_class ordered = 0;
            for (int a = 1; a < n; ++a)
                for (int w = 0; w <= m - 1; ++w)
                    ordered += binom(n, a) * count_trees(gens, a, w) * count_trees(gens, n - a, m - 1 - w);
            total += b * ordered / 2;
        }
    }
    return total;
}

TreePoly random_poly(std::mt19937& rng, const std::vector<Generator>& gens, int n, int m) {
    auto basis = enumerate_basis(gens, n, m);
    std::uniform_int_distribution<int> c(-3, 3);
    std::uniform_int_distribution<std::size_t> pick(0, basis.size() - 1);
    TreePoly f;
    for (int k = 0; k < 3; ++k) f.add(basis[pick(rng)], Rational(c(rng)));
    if (f.empty()) f.add(basis[0], 1);
    return f;
}

Perm random_perm(std::mt19937& rng, int n) {
    Perm p = identity_perm(n);
    std::shuffle(p.begin(), p.end(), rng);
    return p;
}

}  // namespace

TEST_CASE("canonicalize under generator symmetries") {
    auto com = canonicalize(raw("m", Sym::Symmetric, {leaf(2), leaf(1)}));
    CHECK(com.sign == 1);
    CHECK(render(com.tree) == "m(1,2)");

    auto lie = canonicalize(raw("b", Sym::Antisymmetric, {leaf(2), leaf(1)}));
    CHECK(lie.sign == -1);
    CHECK(render(lie.tree) == "b(1,2)");

    // regular generator: a distinct basis element, coefficient 1
    auto dend = canonicalize(raw("prec", Sym::Regular, {leaf(2), leaf(1)}));
    CHECK(dend.sign == 1);
    CHECK(dend.tree.dec.flipped());
    CHECK(dend.tree.kids[0].leaf == 1);
    CHECK(render(dend.tree) == "prec(2,1)");
    auto straight = canonicalize(raw("prec", Sym::Regular, {leaf(1), leaf(2)}));
    CHECK_FALSE(straight.tree.dec.flipped());
    CHECK_FALSE(straight.tree == dend.tree);

    // nested: b(3, b(2,1)) = b(b(1,2),3)
    auto nested = canonicalize(raw("b", Sym::Antisymmetric, {leaf(3), raw("b", Sym::Antisymmetric, {leaf(2), leaf(1)})}));
    CHECK(nested.sign == 1);
    CHECK(render(nested.tree) == "b(b(1,2),3)");

    CHECK_THROWS_AS(canonicalize(raw("m", Sym::Symmetric, {leaf(1), leaf(1)})), std::invalid_argument);
    CHECK_THROWS_AS(check_leaves(raw("m", Sym::Symmetric, {leaf(1), leaf(3)})), std::invalid_argument);
}

TEST_CASE("canonicalize is idempotent") {
    const auto dend = builtin("Dend");
    for (const auto& t : enumerate_basis(dend.gens, 3, 2)) {
        auto c = canonicalize(t);
        CHECK(c.sign == 1);
        CHECK(c.tree == t);
    }
    const auto pois = builtin("Pois");
    for (const auto& t : enumerate_basis(pois.gens, 4, 3)) CHECK(canonicalize(t).tree == t);
}

TEST_CASE("act") {
    const auto com = builtin("Com");
    const TreePoly left(parse_tree("m(m(1,2),3)", com));
    CHECK(act(left, identity_perm(3)) == left);

    // leaf i receives label rho^{-1}(i): (123) sends the comb on {1,2} to the comb on {1,3}
    const auto c123 = parse_cycles("(123)", 3);
    CHECK(render(act(left, c123)) == "m(m(1,3),2)");
    CHECK(render(act(left, inverse(c123))) == "m(1,m(2,3))");

    // every relabeling of the left comb lands on one of the three combs
    std::set<std::string> seen;
    for (const auto& r : all_perms(3)) seen.insert(render(act(left, r)));
    CHECK(seen == std::set<std::string>{"m(1,m(2,3))", "m(m(1,2),3)", "m(m(1,3),2)"});

    const auto lie = builtin("Lie");
    const TreePoly br(parse_tree("b(1,2)", lie));
    CHECK(act(br, {2, 1}) == br * Rational(-1));

    CHECK_THROWS_AS(act(left, identity_perm(2)), std::invalid_argument);
}

TEST_CASE("act is a right action and preserves weight") {
    std::mt19937 rng(5);
    for (const auto* name : {"As", "Lie", "Dend", "Pois"}) {
        const auto p = builtin(name);
        for (int trial = 0; trial < 10; ++trial) {
            auto f = random_poly(rng, p.gens, 4, 3);
            auto r = random_perm(rng, 4), s = random_perm(rng, 4);
            CHECK(act(act(f, r), s) == act(f, compose(r, s)));
            auto g = act(f, r);
            CHECK(g.weight() == f.weight());
            if (std::string(name) == "As" || std::string(name) == "Dend") CHECK(g.size() == f.size());
        }
    }
}

TEST_CASE("graft") {
    const auto com = builtin("Com");
    const auto m12 = parse_tree("m(1,2)", com);
    const TreePoly id(leaf(1));
    CHECK(graft(m12, {id, id}) == TreePoly(m12));

    auto g = graft(m12, {TreePoly(m12), id});
    CHECK(render(g) == "m(m(1,2),3)");
    auto basis = enumerate_basis(com.gens, 3, 2);
    CHECK(std::find(basis.begin(), basis.end(), g.lead_storage()) != basis.end());

    // coefficients multiply
    const auto as = builtin("As");
    auto h = graft(parse_tree("m(1,2)", as), {poly("2*m(1,2) - 3*m(2,1)", as), TreePoly(leaf(1)) * Rational(5)});
    CHECK(h.size() == 2);
    CHECK(h.coeff(parse_tree("m(m(1,2),3)", as)) == 10);
    CHECK(h.coeff(parse_tree("m(m(2,1),3)", as)) == -15);
    CHECK(h.weight() == 2);

    CHECK_THROWS_AS(graft(m12, {id}), std::invalid_argument);
}

TEST_CASE("partial compositions satisfy the operad axioms") {
    std::mt19937 rng(17);
    for (const auto* name : {"As", "Lie", "Dend"}) {
        const auto p = builtin(name);
        for (int trial = 0; trial < 20; ++trial) {
            auto f = random_poly(rng, p.gens, 2, 1);
            auto g = random_poly(rng, p.gens, 3, 2);
            auto h = random_poly(rng, p.gens, 2, 1);
            // sequential
            for (int i = 1; i <= 2; ++i)
                for (int j = 1; j <= 3; ++j) CHECK(compose(compose(f, i, g), i + j - 1, h) == compose(f, i, compose(g, j, h)));
            // parallel
            CHECK(compose(compose(f, 1, g), 2 + 3 - 1, h) == compose(compose(f, 2, h), 1, g));
            // unit
            CHECK(compose(f, 1, TreePoly(leaf(1))) == f);
            CHECK(compose(TreePoly(leaf(1)), 1, f) == f);
        }
    }
}

TEST_CASE("enumerate_basis") {
    const auto com = builtin("Com");
    auto c = enumerate_basis(com.gens, 3, 2);
    REQUIRE(c.size() == 3);
    std::vector<std::string> names;
    for (const auto& t : c) names.push_back(render(t));
    CHECK(names == std::vector<std::string>{"m(1,m(2,3))", "m(m(1,2),3)", "m(m(1,3),2)"});

    auto one = enumerate_basis(com.gens, 1, 0);
    REQUIRE(one.size() == 1);
    CHECK(one[0].is_leaf());

    CHECK(enumerate_basis(builtin("As").gens, 3, 2).size() == 12);
    CHECK(enumerate_basis(builtin("As").gens, 4, 3).size() == 120);
    CHECK(enumerate_basis(builtin("Dend").gens, 3, 2).size() == 48);
    CHECK(enumerate_basis(com.gens, 3, 1).empty());

    for (const auto& name : builtin_names()) {
        const auto p = builtin(name);
        for (int n = 1; n <= 4; ++n)
            for (int m = 0; m <= 3; ++m) {
                auto b = enumerate_basis(p.gens, n, m);
                CHECK(mpz_class(b.size()) == count_trees(p.gens, n, m));
                std::set<Tree, TreeLess> uniq(b.begin(), b.end());
                CHECK(uniq.size() == b.size());
            }
    }

    // unary generators count too
    Generator u{"u", "", 1, Sym::Regular}, m{"m", "", 2, Sym::Symmetric};
    CHECK(mpz_class(enumerate_basis({u, m}, 2, 2).size()) == count_trees({u, m}, 2, 2));
    CHECK(enumerate_basis({u, m}, 2, 2).size() == 3);
}

TEST_CASE("coefficient_vector") {
    const auto com = builtin("Com");
    auto basis = enumerate_basis(com.gens, 3, 2);
    CHECK(is_zero(coefficient_vector(TreePoly{}, basis)));
    auto e = coefficient_vector(TreePoly(basis[1]), basis);
    CHECK(e == Vector{0, 1, 0});
    auto r = coefficient_vector(com.rels[0].poly, basis);
    CHECK(r == Vector{-1, 1, 0});
    CHECK_THROWS_AS(coefficient_vector(TreePoly(parse_tree("m(1,2)", com)), basis), std::invalid_argument);
}

TEST_CASE("render and parse round trip") {
    for (const auto& name : builtin_names()) {
        const auto p = builtin(name);
        for (const auto& t : enumerate_basis(p.gens, 3, 2)) CHECK(parse_tree(render(t), p) == t);
    }
}
