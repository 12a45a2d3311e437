#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "operad/builtins.hpp"
#include "operad/manin.hpp"
#include "operad/verify.hpp"

#include <set>

using namespace operad;

namespace {

const auto two = default_colors(2);

int module_dim(const std::vector<Generator>& gens) {
    int d = 0;
    for (const auto& g : gens) d += g.basis_size();
    return d;
}

const std::vector<std::string> binary_quadratic = {"Com", "Lie", "As", "PreLie", "Perm", "Dend", "Leib", "Zinb", "Nov"};

}  // namespace

TEST_CASE("product generators multiply module dimensions") {
    for (const auto& a : binary_quadratic)
        for (const auto& b : binary_quadratic) {
            const auto p = builtin(a), q = builtin(b);
            for (bool twist : {true, false}) {
                ProductGenerators pg(p.gens, q.gens, twist);
                CHECK(module_dim(pg.gens()) == module_dim(p.gens) * module_dim(q.gens));
            }
        }
    // symmetric tensor antisymmetric
    ProductGenerators black(builtin("Com").gens, builtin("Com").gens, true);
    REQUIRE(black.gens().size() == 1);
    CHECK(black.gens()[0].sym == Sym::Antisymmetric);
    ProductGenerators white(builtin("Lie").gens, builtin("Lie").gens, false);
    CHECK(white.gens()[0].sym == Sym::Symmetric);
    CHECK(second_factor(black.gens()[0]) == "m");
}

TEST_CASE("Lie is the unit of the black product, Com of the white") {
    for (const auto& name : binary_quadratic) {
        const auto p = builtin(name);
        CHECK_MESSAGE(verify_product_identity(black_product(builtin("Lie"), p), p).pass, name);
        CHECK_MESSAGE(verify_product_identity(white_product(builtin("Com"), p), p).pass, name);
    }
}

TEST_CASE("black and white products are exchanged by duality") {
    const std::vector<std::pair<std::string, std::string>> pairs = {
        {"Lie", "As"}, {"Com", "As"}, {"PreLie", "Com"}, {"As", "As"}, {"Perm", "Lie"}};
    for (const auto& [a, b] : pairs) {
        const auto p = builtin(a), q = builtin(b);
        auto lhs = koszul_dual(black_product(p, q));
        auto rhs = white_product(koszul_dual(p), koszul_dual(q));
        CHECK_MESSAGE(find_isomorphism(lhs, rhs).has_value(), (a + " " + b).c_str());
    }
}

TEST_CASE("colored product identities") {
    for (const auto* name : {"As", "PreLie", "Com"}) {
        const auto p = builtin(name);
        for (const auto* id : {"black-lin", "white-tot", "black-lmt", "white-lmt"}) {
            VerifyInput in;
            in.p = p;
            in.colors = two;
            CHECK_MESSAGE(run_verify(id, in).status == Status::Pass, (std::string(id) + " " + name).c_str());
        }
    }
}

TEST_CASE("Phi embeds T(M (x) N)(3)") {
    for (const auto& [a, b] : std::vector<std::pair<std::string, std::string>>{{"Com", "As"}, {"Lie", "Dend"}, {"As", "As"}}) {
        const auto p = builtin(a), q = builtin(b);
        auto phi = phi_map(p.gens, q.gens);
        std::set<std::size_t> hit;
        for (auto [k, sign] : phi.image) {
            hit.insert(k);
            CHECK(std::abs(sign) == 1);
        }
        CHECK(hit.size() == phi.product.dim());
        // and phi_embed is linear
        auto basis = phi.product.basis();
        TreePoly f;
        f.add(basis[0], 2);
        f.add(basis.back(), -3);
        auto v = phi_embed(f, p.gens, q.gens);
        auto e0 = phi_embed(TreePoly(basis[0]), p.gens, q.gens), e1 = phi_embed(TreePoly(basis.back()), p.gens, q.gens);
        for (std::size_t i = 0; i < v.size(); ++i) CHECK(v[i] == 2 * e0[i] - 3 * e1[i]);
    }
}

TEST_CASE("small products") {
    const auto lie = builtin("Lie"), as = builtin("As"), com = builtin("Com");
    auto la = black_product(lie, as);
    CHECK(closed_relations(la, component(la, 3, 2)).size() == 6);
    CHECK(la.rels.size() == 1);
    CHECK(white_product(lie, as).rels.empty());
    CHECK(find_isomorphism(koszul_dual(la), white_product(com, as)).has_value());

    // black inside white fails for Com and As
    auto b = black_product(com, as, false), w = white_product(com, as);
    auto rel = compare_spans(b, w).rel;
    CHECK(rel != SpanRelation::Equal);
    CHECK(rel != SpanRelation::Sub);

    Generator t{"t", "", 3, Sym::Regular};
    Presentation bad;
    bad.name = "T";
    bad.gens = {t};
    CHECK_THROWS_AS(black_product(bad, as), std::invalid_argument);
}
