#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "operad/builtins.hpp"
#include "operad/compat.hpp"
#include "operad/rewrite.hpp"

#include <random>

using namespace operad;

namespace {

const auto two = default_colors(2);

Tree uncolor(Tree t) {
    std::vector<Tree*> vs;
    t.vertices(vs);
    for (auto v : vs) v->dec.color.clear();
    return t;
}

std::size_t irreducible(const RewriteSystem& rs, const std::vector<Generator>& gens, int n, int m) {
    std::size_t k = 0;
    for (const auto& t : enumerate_basis(gens, n, m)) k += rs.reducible(t) ? 0 : 1;
    return k;
}

std::size_t quotient_dim(const Presentation& p, int n, int m) {
    std::map<std::pair<int, int>, std::vector<TreePoly>> memo;
    return enumerate_basis(p.gens, n, m).size() - ideal_component(p, n, m, memo).size();
}

}  // namespace

TEST_CASE("path order is a total order compatible with the colored refinement") {
    const auto dend = builtin("Dend");
    PathLexOrder ord(dend.gens);
    auto basis = enumerate_basis(dend.gens, 3, 2);
    for (const auto& a : basis) {
        CHECK(ord.compare(a, a) == 0);
        for (const auto& b : basis) {
            CHECK(ord.compare(a, b) == -ord.compare(b, a));
            if (!(a == b)) CHECK(ord.compare(a, b) != 0);
            for (const auto& c : basis)
                if (ord.less(a, b) && ord.less(b, c)) CHECK(ord.less(a, c));
        }
    }

    // on a single color the colored order agrees with the base order
    const auto lmt = leveled_matching(dend, two);
    auto col = ord.colored(lmt.gens, two);
    CHECK(col.letters() == 2 * lmt.gens.size());
    std::vector<Tree> mono;
    for (const auto& t : enumerate_basis(lmt.gens, 3, 2)) {
        std::vector<const Tree*> vs;
        t.vertices(vs);
        bool same = true;
        for (auto v : vs) same = same && v->dec.color == "c0";
        if (same) mono.push_back(t);
    }
    REQUIRE(mono.size() == 48);
    for (const auto& a : mono)
        for (const auto& b : mono) CHECK(col.compare(a, b) == ord.compare(uncolor(a), uncolor(b)));

    CHECK_THROWS_AS(ord.set_letter_ranks({0, 1}), std::invalid_argument);
    CHECK_THROWS_AS(ord.set_primary({true}), std::invalid_argument);
}

TEST_CASE("orient") {
    const auto com = builtin("Com");
    PathLexOrder ord(com.gens);
    auto rules = orient(com, ord);
    CHECK(rules.size() == 2);
    for (const auto& r : rules) {
        CHECK(r.rest.coeff(r.lead) == 0);
        for (const auto& [t, c] : r.rest.terms()) CHECK(ord.less(t, r.lead));
    }
    const auto lmt = leveled_matching(com, two);
    CHECK(orient(lmt, ord.colored(lmt.gens, two)).size() == 8);
}

TEST_CASE("uncolored builtins have confluent path orders") {
    const std::vector<std::tuple<std::string, std::string, std::size_t>> table = {
        {"Com", "m<m'", 1},   {"Lie", "b<b'", 1},   {"As", "m<m'", 1},
        {"PreLie", "m<m'", 1}, {"Perm", "m'<m", 2}, {"Dend", "prec<succ<succ'<prec'", 5},
        {"Leib", "m<m';longer-first", 3}, {"Zinb", "m'<m", 2}, {"Pois", "m<m'<b<b';primary:m", 97}};
    for (const auto& [name, desc, tries] : table) {
        auto s = find_confluent_order(builtin(name));
        REQUIRE_MESSAGE(s.found.has_value(), name);
        CHECK(s.found->order.describe() == desc);
        CHECK(s.tried == tries);
        CHECK(s.found->report.confluent);
    }
    auto nov = find_confluent_order(builtin("Nov"));
    CHECK_FALSE(nov.found.has_value());
    CHECK(nov.tried == 8);
}

TEST_CASE("normal forms") {
    std::mt19937 rng(99);
    for (const auto* name : {"As", "Dend", "PreLie"}) {
        const auto p = builtin(name);
        auto s = find_confluent_order(p);
        REQUIRE(s.found.has_value());
        RewriteSystem rs(s.found->rules, s.found->order);
        // every relation reduces to zero
        for (const auto& r : p.rels) CHECK(rs.normal_form(r.poly).empty());
        // random reduction paths reach one normal form
        auto basis = enumerate_basis(p.gens, 4, 3);
        std::uniform_int_distribution<std::size_t> pick(0, basis.size() - 1);
        for (int trial = 0; trial < 20; ++trial) {
            TreePoly f;
            f.add(basis[pick(rng)], 1);
            f.add(basis[pick(rng)], -2);
            auto nf = rs.normal_form(f);
            for (int k = 0; k < 3; ++k) CHECK(rs.normal_form(f, nullptr, &rng) == nf);
            for (const auto& [t, c] : nf.terms()) CHECK_FALSE(rs.reducible(t));
        }
        // irreducible monomials count the quotient
        CHECK(irreducible(rs, p.gens, 4, 3) == quotient_dim(p, 4, 3));
    }
}

TEST_CASE("a mutilated Com is not confluent") {
    const auto com = builtin("Com");
    PathLexOrder ord(com.gens);
    auto run = run_groebner(com, ord, "m(m(1,2),3)");
    CHECK(run.rules.size() == 1);
    CHECK(run.report.checks.size() == 1);
    CHECK_FALSE(run.report.confluent);
    CHECK(run.report.failures() == 1);
}

TEST_CASE("dimensions") {
    for (int n = 1; n <= 4; ++n) {
        CHECK(component_dimension(builtin("Com"), n).dim == 1);
        std::size_t f = 1;
        for (int i = 2; i <= n; ++i) f *= static_cast<std::size_t>(i);
        CHECK(component_dimension(builtin("As"), n).dim == f);
        CHECK(component_dimension(builtin("Lie"), n).dim == f / static_cast<std::size_t>(n));
    }
    CHECK(component_dimension(total_compat(builtin("Com"), two), 4).dim == 4);
    const std::vector<mpz_class> ones(4, 1);
    CHECK(plethysm_dimension(ones, ones, 4) == 15);
    CHECK(plethysm_dimension({1, 1, 2, 6}, {1, 1, 1, 1}, 3) == 1 + 3 + 2);
    CHECK_THROWS_AS(component_dimension(builtin("Com"), 6), std::invalid_argument);
}

TEST_CASE("the induced order on LMT is not confluent") {
    // critical monomials, failures, quotient and irreducible counts in arity 4 weight 3
    const std::vector<std::tuple<std::string, std::size_t, std::size_t, std::size_t, std::size_t>> table = {
        {"Com", 48, 24, 6, 8}, {"Lie", 8, 4, 46, 48}, {"As", 192, 96, 144, 192}, {"PreLie", 32, 16, 504, 512}};
    for (const auto& [name, crit, fail, quot, irr] : table) {
        const auto p = builtin(name);
        auto base = find_confluent_order(p);
        REQUIRE(base.found.has_value());
        const auto lmt = leveled_matching(p, two);
        auto run = run_groebner(lmt, base.found->order.colored(lmt.gens, two));
        CHECK_MESSAGE(run.report.checks.size() == crit, name);
        CHECK_MESSAGE(run.report.failures() == fail, name);
        RewriteSystem rs(run.rules, run.order);
        CHECK_MESSAGE(quotient_dim(lmt, 4, 3) == quot, name);
        CHECK_MESSAGE(irreducible(rs, lmt.gens, 4, 3) == irr, name);
    }
}
