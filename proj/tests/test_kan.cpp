#include <doctest.h>

#include "smoothset/errors.hpp"
#include "smoothset/kan.hpp"

using namespace smoothset;

namespace {

// Brute-force count of pairs (x0, x2) forming a (2,1)-horn.
std::size_t pairs_for_middle_horn(const SimplicialSet& x) {
    std::size_t count = 0;
    for (SimplexId a = 0; a < static_cast<SimplexId>(x.size(1)); ++a)
        for (SimplexId b = 0; b < static_cast<SimplexId>(x.size(1)); ++b)
            if (x.face(1, 0, b) == x.face(1, 1, a)) ++count;
    return count;
}

}  // namespace

TEST_CASE("horn enumeration") {
    auto edge = delta(1, 2);
    CHECK(enumerate_horns(edge, 2, 1).size() == pairs_for_middle_horn(edge));
    auto pt = point(3);
    for (int n = 1; n <= 3; ++n)
        for (int k = 0; k <= n; ++k) CHECK(enumerate_horns(pt, n, k).size() == 1);

    auto circle = boundary(2, 2);
    for (int k = 0; k <= 2; ++k) {
        Horn h{2, k, {circle.at(1, "12"), circle.at(1, "02"), circle.at(1, "01")}};
        h.faces[k] = -1;
        auto horns = enumerate_horns(circle, 2, k);
        CHECK(std::count_if(horns.begin(), horns.end(), [&](const Horn& g) { return g.faces == h.faces; }) == 1);
        CHECK(fill_horn(circle, h).empty());
    }
    CHECK_THROWS_AS(enumerate_horns(circle, 3, 0), ParameterError);
    CHECK_THROWS_AS(enumerate_horns(circle, 2, 3), ParameterError);
}

TEST_CASE("horn fillers") {
    auto tri = delta(2);
    Horn h{2, 1, {tri.at(1, "12"), -1, tri.at(1, "01")}};
    auto fillers = fill_horn(tri, h);
    REQUIRE(fillers.size() == 1);
    CHECK(tri.name(2, fillers[0]) == "012");

    auto bz2 = nerve(FiniteGroup::cyclic(2), 3);
    for (int k = 0; k <= 2; ++k)
        for (const auto& g : enumerate_horns(bz2, 2, k)) {
            auto f = fill_horn(bz2, g);
            CHECK(f.size() == 1);
            for (SimplexId y : f)
                for (int i = 0; i <= 2; ++i)
                    if (i != k) CHECK(bz2.face(2, i, y) == g.faces[i]);
        }
}

TEST_CASE("fibrancy") {
    for (auto g : {FiniteGroup::cyclic(1), FiniteGroup::cyclic(2), FiniteGroup::cyclic(3), FiniteGroup::cyclic(4),
                   FiniteGroup::klein_four()}) {
        auto r = is_fibrant(nerve(g, 3));
        CHECK(r.fibrant);
        CHECK(r.unique_fillers);
        CHECK(r.checked_up_to == 3);
    }
    auto edge = is_fibrant(delta(1, 2));
    CHECK_FALSE(edge.fibrant);
    REQUIRE(edge.counterexample);
    CHECK(edge.counterexample->n == 2);
    CHECK(edge.counterexample->k == 0);
    CHECK(fill_horn(delta(1, 2), *edge.counterexample).empty());
    CHECK(is_fibrant(point(3)).fibrant);
}

TEST_CASE("fibrations") {
    auto tri = std::make_shared<const SimplicialSet>(delta(2, 2));
    CHECK(is_fibration(identity_map(tri)).fibration);

    auto x = std::make_shared<const SimplicialSet>(delta(1, 3));
    auto bz2 = std::make_shared<const SimplicialSet>(nerve(FiniteGroup::cyclic(2), 3));
    auto prod = std::make_shared<const SimplicialSet>(product(*x, *bz2, 3, ProductCap::allow_truncation));
    auto r = is_fibration(product_projection(prod, x, bz2, 0));
    CHECK(r.fibration);
    CHECK(r.problems > 0);

    std::vector<std::string> edges{"01", "12", "02"};
    auto inc = restrict(tri, closure_of_names(*tri, edges));
    auto bad = is_fibration(inc.inclusion);
    CHECK_FALSE(bad.fibration);
    REQUIRE(bad.counterexample);
    CHECK(bad.counterexample->horn.n == 2);
    CHECK(tri->name(2, bad.counterexample->target) == "012");
}

TEST_CASE("extra degeneracies") {
    auto pt = point(3);
    auto sp = cone_extra_degeneracy(pt, 0);
    auto rp = check_extra_degeneracy(pt, sp);
    CHECK(rp.valid);
    CHECK(rp.acyclic);

    auto edge = delta(1, 3);
    auto s = cone_extra_degeneracy(edge, edge.at(0, "0"));
    auto r = check_extra_degeneracy(edge, s);
    CHECK(r.valid);
    CHECK(r.acyclic);
    CHECK(r.reduced_betti == std::vector<std::size_t>{0, 0, 0});

    auto tet = delta(3);
    CHECK(check_extra_degeneracy(tet, cone_extra_degeneracy(tet, 0)).acyclic);

    auto corrupt = s;
    corrupt.maps[1][edge.at(1, "01")] = edge.at(2, "011");
    auto c = check_extra_degeneracy(edge, corrupt);
    CHECK_FALSE(c.valid);
    REQUIRE(c.simplex);
    CHECK(edge.name(c.simplex->dim, c.simplex->id) == "01");
    CHECK(c.identity->find("d_0") != std::string::npos);

    CHECK_THROWS_AS(cone_extra_degeneracy(boundary(2, 2), 0), ParameterError);
    CHECK_THROWS_AS(check_extra_degeneracy(disjoint_union(point(1), point(1)), ExtraDegeneracy{}), PreconditionError);
}
