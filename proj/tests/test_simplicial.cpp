#include "doctest.h"

#include <set>

#include "smoothset/errors.hpp"
#include "smoothset/simplicial.hpp"

using namespace smoothset;

namespace {

std::vector<std::size_t> nondeg_counts(const SimplicialSet& x) {
    std::vector<std::size_t> out;
    for (int n = 0; n <= x.cap(); ++n) out.push_back(x.nondegenerate_count(n));
    return out;
}

// Nondegenerate n-simplices of Δp × Δq are strictly increasing chains of length n+1
// in the product poset [p] × [q]; count them by brute force.
std::size_t chain_count(int p, int q, int n) {
    std::size_t count = 0;
    std::vector<std::pair<int, int>> chain;
    auto rec = [&](auto&& self) -> void {
        if (static_cast<int>(chain.size()) == n + 1) {
            ++count;
            return;
        }
        for (int a = 0; a <= p; ++a)
            for (int b = 0; b <= q; ++b) {
                if (!chain.empty()) {
                    auto [pa, pb] = chain.back();
                    if (a < pa || b < pb || (a == pa && b == pb)) continue;
                }
                chain.push_back({a, b});
                self(self);
                chain.pop_back();
            }
    };
    rec(rec);
    return count;
}

std::size_t binomial(int n, int k) {
    std::size_t r = 1;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

}  // namespace

TEST_CASE("standard simplices") {
    SimplicialSet d1 = delta(1);
    CHECK(nondeg_counts(d1) == std::vector<std::size_t>{2, 1});
    SimplicialSet d2 = delta(2);
    CHECK(validate(d2).empty());
    CHECK(d2.name(1, d2.nondegenerate(1)[0]) == "01");
    CHECK(d2.find(2, "012").has_value());
    SimplicialSet d2c = delta(2, 4);
    CHECK(validate(d2c).empty());
    CHECK(d2c.size(4) == 21);  // weakly increasing 5-tuples over {0,1,2}
}

TEST_CASE("horn and sphere quotient") {
    SimplicialSet h = horn(2, 1, 2);
    CHECK(validate(h).empty());
    CHECK(nondeg_counts(h) == std::vector<std::size_t>{3, 2, 0});
    CHECK(h.find(1, "01"));
    CHECK(h.find(1, "12"));
    CHECK_FALSE(h.find(1, "02"));
    CHECK_THROWS_AS(horn(2, 3), ParameterError);

    SimplicialSet s2 = sphere_quotient(2);
    CHECK(validate(s2).empty());
    CHECK(nondeg_counts(s2) == std::vector<std::size_t>{1, 0, 1});
}

TEST_CASE("validation catches a swapped face pair") {
    SimplicialSet d2 = delta(2);
    auto levels = d2.levels();
    SimplexId top = d2.at(2, "012");
    std::swap(levels[2].faces[0][top], levels[2].faces[1][top]);
    SimplicialSet bad(levels, false);
    auto report = validate(bad);
    REQUIRE_FALSE(report.empty());
    bool found = false;
    for (const auto& v : report) found = found || v.identity == "d_i d_j = d_{j-1} d_i";
    CHECK(found);
}

TEST_CASE("dangling face is a structural error, not a violation") {
    auto levels = delta(1).levels();
    levels[1].faces[0][0] = 99;
    SimplicialSet bad(levels, false);
    CHECK_THROWS_AS(validate(bad), StructuralError);
}

TEST_CASE("nerve of Z/2 satisfies the identities") {
    SimplicialSet n = nerve(FiniteGroup::cyclic(2), 3);
    CHECK(validate(n).empty());
    CHECK(n.truncated());
    CHECK(n.size(3) == 8);
    CHECK(nondeg_counts(n) == std::vector<std::size_t>{1, 1, 1, 1});
    CHECK(validate(nerve(FiniteGroup::klein_four(), 3)).empty());
}

TEST_CASE("products") {
    CHECK_THROWS_AS(product(delta(1), delta(1)), ParameterError);
    SimplicialSet sq = product(delta(1, 2), delta(1, 2));
    CHECK(validate(sq).empty());
    CHECK(sq.nondegenerate_count(2) == 2);
    SimplicialSet prism = product(delta(1, 3), delta(2, 3));
    CHECK(prism.nondegenerate_count(3) == 3);
    CHECK_THROWS_AS(product(delta(1, 3), delta(2, 3), 2), ParameterError);
    CHECK(product(delta(1, 3), delta(2, 3), 2, ProductCap::allow_truncation).truncated());

    SimplicialSet y = boundary(2, 2);
    SimplicialSet py = product(point(2), y, 2);
    CHECK(nondeg_counts(py) == nondeg_counts(y));
    for (int n = 1; n <= 2; ++n) CHECK(py.level(n).faces == y.level(n).faces);
}

TEST_CASE("nondegenerate simplices of Δp×Δq match chain enumeration") {
    for (int p = 0; p <= 3; ++p)
        for (int q = 0; q <= 3; ++q) {
            SimplicialSet prod = product(delta(p, p + q), delta(q, p + q));
            CHECK(validate(prod).empty());
            for (int n = 0; n <= p + q; ++n) CHECK(prod.nondegenerate_count(n) == chain_count(p, q, n));
            CHECK(prod.nondegenerate_count(p + q) == binomial(p + q, p));
        }
}

TEST_CASE("product is symmetric up to the swap bijection") {
    const std::vector<std::pair<SimplicialSet, SimplicialSet>> pairs = {
        {delta(1, 3), delta(2, 3)}, {boundary(2, 2), delta(1, 2)}, {sphere_quotient(1, 2), delta(1, 2)}};
    for (const auto& [x, y] : pairs) {
        SimplicialSet xy = product(x, y);
        SimplicialSet yx = product(y, x);
        REQUIRE(xy.cap() == yx.cap());
        auto swap_id = [&](int n, SimplexId s) {
            auto [a, b] = product_components(x, y, n, s);
            return product_pair(x, n, b, a);
        };
        bool ok = true;
        for (int n = 0; n <= xy.cap(); ++n)
            for (SimplexId s = 0; s < static_cast<SimplexId>(xy.size(n)); ++s) {
                if (n > 0)
                    for (int i = 0; i <= n; ++i) ok = ok && swap_id(n - 1, xy.face(n, i, s)) == yx.face(n, i, swap_id(n, s));
                if (n < xy.cap())
                    for (int i = 0; i <= n; ++i)
                        ok = ok && swap_id(n + 1, xy.degeneracy(n, i, s)) == yx.degeneracy(n, i, swap_id(n, s));
            }
        CHECK(ok);
    }
}

TEST_CASE("quotients") {
    SimplicialSet d2 = delta(2);
    SubSet bd = closure_of_names(d2, std::vector<std::string>{"01", "02", "12"});
    CHECK(quotient(d2, bd) == sphere_quotient(2));
    SimplicialSet pt = quotient(d2, full_subset(d2));
    CHECK(nondeg_counts(pt) == std::vector<std::size_t>{1, 0, 0});
    SimplicialSet d1 = delta(1);
    SimplicialSet circle = quotient(d1, closure_of_names(d1, std::vector<std::string>{"0", "1"}));
    CHECK(nondeg_counts(circle) == std::vector<std::size_t>{1, 1});
    CHECK(validate(circle).empty());

    SubSet open = empty_subset(d2);
    open.member[1][d2.at(1, "01")] = true;
    CHECK_THROWS_AS(quotient(d2, open), StructuralError);
}

TEST_CASE("Eilenberg-Zilber decomposition round trips") {
    for (const SimplicialSet& x : {product(delta(1, 3), delta(2, 3)), nerve(FiniteGroup::cyclic(3), 3),
                                   sphere_quotient(2, 4)}) {
        for (int n = 0; n <= x.cap(); ++n)
            for (SimplexId s = 0; s < static_cast<SimplexId>(x.size(n)); ++s) {
                auto d = x.decompose(n, s);
                CHECK_FALSE(x.is_degenerate(d.dim, d.base));
                CHECK(x.apply_surjection(d.dim, d.base, d.surjection) == s);
            }
    }
}

TEST_CASE("restriction and maps") {
    auto x = std::make_shared<const SimplicialSet>(boundary(3));
    SubSet a = closure_of_names(*x, std::vector<std::string>{"012", "013"});
    Restriction r = restrict(x, a);
    CHECK(validate(*r.set).empty());
    CHECK(validate(r.inclusion).empty());
    CHECK(r.set->nondegenerate_count(2) == 2);

    // collapse Δ1 onto a point
    auto d1 = std::make_shared<const SimplicialSet>(delta(1));
    auto pt = std::make_shared<const SimplicialSet>(point(1));
    std::map<SimplexRef, SimplexId> assign{{{0, 0}, 0}, {{0, 1}, 0}, {{1, d1->at(1, "01")}, pt->at(1, "00")}};
    SimplicialMap f = map_from_nondegenerate(d1, pt, assign);
    CHECK(validate(f).empty());

    SimplicialMap id = identity_map(x);
    CHECK(validate(compose(id, r.inclusion)).empty());
}

TEST_CASE("monotone surjections") {
    CHECK(monotone_surjections(3, 1).size() == 3);
    CHECK(monotone_surjections(2, 2) == std::vector<std::vector<int>>{{0, 1, 2}});
}
