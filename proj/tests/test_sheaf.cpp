#include <doctest.h>

#include "smoothset/errors.hpp"
#include "smoothset/sheaf.hpp"

using namespace smoothset;

namespace {

SiteObject object(const SimplicialSet& x, std::string name, std::vector<std::string> generators) {
    return {std::move(name), closure_of_names(x, generators)};
}

// Two disjoint edges A and B with X = A ⊔ B covered by {A, B}.
std::shared_ptr<const FiniteSite> two_edges() {
    auto x = std::make_shared<const SimplicialSet>(from_simplicial_complex({{0, 1}, {2, 3}}, 1));
    std::vector<SiteObject> objs{object(*x, "A", {"01"}), object(*x, "B", {"23"}), {"X", full_subset(*x)}};
    return std::make_shared<const FiniteSite>(x, objs, std::vector<std::vector<FiniteSite::Cover>>{{}, {}, {{0, 1}}});
}

// Triangle boundary with its edges, vertices, the arc P = 01 ∪ 12, and D = {0, 2}.
std::shared_ptr<const FiniteSite> circle() {
    auto x = std::make_shared<const SimplicialSet>(boundary(2));
    std::vector<SiteObject> objs{object(*x, "v0", {"0"}),       object(*x, "v1", {"1"}),  object(*x, "v2", {"2"}),
                                 object(*x, "e01", {"01"}),     object(*x, "e12", {"12"}), object(*x, "e02", {"02"}),
                                 object(*x, "P", {"01", "12"}), object(*x, "D", {"0", "2"}), {"X", full_subset(*x)}};
    std::vector<std::vector<FiniteSite::Cover>> covers(9);
    covers[8] = {{3, 4, 5}, {6, 5}};
    covers[6] = {{3, 4}};
    covers[7] = {{0, 2}};
    return std::make_shared<const FiniteSite>(x, objs, covers);
}

int id(const FiniteSite& s, const char* name) { return *s.find(name); }

// Presheaf with two sections on X that agree everywhere below it.
Presheaf doubled_top(std::shared_ptr<const FiniteSite> site) {
    const int top = id(*site, "X");
    return make_presheaf(
        site, [&](int u) { return u == top ? std::vector<std::string>{"a", "b"} : std::vector<std::string>{"*"}; },
        [&](int u, int v, const std::string& s) { return u == v ? s : std::string("*"); });
}

}  // namespace

TEST_CASE("site validation") {
    auto x = std::make_shared<const SimplicialSet>(boundary(2));
    std::vector<SiteObject> objs{object(*x, "e01", {"01"}), object(*x, "e12", {"12"}), {"X", full_subset(*x)}};
    // e01 ∩ e12 = {1} is not an object
    CHECK_THROWS_AS(FiniteSite(x, objs, {}), StructuralError);
    objs.push_back(object(*x, "v1", {"1"}));
    CHECK_NOTHROW(FiniteSite(x, objs, {}));
    // {e01, e12} misses the edge 02
    CHECK_THROWS_AS(FiniteSite(x, objs, {{}, {}, {{0, 1}}, {}}), StructuralError);
    SiteObject open{"open", empty_subset(*x)};
    open.cells.member[1][x->at(1, "01")] = true;
    CHECK_THROWS_AS(FiniteSite(x, {open}, {}), StructuralError);
}

TEST_CASE("presheaf validation") {
    auto site = two_edges();
    Presheaf f = constant_presheaf(site, {"0", "1"});
    f.restriction[2][0] = {1, 0};  // a different but coherent restriction
    CHECK_NOTHROW(validate(f));
    f.restriction[2][2] = {1, 0};
    CHECK_THROWS_AS(validate(f), StructuralError);
    Presheaf g = constant_presheaf(site, {"0"});
    g.sections.pop_back();
    CHECK_THROWS_AS(check_status(g), StructuralError);
}

TEST_CASE("constant presheaf on a disconnected object") {
    auto site = two_edges();
    auto f = constant_presheaf(site, {"0", "1"});
    auto st = check_status(f);
    CHECK(st.separated);
    CHECK_FALSE(st.sheaf);
    REQUIRE(st.witness);
    CHECK(st.witness->gluings == 0);
    CHECK(st.witness->family[0] != st.witness->family[1]);
    CHECK(describe(f, *st.witness).find("0 gluings") != std::string::npos);

    auto sh = sheafify(f);
    CHECK(check_status(sh.result).sheaf);
    CHECK(sh.result.size(id(*site, "X")) == 4);
    CHECK(sh.result.size(id(*site, "A")) == 2);
    CHECK_FALSE(sh.quotient_applied);
    CHECK(is_natural(f, sh.result, sh.unit));
}

TEST_CASE("vertex functions and maps to an interval are sheaves") {
    for (auto site : {two_edges(), circle()}) {
        for (const auto& f : {vertex_functions(site, 2), maps_to_simplex(site, 1)}) {
            auto st = check_status(f);
            CHECK(st.sheaf);
            CHECK(st.separated);
            auto sh = sheafify(f);
            CHECK(sh.rounds == 0);
            CHECK(is_isomorphism(f, sh.result, sh.unit));
        }
    }
    auto site = circle();
    CHECK(vertex_functions(site, 2).size(id(*site, "X")) == 8);
    // monotone labelings of the triangle boundary by {0,1}: 000, 001, 011, 111
    CHECK(maps_to_simplex(site, 1).size(id(*site, "X")) == 4);
}

TEST_CASE("sheafified constant presheaf is locally constant") {
    auto site = circle();
    auto f = constant_presheaf(site, {"0", "1", "2"});
    CHECK_FALSE(check_status(f).sheaf);
    auto sh = sheafify(f);
    CHECK(check_status(sh.result).sheaf);
    CHECK(sh.result.size(id(*site, "D")) == 9);
    CHECK(sh.result.size(id(*site, "X")) == 3);
    CHECK(sh.result.size(id(*site, "P")) == 3);
}

TEST_CASE("separated quotient") {
    auto site = two_edges();
    auto f = doubled_top(site);
    auto st = check_status(f);
    CHECK_FALSE(st.separated);
    REQUIRE(st.witness);
    CHECK(st.witness->gluings == 2);
    auto q = separated_quotient(f);
    CHECK(q.result.size(id(*site, "X")) == 1);
    CHECK(is_natural(f, q.result, q.map));
    CHECK(check_status(q.result).separated);
    // idempotent
    auto qq = separated_quotient(q.result);
    CHECK(is_isomorphism(q.result, qq.result, qq.map));
    // already separated: bijective
    auto g = vertex_functions(site, 2);
    auto qg = separated_quotient(g);
    CHECK(is_isomorphism(g, qg.result, qg.map));

    auto sh = sheafify(f);
    CHECK(sh.quotient_applied);
    CHECK(check_status(sh.result).sheaf);
}

TEST_CASE("universal property of sheafification") {
    for (auto site : {two_edges(), circle()}) {
        std::vector<Presheaf> sources{constant_presheaf(site, {"0", "1"}), doubled_top(site), vertex_functions(site, 2)};
        std::vector<Presheaf> sheaves{vertex_functions(site, 2), maps_to_simplex(site, 1), constant_presheaf(site, {"*"})};
        for (const auto& f : sources) {
            auto sh = sheafify(f);
            for (const auto& g : sheaves) {
                REQUIRE(check_status(g).sheaf);
                auto maps = natural_transformations(f, g, 500);
                CHECK_FALSE(maps.empty());
                for (const auto& phi : maps) {
                    REQUIRE(is_natural(f, g, phi));
                    CHECK(count_factorizations(f, sh.result, sh.unit, g, phi) == 1);
                }
            }
        }
    }
}

TEST_CASE("union and intersection of sub-presheaves") {
    auto site = two_edges();
    auto f = vertex_functions(site, 2);
    const int n = site->object_count();
    SubPresheaf g(n), h(n);
    for (int u = 0; u < n; ++u)
        for (const auto& s : f.sections[u]) {
            g[u].push_back(s.find("2=1") == std::string::npos && s.find("3=1") == std::string::npos);
            h[u].push_back(s.find("0=1") == std::string::npos && s.find("1=1") == std::string::npos);
        }
    auto lat = union_intersection(f, g, h);
    for (int u = 0; u < n; ++u)
        for (std::size_t s = 0; s < f.size(u); ++s) {
            CHECK(lat.join[u][s]);
            if (lat.meet[u][s]) CHECK((g[u][s] && h[u][s]));
            if (g[u][s]) CHECK(lat.join[u][s]);
        }
    // the objectwise union is not a sheaf; its sheafification has the size of the join
    SubPresheaf raw = g;
    for (int u = 0; u < n; ++u)
        for (std::size_t s = 0; s < f.size(u); ++s) raw[u][s] = g[u][s] || h[u][s];
    auto sh = sheafify(as_presheaf(f, raw));
    for (int u = 0; u < n; ++u) CHECK(sh.result.size(u) == f.size(u));

    auto same = union_intersection(f, g, g);
    CHECK(same.join == g);
    CHECK(same.meet == g);

    SubPresheaf bad = g;
    bad[id(*site, "A")].assign(f.size(id(*site, "A")), false);
    CHECK_THROWS_AS(union_intersection(f, bad, h), StructuralError);
}
