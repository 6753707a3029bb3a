#include <doctest.h>

#include <filesystem>

#include "smoothset/errors.hpp"
#include "smoothset/homology.hpp"
#include "smoothset/io.hpp"

using namespace smoothset;

namespace {

const std::filesystem::path fixtures = SMOOTHSET_FIXTURES;

}  // namespace

TEST_CASE("simplicial set files") {
    auto b = load_simplicial_set(fixtures / "boundary3.sset");
    CHECK(b.nondegenerate_count(0) == 4);
    CHECK(b.nondegenerate_count(1) == 6);
    CHECK(b.nondegenerate_count(2) == 4);
    CHECK(homology(chain_complex(b, Ring::integers)).betti == std::vector<std::size_t>{1, 0, 1});

    CHECK(load_simplicial_set(fixtures / "torus.sset") == product(sphere_quotient(1, 2), sphere_quotient(1, 2)));
    CHECK(load_simplicial_set(fixtures / "nerve_z3.sset") == nerve(FiniteGroup::cyclic(3), 3));

    try {
        load_simplicial_set(fixtures / "dangling_face.sset");
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(std::string(e.what()).find("unknown face 'c'") != std::string::npos);
        CHECK(e.line == 11);
    }
    CHECK_THROWS_AS(parse_simplicial_set("smoothset sset 2\nkind complex\nfacet 0\n"), ParseError);
    CHECK_THROWS_AS(parse_simplicial_set("smoothset sset 1\nkind blob\n"), ParseError);
    CHECK_THROWS_AS(parse_simplicial_set("smoothset sset 1\nkind complex\nfacet 0 x\n"), ParseError);
    CHECK_THROWS_AS(load_simplicial_set(fixtures / "missing.sset"), ParseError);
    // d2 s0 ab must be s0 d1 ab = aa.
    CHECK_THROWS_AS(parse_simplicial_set("smoothset sset 1\nkind tables\ncap 2\ntruncated no\n"
                                         "dim 0\na : | aa\nb : | bb\n"
                                         "dim 1\naa : a a | aaa aaa\nbb : b b | bbb bbb\nab : b a | aab abb\n"
                                         "dim 2\naaa : aa aa aa |\nbbb : bb bb bb |\naab : ab ab bb |\nabb : bb ab ab |\n"),
                    StructuralError);

    for (const auto& entry : std::filesystem::directory_iterator(fixtures)) {
        if (entry.path().extension() != ".sset" || entry.path().stem() == "dangling_face") continue;
        CAPTURE(entry.path().filename().string());
        auto x = load_simplicial_set(entry.path());
        const std::string text = serialize(x);
        CHECK(parse_simplicial_set(text) == x);
        CHECK(serialize(parse_simplicial_set(text)) == text);
    }
}

TEST_CASE("map files") {
    auto inc = load_simplicial_map(fixtures / "boundary2_in_delta2.map");
    CHECK(inc.source().nondegenerate_count(1) == 3);
    CHECK(inc.target().nondegenerate_count(2) == 1);
    auto proj = load_simplicial_map(fixtures / "edge_times_bz2_to_bz2.map");
    CHECK(proj.target() == load_simplicial_set(fixtures / "nerve_z2.sset"));
    CHECK(validate(proj).empty());
    auto id = load_simplicial_map(fixtures / "circle_identity.map");
    CHECK(&id.source() == &id.target());
}

TEST_CASE("site files") {
    auto two = load_site(fixtures / "two_edges.site");
    CHECK(two.site->object_count() == 3);
    REQUIRE(two.presheaves.size() == 2);
    CHECK_FALSE(check_status(two.presheaves[0].presheaf).sheaf);
    CHECK(check_status(two.presheaves[1].presheaf).sheaf);

    auto circle = load_site(fixtures / "circle.site");
    REQUIRE(circle.presheaves.size() == 4);
    CHECK(circle.presheaves[3].name == "doubled-top");
    CHECK_FALSE(check_status(circle.presheaves[3].presheaf).separated);
    auto s = sheafify(circle.presheaves[0].presheaf);
    CHECK(s.result.size(*circle.site->find("D")) == 9);

    CHECK_THROWS_AS(parse_site("smoothset site 1\nfacet 0 1\nobject A 01\ncover A B\n"), ParseError);
    CHECK_THROWS_AS(parse_site("smoothset site 1\nfacet 0 1\nobject A 01\nobject V 0\npresheaf F table\nsections A x y\nsections V p q\n"),
                    ParseError);
}

TEST_CASE("bundle and extension files") {
    CHECK(u1_chern_number(parse_u1_bundle(read_file(fixtures / "trivial.u1"))).degree == 0);
    auto unit = parse_u1_bundle(read_file(fixtures / "unit.u1"));
    CHECK(u1_chern_number(unit).degree == 1);
    CHECK(u1_chern_number(parse_u1_bundle(read_file(fixtures / "unit_reversed.u1"))).degree == -1);
    CHECK(parse_u1_bundle(serialize(unit)).triangles[0].connection == unit.triangles[0].connection);
    CHECK(serialize(parse_u1_bundle(serialize(unit))) == serialize(unit));
    CHECK(serialize(unit) == serialize(unit_u1_bundle()));

    auto faces = std::get<FaceExtendInput>(parse_extend(read_file(fixtures / "faces_corner.ext")));
    CHECK(faces.dim == 2);
    CHECK(face_extend(faces.dim, faces.degree, faces.data).form == PolyForm::function(2, Polynomial::coordinate(2, 2)));
    auto horn = std::get<HornFillInput>(parse_extend(read_file(fixtures / "horn_sl2.ext")));
    CHECK(horn.algebra.name == "sl2");
    CHECK_FALSE(horn_incompatibility(horn.n, horn.k, horn.faces));
    auto bad = std::get<HornFillInput>(parse_extend(read_file(fixtures / "horn_incompatible.ext")));
    CHECK(horn_incompatibility(bad.n, bad.k, bad.faces));
    auto ed = std::get<ExtraDegeneracyInput>(parse_extend(read_file(fixtures / "extra_degeneracy.ext")));
    CHECK(ed.points.size() == 4);
    CHECK(ed.samples == 100);

    CHECK_THROWS_AS(parse_extend("smoothset extend 1\nmode horn\nn 2\nk 0\nface 0 0 0 (1; 0; 1)\n"), ParseError);
    CHECK_THROWS_AS(parse_extend("smoothset extend 1\nmode horn\nn 2\nk 0\nalgebra sl2\nface 1 0 0 (1; 0; 1)\n"), ParseError);
    CHECK_THROWS_AS(parse_u1_bundle("smoothset u1bundle 1\ntriangle 0 1 2 1 (1; 0; 1)\n"), ParseError);
}
