#include <doctest.h>

#include "smoothset/errors.hpp"
#include "smoothset/homology.hpp"

using namespace smoothset;

namespace {

SimplicialSet rp2() {
    return from_simplicial_complex({{1, 2, 4}, {1, 2, 6}, {1, 3, 5}, {1, 3, 6}, {1, 4, 5},
                                    {2, 3, 4}, {2, 3, 5}, {2, 5, 6}, {3, 4, 6}, {4, 5, 6}},
                                   2);
}

SimplicialSet torus() { return product(sphere_quotient(1, 2), sphere_quotient(1, 2)); }

std::vector<Integer> ints(std::initializer_list<int> v) { return {v.begin(), v.end()}; }

long nondegenerate_euler(const SimplicialSet& x, int top) {
    long chi = 0;
    for (int n = 0; n <= top; ++n) chi += (n % 2 == 0 ? 1 : -1) * static_cast<long>(x.nondegenerate_count(n));
    return chi;
}

}  // namespace

TEST_CASE("boundary of the 3-simplex") {
    auto x = boundary(3);
    auto c = chain_complex(x, Ring::integers);
    CHECK(c.top_degree == 2);
    CHECK(c.boundary[2].rows() == 6);
    CHECK(c.boundary[2].cols() == 4);
    CHECK(rank(c.boundary[2]) == 3);
    auto h = homology(c);
    CHECK(h.betti == std::vector<std::size_t>{1, 0, 1});
    for (auto& t : h.torsion) CHECK(t.empty());
    CHECK(euler_characteristic(h) == 2);
}

TEST_CASE("projective plane has 2-torsion") {
    auto x = rp2();
    CHECK(validate(x).empty());
    CHECK(x.nondegenerate_count(1) == 15);
    auto h = homology(chain_complex(x, Ring::integers));
    CHECK(h.betti == std::vector<std::size_t>{1, 0, 0});
    CHECK(h.torsion[1] == ints({2}));
    CHECK(h.torsion[0].empty());
    auto q = homology(chain_complex(x, Ring::rationals));
    CHECK(q.betti == std::vector<std::size_t>{1, 0, 0});
    CHECK_THROWS_AS(torsion(chain_complex(x, Ring::rationals), 1), ParameterError);
}

TEST_CASE("point and spheres") {
    auto h = homology(chain_complex(point(), Ring::integers));
    CHECK(h.betti == std::vector<std::size_t>{1});
    for (int n = 1; n <= 3; ++n) {
        auto s = sphere_quotient(n);
        auto c = chain_complex(s, Ring::integers);
        CHECK(c.boundary[n].is_zero());
        auto hs = homology(c);
        std::vector<std::size_t> expect(n + 1, 0);
        expect[0] = expect[n] = 1;
        CHECK(hs.betti == expect);
    }
}

TEST_CASE("unnormalized chains agree below the cap") {
    auto x = with_cap(torus(), 2);
    auto hn = homology(chain_complex(x, Ring::integers, Chains::normalized));
    auto hu = homology(chain_complex(x, Ring::integers, Chains::unnormalized));
    REQUIRE(hu.betti.size() == 2);
    CHECK(hu.betti[0] == hn.betti[0]);
    CHECK(hu.betti[1] == hn.betti[1]);
}

TEST_CASE("torus ring") {
    auto x = torus();
    auto h = homology(chain_complex(x, Ring::integers));
    CHECK(h.betti == std::vector<std::size_t>{1, 2, 1});
    auto r = cohomology_ring(x);
    REQUIRE(r.dimension(1) == 2);
    REQUIRE(r.dimension(2) == 1);
    auto ab = r.product(1, 0, 1, 1);
    auto ba = r.product(1, 1, 1, 0);
    CHECK(ab[0] != 0);
    CHECK(ab[0] == -ba[0]);
    CHECK(r.product(1, 0, 1, 0)[0] == 0);
    CHECK(r.product(1, 1, 1, 1)[0] == 0);
    CHECK(ring_axiom_failures(r).empty());
    // Künneth: H^1 has dimension 1+1, H^2 has 1·1
    auto s = cohomology_ring(sphere_quotient(1));
    CHECK(r.dimension(1) == 2 * s.dimension(0) * s.dimension(1));
}

TEST_CASE("two points give orthogonal idempotents") {
    auto x = disjoint_union(point(), point());
    auto r = cohomology_ring(x);
    REQUIRE(r.dimension(0) == 2);
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j) {
            RationalVector e(2);
            if (i == j) e[i] = 1;
            CHECK(r.product(0, i, 0, j) == e);
        }
    CHECK(r.unit == RationalVector{1, 1});
    CHECK(ring_axiom_failures(r).empty());
}

TEST_CASE("euler characteristic matches simplex counts") {
    std::vector<SimplicialSet> corpus{boundary(3), rp2(), torus(), sphere_quotient(2), delta(2), horn(3, 1),
                                      disjoint_union(point(), boundary(2))};
    for (auto& x : corpus) {
        auto h = homology(chain_complex(x, Ring::integers));
        CHECK(euler_characteristic(h) == nondegenerate_euler(x, x.valid_degree_bound()));
    }
}

TEST_CASE("universal coefficients: rational betti equal integral betti") {
    for (auto& x : {rp2(), torus(), boundary(3), sphere_quotient(2)}) {
        auto z = homology(chain_complex(x, Ring::integers));
        auto q = homology(chain_complex(x, Ring::rationals));
        CHECK(z.betti == q.betti);
        CochainComplex cc(x);
        for (int n = 0; n <= cc.top_degree(); ++n) CHECK(cc.dimension(n) == q.betti[n]);
    }
}

TEST_CASE("induced maps are ring homomorphisms and contravariant") {
    auto s1 = std::make_shared<const SimplicialSet>(sphere_quotient(1, 2));
    auto t = std::make_shared<const SimplicialSet>(torus());
    auto pr0 = product_projection(t, s1, s1, 0);
    auto pr1 = product_projection(t, s1, s1, 1);
    auto slice = product_slice(s1, s1, t, 0);
    CochainComplex cs(*s1), ct(*t);

    // f^*(a ∪ b) = f^*a ∪ f^*b on cochain representatives of S^1 pulled to the torus
    for (const auto* f : {&pr0, &pr1}) {
        for (int p = 0; p <= 1; ++p)
            for (int q = 0; p + q <= 1; ++q)
                for (std::size_t i = 0; i < cs.dimension(p); ++i)
                    for (std::size_t j = 0; j < cs.dimension(q); ++j) {
                        auto a = cs.representative(p, i), b = cs.representative(q, j);
                        auto lhs = pullback_cochain(*f, ct, cs, p + q, cs.cup(p, a, q, b));
                        auto rhs = ct.cup(p, pullback_cochain(*f, ct, cs, p, a), q, pullback_cochain(*f, ct, cs, q, b));
                        CHECK(lhs == rhs);
                    }
    }
    // pr0 ∘ slice = id on S^1, so slice^* pr0^* = id in cohomology
    auto composite = compose(pr0, slice);
    for (int n = 0; n <= 1; ++n) {
        auto lhs = induced_map(composite, cs, cs, n);
        auto rhs = induced_map(slice, cs, ct, n) * induced_map(pr0, ct, cs, n);
        CHECK(lhs == rhs);
        CHECK(lhs == RationalMatrix::identity(cs.dimension(n)));
    }
}

TEST_CASE("homotopy invariance through a product with an interval") {
    auto x = std::make_shared<const SimplicialSet>(sphere_quotient(1, 2));
    auto i = std::make_shared<const SimplicialSet>(delta(1, 2));
    auto xi = std::make_shared<const SimplicialSet>(product(*x, *i));
    CochainComplex cx(*x), cxi(*xi);
    auto end0 = product_slice(x, i, xi, 0);
    auto end1 = product_slice(x, i, xi, 1);
    for (int n = 0; n <= 1; ++n) CHECK(induced_map(end0, cx, cxi, n) == induced_map(end1, cx, cxi, n));
    CHECK(homology(chain_complex(*xi, Ring::integers)).betti == std::vector<std::size_t>{1, 1, 0});
}

TEST_CASE("coordinates reject non-cocycles") {
    CochainComplex cc(boundary(2));
    Cochain c(cc.cochain_rank(0));
    c[0] = 1;
    CHECK_THROWS_AS(cc.coordinates(0, c), PreconditionError);
    CHECK(cc.is_coboundary(1, cc.apply_coboundary(0, c)));
}

TEST_CASE("Mayer-Vietoris on the circle") {
    // two arcs of a triangle boundary meeting in two points
    auto x = std::make_shared<const SimplicialSet>(boundary(2));
    std::vector<std::string> na{"01", "12"}, nb{"02"};
    auto a = closure_of_names(*x, na), b = closure_of_names(*x, nb);
    auto seq = mayer_vietoris(x, a, b);
    CHECK(seq.all_exact());
    REQUIRE(seq.connecting_ranks.size() == 1);
    CHECK(seq.connecting_ranks[0] == 1);
    CHECK(seq.nodes[2].dimension == 2);
}

TEST_CASE("Mayer-Vietoris on the 2-sphere and trivial covers") {
    auto x = std::make_shared<const SimplicialSet>(boundary(3));
    std::vector<std::string> star0{"012", "013", "023"}, rest{"123"};
    auto seq = mayer_vietoris(x, closure_of_names(*x, star0), closure_of_names(*x, rest));
    CHECK(seq.all_exact());
    CHECK(seq.connecting_ranks == std::vector<std::size_t>{0, 1});

    auto full = full_subset(*x);
    auto same = mayer_vietoris(x, full, full);
    CHECK(same.all_exact());
    for (auto r : same.connecting_ranks) CHECK(r == 0);

    std::vector<std::string> small{"012"};
    CHECK_THROWS_AS(mayer_vietoris(x, closure_of_names(*x, small), closure_of_names(*x, rest)), PreconditionError);
    CHECK_THROWS_AS(mayer_vietoris(std::make_shared<const SimplicialSet>(nerve(FiniteGroup::cyclic(2), 3)),
                                   full_subset(nerve(FiniteGroup::cyclic(2), 3)),
                                   full_subset(nerve(FiniteGroup::cyclic(2), 3))),
                    PreconditionError);
}

TEST_CASE("corrupted face tables are refused") {
    auto x = boundary(2, 2);
    auto levels = x.levels();
    const auto e = x.at(1, "12");
    std::swap(levels[1].faces[0][e], levels[1].faces[1][e]);
    SimplicialSet bad(levels, false);
    CHECK_THROWS_AS(chain_complex(bad, Ring::integers), StructuralError);
}
