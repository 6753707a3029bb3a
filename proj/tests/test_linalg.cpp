#include "doctest.h"

#include <random>

#include "smoothset/linalg.hpp"

using namespace smoothset;

namespace {

IntegerMatrix int_matrix(std::initializer_list<std::initializer_list<long>> rows) {
    IntegerMatrix m(rows.size(), rows.begin()->size());
    std::size_t i = 0;
    for (auto r : rows) {
        std::size_t j = 0;
        for (long v : r) m(i, j++) = v;
        ++i;
    }
    return m;
}

}  // namespace

TEST_CASE("rank and kernel of a small rational matrix") {
    RationalMatrix m = to_rational(int_matrix({{1, 2, 3}, {2, 4, 6}, {1, 0, 1}}));
    CHECK(rank(m) == 2);
    RationalMatrix k = kernel_basis(m);
    REQUIRE(k.rows() == 1);
    CHECK(is_zero(multiply(m, k.row(0))));
}

TEST_CASE("elementary divisors") {
    CHECK(elementary_divisors(int_matrix({{2, 0}, {0, 3}})) == std::vector<Integer>{1, 6});
    CHECK(elementary_divisors(int_matrix({{2, 4, 4}, {-6, 6, 12}, {10, -4, -16}})) == std::vector<Integer>{2, 6, 12});
    CHECK(elementary_divisors(int_matrix({{0, 0}, {0, 0}})).empty());
}

TEST_CASE("elementary divisor product matches |det| on random nonsingular matrices") {
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<int> entry(-5, 5);
    for (int trial = 0; trial < 40; ++trial) {
        IntegerMatrix m(4, 4);
        for (std::size_t i = 0; i < 4; ++i)
            for (std::size_t j = 0; j < 4; ++j) m(i, j) = entry(rng);
        // determinant via exact rational elimination
        RationalMatrix r = to_rational(m);
        Rational det = 1;
        bool singular = false;
        for (std::size_t c = 0; c < 4 && !singular; ++c) {
            std::size_t p = c;
            while (p < 4 && r(p, c) == 0) ++p;
            if (p == 4) { singular = true; break; }
            if (p != c) {
                for (std::size_t j = 0; j < 4; ++j) std::swap(r(p, j), r(c, j));
                det = -det;
            }
            det *= r(c, c);
            for (std::size_t i = c + 1; i < 4; ++i) {
                Rational f = r(i, c) / r(c, c);
                for (std::size_t j = c; j < 4; ++j) r(i, j) -= f * r(c, j);
            }
        }
        auto d = elementary_divisors(m);
        if (singular) {
            CHECK(d.size() < 4);
            continue;
        }
        REQUIRE(d.size() == 4);
        Integer prod = 1;
        for (std::size_t i = 0; i < d.size(); ++i) {
            prod *= d[i];
            if (i + 1 < d.size()) CHECK(d[i + 1] % d[i] == 0);
        }
        CHECK(Rational(prod) == abs(det));
    }
}

TEST_CASE("triplet round trip") {
    RationalMatrix m(2, 3);
    m(0, 1) = Rational(-3, 4);
    m(1, 2) = 5;
    CHECK(read_triplets(write_triplets(m)) == m);
    CHECK(write_triplets(m) == "2 3 2\n0 1 -3/4\n1 2 5\n");
}

TEST_CASE("parse_rational") {
    CHECK(parse_rational("-6/4") == Rational(-3, 2));
    CHECK(parse_rational("+7") == 7);
    CHECK_THROWS(parse_rational("1/0"));
    CHECK_THROWS(parse_rational("x"));
}
