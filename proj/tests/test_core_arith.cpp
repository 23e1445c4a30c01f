#include "doctest.h"

#include "kummer/arith.hpp"
#include "kummer/errors.hpp"
#include "kummer/f3.hpp"
#include "kummer/residue.hpp"

#include <random>
#include <set>

using namespace kummer;

namespace {

// All x mod 3^k with x^3 = a mod 3^k, by brute force.
std::set<long> cube_roots_mod(long a, long m) {
    std::set<long> out;
    for (long x = 0; x < m; ++x)
        if ((x * x % m) * x % m == ((a % m) + m) % m) out.insert(x);
    return out;
}

}  // namespace

TEST_SUITE("core-arith") {

TEST_CASE("kernel of small F3 matrices") {
    CHECK(kernel_f3(F3Matrix::identity(2)).empty());
    CHECK(kernel_f3(F3Matrix(1, 3)).size() == 3);

    const auto m = F3Matrix::from_rows({{1, 1, 0}, {0, 0, 1}}, 3);
    const auto k = kernel_f3(m);
    REQUIRE(k.size() == 1);
    // oracle: every vector of F3^3 that m kills
    std::vector<F3Vec> zeros;
    for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b)
            for (int c = 0; c < 3; ++c) {
                F3Vec v{f3(a), f3(b), f3(c)};
                if (f3_is_zero(m.apply(v))) zeros.push_back(v);
            }
    CHECK(zeros.size() == 3);
    CHECK(span_equal(k, zeros, 3));
    CHECK(span_contains(k, F3Vec{1, 2, 0}, 3));
}

TEST_CASE("random kernels are killed by the matrix") {
    std::mt19937_64 rng(11);
    for (int t = 0; t < 200; ++t) {
        const std::size_t r = 1 + rng() % 6, c = 1 + rng() % 8;
        F3Matrix m(r, c);
        for (std::size_t i = 0; i < r; ++i)
            for (std::size_t j = 0; j < c; ++j) m.set(i, j, static_cast<long>(rng() % 3));
        const auto k = kernel_f3(m);
        CHECK(k.size() + m.rank() == c);
        for (const auto& v : k) CHECK(f3_is_zero(m.apply(v)));
    }
}

TEST_CASE("span helpers") {
    const std::vector<F3Vec> a{{1, 0, 0}, {0, 1, 1}}, b{{1, 1, 1}, {0, 2, 2}};
    CHECK(span_equal(a, b, 3));
    CHECK(span_dim(a, 3) == 2);
    CHECK(span_intersection(a, {{0, 0, 1}, {1, 0, 0}}, 3).size() == 1);
    const auto ann = annihilator(a, 3);
    REQUIRE(ann.size() == 1);
    for (const auto& v : a) CHECK(f3_dot(v, ann[0]) == 0);
}

TEST_CASE("hensel lifting") {
    CHECK(hensel_lift_root({-5, 1}, Residue3k(2, 1), 4).value() == 5);
    CHECK(hensel_lift_root({-1, 0, 1}, Residue3k(1, 1), 5).value() == 1);

    // x^3 - 10 has derivative 3x^2 = 0 mod 3, so Newton lifting does not apply.
    CHECK_THROWS_AS(hensel_lift_root({-10, 0, 0, 1}, Residue3k(1, 1), 3), NonSimpleRoot);
    const auto roots = cube_roots_mod(10, 27);
    CHECK(roots == std::set<long>{4, 13, 22});
    CHECK(roots.count(19) == 0);

    // x^2 - 7 mod 3^k: 7 = 1 mod 3, simple root 1
    for (unsigned k = 2; k <= 12; ++k) {
        const auto r = hensel_lift_root({-7, 0, 1}, Residue3k(1, 1), k);
        CHECK(mod(r.value() * r.value() - 7, pow3(k)) == 0);
        CHECK(r.reduce(k - 1) == hensel_lift_root({-7, 0, 1}, Residue3k(1, 1), k - 1));
    }
}

TEST_CASE("teichmuller free part") {
    CHECK(teichmuller_free_part(Residue3k(1, 3)).value() == 1);
    CHECK(teichmuller_free_part(Residue3k(2, 3)).value() == 25);
    CHECK(teichmuller_free_part(Residue3k(10, 3)).value() == 10);

    for (long u = 1; u < 729; ++u) {
        if (u % 3 == 0) continue;
        const auto tu = teichmuller_free_part(Residue3k(u, 6));
        CHECK(mod(tu.value(), 3) == 1);
        for (long v : {2L, 5L, 13L, 728L}) {
            const auto lhs = teichmuller_free_part(Residue3k(u * v, 6));
            CHECK(lhs == tu * teichmuller_free_part(Residue3k(v, 6)));
        }
    }
}

TEST_CASE("log4 inverts powers of 4") {
    for (long a = 0; a < 243; ++a) CHECK(log4(Residue3k(4, 6).pow(a)) == a);
}

TEST_CASE("integer helpers") {
    CHECK(valuation(Integer(162), 3) == 4);
    CHECK(valuation(Rational(2, 27), 3) == -3);
    CHECK(is_squarefree(Integer(-107)));
    CHECK_FALSE(is_squarefree(Integer(9)));
    CHECK(sym_mod(Integer(26), Integer(27)) == -1);
    CHECK(inv_mod(Integer(2), Integer(27)) == 14);
    CHECK(kronecker(Integer(67), Integer(3)) == 1);
}

}
