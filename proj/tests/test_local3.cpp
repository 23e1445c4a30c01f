#include "doctest.h"

#include "kummer/biquad.hpp"
#include "kummer/errors.hpp"
#include "kummer/local3.hpp"
#include "oracles.hpp"

#include <random>
#include <set>

using namespace kummer;

using namespace oracle;

TEST_SUITE("local3") {

TEST_CASE("completions at 3") {
    const BiquadField F67(Integer(67)), F2(Integer(2));
    const auto p67 = complete_at_3(F67.field());
    REQUIRE(p67.size() == 2);
    for (const auto& v : p67) {
        CHECK(v.e == 2);
        CHECK(v.f == 1);
    }
    const auto p2 = complete_at_3(F2.field());
    REQUIRE(p2.size() == 1);
    CHECK(p2[0].e == 2);
    CHECK(p2[0].f == 2);
    const auto q67 = complete_at_3(TowerField(Integer(67), 1));
    REQUIRE(q67.size() == 2);
    for (const auto& v : q67) {
        CHECK(v.e == 6);
        CHECK(v.f == 1);
    }
}

TEST_CASE("local norms") {
    const BiquadField F(Integer(67));
    const auto& T = F.field();
    const auto places = complete_at_3(T);
    const auto B = sunit_basis(F);
    for (const auto& v : places) {
        const auto n3 = local_norm_to_Q3(T, T.from_rational(3), v);
        CHECK(n3.valuation == 2);
        CHECK(n3.teichmuller == 1);
        CHECK(n3.principal.value() == 1);
        const auto nz = local_norm_to_Q3(T, F.omega(), v);
        CHECK(nz.valuation == 0);
        CHECK(nz.unit.value() == 1);
        const auto ne = local_norm_to_Q3(T, B.free_generators[1].value, v);
        CHECK(ne.valuation == 0);
    }
    // the two local norms of eps multiply to its global norm 1
    const auto a = local_norm_to_Q3(T, B.free_generators[1].value, places[0]);
    const auto b = local_norm_to_Q3(T, B.free_generators[1].value, places[1]);
    const unsigned k = std::min(a.unit.precision(), b.unit.precision());
    CHECK((a.unit.reduce(k) * b.unit.reduce(k)).value() == 1);
}

TEST_CASE("everywhere-local universal norm test") {
    const BiquadField F(Integer(67));
    const auto& T = F.field();
    const auto places = complete_at_3(T);
    const auto B = sunit_basis(F);
    CHECK(uhat_test(T, T.from_rational(3), places, 1));
    CHECK(uhat_test(T, T.from_rational(3), places, 2));
    CHECK(uhat_test(T, B.free_generators[1].value, places, 1));
    CHECK_FALSE(uhat_test(T, B.free_generators[1].value, places, 2));
    CHECK_FALSE(uhat_test(T, B.free_generators[2].value, places, 1));
}

TEST_CASE("cube classes in Q_3") {
    const auto Q = LocalField::rationals(6);
    CHECK(Q.cube_class_dim() == 2);
    CHECK(f3_is_zero(Q.cube_class(Q.from_integer(8))));
    CHECK(f3_is_zero(Q.cube_class(Q.from_integer(10))));
    CHECK_FALSE(f3_is_zero(Q.cube_class(Q.from_integer(4))));
}

TEST_CASE("cube classes agree with exhaustive cubing mod 3^4") {
    SUBCASE("Q_3") {
        const auto Q = LocalField::rationals(8);
        std::vector<F3Vec> cls(243);
        for (long x = 1; x < 243; ++x) {
            cls[x] = Q.cube_class(Q.from_integer(x));
            CHECK(f3_is_zero(cls[x]) == rational_is_cube(x));
        }
        for (long x = 1; x < 81; ++x)
            for (long y = 1; y < 81; ++y) CHECK((cls[x] == cls[y]) == rational_is_cube(x * y * y));
    }
    SUBCASE("e = 2, f = 1") {
        const BiquadField F(Integer(67));
        const auto& T = F.field();
        const LocalField L(complete_at_3(T, 8)[0]);
        REQUIRE(L.e() == 2);
        REQUIRE(L.f() == 1);
        CHECK(L.cube_class_dim() == 4);
        std::size_t checked = 0;
        for (long a = 0; a < 81; ++a)
            for (long b = 0; b < 81; ++b) {
                if (a == 0 && b == 0) continue;
                const auto x = L.embed(F.from_coords(a, b, 0, 0));
                CHECK(f3_is_zero(L.cube_class(x)) == eisenstein_is_cube(a, b));
                ++checked;
            }
        CHECK(checked == 6560);
        std::mt19937_64 rng(17);
        for (int t = 0; t < 3000; ++t) {
            const long a = rng() % 81, b = rng() % 81, c = rng() % 81, e = rng() % 81;
            if ((a + b) % 3 == 0 || (c + e) % 3 == 0) continue;
            const auto x = L.embed(F.from_coords(a, b, 0, 0)), y = L.embed(F.from_coords(c, e, 0, 0));
            const Eis q = mul81({a, b}, mul81({c, e}, {c, e}));
            CHECK((L.cube_class(x) == L.cube_class(y)) == eisenstein_is_cube(q.a, q.b));
        }
    }
}

TEST_CASE("cube classes are homomorphisms at every kind of place") {
    std::mt19937_64 rng(29);
    for (long d : {67L, 2L}) {
        const UnitSampler A(d);
        const auto& T = A.F.field();
        for (const auto& v : A.places) {
            for (int t = 0; t < 40; ++t) {
                const auto x = A.random_unit(rng), y = A.random_unit(rng);
                CHECK(cube_class(T, T.mul(x, y), v) == f3_add(cube_class(T, x, v), cube_class(T, y, v)));
                CHECK(f3_is_zero(cube_class(T, T.pow(x, 3), v)));
            }
        }
    }
}

TEST_CASE("Hilbert symbols on random S-unit pairs") {
    std::mt19937_64 rng(41);
    std::size_t pairs = 0, violations = 0;
    for (long d : {67L, -107L, 2L, -1L, 103L}) {
        const UnitSampler A(d);
        const auto& T = A.F.field();
        for (int t = 0; t < 110; ++t) {
            const auto a = A.random_unit(rng), b = A.random_unit(rng), c = A.random_unit(rng);
            int sum_ac = 0;
            for (const auto& v : A.places) {
                const int ab_c = hilbert_symbol(T, T.mul(a, b), c, v);
                const int a_c = hilbert_symbol(T, a, c, v);
                const int b_c = hilbert_symbol(T, b, c, v);
                const int c_a = hilbert_symbol(T, c, a, v);
                violations += (ab_c - a_c - b_c) % 3 != 0;
                violations += (a_c + c_a) % 3 != 0;
                sum_ac += a_c;
            }
            violations += sum_ac % 3 != 0;
            ++pairs;
        }
    }
    CHECK(pairs >= 500);
    CHECK(violations == 0);
}

TEST_CASE("Steinberg relation and standard symbol identities") {
    std::mt19937_64 rng(43);
    for (long d : {67L, -107L, 2L}) {
        const BiquadField F((Integer(d)));
        const auto& T = F.field();
        const auto places = complete_at_3(T, 8);
        for (int t = 0; t < 40; ++t) {
            const auto a = F.from_coords(Rational(static_cast<long>(rng() % 19) - 9, 1 + 3 * (rng() % 3) + 1),
                                         static_cast<long>(rng() % 19) - 9, static_cast<long>(rng() % 7) - 3,
                                         static_cast<long>(rng() % 7) - 3);
            if (T.is_zero(a) || T.is_zero(T.sub(T.one(), a))) continue;
            for (const auto& v : places) {
                CHECK(hilbert_symbol(T, a, T.sub(T.one(), a), v) == 0);
                CHECK(hilbert_symbol(T, a, T.neg(a), v) == 0);
                CHECK(hilbert_symbol(T, a, a, v) == 0);
                CHECK(hilbert_symbol(T, a, T.mul(T.pow(a, 3), T.pow(F.omega(), 3)), v) == hilbert_symbol(T, a, a, v));
            }
        }
    }
}

TEST_CASE("symbols against zeta3 for d = 67") {
    const BiquadField F(Integer(67));
    const auto& T = F.field();
    const auto B = sunit_basis(F);
    for (const auto& v : complete_at_3(T, 8)) {
        for (const auto& g : B.free_generators) CHECK(hilbert_symbol(T, g.value, F.omega(), v) == 0);
        // (zeta3, 4) = [L : Q_3] mod 3 = 2
        CHECK(hilbert_symbol(T, F.omega(), T.from_rational(4), v) == 2);
    }
}

TEST_CASE("global and local norms agree on random 3-units") {
    std::mt19937_64 rng(53);
    std::size_t count = 0;
    for (long d : {67L, -107L, 2L, -1L, 139L}) {
        const UnitSampler A(d);
        const auto& T = A.F.field();
        for (int t = 0; t < 110; ++t) {
            const auto x = A.random_unit(rng);
            const Rational N = T.norm_to_Q(x);
            int val = 0;
            Residue3k prod(1, 64);
            int sign = 1;
            for (const auto& v : A.places) {
                const auto n = local_norm_to_Q3(T, x, v);
                val += n.valuation;
                sign *= n.teichmuller;
                const unsigned k = std::min(prod.precision(), n.unit.precision());
                prod = prod.reduce(k) * n.unit.reduce(k);
            }
            CHECK(val == valuation(N, 3));
            const Rational u = N / (val >= 0 ? Rational(pow3(val)) : Rational(1, pow3(-val)));
            CHECK(rat_mod(u, prod.modulus()) == prod.value());
            CHECK((mod(rat_mod(u, Integer(3)), 3) == 1 ? 1 : -1) == sign);
            ++count;
        }
    }
    CHECK(count >= 500);
}

}
