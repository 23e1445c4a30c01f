#include "doctest.h"

#include "kummer/biquad.hpp"
#include "kummer/circular.hpp"
#include "kummer/errors.hpp"
#include "kummer/local3.hpp"
#include "kummer/tower.hpp"
#include "kummer/units.hpp"

#include <random>

using namespace kummer;

namespace {

bool is_power_of_3(Rational q) {
    q = abs(q);
    if (q.get_den() != 1) return false;
    Integer n = q.get_num();
    while (n % 3 == 0) n /= 3;
    return n == 1;
}

TElem random_elem(const TowerField& F, std::mt19937_64& rng, long range = 5) {
    std::vector<Rational> c(F.degree());
    for (auto& x : c) x = Rational(static_cast<long>(rng() % (2 * range + 1)) - range);
    return F.from_coords(c);
}

}  // namespace

TEST_SUITE("biquad") {

TEST_CASE("field construction") {
    CHECK(BiquadField(Integer(67)).s() == 2);
    CHECK(BiquadField(Integer(2)).s() == 1);
    CHECK(BiquadField(Integer(-1)).s() == 1);
    CHECK(BiquadField(Integer(-107)).s() == 2);
    for (long bad : {0L, 1L, 9L, 3L, -3L, 6L, 12L, -18L}) CHECK_THROWS_AS(BiquadField(Integer(bad)), InvalidD);
}

TEST_CASE("galois orbits") {
    const BiquadField F(Integer(67));
    const auto& T = F.field();
    const auto r = galois_orbit(F, T.sqrt_d());
    CHECK(r[0] == T.sqrt_d());
    CHECK(r[1] == T.sqrt_d());
    CHECK(r[2] == T.neg(T.sqrt_d()));
    CHECK(r[3] == T.neg(T.sqrt_d()));

    const auto w = galois_orbit(F, F.omega());
    CHECK(w[0] == F.omega());
    CHECK(w[1] == T.mul(F.omega(), F.omega()));
    CHECK(w[2] == F.omega());
    CHECK(w[3] == T.mul(F.omega(), F.omega()));

    // 1 + w sqrt d: product of the orbit is the absolute norm, computed by hand as
    // N_{F/Q(sqrt d)}(1 + w s) = 1 - s + s^2 = 1 - s + d, then times its conjugate
    const auto x = T.add(T.one(), T.mul(F.omega(), T.sqrt_d()));
    const auto o = galois_orbit(F, x);
    const auto prod = T.mul(T.mul(o[0], o[1]), T.mul(o[2], o[3]));
    CHECK(T.is_rational(prod));
    CHECK(T.coeff(prod, 0) == T.norm_to_Q(x));
    CHECK(T.norm_to_Q(x) == Rational((1 + 67) * (1 + 67) - 67));
}

TEST_CASE("S-unit bases") {
    const BiquadField F67(Integer(67));
    const auto b67 = sunit_basis(F67);
    REQUIRE(b67.size() == 3);
    CHECK(b67.names() == std::vector<std::string>{"3", "eps", "eta"});
    CHECK(b67.free_generators[1].value == F67.embed(QuadElem(QuadField(67), 48842, 5967)));
    CHECK(b67.free_generators[2].value == F67.embed(QuadElem(QuadField(67), 8, 1)));

    const BiquadField F2(Integer(2));
    const auto b2 = sunit_basis(F2);
    REQUIRE(b2.size() == 2);
    CHECK(b2.free_generators[1].value == F2.embed(QuadElem(QuadField(2), 1, 1)));

    const BiquadField Fm1(Integer(-1));
    const auto bm1 = sunit_basis(Fm1);
    REQUIRE(bm1.size() == 2);
    CHECK(bm1.free_generators[1].value == Fm1.embed(QuadElem(QuadField(3), 2, 1)));
}

TEST_CASE("S-unit generators are 3-units and zeta3 stays independent") {
    for (long d : {67L, 2L, -1L, -107L, 103L, 106L, 139L, -5L, 10L}) {
        CAPTURE(d);
        const BiquadField F((Integer(d)));
        const auto B = sunit_basis(F);
        for (const auto& g : B.free_generators) CHECK(is_power_of_3(F.field().norm_to_Q(g.value)));
        // zeta3 outside the span of the free generators mod cubes
        CharacterTable chars(F.field(), 3, 24);
        std::vector<F3Vec> rows;
        for (const auto& g : B.free_generators) {
            auto v = chars.values(g.value);
            rows.emplace_back(v.begin(), v.end());
        }
        const auto z = chars.values(F.omega());
        CHECK_FALSE(span_contains(rows, F3Vec(z.begin(), z.end()), z.size()));
        CHECK(span_dim(rows, z.size()) == B.size());
    }
}

}

TEST_SUITE("abelian-tower") {

TEST_CASE("layers") {
    const TowerField F1(Integer(67), 1), F2(Integer(67), 2), G1(Integer(2), 1);
    CHECK(F1.degree() == 12);
    CHECK(F2.degree() == 36);
    CHECK(G1.degree() == 12);
    CHECK(complete_at_3(F1).size() == 2);
    CHECK(complete_at_3(G1).size() == 1);
}

TEST_CASE("norms from level 1") {
    const TowerField F1(Integer(67), 1);
    const TowerField F0(Integer(67), 0);
    const auto one_minus = [&](const TElem& z) { return F1.sub(F1.one(), z); };
    CHECK(norm_nu(F1, one_minus(F1.zeta())) == F0.sub(F0.one(), F0.zeta()));
    CHECK(norm_nu(F1, F1.zeta()) == F0.zeta());
    // exact product (1 - z)(1 - z^4)(1 - z^7)
    const auto p = F1.mul(F1.mul(one_minus(F1.zeta(1)), one_minus(F1.zeta(4))), one_minus(F1.zeta(7)));
    CHECK(p == F1.sub(F1.one(), F1.pow(F1.zeta(), 3)));

    const auto x0 = F0.add(F0.from_rational(2), F0.sqrt_d());
    const auto x = F1.embed_from_base(x0);
    CHECK(norm_nu(F1, x) == F0.pow(x0, 3));
    CHECK(twisted_norm(F1, x, 0) == F1.embed_from_base(norm_nu(F1, x)));
    CHECK(twisted_norm(F1, x, 1) == F1.pow(x, 12));
    CHECK(twisted_norm(F1, x, -1) == F1.pow(x, 12));
}

TEST_CASE("twisted norms are multiplicative and sigma-invariant") {
    const TowerField F1(Integer(-107), 1);
    std::mt19937_64 rng(3);
    for (int t = 0; t < 20; ++t) {
        const auto x = random_elem(F1, rng), y = random_elem(F1, rng);
        if (F1.is_zero(x) || F1.is_zero(y)) continue;
        CHECK(norm_nu(F1, F1.sigma(x)) == norm_nu(F1, x));
        for (int i : {-1, 0, 1}) CHECK(twisted_norm(F1, F1.mul(x, y), i) == F1.mul(twisted_norm(F1, x, i), twisted_norm(F1, y, i)));
        // on G_1-fixed elements the twists differ from the plain norm by a ninth power
        const auto f = F1.embed_from_base(norm_nu(F1, x));
        const auto nf = F1.embed_from_base(norm_nu(F1, f));
        for (int i : {-1, 1}) CHECK(F1.div(twisted_norm(F1, f, i), nf) == F1.pow(f, 9));
    }
}

TEST_CASE("circular 3-units of level 1") {
    for (long d : {67L, 2L}) {
        CAPTURE(d);
        const BiquadField F((Integer(d)));
        const TowerField F1(Integer(d), 1);
        const auto base = sunit_basis(F);
        const auto lattice = circular_sunit_basis(F1, base);
        CHECK(lattice.rank() == sunit_rank(F1, static_cast<unsigned>(base.size() - 1)));
        CHECK(lattice.rank() == (d == 67 ? 7u : 6u));
        for (const auto& g : lattice.system().gens) CHECK(is_power_of_3(F1.norm_to_Q(g)));
    }
    const TowerField F1(Integer(5), 1);
    // 3 from Q(zeta_9), squared by the quadratic step
    CHECK(abs(F1.norm_to_Q(F1.sub(F1.one(), F1.zeta()))) == 9);
}

}
