#include "doctest.h"

#include "kummer/errors.hpp"
#include "kummer/quadfield.hpp"

#include <random>
#include <set>
#include <tuple>

using namespace kummer;

namespace {

// Smallest unit > 1: first b with D b^2 +- 4 a square, on the 2a, 2b lattice.
QuadElem pell_oracle(const Integer& D, long bound) {
    const QuadField K(D);
    const bool half = mod(D, 4) == 1;
    for (long b2 = 1; b2 <= bound; ++b2) {
        if (!half && b2 % 2) continue;
        for (int s : {-4, 4}) {
            const Integer t = D * b2 * b2 + s;
            if (t <= 0 || !is_square(t)) continue;
            const Integer a2 = isqrt(t);
            if (!half && a2 % 2 != 0) continue;
            return QuadElem(K, Rational(a2, 2), Rational(b2, 2));
        }
    }
    throw std::runtime_error("no unit below bound");
}

// Reduced definite forms of discriminant disc < 0, counted directly.
std::set<std::tuple<long, long, long>> reduced_forms(long disc) {
    std::set<std::tuple<long, long, long>> out;
    for (long a = 1; 3 * a * a <= -disc; ++a)
        for (long b = -a + 1; b <= a; ++b) {
            const long num = b * b - disc;
            if (num % (4 * a)) continue;
            const long c = num / (4 * a);
            if (c < a || (c == a && b < 0)) continue;
            if (std::gcd(std::gcd(a, std::abs(b)), c) != 1) continue;
            out.insert({a, b, c});
        }
    return out;
}

}  // namespace

TEST_SUITE("quadfield") {

TEST_CASE("fundamental units") {
    const QuadField K67(67);
    const auto eps = fundamental_unit(K67);
    CHECK(eps == QuadElem(K67, 48842, 5967));
    CHECK(norm(eps) == 1);
    CHECK(Integer(48842) * 48842 - 67 * Integer(5967) * 5967 == 1);

    CHECK(fundamental_unit(QuadField(2)) == QuadElem(QuadField(2), 1, 1));
    CHECK(fundamental_unit(QuadField(5)) == QuadElem(QuadField(5), Rational(1, 2), Rational(1, 2)));
    CHECK(fundamental_unit(QuadField(3)) == QuadElem(QuadField(3), 2, 1));
    CHECK_THROWS_AS(fundamental_unit(QuadField(-1)), NotRealQuadratic);
}

TEST_CASE("fundamental unit matches a Pell search") {
    for (long D = 2; D <= 50; ++D) {
        if (!is_squarefree(Integer(D))) continue;
        CAPTURE(D);
        const QuadElem oracle = pell_oracle(Integer(D), 10000);
        const QuadElem eps = fundamental_unit(QuadField(D));
        CHECK(eps == oracle);
        // every unit with small b is +-eps^n
        const QuadField K(D);
        std::set<std::string> powers;
        for (long n = -12; n <= 12; ++n) {
            powers.insert(eps.pow(n).to_string());
            powers.insert((-eps.pow(n)).to_string());
        }
        for (long b = 0; b <= 60; ++b)
            for (long a = 0; a <= 3000; ++a) {
                const Integer lhs = Integer(a) * a - D * Integer(b) * b;
                if (lhs == 1 || lhs == -1) {
                    CHECK(powers.count(QuadElem(K, a, b).to_string()) == 1);
                    CHECK(powers.count(QuadElem(K, a, -b).to_string()) == 1);
                }
            }
    }
}

TEST_CASE("norms") {
    const QuadField K(67);
    CHECK(norm(QuadElem(K, 8, 1)) == -3);
    CHECK(norm(QuadElem(K, 1, 0)) == 1);
    std::mt19937_64 rng(5);
    for (int t = 0; t < 300; ++t) {
        auto r = [&] { return Rational(static_cast<long>(rng() % 201) - 100, 1 + static_cast<long>(rng() % 7)); };
        const QuadElem x(K, r(), r()), y(K, r(), r());
        CHECK(norm(x * y) == norm(x) * norm(y));
    }
}

TEST_CASE("splitting at 3") {
    CHECK(splitting_at_3(QuadField(67)) == Splitting::split);
    CHECK(splitting_at_3(QuadField(-3)) == Splitting::ramified);
    CHECK(splitting_at_3(QuadField(2)) == Splitting::inert);
    CHECK(splitting_at_3(QuadField(-23)) == Splitting::split);
}

TEST_CASE("generators of 3-adic primes") {
    const auto g67 = three_adic_prime_generator(QuadField(67));
    CHECK(g67.h == 1);
    CHECK(g67.generator == QuadElem(QuadField(67), 8, 1));
    CHECK(g67.norm == -3);

    const auto gm3 = three_adic_prime_generator(QuadField(-3));
    CHECK(gm3.h == 1);
    CHECK(abs(gm3.norm) == 3);
    CHECK(gm3.generator.a() == 0);

    const auto g23 = three_adic_prime_generator(QuadField(-23));
    CHECK(g23.h == 3);
    CHECK(g23.norm == 27);
}

TEST_CASE("class groups") {
    CHECK(class_group(QuadField(-23)).structure == std::vector<Integer>{3});
    CHECK(reduced_forms(-23).size() == 3);
    CHECK(class_group(QuadField(-3)).class_number() == 1);
    CHECK(class_group(QuadField(67)).class_number() == 1);
    for (long D : {-1L, -2L, -5L, -6L, -7L, -14L, -23L, -31L, -47L, -71L, -107L, -161L, -199L}) {
        const QuadField K(D);
        CAPTURE(D);
        CHECK(class_group(K).class_number() == static_cast<long>(reduced_forms(K.discriminant().get_si()).size()));
    }
}

TEST_CASE("form composition is a group law") {
    for (long disc = -3; disc >= -200; --disc) {
        if (mod(Integer(disc), 4) > 1) continue;
        const auto forms = reduced_forms(disc);
        if (forms.empty()) continue;
        std::vector<BinaryForm> fs;
        for (const auto& [a, b, c] : forms) fs.push_back({a, b, c});
        const BinaryForm e = reduce_definite(principal_form(Integer(disc)));
        for (const auto& f : fs) {
            CHECK(reduce_definite(compose(f, e)) == f);
            CHECK(reduce_definite(compose(f, inverse(f))) == e);
            for (const auto& g : fs)
                for (const auto& h : fs)
                    CHECK(reduce_definite(compose(compose(f, g), h)) == reduce_definite(compose(f, compose(g, h))));
        }
    }
}

}
