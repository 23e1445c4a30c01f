#pragma once

// Independent oracles for the local arithmetic: brute-force cube tables mod 81 and random 3-units.

#include "kummer/biquad.hpp"
#include "kummer/local3.hpp"

#include <random>
#include <set>

namespace oracle {

using namespace kummer;


// Z[w] modulo 81, w^2 = -1 - w.
struct Eis {
    long a, b;
};

inline Eis mul81(Eis x, Eis y) {
    const long a = x.a * y.a - x.b * y.b;
    const long b = x.a * y.b + x.b * y.a - x.b * y.b;
    return {((a % 81) + 81) % 81, ((b % 81) + 81) % 81};
}

// Cubes of units of Z[w] / 81, by enumeration.
inline const std::set<std::pair<long, long>>& eisenstein_cubes() {
    static const auto table = [] {
        std::set<std::pair<long, long>> s;
        for (long a = 0; a < 81; ++a)
            for (long b = 0; b < 81; ++b) {
                if ((a + b) % 3 == 0) continue;  // a + b w is a unit iff a + b = a + b*1 is prime to 3
                const Eis y{a, b};
                const Eis c = mul81(mul81(y, y), y);
                s.insert({c.a, c.b});
            }
        return s;
    }();
    return table;
}

// Whether the integer point a + b w of Z[w] is a cube in Q_3(w), from the table above.
inline bool eisenstein_is_cube(long a, long b) {
    unsigned v = 0;
    // divide by pi = 1 - w: (a + b w)(2 + w) / 3 = ((2a - b) + (a + b) w) / 3
    while ((a + b) % 3 == 0) {
        const long na = 2 * a - b, nb = a + b;
        a = na / 3;
        b = nb / 3;
        ++v;
    }
    if (v % 3) return false;
    return eisenstein_cubes().count({((a % 81) + 81) % 81, ((b % 81) + 81) % 81}) == 1;
}

// Cubes of units mod 81 in Z.
inline bool rational_is_cube(long x) {
    static const auto cubes = [] {
        std::set<long> s;
        for (long y = 1; y < 81; ++y)
            if (y % 3) s.insert(y * y * y % 81);
        return s;
    }();
    unsigned v = 0;
    while (x % 3 == 0) {
        x /= 3;
        ++v;
    }
    return v % 3 == 0 && cubes.count(((x % 81) + 81) % 81) == 1;
}

struct UnitSampler {
    BiquadField F;
    std::vector<TElem> gens;  // zeta3 first
    std::vector<LocalPlace> places;

    explicit UnitSampler(long d) : F(Integer(d)), places(complete_at_3(F.field(), 8)) {
        gens.push_back(F.omega());
        for (const auto& g : sunit_basis(F).free_generators) gens.push_back(g.value);
    }

    TElem random_unit(std::mt19937_64& rng) const {
        const auto& T = F.field();
        TElem x = T.one();
        for (const auto& g : gens) {
            const long e = static_cast<long>(rng() % 5) - 2;
            if (e) x = T.mul(x, T.pow(g, e));
        }
        return x;
    }
};


}  // namespace oracle
