#include "kummer/biquad.hpp"

#include "kummer/errors.hpp"
#include "kummer/units.hpp"

namespace kummer {

BiquadField::BiquadField(const Integer& d)
    : d_(d), base_(d, 0), quad_d_(d), quad_m3_(Integer(-3)), quad_m3d_(Integer(-3 * d)),
      s_(mod(d, 3) == 1 ? 2 : 1) {}

FElem BiquadField::from_coords(const Rational& a, const Rational& b, const Rational& c,
                               const Rational& e) const {
    return base_.from_coords({a, b, c, e});
}

FElem BiquadField::embed(const QuadElem& x) const {
    // sqrt(-3) = 1 + 2w
    const Rational& a = x.a();
    const Rational& b = x.b();
    if (x.D() == d_) return from_coords(a, 0, b, 0);
    if (x.D() == -3) return from_coords(a + b, 2 * b, 0, 0);
    if (x.D() == -3 * d_) return from_coords(a, 0, b, 2 * b);
    throw std::invalid_argument("element does not belong to a quadratic subfield of F");
}

std::array<FElem, 4> galois_orbit(const BiquadField& F, const FElem& x) {
    const TowerField& K = F.field();
    return {x, K.aut(x, 2, false), K.aut(x, 1, true), K.aut(x, 2, true)};
}

std::vector<std::string> SUnitBasis::names() const {
    std::vector<std::string> out;
    for (const auto& g : free_generators) out.push_back(g.name);
    return out;
}

std::vector<FElem> SUnitBasis::values() const {
    std::vector<FElem> out;
    for (const auto& g : free_generators) out.push_back(g.value);
    return out;
}

SUnitBasis sunit_basis(const BiquadField& F, unsigned long search_bound) {
    const TowerField& K = F.field();
    SUnitBasis B;
    B.torsion = F.omega();
    B.free_generators.push_back({"3", K.from_rational(3), "rational prime"});

    const QuadField& real = F.real_subfield();
    const QuadElem eps = fundamental_unit(real);
    B.free_generators.push_back({"eps", F.embed(eps),
                                 "fundamental unit " + eps.to_string() + " of Q(sqrt " +
                                     kummer::to_string(real.D()) + ")"});

    if (F.s() == 2) {
        const PrimeGenerator pg = three_adic_prime_generator(F.sqrt_d_field(), search_bound);
        std::string note = "generator " + pg.generator.to_string() + " of p^" + std::to_string(pg.h) +
                           ", p | 3 in Q(sqrt " + kummer::to_string(F.d()) + ") with sqrt d = 1 mod p, norm " +
                           kummer::to_string(pg.norm) + ", search bound " + std::to_string(pg.search_bound);
        if (pg.h % 3 == 0) note += "; warning: 3 divides the class order of p";
        B.free_generators.push_back({"eta", F.embed(pg.generator), note});
    }

    for (const auto& g : B.free_generators) {
        const Rational n = K.norm_to_Q(g.value);
        Integer num = abs(n.get_num());
        const Integer den = n.get_den();
        while (mpz_divisible_ui_p(num.get_mpz_t(), 3)) num /= 3;
        if (num != 1 || den != 1) throw RankDeficient("generator " + g.name + " is not a 3-unit");
    }

    // Independence modulo cubes and torsion; a generator may be replaced by a cube root when
    // the span is not 3-saturated.
    UnitSystem sys{B.values(), B.names()};
    UnitLattice lattice(K, sys, 3, sunit_rank(K, F.s()));
    for (std::size_t i = 0; i < B.size(); ++i) {
        const auto& name = lattice.system().names[i];
        if (name != B.free_generators[i].name) {
            B.free_generators[i].provenance = "cube root adjoined by saturation: " + name;
            B.free_generators[i].value = lattice.system().gens[i];
        }
    }
    return B;
}

std::vector<SUnitGenerator> virtual_units(const BiquadField& F, const SUnitBasis& basis,
                                          unsigned long search_bound) {
    const TowerField& K = F.field();
    const CharacterTable chars(K, 3, 6);
    std::vector<F3Vec> rows;
    auto row = [&](const FElem& x) {
        const auto v = chars.values(x);
        F3Vec r(v.size());
        for (std::size_t i = 0; i < v.size(); ++i) r[i] = f3(v[i]);
        return r;
    };
    rows.push_back(row(F.omega()));
    for (const auto& g : basis.free_generators) rows.push_back(row(g.value));
    const std::size_t width = rows[0].size();

    std::vector<SUnitGenerator> out;
    for (const QuadField* Q : {&F.sqrt_d_field(), &F.sqrt_m3d_field()}) {
        const ClassGroup cg = class_group(*Q);
        for (std::size_t i = 0; i < cg.generators.size(); ++i) {
            const long n = cg.structure[i].get_si();
            if (n % 3) continue;
            BinaryForm b = cg.generators[i];
            for (long t = 1; t < n / 3; ++t) b = compose(b, cg.generators[i]);
            const auto a = principal_generator(*Q, compose(compose(b, b), b), search_bound);
            if (!a) throw SearchBudgetExceeded("no generator of b^3 for b = " + b.to_string());
            const FElem x = F.embed(*a);
            auto trial = rows;
            trial.push_back(row(x));
            if (span_dim(trial, width) == span_dim(rows, width)) continue;
            rows = trial;
            out.push_back({out.empty() ? "alpha" : "alpha" + std::to_string(out.size() + 1), x,
                           "generator " + a->to_string() + " of b^3, b = " + b.to_string() + " of order 3 in Cl(Q(sqrt " +
                               kummer::to_string(Q->D()) + "))"});
        }
    }
    return out;
}

}  // namespace kummer
