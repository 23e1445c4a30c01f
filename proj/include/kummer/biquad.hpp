#pragma once

#include "kummer/quadfield.hpp"
#include "kummer/tower.hpp"

#include <array>
#include <string>
#include <vector>

namespace kummer {

// F = Q(zeta_3, sqrt d), elements on the basis {1, w, sqrt d, w sqrt d}.
using FElem = TElem;

class BiquadField {
public:
    // Throws InvalidD unless d is squarefree, prime to 3 and d != 0, 1.
    explicit BiquadField(const Integer& d);

    const Integer& d() const { return d_; }
    const TowerField& field() const { return base_; }
    const QuadField& sqrt_d_field() const { return quad_d_; }
    const QuadField& sqrt_m3_field() const { return quad_m3_; }
    const QuadField& sqrt_m3d_field() const { return quad_m3d_; }
    // Q(sqrt d) for d > 0, Q(sqrt -3d) for d < 0.
    const QuadField& real_subfield() const { return d_ > 0 ? quad_d_ : quad_m3d_; }
    // Number of primes above 3: 2 when 3 splits in Q(sqrt d).
    unsigned s() const { return s_; }
    std::pair<unsigned, unsigned> signature() const { return {0, 2}; }

    FElem omega() const { return base_.zeta(1); }
    // Image of an element of one of the three quadratic subfields.
    FElem embed(const QuadElem& x) const;
    FElem from_coords(const Rational& a, const Rational& b, const Rational& c, const Rational& e) const;

private:
    Integer d_;
    TowerField base_;
    QuadField quad_d_, quad_m3_, quad_m3d_;
    unsigned s_;
};

// x under id, (w -> w^2), (sqrt d -> -sqrt d) and both.
std::array<FElem, 4> galois_orbit(const BiquadField& F, const FElem& x);

struct SUnitGenerator {
    std::string name;
    FElem value;
    std::string provenance;
};

// Free generators of the 3-units modulo torsion, in the fixed order (3, eps, eta).
struct SUnitBasis {
    FElem torsion;
    std::vector<SUnitGenerator> free_generators;

    std::size_t size() const { return free_generators.size(); }
    std::vector<std::string> names() const;
    std::vector<FElem> values() const;
};

// Throws SearchBudgetExceeded from the prime generator search, RankDeficient when the
// generators fail the independence check modulo cubes.
SUnitBasis sunit_basis(const BiquadField& F, unsigned long search_bound = 10000);

// Elements a with (a) = b^3, b an ideal class of order 3 in a quadratic subfield, kept when they
// are independent of the 3-units modulo cubes. Named alpha, alpha2, ...
std::vector<SUnitGenerator> virtual_units(const BiquadField& F, const SUnitBasis& basis,
                                          unsigned long search_bound = 10000);

}  // namespace kummer
