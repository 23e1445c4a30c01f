#pragma once

#include "kummer/arith.hpp"

#include <string>
#include <vector>

namespace kummer {

// Element of Q(zeta_N, sqrt d): num[e*deg + j] / den is the coefficient of zeta^j sqrt(d)^e.
// den > 0 and gcd(den, num...) = 1.
struct TElem {
    std::vector<Integer> num;
    Integer den = 1;
    bool operator==(const TElem&) const = default;
};

// Level n of the cyclotomic Z_3-tower over F = Q(zeta_3, sqrt d): F_n = Q(zeta_N, sqrt d), N = 3^(n+1).
// Level 0 is F itself, with basis {1, w, sqrt d, w sqrt d}.
class TowerField {
public:
    TowerField(Integer d, unsigned level);

    const Integer& d() const { return d_; }
    unsigned level() const { return level_; }
    unsigned N() const { return N_; }
    // degree of zeta_N over Q
    unsigned phi() const { return deg_; }
    unsigned degree() const { return 2 * deg_; }
    // order of Gal(F_n / F)
    unsigned galois_order() const { return N_ / 3; }

    TElem zero() const;
    TElem one() const;
    TElem from_rational(const Rational& q) const;
    TElem zeta(long k = 1) const;
    TElem sqrt_d() const;
    // Coordinates given as rationals, length degree().
    TElem from_coords(std::vector<Rational> c) const;
    std::vector<Rational> coords(const TElem& x) const;
    Rational coeff(const TElem& x, std::size_t i) const;

    TElem add(const TElem& x, const TElem& y) const;
    TElem sub(const TElem& x, const TElem& y) const;
    TElem neg(const TElem& x) const;
    TElem mul(const TElem& x, const TElem& y) const;
    TElem scale(const TElem& x, const Rational& q) const;
    TElem pow(const TElem& x, long e) const;
    TElem inv(const TElem& x) const;
    TElem div(const TElem& x, const TElem& y) const;
    bool is_zero(const TElem& x) const;
    bool is_rational(const TElem& x) const;

    // zeta -> zeta^k (3 does not divide k), sqrt d -> -sqrt d when flip is set
    TElem aut(const TElem& x, long k, bool flip = false) const;
    // generator of Gal(F_n / F): zeta_N -> zeta_N^4
    TElem sigma(const TElem& x, unsigned times = 1) const;
    std::vector<long> unit_residues() const;

    Rational norm_to_Q(const TElem& x) const;
    // Norm to level n-1, expressed in that field.
    TElem norm_down(const TElem& x) const;
    // Norm to level 0.
    TElem norm_to_base(const TElem& x) const;
    // Image of an element of level n-1.
    TElem embed_from_below(const TElem& x) const;
    // Image of an element of level 0.
    TElem embed_from_base(const TElem& x) const;

    // Largest absolute numerator, a size measure.
    Integer height(const TElem& x) const;
    std::string to_string(const TElem& x) const;

private:
    void normalize(TElem& x) const;
    // Reduce a polynomial in zeta of length < N modulo Phi_N in place.
    void reduce(std::vector<Integer>& p) const;

    Integer d_;
    unsigned level_, N_, m_, deg_;
};

// Relative norm and its twists over G_1 = Gal(F_1 / F) on level 1:
// twisted_norm(x, i) = prod_j sigma^j(x)^(4^(i j) mod 9).
TElem norm_nu(const TowerField& F1, const TElem& x);
TElem twisted_norm(const TowerField& F1, const TElem& x, int i);

}  // namespace kummer
