#pragma once

#include "kummer/arith.hpp"

namespace kummer {

// Element of Z/3^k with the precision carried along.
class Residue3k {
public:
    Residue3k(Integer value, unsigned k);

    const Integer& value() const { return value_; }
    unsigned precision() const { return k_; }
    Integer modulus() const { return pow3(k_); }
    bool is_unit() const;

    // Same class at lower precision.
    Residue3k reduce(unsigned k) const;

    Residue3k operator+(const Residue3k& o) const;
    Residue3k operator-(const Residue3k& o) const;
    Residue3k operator*(const Residue3k& o) const;
    Residue3k operator-() const;
    Residue3k inverse() const;
    Residue3k pow(const Integer& e) const;
    bool operator==(const Residue3k& o) const = default;

private:
    Integer value_;
    unsigned k_;
};

// u / omega(u) where omega(u) is the Teichmuller lift (+1 or -1) of u mod 3.
Residue3k teichmuller_free_part(const Residue3k& u);

// Discrete logarithm of a 1-unit base 4: the unique a mod 3^(k-1) with 4^a = u mod 3^k.
// 4 topologically generates 1 + 3Z_3, so this is an exact coordinate on it.
Integer log4(const Residue3k& u);

// Integer polynomial, lowest degree first.
using IntPoly = std::vector<Integer>;

Integer eval(const IntPoly& f, const Integer& x);
IntPoly derivative(const IntPoly& f);

// Lift a simple root of f mod 3 to a root mod 3^k_target.
Residue3k hensel_lift_root(const IntPoly& f, const Residue3k& r0, unsigned k_target);

}  // namespace kummer
