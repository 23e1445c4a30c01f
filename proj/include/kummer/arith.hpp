#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace kummer {

using Integer = mpz_class;
using Rational = mpq_class;

// Exponent of the prime p in n (n != 0).
int valuation(const Integer& n, unsigned long p);
int valuation(const Rational& q, unsigned long p);

Integer pow_int(const Integer& base, unsigned long e);
Integer pow3(unsigned k);

// Representative in [0, m).
Integer mod(const Integer& a, const Integer& m);
// Representative in (-m/2, m/2].
Integer sym_mod(const Integer& a, const Integer& m);
// Throws NotAUnit when gcd(a, m) != 1.
Integer inv_mod(const Integer& a, const Integer& m);
// Rational a/b reduced mod m; the denominator must be a unit mod m.
Integer rat_mod(const Rational& q, const Integer& m);

Integer isqrt(const Integer& n);
bool is_square(const Integer& n);
bool is_prime(const Integer& n);
int kronecker(const Integer& a, const Integer& n);

// Trial division up to `bound`; throws DiscriminantTooLarge when |n| exceeds bound^2.
bool is_squarefree(const Integer& n, unsigned long bound = 100000);

std::string to_string(const Integer& n);
std::string to_string(const Rational& q);

}  // namespace kummer
