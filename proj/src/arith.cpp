#include "kummer/arith.hpp"

#include "kummer/errors.hpp"

namespace kummer {

int valuation(const Integer& n, unsigned long p) {
    if (n == 0) throw std::invalid_argument("valuation of zero");
    Integer m = n;
    int v = 0;
    while (mpz_divisible_ui_p(m.get_mpz_t(), p)) {
        mpz_divexact_ui(m.get_mpz_t(), m.get_mpz_t(), p);
        ++v;
    }
    return v;
}

int valuation(const Rational& q, unsigned long p) {
    return valuation(Integer(q.get_num()), p) - valuation(Integer(q.get_den()), p);
}

Integer pow_int(const Integer& base, unsigned long e) {
    Integer r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
    return r;
}

Integer pow3(unsigned k) {
    Integer r;
    mpz_ui_pow_ui(r.get_mpz_t(), 3, k);
    return r;
}

Integer mod(const Integer& a, const Integer& m) {
    Integer r;
    mpz_mod(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
    return r;
}

Integer sym_mod(const Integer& a, const Integer& m) {
    Integer r = mod(a, m);
    if (2 * r > m) r -= m;
    return r;
}

Integer inv_mod(const Integer& a, const Integer& m) {
    Integer r;
    if (mpz_invert(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t()) == 0)
        throw NotAUnit(to_string(a) + " is not invertible mod " + to_string(m));
    return r;
}

Integer rat_mod(const Rational& q, const Integer& m) {
    Integer num = q.get_num(), den = q.get_den();
    return mod(num * inv_mod(den, m), m);
}

Integer isqrt(const Integer& n) {
    if (n < 0) throw std::invalid_argument("isqrt of negative");
    Integer r;
    mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
    return r;
}

bool is_square(const Integer& n) {
    return n >= 0 && mpz_perfect_square_p(n.get_mpz_t()) != 0;
}

bool is_prime(const Integer& n) {
    return n > 1 && mpz_probab_prime_p(n.get_mpz_t(), 30) > 0;
}

int kronecker(const Integer& a, const Integer& n) {
    return mpz_kronecker(a.get_mpz_t(), n.get_mpz_t());
}

bool is_squarefree(const Integer& n, unsigned long bound) {
    Integer m = abs(n);
    if (m == 0) return false;
    for (unsigned long p = 2; p <= bound && Integer(p) * p <= m; ++p) {
        if (mpz_divisible_ui_p(m.get_mpz_t(), p)) {
            mpz_divexact_ui(m.get_mpz_t(), m.get_mpz_t(), p);
            if (mpz_divisible_ui_p(m.get_mpz_t(), p)) return false;
        }
    }
    if (Integer(bound) * bound < m && !is_prime(m))
        throw DiscriminantTooLarge("squarefree test beyond trial-division bound for " +
                                   to_string(n));
    return !is_square(m) || m == 1;
}

std::string to_string(const Integer& n) { return n.get_str(); }

std::string to_string(const Rational& q) { return q.get_str(); }

}  // namespace kummer
