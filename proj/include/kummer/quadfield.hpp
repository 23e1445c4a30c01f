#pragma once

#include "kummer/arith.hpp"

#include <optional>
#include <string>
#include <vector>

namespace kummer {

enum class Splitting { split, inert, ramified };
std::string to_string(Splitting s);

class QuadField {
public:
    // Throws InvalidD unless D is squarefree and D != 0, 1.
    explicit QuadField(const Integer& D);

    const Integer& D() const { return D_; }
    const Integer& discriminant() const { return disc_; }
    bool is_real() const { return D_ > 0; }
    bool operator==(const QuadField& o) const { return D_ == o.D_; }

private:
    Integer D_, disc_;
};

// a + b*sqrt(D)
class QuadElem {
public:
    QuadElem(const QuadField& K, Rational a = 0, Rational b = 0);

    const Rational& a() const { return a_; }
    const Rational& b() const { return b_; }
    const Integer& D() const { return D_; }

    QuadElem operator+(const QuadElem& o) const;
    QuadElem operator-(const QuadElem& o) const;
    QuadElem operator*(const QuadElem& o) const;
    QuadElem operator/(const QuadElem& o) const;
    QuadElem operator-() const;
    bool operator==(const QuadElem& o) const;

    QuadElem conjugate() const;
    Rational norm() const;
    Rational trace() const;
    QuadElem pow(long e) const;
    bool is_integral() const;
    // Sign under the embedding sqrt(D) > 0; real fields only.
    int sign() const;
    std::string to_string() const;

private:
    Rational a_, b_;
    Integer D_;
};

Rational norm(const QuadElem& x);
Splitting splitting_at_3(const QuadField& K);

// Fundamental unit > 1 from the period of the continued fraction of the ring generator.
QuadElem fundamental_unit(const QuadField& K);

// Binary quadratic form a x^2 + b xy + c y^2, identified with the ideal [a, (b + sqrt(disc))/2].
struct BinaryForm {
    Integer a, b, c;
    Integer discriminant() const { return b * b - 4 * a * c; }
    bool operator==(const BinaryForm&) const = default;
    std::string to_string() const;
};

BinaryForm principal_form(const Integer& disc);
BinaryForm compose(const BinaryForm& f, const BinaryForm& g);
BinaryForm inverse(const BinaryForm& f);
// Reduced representative of a positive definite form.
BinaryForm reduce_definite(const BinaryForm& f);
// Generator of the ideal attached to f when that ideal is principal.
std::optional<QuadElem> principal_generator(const QuadField& K, const BinaryForm& f,
                                            unsigned long search_bound = 10000);
bool is_principal(const QuadField& K, const BinaryForm& f);
bool equivalent(const QuadField& K, const BinaryForm& f, const BinaryForm& g);

struct ClassGroup {
    std::vector<BinaryForm> generators;
    std::vector<Integer> structure;
    Integer class_number() const;
};

ClassGroup class_group(const QuadField& K, const Integer& disc_bound = 10000000);

// Element generating p^h for the prime p | 3 at which sqrt(D) = 1 (split) or the ramified prime.
struct PrimeGenerator {
    QuadElem generator;
    int h;
    Rational norm;
    unsigned long search_bound;
};

PrimeGenerator three_adic_prime_generator(const QuadField& K, unsigned long search_bound = 10000);

}  // namespace kummer
