#include "kummer/residue.hpp"

#include "kummer/errors.hpp"

#include <stdexcept>

namespace kummer {

Residue3k::Residue3k(Integer value, unsigned k) : value_(mod(value, pow3(k))), k_(k) {
    if (k == 0) throw std::invalid_argument("Residue3k precision must be positive");
}

bool Residue3k::is_unit() const { return !mpz_divisible_ui_p(value_.get_mpz_t(), 3); }

Residue3k Residue3k::reduce(unsigned k) const {
    if (k > k_) throw PrecisionInsufficient("cannot raise residue precision");
    return Residue3k(value_, k);
}

static void same_precision(const Residue3k& a, const Residue3k& b) {
    if (a.precision() != b.precision())
        throw std::invalid_argument("Residue3k precision mismatch");
}

Residue3k Residue3k::operator+(const Residue3k& o) const {
    same_precision(*this, o);
    return {value_ + o.value_, k_};
}

Residue3k Residue3k::operator-(const Residue3k& o) const {
    same_precision(*this, o);
    return {value_ - o.value_, k_};
}

Residue3k Residue3k::operator*(const Residue3k& o) const {
    same_precision(*this, o);
    return {value_ * o.value_, k_};
}

Residue3k Residue3k::operator-() const { return {-value_, k_}; }

Residue3k Residue3k::inverse() const { return {inv_mod(value_, modulus()), k_}; }

Residue3k Residue3k::pow(const Integer& e) const {
    Integer m = modulus(), r;
    if (e < 0) return inverse().pow(-e);
    mpz_powm(r.get_mpz_t(), value_.get_mpz_t(), e.get_mpz_t(), m.get_mpz_t());
    return {r, k_};
}

Residue3k teichmuller_free_part(const Residue3k& u) {
    if (!u.is_unit()) throw NotAUnit("teichmuller_free_part of a non-unit");
    if (mod(u.value(), 3) == 1) return u;
    return -u;
}

Integer log4(const Residue3k& u) {
    const unsigned k = u.precision();
    if (mod(u.value(), 3) != 1) throw NotAUnit("log4 needs a 1-unit");
    Integer a = 0;
    Residue3k four(4, k);
    Residue3k rest = u;
    // 4^(3^j) = 1 + 3^(j+1) * (unit), so digits are read off one level at a time.
    for (unsigned j = 0; j + 1 < k; ++j) {
        Integer step = pow3(j);
        Residue3k g = four.pow(step);
        Integer lvl = pow3(j + 2);
        for (int c = 0; c < 3; ++c) {
            if (mod(rest.value() - 1, lvl) == 0) break;
            rest = rest * g.inverse();
            a += step;
        }
        if (mod(rest.value() - 1, lvl) != 0) throw std::logic_error("log4 digit search failed");
    }
    return mod(a, pow3(k - 1));
}

Integer eval(const IntPoly& f, const Integer& x) {
    Integer r = 0;
    for (auto it = f.rbegin(); it != f.rend(); ++it) r = r * x + *it;
    return r;
}

IntPoly derivative(const IntPoly& f) {
    IntPoly g;
    for (std::size_t i = 1; i < f.size(); ++i) g.push_back(f[i] * static_cast<unsigned long>(i));
    return g;
}

Residue3k hensel_lift_root(const IntPoly& f, const Residue3k& r0, unsigned k_target) {
    if (mod(eval(f, r0.value()), 3) != 0)
        throw std::invalid_argument("hensel_lift_root: r0 is not a root mod 3");
    IntPoly df = derivative(f);
    if (mod(eval(df, r0.value()), 3) == 0)
        throw NonSimpleRoot("derivative vanishes mod 3 at the starting root");
    Integer r = mod(r0.value(), 3);
    unsigned k = 1;
    while (k < k_target) {
        k = std::min(2 * k, k_target);
        Integer m = pow3(k);
        r = mod(r - eval(f, r) * inv_mod(eval(df, r), m), m);
    }
    return {r, k_target};
}

}  // namespace kummer
