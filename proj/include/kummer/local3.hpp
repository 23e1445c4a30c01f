#pragma once

#include "kummer/f3.hpp"
#include "kummer/residue.hpp"
#include "kummer/tower.hpp"

#include <optional>
#include <string>
#include <vector>

namespace kummer {

// Completion of F_n = Q(zeta_N, sqrt d) at a prime above 3. The prime is totally ramified in
// Q(zeta_N) with uniformizer zeta - 1; sqrt d is either in Z_3 (two places, sqrt d -> +-r with
// r = 1 mod 3) or generates the unramified quadratic extension (one place).
struct LocalPlace {
    Integer d;
    unsigned level = 0;
    int sign = 0;  // +1 or -1 at a split place, 0 at the inert place
    unsigned e = 0, f = 0;
    unsigned precision = 0;
    Integer root;  // r mod 3^precision at a split place

    std::string label() const;
};

// Throws PrecisionInsufficient when the factors of x^2 - d cannot be told apart mod 3^k.
std::vector<LocalPlace> complete_at_3(const TowerField& F, unsigned precision = 6);

// O_L / 3^k as W[pi] / E(pi), W = Z/3^k or Z/3^k[t]/(t^2 - d), E(pi) = Phi_N(1 + pi) Eisenstein.
// The rational case Q_3 uses E(pi) = pi - 3.
class LocalField {
public:
    using Elem = std::vector<Integer>;  // index j*f + i: coefficient of pi^j t^i

    explicit LocalField(const LocalPlace& place);
    static LocalField rationals(unsigned precision);

    unsigned e() const { return e_; }
    unsigned f() const { return f_; }
    unsigned degree() const { return e_ * f_; }
    unsigned precision() const { return k_; }
    const Integer& modulus() const { return M_; }
    bool contains_zeta3() const { return level_ >= 0; }

    Elem zero() const { return Elem(e_ * f_, 0); }
    Elem one() const;
    Elem from_integer(const Integer& a) const;
    Elem pi_power(unsigned n) const;
    // Image of a global element; its denominator must be prime to 3.
    Elem embed(const TElem& x) const;

    Elem add(const Elem& a, const Elem& b) const;
    Elem sub(const Elem& a, const Elem& b) const;
    Elem mul(const Elem& a, const Elem& b) const;
    Elem pow(const Elem& a, unsigned long n) const;
    Elem inverse_unit(const Elem& a) const;
    bool is_zero(const Elem& a) const;

    // pi-adic valuation; nullopt when a vanishes at the working precision.
    std::optional<unsigned> valuation(const Elem& a) const;
    // Number of pi-adic digits known for any element.
    unsigned digits() const { return e_ * k_; }

    // Cube classes: L^* / L^*3 as F_3 vectors [valuation mod 3, unit part...].
    std::size_t cube_class_dim() const { return 1 + free_.size(); }
    F3Vec cube_class(const Elem& a) const;
    // Elements whose classes are the standard basis vectors of the cube class space.
    std::vector<Elem> cube_class_basis() const;

private:
    LocalField(const Integer& d, unsigned f, unsigned precision, int level);
    void init_cube_classes();
    Elem wmul_scalar(const Elem& a, const Integer& c0, const Integer& c1) const;
    // Exponent vector of a 1-unit on the generators 1 + w pi^i, reduced modulo pi^cut.
    F3Vec unit_exponents(Elem u) const;
    // Split a = pi^v u and return u (requires enough precision).
    Elem unit_part(const Elem& a, unsigned v) const;

    Integer d_;
    unsigned e_, f_, k_;
    int level_;  // -1 for Q_3
    Integer M_;
    Integer r_;  // image of sqrt d in the split case
    bool split_ = true;
    std::vector<Integer> eis_;  // E(pi) low coefficients, length e (monic)
    Elem pi_e_unit_;            // pi^e = 3 * pi_e_unit_
    int unit_sign_ = 1;         // pi_e_unit_ mod pi as +-1
    std::vector<Elem> zeta_powers_;
    unsigned cut_ = 0;
    std::vector<F3Vec> relations_;
    std::vector<std::size_t> pivots_, free_;
};

// Norm from the completion to Q_3 written as 3^v * (+-1) * <u>.
struct LocalUnitClass {
    int valuation = 0;
    int teichmuller = 1;
    Residue3k unit{1, 1};
    Residue3k principal{1, 1};
};

LocalUnitClass local_norm_to_Q3(const TowerField& F, const TElem& x, const LocalPlace& v);

// log_4 <N_v(x)>, an exact coordinate on (1 + 3Z_3) known mod 3^(k-1).
Integer log_norm(const TowerField& F, const TElem& x, const LocalPlace& v);

// <N_v(x)> = 1 mod 3^(m+2) at every given place.
bool uhat_test(const TowerField& F, const TElem& x, const std::vector<LocalPlace>& places, unsigned m);

// Cube class of a global element at v; cubes of 3 are scaled away first.
F3Vec cube_class(const TowerField& F, const TElem& x, const LocalPlace& v);

// The degree-3 Hilbert pairing of a completion containing zeta_3, as an alternating matrix on
// the cube class space. Row a is the functional whose kernel is the norm group of L(cbrt a).
class HilbertPairing {
public:
    explicit HilbertPairing(const LocalField& L);

    const LocalField& field() const { return L_; }
    int symbol(const F3Vec& a, const F3Vec& b) const;
    int symbol(const LocalField::Elem& a, const LocalField::Elem& b) const;
    const std::vector<F3Vec>& matrix() const { return matrix_; }
    // Norm group of L(cbrt a) modulo cubes; throws DegenerateKummer when a is a cube.
    std::vector<F3Vec> norm_group(const LocalField::Elem& a) const;

private:
    LocalField L_;
    std::vector<F3Vec> matrix_;
};

// (a, b)_v in Z/3 for global a, b at a level-0 place.
int hilbert_symbol(const TowerField& F, const TElem& a, const TElem& b, const LocalPlace& v);

}  // namespace kummer
