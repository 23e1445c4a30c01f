#pragma once

#include "kummer/f3.hpp"
#include "kummer/quadfield.hpp"
#include "kummer/tower.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace kummer {

// Power residue characters of order 3 or 9 at all degree-one primes above a set of
// rational primes l = 1 mod lcm(N, order) that split in Q(sqrt d).
class CharacterTable {
public:
    CharacterTable(const TowerField& F, unsigned order, std::size_t prime_count, std::uint64_t start = 100);

    unsigned order() const { return order_; }
    std::size_t size() const { return width_; }
    const std::vector<std::uint64_t>& primes() const { return primes_; }
    void add_primes(std::size_t count);
    // Values in Z/order, one per embedding. The element must be a unit at every prime used.
    std::vector<int> values(const TElem& x) const;

private:
    struct Prime {
        std::uint64_t l;
        std::vector<std::uint64_t> zeta_images;
        std::uint64_t root_d;
        std::vector<std::uint64_t> mu_powers;  // w^0 .. w^(order-1)
    };
    TowerField field_;
    unsigned order_;
    std::uint64_t next_;
    std::vector<std::uint64_t> primes_;
    std::vector<Prime> data_;
    std::size_t width_ = 0;
};

// Exact cube root in F_n, or nothing when x is not a cube.
std::optional<TElem> cube_root(const TowerField& F, const TElem& x);

// Generators whose classes are meant to form a basis of the 3-units modulo torsion.
struct UnitSystem {
    std::vector<TElem> gens;
    std::vector<std::string> names;
};

// A 3-saturated system of 3-units with exact discrete logarithms modulo cubes (and modulo
// ninth powers when the table has order 9). Coordinates are [torsion, gens...].
class UnitLattice {
public:
    UnitLattice(const TowerField& F, UnitSystem system, unsigned char_order = 3,
                std::size_t expected_rank = 0);

    const TowerField& field() const { return field_; }
    const UnitSystem& system() const { return system_; }
    std::size_t rank() const { return system_.gens.size(); }
    // Number of cube roots adjoined while saturating.
    std::size_t roots_adjoined() const { return roots_adjoined_; }
    const CharacterTable& characters() const { return chars_; }

    // Exponents modulo 3 (or 9) on [torsion, gens...]; throws if x is outside the span.
    std::vector<int> log(const TElem& x, unsigned modulus = 3) const;
    TElem evaluate(const std::vector<long>& exponents) const;

private:
    void saturate();
    std::vector<std::vector<int>> matrix() const;

    TowerField field_;
    UnitSystem system_;
    CharacterTable chars_;
    std::vector<std::vector<int>> rows_;  // character values of [torsion, gens...]
    std::size_t roots_adjoined_ = 0;
};

// Circular units of Q(zeta_N): 1 - zeta and (1 - zeta^a)/(1 - zeta) for a in (Z/N)^*/{+-1}, a != 1.
std::vector<std::pair<std::string, TElem>> cyclotomic_units(const TowerField& F);
// prod_{c in H} (1 - zeta_N zeta_D^c), H the kernel of the character of Q(sqrt d), D = |disc|.
TElem quadratic_circular_unit(const TowerField& F);

// Unit rank plus the number of primes above 3: the Z-rank of the 3-units modulo torsion.
std::size_t sunit_rank(const TowerField& F, unsigned primes_above_3);

}  // namespace kummer
