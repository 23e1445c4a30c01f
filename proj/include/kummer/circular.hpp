#pragma once

#include "kummer/biquad.hpp"
#include "kummer/units.hpp"

namespace kummer {

// 3-units of F_n generated by the cyclotomic units, the conjugates sigma^j(xi) of the
// quadratic circular unit (j < phi(N)/2 - 1) and the free generators of F other than 3,
// saturated at 3. Throws RankDeficient when the saturated rank is short.
UnitLattice circular_sunit_basis(const TowerField& Fn, const SUnitBasis& base, unsigned char_order = 3);

}  // namespace kummer
