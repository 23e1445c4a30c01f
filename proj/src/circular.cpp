#include "kummer/circular.hpp"

namespace kummer {

UnitLattice circular_sunit_basis(const TowerField& Fn, const SUnitBasis& base, unsigned char_order) {
    UnitSystem sys;
    for (auto& [name, u] : cyclotomic_units(Fn)) {
        sys.gens.push_back(std::move(u));
        sys.names.push_back(name);
    }
    const TElem xi = quadratic_circular_unit(Fn);
    const unsigned conjugates = Fn.phi() / 2 - 1;
    for (unsigned j = 0; j < conjugates; ++j) {
        sys.gens.push_back(Fn.sigma(xi, j));
        sys.names.push_back(j == 0 ? "xi" : j == 1 ? "s(xi)" : "s^" + std::to_string(j) + "(xi)");
    }
    for (const auto& g : base.free_generators) {
        if (g.name == "3") continue;
        sys.gens.push_back(Fn.level() == 0 ? g.value : Fn.embed_from_base(g.value));
        sys.names.push_back(g.name);
    }
    const unsigned s = base.size() - 1;
    return UnitLattice(Fn, std::move(sys), char_order, sunit_rank(Fn, s));
}

}  // namespace kummer
