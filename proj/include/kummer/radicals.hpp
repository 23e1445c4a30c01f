#pragma once

#include "kummer/biquad.hpp"
#include "kummer/f3.hpp"
#include "kummer/local3.hpp"
#include "kummer/units.hpp"

#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace kummer {

enum class RadicalLabel { Uhat, Utilde, A, T, B, D0, Dminus1, D1, Ambient };

std::string to_string(RadicalLabel label);

// A subspace of F^*/F^*3 written over the engine's ambient generators (3, eps[, eta], then any
// virtual units); the un-primed form carries a trailing zeta3 coordinate.
struct RadicalSpace {
    RadicalLabel label = RadicalLabel::Uhat;
    std::vector<std::string> generators;
    std::vector<F3Vec> basis;  // reduced echelon form
    bool with_zeta3 = false;

    RadicalSpace() = default;
    RadicalSpace(RadicalLabel label, std::vector<std::string> generators, const std::vector<F3Vec>& span,
                 bool with_zeta3 = false);

    std::size_t ambient_dim() const { return generators.size(); }
    std::size_t dim() const { return basis.size(); }
    bool contains(const F3Vec& v) const;
    bool contains(const RadicalSpace& other) const;
    // Adjoin the zeta3 coordinate and its class.
    RadicalSpace unprimed() const;
    // Project away the zeta3 coordinate.
    RadicalSpace primed() const;
    RadicalSpace relabel(RadicalLabel l) const;

    // Multiplicative form of each basis vector, e.g. "eps^2*eta".
    std::vector<std::string> describe() const;
    bool operator==(const RadicalSpace& o) const;
};

// Exponent vector of 3 in the primed ambient.
F3Vec three_class(std::size_t ambient_dim);

struct XCircData {
    enum class Source { InputTable, CapitulationProbe, Unknown };
    Integer order = 1;
    bool gamma_action_trivial = true;
    Source source = Source::Unknown;
};

std::string to_string(XCircData::Source source);

// x (x) 3^-level with exponents on a fixed generator list, reduced mod 3^level.
struct TensorClass {
    std::vector<long> exponents;
    unsigned level = 1;

    TensorClass(std::vector<long> exponents, unsigned level);
    // 3 * (x (x) 3^-2) = x (x) 3^-1.
    TensorClass times_three() const;
    bool is_zero() const;
    // Order as a power of 3.
    unsigned long order() const;
};

struct RadicalOptions {
    unsigned precision = 6;
    // Seconds allowed for the level-2 norm approximation; 0 disables it.
    double level2_budget = 600;
    unsigned long search_bound = 10000;
};

struct UniversalNorms {
    RadicalSpace space;
    F3Vec e1;  // generator of Uhat / Utilde (empty when the two agree)
    std::size_t index_exponent = 0;
};

struct RadicalComparison {
    struct Pair {
        RadicalLabel a, b;
        std::size_t intersection_dim;
        std::size_t a_mod_b;  // dim A - dim (A n B)
        std::size_t b_mod_a;
    };
    std::vector<Pair> pairs;
    std::size_t common_dim = 0;  // dim of the intersection of all spaces
    // dim B - dim X for X in {Uhat, A, T}, when B and X are present.
    std::optional<std::size_t> b_over_uhat, b_over_a, b_over_t;
};

// Throws AmbientMismatch unless all spaces share generators and zeta3 convention.
RadicalComparison compare_radicals(const std::vector<RadicalSpace>& spaces);

// The radical engines for one d. Level-1 and level-2 data are built lazily and cached.
class RadicalEngine {
public:
    RadicalEngine(const Integer& d, XCircData xcirc, RadicalOptions options = {});
    ~RadicalEngine();
    RadicalEngine(const RadicalEngine&) = delete;
    RadicalEngine& operator=(const RadicalEngine&) = delete;

    const BiquadField& field() const { return field_; }
    const SUnitBasis& sunits() const { return sunits_; }
    const std::vector<LocalPlace>& places() const { return places_; }
    const XCircData& xcirc() const { return xcirc_; }
    const RadicalOptions& options() const { return options_; }
    // Generators of the primed ambient: the 3-units (3, eps[, eta]) followed, when X° has order 3,
    // by the virtual units whose ideal becomes principal in F_1 (their class is then a 3-unit class).
    const std::vector<SUnitGenerator>& ambient_generators();
    std::vector<std::string> generator_names();
    // Precision of the local logarithms after any escalation.
    unsigned log_precision() const { return log_precision_; }

    // Image of the everywhere-local universal norms in the 3-units mod cubes. Throws RankMismatch
    // when the local log-norm map vanishes identically at every tried precision.
    RadicalSpace uhat_radical();
    // Global universal norms; throws Inconclusive when the level-1 norm index is not |X°|.
    UniversalNorms universal_norm_subgroup();
    // Kernel of the Hilbert symbols against zeta3 at the places above 3 (un-primed).
    RadicalSpace bp_radical();
    // Galois-fixed part of the level-1 local universal norms mod cubes.
    RadicalSpace ambient_radical();
    // D_i for i in {-1, 0, 1} from twisted norms of the level-1 universal norm approximation.
    RadicalSpace twisted_norm_radical(int i);
    // D_1 from D_0 and D_-1 using only level-1 cube classes.
    RadicalSpace derive_third_radical(const RadicalSpace& d0, const RadicalSpace& dm1);

    // Whether the level-2 approximation has been built.
    bool level2_ready() const;

private:
    struct Level1;
    struct Level2;
    Level1& level1();
    Level2& level2();
    void require_xcirc_order_three() const;
    std::vector<Integer> log_norms(const TowerField& F, const std::vector<TElem>& xs, unsigned precision) const;
    std::optional<F3Vec> express_over_sunits(const F3Vec& lattice_class);

    Integer d_;
    BiquadField field_;
    SUnitBasis sunits_;
    std::vector<LocalPlace> places_;
    XCircData xcirc_;
    RadicalOptions options_;
    unsigned log_precision_;
    std::optional<std::vector<SUnitGenerator>> ambient_;
    std::unique_ptr<Level1> level1_;
    std::unique_ptr<Level2> level2_;
    std::optional<UniversalNorms> utilde_;
};

}  // namespace kummer
