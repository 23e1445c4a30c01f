#include "kummer/radicals.hpp"

#include "kummer/circular.hpp"
#include "kummer/errors.hpp"

#include <algorithm>
#include <chrono>

namespace kummer {

namespace {

constexpr unsigned kMaxLogPrecision = 48;

F3Vec reduce3(const std::vector<int>& v) {
    F3Vec out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) out[i] = f3(v[i]);
    return out;
}

std::vector<int> drop_torsion(std::vector<int> v) {
    v.erase(v.begin());
    return v;
}

int mod9(long v) { return static_cast<int>(((v % 9) + 9) % 9); }

}  // namespace

std::string to_string(RadicalLabel label) {
    switch (label) {
        case RadicalLabel::Uhat: return "Uhat";
        case RadicalLabel::Utilde: return "Utilde";
        case RadicalLabel::A: return "A";
        case RadicalLabel::T: return "T";
        case RadicalLabel::B: return "B";
        case RadicalLabel::D0: return "D0";
        case RadicalLabel::Dminus1: return "D-1";
        case RadicalLabel::D1: return "D1";
        case RadicalLabel::Ambient: return "Ambient";
    }
    return "?";
}

std::string to_string(XCircData::Source source) {
    switch (source) {
        case XCircData::Source::InputTable: return "input-table";
        case XCircData::Source::CapitulationProbe: return "capitulation-probe";
        case XCircData::Source::Unknown: return "unknown";
    }
    return "?";
}

RadicalSpace::RadicalSpace(RadicalLabel l, std::vector<std::string> gens, const std::vector<F3Vec>& span, bool zeta3)
    : label(l), generators(std::move(gens)), with_zeta3(zeta3) {
    for (const auto& v : span)
        if (v.size() != generators.size()) throw std::invalid_argument("radical vector has the wrong length");
    basis = echelon_basis(span, generators.size());
}

bool RadicalSpace::contains(const F3Vec& v) const { return span_contains(basis, v, ambient_dim()); }

bool RadicalSpace::contains(const RadicalSpace& other) const {
    if (other.generators != generators) throw AmbientMismatch("radicals live over different generators");
    return span_subset(other.basis, basis, ambient_dim());
}

RadicalSpace RadicalSpace::unprimed() const {
    if (with_zeta3) return *this;
    auto gens = generators;
    gens.push_back("zeta3");
    std::vector<F3Vec> span;
    for (auto v : basis) {
        v.push_back(0);
        span.push_back(v);
    }
    F3Vec z(gens.size(), 0);
    z.back() = 1;
    span.push_back(z);
    return RadicalSpace(label, gens, span, true);
}

RadicalSpace RadicalSpace::primed() const {
    if (!with_zeta3) return *this;
    auto gens = generators;
    gens.pop_back();
    std::vector<F3Vec> span;
    for (auto v : basis) {
        v.pop_back();
        span.push_back(v);
    }
    return RadicalSpace(label, gens, span, false);
}

RadicalSpace RadicalSpace::relabel(RadicalLabel l) const {
    RadicalSpace r = *this;
    r.label = l;
    return r;
}

std::vector<std::string> RadicalSpace::describe() const {
    std::vector<std::string> out;
    for (const auto& v : basis) {
        std::string s;
        for (std::size_t i = 0; i < v.size(); ++i) {
            if (!v[i]) continue;
            if (!s.empty()) s += "*";
            s += generators[i];
            if (v[i] == 2) s += "^2";
        }
        out.push_back(s.empty() ? "1" : s);
    }
    return out;
}

bool RadicalSpace::operator==(const RadicalSpace& o) const {
    return generators == o.generators && with_zeta3 == o.with_zeta3 && basis == o.basis;
}

F3Vec three_class(std::size_t ambient_dim) {
    F3Vec v(ambient_dim, 0);
    v[0] = 1;
    return v;
}

TensorClass::TensorClass(std::vector<long> ex, unsigned lvl) : exponents(std::move(ex)), level(lvl) {
    if (level == 0) throw std::invalid_argument("tensor level must be positive");
    const long q = pow3(level).get_si();
    for (auto& e : exponents) e = ((e % q) + q) % q;
}

TensorClass TensorClass::times_three() const {
    if (level == 1) return TensorClass(std::vector<long>(exponents.size(), 0), 1);
    return TensorClass(exponents, level - 1);
}

bool TensorClass::is_zero() const {
    return std::all_of(exponents.begin(), exponents.end(), [](long e) { return e == 0; });
}

unsigned long TensorClass::order() const {
    unsigned long ord = 1;
    for (TensorClass t = *this; !t.is_zero(); t = t.times_three()) ord *= 3;
    return ord;
}

RadicalComparison compare_radicals(const std::vector<RadicalSpace>& spaces) {
    if (spaces.size() < 2) throw std::invalid_argument("comparison needs two radicals");
    for (const auto& s : spaces)
        if (s.generators != spaces[0].generators || s.with_zeta3 != spaces[0].with_zeta3)
            throw AmbientMismatch("radical " + to_string(s.label) + " has a different ambient");
    const std::size_t n = spaces[0].ambient_dim();
    RadicalComparison out;
    std::vector<F3Vec> common = spaces[0].basis;
    for (std::size_t i = 0; i < spaces.size(); ++i) {
        common = span_intersection(common, spaces[i].basis, n);
        for (std::size_t j = i + 1; j < spaces.size(); ++j) {
            const std::size_t k = span_dim(span_intersection(spaces[i].basis, spaces[j].basis, n), n);
            out.pairs.push_back({spaces[i].label, spaces[j].label, k, spaces[i].dim() - k, spaces[j].dim() - k});
        }
    }
    out.common_dim = span_dim(common, n);
    const RadicalSpace* b = nullptr;
    for (const auto& s : spaces)
        if (s.label == RadicalLabel::B) b = &s;
    if (b) {
        for (const auto& s : spaces) {
            if (!b->contains(s)) continue;
            const std::size_t delta = b->dim() - s.dim();
            if (s.label == RadicalLabel::Uhat) out.b_over_uhat = delta;
            if (s.label == RadicalLabel::A) out.b_over_a = delta;
            if (s.label == RadicalLabel::T) out.b_over_t = delta;
        }
    }
    return out;
}

struct RadicalEngine::Level1 {
    TowerField F1;
    UnitLattice lattice;
    std::size_t r = 0;
    std::vector<SUnitGenerator> ambient;  // 3-units of F, then virtual units principal in F_1
    std::vector<F3Vec> sunit_classes;     // ambient classes in Lambda_1 / 3
    std::vector<F3Vec> circular_classes;  // cyclotomic units and xi conjugates
    std::vector<std::vector<int>> sigma;  // sigma[a][b]: coordinate a of sigma(g_b), mod 9
    std::vector<Integer> ell;
    std::optional<std::size_t> pivot;
    std::vector<std::vector<int>> ucols;  // basis of Uhat'_1 mod 9 in Lambda coordinates
    std::vector<std::vector<int>> sigma_u;  // column c: sigma(ucols[c]) in U coordinates
    std::optional<F3Vec> phi;

    Level1(TowerField F, UnitLattice L) : F1(std::move(F)), lattice(std::move(L)), r(lattice.rank()) {}

    std::size_t udim() const { return ucols.size(); }

    std::vector<int> to_u(const std::vector<int>& x) const {
        std::vector<int> out;
        for (std::size_t i = 0; i < r; ++i)
            if (!pivot || i != *pivot) out.push_back(x[i]);
        return out;
    }
    std::vector<int> from_u(const std::vector<int>& c) const {
        std::vector<int> out(r, 0);
        for (std::size_t k = 0; k < c.size(); ++k)
            for (std::size_t t = 0; t < r; ++t) out[t] = mod9(out[t] + static_cast<long>(c[k]) * ucols[k][t]);
        return out;
    }
    std::vector<int> sigma_on_u(const std::vector<int>& c) const {
        std::vector<int> out(c.size(), 0);
        for (std::size_t k = 0; k < c.size(); ++k)
            for (std::size_t t = 0; t < c.size(); ++t)
                out[t] = mod9(out[t] + static_cast<long>(c[k]) * sigma_u[k][t]);
        return out;
    }
};

struct RadicalEngine::Level2 {
    std::vector<F3Vec> norms;  // N_{F2/F1} of the level-2 generators in Lambda_1 / 3
    double seconds = 0;
};

RadicalEngine::RadicalEngine(const Integer& d, XCircData xcirc, RadicalOptions options)
    : d_(d), field_(d), sunits_(sunit_basis(field_, options.search_bound)),
      places_(complete_at_3(field_.field(), options.precision)), xcirc_(xcirc), options_(options),
      log_precision_(std::max(options.precision, 8u)) {}

RadicalEngine::~RadicalEngine() = default;

const std::vector<SUnitGenerator>& RadicalEngine::ambient_generators() {
    if (!ambient_) {
        auto gens = sunits_.free_generators;
        if (xcirc_.order == 3) {
            const Level1& l1 = level1();
            for (std::size_t i = sunits_.size(); i < l1.ambient.size(); ++i) gens.push_back(l1.ambient[i]);
        }
        ambient_ = gens;
    }
    return *ambient_;
}

std::vector<std::string> RadicalEngine::generator_names() {
    std::vector<std::string> out;
    for (const auto& g : ambient_generators()) out.push_back(g.name);
    return out;
}

bool RadicalEngine::level2_ready() const { return level2_ != nullptr; }

void RadicalEngine::require_xcirc_order_three() const {
    if (xcirc_.order != 3 || !xcirc_.gamma_action_trivial)
        throw PreconditionXCirc("twisted norm radicals need X° of order 3 with trivial Galois action (order " +
                                kummer::to_string(xcirc_.order) + ")");
}

std::vector<Integer> RadicalEngine::log_norms(const TowerField& F, const std::vector<TElem>& xs,
                                              unsigned precision) const {
    LocalPlace v = places_.at(0);
    v.precision = precision;
    std::vector<Integer> out;
    for (const auto& x : xs) out.push_back(log_norm(F, x, v));
    return out;
}

RadicalSpace RadicalEngine::uhat_radical() {
    // universal norms are 3-units: virtual-unit coordinates stay 0
    const auto names = generator_names();
    const std::size_t n = names.size(), m = sunits_.size();
    auto pad = [&](const std::vector<F3Vec>& vs) {
        std::vector<F3Vec> out;
        for (auto v : vs) {
            v.resize(n, 0);
            out.push_back(v);
        }
        return out;
    };
    if (field_.s() == 1) {
        std::vector<F3Vec> full;
        for (std::size_t i = 0; i < m; ++i) {
            F3Vec e(m, 0);
            e[i] = 1;
            full.push_back(e);
        }
        return RadicalSpace(RadicalLabel::Uhat, names, pad(full));
    }

    for (unsigned k = log_precision_; k <= kMaxLogPrecision; k *= 2) {
        const auto ell = log_norms(field_.field(), sunits_.values(), k);
        const Integer q = pow3(k - 1);
        std::optional<int> vmin;
        for (const auto& l : ell)
            if (mod(l, q) != 0) vmin = std::min(vmin.value_or(1 << 20), valuation(l, 3));
        if (!vmin) continue;
        log_precision_ = k;
        F3Vec functional(m, 0);
        const Integer scale = pow3(*vmin);
        for (std::size_t i = 0; i < m; ++i)
            if (mod(ell[i], q) != 0) functional[i] = f3(mod(ell[i] / scale, 3).get_si());
        return RadicalSpace(RadicalLabel::Uhat, names, pad(kernel_f3(F3Matrix::from_rows({functional}, m))));
    }
    throw RankMismatch("local log-norms of the 3-units vanish mod 3^" + std::to_string(kMaxLogPrecision - 1) +
                       "; expected dimension " + std::to_string(m - 1));
}

RadicalEngine::Level1& RadicalEngine::level1() {
    if (level1_) return *level1_;
    TowerField F1(d_, 1);
    auto L = std::make_unique<Level1>(F1, circular_sunit_basis(F1, sunits_, 9));
    Level1& l1 = *L;
    const std::size_t r = l1.r;
    auto log_at = [&](const TElem& x, unsigned m) { return drop_torsion(l1.lattice.log(x, m)); };

    for (const auto& g : sunits_.free_generators) {
        l1.ambient.push_back(g);
        l1.sunit_classes.push_back(reduce3(log_at(F1.embed_from_base(g.value), 3)));
    }
    for (auto g : virtual_units(field_, sunits_, options_.search_bound)) {
        std::vector<int> c;
        try {
            c = log_at(F1.embed_from_base(g.value), 3);
        } catch (const std::runtime_error&) {
            continue;  // b stays non-principal in F_1
        }
        g.provenance += "; principal in F_1";
        l1.ambient.push_back(g);
        l1.sunit_classes.push_back(reduce3(c));
    }
    for (const auto& [name, u] : cyclotomic_units(F1)) l1.circular_classes.push_back(reduce3(log_at(u, 3)));
    const TElem xi = quadratic_circular_unit(F1);
    for (unsigned j = 0; j + 1 < F1.phi() / 2; ++j) l1.circular_classes.push_back(reduce3(log_at(F1.sigma(xi, j), 3)));

    l1.sigma.assign(r, std::vector<int>(r, 0));
    const auto& gens = l1.lattice.system().gens;
    for (std::size_t b = 0; b < r; ++b) {
        const auto col = log_at(F1.sigma(gens[b]), 9);
        for (std::size_t a = 0; a < r; ++a) l1.sigma[a][b] = mod9(col[a]);
    }

    if (field_.s() == 2) {
        for (unsigned k = std::max(log_precision_, 12u);; k *= 2) {
            if (k > kMaxLogPrecision)
                throw RankMismatch("level-1 local log-norms vanish mod 3^" + std::to_string(kMaxLogPrecision - 1));
            l1.ell = log_norms(F1, gens, k);
            const Integer q = pow3(k - 1);
            std::optional<int> vmin;
            for (auto& l : l1.ell) {
                l = mod(l, q);
                if (l != 0) vmin = std::min(vmin.value_or(1 << 20), valuation(l, 3));
            }
            if (!vmin || static_cast<unsigned>(*vmin) + 2 > k - 1) continue;
            std::size_t j = 0;
            while (l1.ell[j] == 0 || valuation(l1.ell[j], 3) != *vmin) ++j;
            l1.pivot = j;
            const Integer scale = pow3(*vmin);
            const Integer inv_j = inv_mod(l1.ell[j] / scale, 9);
            for (std::size_t i = 0; i < r; ++i) {
                if (i == j) continue;
                std::vector<int> col(r, 0);
                col[i] = 1;
                col[j] = mod9(-mod((l1.ell[i] / scale) * inv_j, 9).get_si());
                l1.ucols.push_back(col);
            }
            break;
        }
    } else {
        l1.ell.assign(r, 0);
        for (std::size_t i = 0; i < r; ++i) {
            std::vector<int> col(r, 0);
            col[i] = 1;
            l1.ucols.push_back(col);
        }
    }
    for (const auto& col : l1.ucols) {
        std::vector<int> img(r, 0);
        for (std::size_t a = 0; a < r; ++a)
            for (std::size_t b = 0; b < r; ++b) img[a] = mod9(img[a] + static_cast<long>(l1.sigma[a][b]) * col[b]);
        // sigma preserves Uhat_1: the pivot coordinate must follow from the others
        const auto back = l1.from_u(l1.to_u(img));
        if (back != img) throw std::logic_error("sigma does not preserve the level-1 universal norms");
        l1.sigma_u.push_back(l1.to_u(img));
    }
    level1_ = std::move(L);
    return *level1_;
}

RadicalEngine::Level2& RadicalEngine::level2() {
    if (level2_) return *level2_;
    if (options_.level2_budget <= 0) throw Inconclusive("level-2 norm approximation disabled (budget 0)");
    Level1& l1 = level1();
    const auto t0 = std::chrono::steady_clock::now();
    TowerField F2(d_, 2);
    const UnitLattice L2 = circular_sunit_basis(F2, sunits_, 3);
    auto L = std::make_unique<Level2>();
    for (const auto& g : L2.system().gens)
        L->norms.push_back(reduce3(drop_torsion(l1.lattice.log(F2.norm_down(g), 3))));
    L->seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (L->seconds > options_.level2_budget)
        throw Inconclusive("level-2 norm approximation exceeded its budget of " +
                           std::to_string(options_.level2_budget) + " s");
    level2_ = std::move(L);
    return *level2_;
}

std::optional<F3Vec> RadicalEngine::express_over_sunits(const F3Vec& lattice_class) {
    const Level1& l1 = level1();
    return span_coordinates(l1.sunit_classes, lattice_class, l1.r);
}

UniversalNorms RadicalEngine::universal_norm_subgroup() {
    if (utilde_) return *utilde_;
    const RadicalSpace uhat = uhat_radical();
    if (xcirc_.order == 1) {
        utilde_ = UniversalNorms{uhat.relabel(RadicalLabel::Utilde), {}, 0};
        return *utilde_;
    }
    require_xcirc_order_three();
    Level1& l1 = level1();
    const TowerField& F0 = field_.field();
    UnitSystem sys;
    for (const auto& g : ambient_generators()) {
        sys.gens.push_back(g.value);
        sys.names.push_back(g.name);
    }
    const std::size_t n = sys.gens.size();
    UnitLattice L0(F0, std::move(sys), 3, n);
    std::vector<F3Vec> norms{three_class(n)};
    for (const auto& g : l1.lattice.system().gens) norms.push_back(reduce3(drop_torsion(L0.log(l1.F1.norm_down(g), 3))));
    const RadicalSpace utilde(RadicalLabel::Utilde, uhat.generators, span_intersection(norms, uhat.basis, n));
    const std::size_t index = uhat.dim() - utilde.dim();
    if (index != 1)
        throw Inconclusive("level-1 norms have index 3^" + std::to_string(index) + " in Uhat, expected 3");
    F3Vec e1;
    for (const auto& b : uhat.basis)
        if (!utilde.contains(b)) {
            e1 = b;
            break;
        }
    utilde_ = UniversalNorms{utilde, e1, index};
    return *utilde_;
}

RadicalSpace RadicalEngine::bp_radical() {
    const TowerField& F0 = field_.field();
    std::vector<TElem> gens;
    for (const auto& g : ambient_generators()) gens.push_back(g.value);
    auto names = generator_names();
    gens.push_back(field_.omega());
    names.push_back("zeta3");
    std::vector<F3Vec> rows(places_.size(), F3Vec(gens.size(), 0));
    for (std::size_t p = 0; p < places_.size(); ++p)
        for (std::size_t g = 0; g < gens.size(); ++g)
            rows[p][g] = f3(hilbert_symbol(F0, gens[g], field_.omega(), places_[p]));
    return RadicalSpace(RadicalLabel::B, names, kernel_f3(F3Matrix::from_rows(rows, gens.size())), true);
}

RadicalSpace RadicalEngine::ambient_radical() {
    Level1& l1 = level1();
    const std::size_t u = l1.udim();
    F3Matrix m(u, u);
    for (std::size_t c = 0; c < u; ++c)
        for (std::size_t t = 0; t < u; ++t) m.set(t, c, l1.sigma_u[c][t] - (t == c ? 1 : 0));
    std::vector<F3Vec> span;
    for (const auto& fixed : kernel_f3(m)) {
        const auto lam = reduce3(l1.from_u(std::vector<int>(fixed.begin(), fixed.end())));
        auto coords = express_over_sunits(lam);
        if (!coords) throw Inconclusive("Galois-fixed level-1 class " + kummer::to_string(lam) + " does not come from F");
        span.push_back(*coords);
    }
    return RadicalSpace(RadicalLabel::Ambient, generator_names(), span);
}

RadicalSpace RadicalEngine::twisted_norm_radical(int i) {
    if (i < -1 || i > 1) throw std::invalid_argument("twist index must be -1, 0 or 1");
    require_xcirc_order_three();
    Level1& l1 = level1();
    const std::size_t u = l1.udim(), r = l1.r;

    if (!l1.phi) {
        const Level2& l2 = level2();
        std::vector<F3Vec> ucols3;
        for (const auto& c : l1.ucols) ucols3.push_back(reduce3(c));
        std::vector<F3Vec> approx;
        for (const auto& v : span_intersection(l2.norms, ucols3, r)) {
            const auto cu = l1.to_u(std::vector<int>(v.begin(), v.end()));
            approx.push_back(reduce3(cu));
        }
        const std::size_t dim = span_dim(approx, u);
        if (dim + 1 != u)
            throw Inconclusive("level-2 norms have index 3^" + std::to_string(u - dim) +
                               " in the level-1 universal norms, expected 3");
        l1.phi = annihilator(approx, u).at(0);
    }
    const F3Vec& phi = *l1.phi;

    // Z-basis of ker phi in U coordinates
    std::size_t jj = 0;
    while (!phi[jj]) ++jj;
    std::vector<std::vector<int>> mb;
    for (std::size_t k = 0; k < u; ++k) {
        std::vector<int> v(u, 0);
        if (k == jj) {
            v[jj] = 3;
        } else {
            v[k] = 1;
            v[jj] = mod9(-static_cast<long>(phi[k]) * (phi[jj] == 1 ? 1 : 2));
        }
        mb.push_back(v);
    }
    const int kappa = i == 0 ? 1 : i == 1 ? 4 : 7;
    auto nu = [&](const std::vector<int>& c) {
        std::vector<int> out(u, 0), x = c;
        int k = 1;
        for (int t = 0; t < 3; ++t) {
            for (std::size_t s = 0; s < u; ++s) out[s] = mod9(out[s] + static_cast<long>(k) * x[s]);
            x = l1.sigma_on_u(x);
            k = mod9(k * kappa);
        }
        return out;
    };
    std::vector<std::vector<int>> imgs;
    for (const auto& m : mb) imgs.push_back(nu(m));

    std::vector<F3Vec> span;
    F3Matrix a3(u, mb.size());
    for (std::size_t m = 0; m < mb.size(); ++m) {
        span.push_back(reduce3(imgs[m]));
        for (std::size_t s = 0; s < u; ++s) a3.set(s, m, imgs[m][s]);
    }
    for (const auto& k : kernel_f3(a3)) {
        std::vector<int> y(u, 0);
        for (std::size_t m = 0; m < mb.size(); ++m)
            for (std::size_t s = 0; s < u; ++s) y[s] = mod9(y[s] + static_cast<long>(k[m]) * imgs[m][s]);
        F3Vec third(u);
        for (std::size_t s = 0; s < u; ++s) {
            if (y[s] % 3) throw std::logic_error("twisted norm kernel lift is not divisible by 3");
            third[s] = f3(y[s] / 3);
        }
        span.push_back(third);
    }
    const std::size_t n = l1.ambient.size();
    std::vector<F3Vec> over_f{three_class(n)};
    for (const auto& v : echelon_basis(span, u)) {
        const auto lam = reduce3(l1.from_u(std::vector<int>(v.begin(), v.end())));
        auto coords = express_over_sunits(lam);
        if (!coords)
            throw Inconclusive("twisted norm image " + kummer::to_string(lam) + " leaves the classes of F (twist " + std::to_string(i) + ")");
        over_f.push_back(*coords);
    }
    const RadicalLabel label = i == 0 ? RadicalLabel::D0 : i == 1 ? RadicalLabel::D1 : RadicalLabel::Dminus1;
    return RadicalSpace(label, generator_names(), over_f);
}

RadicalSpace RadicalEngine::derive_third_radical(const RadicalSpace& d0, const RadicalSpace& dm1) {
    require_xcirc_order_three();
    const auto names = generator_names();
    const std::size_t n = names.size();
    const F3Vec three = three_class(n);
    for (const RadicalSpace* s : {&d0, &dm1})
        if (s->generators != names || s->with_zeta3 || s->dim() != 2 || !s->contains(three))
            throw PreconditionXCirc("third radical needs two planes containing 3 over " + std::to_string(n) +
                                    " generators");
    if (d0 == dm1 || span_equal(d0.basis, dm1.basis, n))
        throw PreconditionXCirc("third radical needs two distinct planes");

    const UniversalNorms un = universal_norm_subgroup();
    if (un.e1.empty()) throw PreconditionXCirc("universal norms coincide with Uhat; no distinguished e1");
    Level1& l1 = level1();
    auto lattice_class = [&](const F3Vec& x) {
        F3Vec out(l1.r, 0);
        for (std::size_t b = 0; b < n; ++b)
            if (x[b]) out = f3_add(out, f3_scale(l1.sunit_classes[b], x[b]));
        return out;
    };
    std::vector<F3Vec> m{l1.sunit_classes[0]};
    for (const auto& c : l1.circular_classes) m.push_back(c);
    const F3Vec e1 = lattice_class(un.e1);
    if (span_contains(m, e1, l1.r)) throw NormalizationFailed("e1 lies in the circular span at level 1");
    auto with_e1 = m;
    with_e1.push_back(e1);

    auto generator = [&](const RadicalSpace& s) {
        for (auto v : s.basis) {
            v[0] = 0;
            if (!f3_is_zero(v)) return v;
        }
        throw std::logic_error("plane has no generator besides 3");
    };
    auto e1_coefficient = [&](const F3Vec& beta) {
        const auto coords = span_coordinates(with_e1, lattice_class(beta), l1.r);
        if (!coords) throw NormalizationFailed("level-1 class of " + kummer::to_string(beta) + " has no order-9 lift");
        const std::uint8_t c = coords->back();
        if (!c) throw NormalizationFailed("class of " + kummer::to_string(beta) + " is not colinear to e1");
        return c;
    };
    const F3Vec b0 = generator(d0), bm1 = generator(dm1);
    const std::uint8_t c0 = e1_coefficient(b0), cm1 = e1_coefficient(bm1);
    const F3Vec sum = f3_add(b0, f3_scale(bm1, f3(static_cast<long>(c0) * cm1)));  // cm1^-1 = cm1
    if (f3_is_zero(sum)) throw NormalizationFailed("normalized generators cancel");
    return RadicalSpace(RadicalLabel::D1, names, {three, sum});
}

}  // namespace kummer
