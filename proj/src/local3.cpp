#include "kummer/local3.hpp"

#include "kummer/errors.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <random>
#include <tuple>

namespace kummer {

namespace {

Integer binomial(unsigned n, unsigned k) {
    Integer r;
    mpz_bin_uiui(r.get_mpz_t(), n, k);
    return r;
}

unsigned v3_capped(const Integer& a, unsigned cap) {
    if (a == 0) return cap;
    return std::min<unsigned>(static_cast<unsigned>(valuation(a, 3)), cap);
}

Integer sqrt_root(const Integer& d, unsigned k) {
    return hensel_lift_root({-d, 0, 1}, Residue3k(1, 1), k).value();
}

}  // namespace

std::string LocalPlace::label() const {
    std::string s = "v(d=" + kummer::to_string(d) + ",n=" + std::to_string(level);
    if (sign > 0) s += ",sqrt d->+r";
    else if (sign < 0) s += ",sqrt d->-r";
    else s += ",inert";
    return s + ")";
}

std::vector<LocalPlace> complete_at_3(const TowerField& F, unsigned precision) {
    if (precision < 2) throw PrecisionInsufficient("precision 3^" + std::to_string(precision) +
                                                   " does not separate the local factors");
    std::vector<LocalPlace> out;
    const unsigned e = F.phi();
    if (mod(F.d(), 3) == 1) {
        const Integer r = sqrt_root(F.d(), precision);
        for (int sign : {1, -1}) out.push_back({F.d(), F.level(), sign, e, 1, precision, r});
    } else {
        out.push_back({F.d(), F.level(), 0, e, 2, precision, 0});
    }
    return out;
}

LocalField::LocalField(const Integer& d, unsigned f, unsigned precision, int level)
    : d_(d), e_(level < 0 ? 1 : static_cast<unsigned>(2 * pow3(level).get_ui())), f_(f), k_(precision),
      level_(level), M_(pow3(precision)) {}

LocalField::LocalField(const LocalPlace& place) : LocalField(place.d, place.f, place.precision, place.level) {
    if (k_ < 2) throw PrecisionInsufficient("local precision must be at least 3^2");
    split_ = place.sign != 0;
    if (split_) {
        r_ = sqrt_root(d_, k_);
        if (place.sign < 0) r_ = mod(-r_, M_);
    }
    // E(pi) = (1+pi)^(2m) + (1+pi)^m + 1
    const unsigned m = e_ / 2;
    std::vector<Integer> E(e_ + 1, 0);
    for (unsigned i = 0; i <= e_; ++i) E[i] += binomial(e_, i);
    for (unsigned i = 0; i <= m; ++i) E[i] += binomial(m, i);
    E[0] += 1;
    eis_.assign(E.begin(), E.begin() + e_);
    zeta_powers_.push_back(one());
    Elem z = add(one(), pi_power(1));
    for (unsigned j = 1; j < e_; ++j) zeta_powers_.push_back(mul(zeta_powers_.back(), z));
    init_cube_classes();
}

LocalField LocalField::rationals(unsigned precision) {
    LocalField L(Integer(1), 1, precision, -1);
    L.eis_ = {Integer(-3)};
    L.init_cube_classes();
    return L;
}

LocalField::Elem LocalField::one() const { return from_integer(1); }

LocalField::Elem LocalField::from_integer(const Integer& a) const {
    Elem x = zero();
    x[0] = mod(a, M_);
    return x;
}

LocalField::Elem LocalField::pi_power(unsigned n) const {
    if (n < e_) {
        Elem x = zero();
        x[n * f_] = 1;
        return x;
    }
    Elem base = zero();
    if (e_ == 1) base[0] = 3 % M_;
    else base[f_] = 1;
    return pow(base, n);
}

LocalField::Elem LocalField::embed(const TElem& x) const {
    if (level_ < 0) throw std::invalid_argument("global elements embed only into places of F_n");
    if (x.num.size() != 2 * e_) throw std::invalid_argument("element belongs to another tower level");
    if (mpz_divisible_ui_p(x.den.get_mpz_t(), 3)) throw NotAUnit("denominator divisible by 3");
    const Integer den_inv = inv_mod(x.den, M_);
    Elem out = zero();
    for (unsigned s = 0; s < 2; ++s)
        for (unsigned j = 0; j < e_; ++j) {
            Integer c = mod(x.num[s * e_ + j] * den_inv, M_);
            if (c == 0) continue;
            Integer c0 = c, c1 = 0;
            if (s == 1) {
                if (split_) c0 = mod(c * r_, M_);
                else {
                    c0 = 0;
                    c1 = c;
                }
            }
            out = add(out, wmul_scalar(zeta_powers_[j], c0, c1));
        }
    return out;
}

LocalField::Elem LocalField::wmul_scalar(const Elem& a, const Integer& c0, const Integer& c1) const {
    Elem out = zero();
    for (unsigned j = 0; j < e_; ++j) {
        if (f_ == 1) {
            out[j] = mod(a[j] * c0, M_);
        } else {
            const Integer& a0 = a[2 * j];
            const Integer& a1 = a[2 * j + 1];
            out[2 * j] = mod(a0 * c0 + d_ * a1 * c1, M_);
            out[2 * j + 1] = mod(a0 * c1 + a1 * c0, M_);
        }
    }
    return out;
}

LocalField::Elem LocalField::add(const Elem& a, const Elem& b) const {
    Elem r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = mod(a[i] + b[i], M_);
    return r;
}

LocalField::Elem LocalField::sub(const Elem& a, const Elem& b) const {
    Elem r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = mod(a[i] - b[i], M_);
    return r;
}

LocalField::Elem LocalField::mul(const Elem& a, const Elem& b) const {
    const unsigned len = 2 * e_ - 1;
    std::vector<Integer> r(len * f_, 0);
    for (unsigned j1 = 0; j1 < e_; ++j1)
        for (unsigned i1 = 0; i1 < f_; ++i1) {
            const Integer& x = a[j1 * f_ + i1];
            if (x == 0) continue;
            for (unsigned j2 = 0; j2 < e_; ++j2)
                for (unsigned i2 = 0; i2 < f_; ++i2) {
                    const Integer& y = b[j2 * f_ + i2];
                    if (y == 0) continue;
                    const unsigned t = (j1 + j2) * f_ + ((i1 + i2) & 1);
                    if (i1 + i2 == 2) r[t] += d_ * x * y;
                    else mpz_addmul(r[t].get_mpz_t(), x.get_mpz_t(), y.get_mpz_t());
                }
        }
    for (unsigned n = len; n-- > e_;)
        for (unsigned i = 0; i < f_; ++i) {
            Integer c = mod(r[n * f_ + i], M_);
            if (c == 0) continue;
            r[n * f_ + i] = 0;
            for (unsigned t = 0; t < e_; ++t) r[(n - e_ + t) * f_ + i] -= c * eis_[t];
        }
    Elem out(e_ * f_);
    for (unsigned i = 0; i < e_ * f_; ++i) out[i] = mod(r[i], M_);
    return out;
}

LocalField::Elem LocalField::pow(const Elem& a, unsigned long n) const {
    Elem r = one(), b = a;
    while (n) {
        if (n & 1) r = mul(r, b);
        n >>= 1;
        if (n) b = mul(b, b);
    }
    return r;
}

LocalField::Elem LocalField::inverse_unit(const Elem& a) const {
    // invert the constant term in W/3^k, then Newton
    const Integer& a0 = a[0];
    Elem y = zero();
    if (f_ == 1) {
        y[0] = inv_mod(a0, M_);
    } else {
        const Integer& a1 = a[1];
        const Integer n = mod(a0 * a0 - d_ * a1 * a1, M_);
        const Integer ni = inv_mod(n, M_);
        y[0] = mod(a0 * ni, M_);
        y[1] = mod(-a1 * ni, M_);
    }
    const Elem two = from_integer(2);
    for (unsigned prec = 1; prec < 2 * e_ * k_ + 2; prec *= 2) y = mul(y, sub(two, mul(a, y)));
    return y;
}

bool LocalField::is_zero(const Elem& a) const {
    for (const auto& c : a)
        if (c != 0) return false;
    return true;
}

std::optional<unsigned> LocalField::valuation(const Elem& a) const {
    std::optional<unsigned> best;
    for (unsigned j = 0; j < e_; ++j) {
        unsigned v = k_;
        for (unsigned i = 0; i < f_; ++i) v = std::min(v, v3_capped(a[j * f_ + i], k_));
        if (v == k_) continue;
        const unsigned val = e_ * v + j;
        if (!best || val < *best) best = val;
    }
    return best;
}

LocalField::Elem LocalField::unit_part(const Elem& a, unsigned v) const {
    const unsigned m = (v + e_ - 1) / e_;
    Elem b = mul(a, pi_power(e_ * m - v));
    const Integer q = pow3(m);
    for (auto& c : b) {
        if (!mpz_divisible_p(c.get_mpz_t(), q.get_mpz_t())) throw std::logic_error("unit_part: inexact division");
        c /= q;
    }
    return mul(b, inverse_unit(pow(pi_e_unit_, m)));
}

void LocalField::init_cube_classes() {
    pi_e_unit_ = zero();
    for (unsigned t = 0; t < e_; ++t) pi_e_unit_[t * f_] = mod(-eis_[t] / 3, M_);
    unit_sign_ = mod(-eis_[0] / 3, 3) == 1 ? 1 : -1;
    cut_ = (3 * e_) / 2 + 1;
    relations_.clear();
    const std::size_t width = static_cast<std::size_t>(f_) * (cut_ - 1);
    std::vector<F3Vec> rel;
    for (unsigned i = 1; i < cut_; ++i)
        for (unsigned b = 0; b < f_; ++b) {
            Elem g = one();
            Elem w = pi_power(i);
            if (b == 1) w = wmul_scalar(w, 0, 1);
            g = add(g, w);
            rel.push_back(unit_exponents(mul(mul(g, g), g)));
        }
    F3Matrix m = F3Matrix::from_rows(rel, width);
    pivots_ = m.rref();
    relations_.clear();
    for (std::size_t r = 0; r < pivots_.size(); ++r) relations_.push_back(m.row(r));
    free_.clear();
    for (std::size_t c = 0; c < width; ++c)
        if (std::find(pivots_.begin(), pivots_.end(), c) == pivots_.end()) free_.push_back(c);
}

F3Vec LocalField::unit_exponents(Elem u) const {
    F3Vec out(static_cast<std::size_t>(f_) * (cut_ - 1), 0);
    for (unsigned i = 1; i < cut_; ++i) {
        const unsigned j = i % e_, v = i / e_;
        Elem t = u;
        t[0] = mod(t[0] - 1, M_);
        const auto vt = valuation(t);
        if (vt && *vt < i) throw std::logic_error("unit_exponents: digit expansion out of order");
        const Integer q = pow3(v);
        for (unsigned b = 0; b < f_; ++b) {
            Integer c = t[j * f_ + b];
            if (!mpz_divisible_p(c.get_mpz_t(), q.get_mpz_t())) throw std::logic_error("unit_exponents: level");
            c /= q;
            if (unit_sign_ < 0 && (v & 1)) c = -c;
            const std::uint8_t digit = f3(mod(c, 3).get_si());
            out[(i - 1) * f_ + b] = digit;
            if (!digit) continue;
            Elem w = pi_power(i);
            if (b == 1) w = wmul_scalar(w, 0, 1);
            const Elem g = add(one(), w);
            const Elem gi = inverse_unit(g);
            for (unsigned r = 0; r < digit; ++r) u = mul(u, gi);
        }
    }
    return out;
}

F3Vec LocalField::cube_class(const Elem& a) const {
    const auto v = valuation(a);
    if (!v) throw PrecisionInsufficient("element vanishes at precision 3^" + std::to_string(k_));
    const unsigned m = (*v + e_ - 1) / e_;
    if (m >= k_ || e_ * (k_ - m) < cut_ + 1)
        throw PrecisionInsufficient("unit part not determined at precision 3^" + std::to_string(k_));
    Elem u = unit_part(a, *v);
    const unsigned long q1 = f_ == 1 ? 2 : 8;
    F3Vec ex = unit_exponents(pow(u, q1));
    for (auto& c : ex) c = f3(2 * c);  // (q - 1)^(-1) = 2 mod 3
    for (std::size_t r = 0; r < relations_.size(); ++r) {
        const std::uint8_t c = ex[pivots_[r]];
        if (c) ex = f3_add(ex, f3_scale(relations_[r], f3(-static_cast<long>(c))));
    }
    F3Vec out{f3(*v)};
    for (std::size_t c : free_) out.push_back(ex[c]);
    return out;
}

std::vector<LocalField::Elem> LocalField::cube_class_basis() const {
    std::vector<Elem> out{pi_power(1)};
    if (e_ == 1) out[0] = from_integer(3);
    for (std::size_t c : free_) {
        const unsigned i = static_cast<unsigned>(c / f_) + 1, b = static_cast<unsigned>(c % f_);
        Elem w = pi_power(i);
        if (b == 1) w = wmul_scalar(w, 0, 1);
        out.push_back(add(one(), w));
    }
    return out;
}

LocalUnitClass local_norm_to_Q3(const TowerField& F, const TElem& x, const LocalPlace& v) {
    if (F.is_zero(x)) throw std::invalid_argument("local norm of zero");
    const TowerField base(F.d(), 0);
    const TElem y = F.norm_to_base(x);
    Integer num, den;
    const unsigned k = v.precision;
    if (v.sign == 0) {
        const Rational n = base.norm_to_Q(y);
        num = n.get_num();
        den = n.get_den();
    } else {
        const TElem z = base.mul(y, base.aut(y, 2, false));
        if (z.num[1] != 0 || z.num[3] != 0) throw std::logic_error("local norm left Q(sqrt d)");
        den = z.den;
        // sqrt d -> r with enough digits that the valuation of the image is certain
        for (unsigned K = k + 16 + static_cast<unsigned>(valuation(den, 3));; K *= 2) {
            if (K > 1u << 14) throw PrecisionInsufficient("local norm vanishes at precision 3^" + std::to_string(K));
            Integer r = sqrt_root(F.d(), K);
            if (v.sign < 0) r = -r;
            num = mod(z.num[0] + z.num[2] * r, pow3(K));
            if (num != 0 && static_cast<unsigned>(valuation(num, 3)) + k <= K) break;
        }
    }
    const int vn = valuation(num, 3), vd = valuation(den, 3);
    const Integer Mk = pow3(k);
    const Integer u = mod((num / pow3(vn)) * inv_mod(den / pow3(vd), Mk), Mk);
    LocalUnitClass out;
    out.valuation = vn - vd;
    out.unit = Residue3k(u, k);
    out.teichmuller = mod(u, 3) == 1 ? 1 : -1;
    out.principal = teichmuller_free_part(out.unit);
    return out;
}

Integer log_norm(const TowerField& F, const TElem& x, const LocalPlace& v) {
    return log4(local_norm_to_Q3(F, x, v).principal);
}

bool uhat_test(const TowerField& F, const TElem& x, const std::vector<LocalPlace>& places, unsigned m) {
    for (const auto& v : places) {
        if (v.precision < m + 2)
            throw PrecisionInsufficient("uhat_test needs precision 3^" + std::to_string(m + 2));
        const auto c = local_norm_to_Q3(F, x, v);
        if (mod(c.principal.value() - 1, pow3(m + 2)) != 0) return false;
    }
    return true;
}

namespace {

// Multiply by 27^j so that the denominator is prime to 3.
TElem clear_three(const TowerField& F, const TElem& x) {
    const int t = valuation(x.den, 3);
    if (t == 0) return x;
    return F.scale(x, Rational(pow3(3 * ((t + 2) / 3))));
}

LocalPlace with_precision(LocalPlace v, unsigned k) {
    v.precision = k;
    return v;
}

}  // namespace

F3Vec cube_class(const TowerField& F, const TElem& x, const LocalPlace& v) {
    const TElem y = clear_three(F, x);
    for (unsigned k = std::max(v.precision, 4u);; k *= 2) {
        try {
            LocalField L(with_precision(v, k));
            return L.cube_class(L.embed(y));
        } catch (const PrecisionInsufficient&) {
            if (k >= 256) throw;
        }
    }
}

HilbertPairing::HilbertPairing(const LocalField& L) : L_(L) {
    if (L_.e() == 1 || (L_.degree() % 3) == 0)
        throw NormalizationFailed("Hilbert pairing is normalized only on completions of F");
    const std::size_t n = L_.cube_class_dim();
    const auto basis = L_.cube_class_basis();
    auto functional = [&](const LocalField::Elem& a) {
        auto ann = annihilator(norm_group(a), n);
        if (ann.size() != 1) throw std::logic_error("norm group is not a hyperplane");
        return ann[0];
    };
    std::vector<F3Vec> h;
    for (const auto& b : basis) h.push_back(functional(b));
    // B(e_i, .) = lambda_i h_i: alternating, and compatible with the norm groups of e_i + e_j
    std::vector<F3Vec> eqs;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            F3Vec row(n, 0);
            row[i] = h[i][j];
            row[j] = h[j][i];
            eqs.push_back(row);
            for (const auto& w : echelon_basis(norm_group(L_.mul(basis[i], basis[j])), n)) {
                F3Vec r2(n, 0);
                r2[i] = f3_dot(h[i], w);
                r2[j] = f3_dot(h[j], w);
                eqs.push_back(r2);
            }
        }
    auto lam = kernel_f3(F3Matrix::from_rows(eqs, n));
    if (lam.size() != 1) throw NormalizationFailed("Hilbert pairing not determined by its norm groups");
    for (std::size_t i = 0; i < n; ++i) matrix_.push_back(f3_scale(h[i], lam[0][i]));
    // (zeta_3, 4) = [L : Q_3] mod 3
    const unsigned m = L_.e() / 2;
    const LocalField::Elem zeta3 = L_.pow(L_.add(L_.one(), L_.pi_power(1)), m);
    const int s = symbol(L_.cube_class(zeta3), L_.cube_class(L_.from_integer(4)));
    if (s == 0) throw NormalizationFailed("(zeta_3, 4) vanishes");
    const std::uint8_t c = f3(static_cast<long>(L_.degree()) * (s == 1 ? 1 : 2));
    for (auto& row : matrix_) row = f3_scale(row, c);
}

int HilbertPairing::symbol(const F3Vec& a, const F3Vec& b) const {
    long acc = 0;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i]) acc += a[i] * static_cast<long>(f3_dot(matrix_[i], b));
    return f3(acc);
}

int HilbertPairing::symbol(const LocalField::Elem& a, const LocalField::Elem& b) const {
    return symbol(L_.cube_class(a), L_.cube_class(b));
}

std::vector<F3Vec> HilbertPairing::norm_group(const LocalField::Elem& a_in) const {
    const std::size_t n = L_.cube_class_dim();
    const F3Vec ca = L_.cube_class(a_in);
    if (f3_is_zero(ca)) throw DegenerateKummer("a is a local cube");
    const LocalField::Elem& a = a_in;
    std::vector<F3Vec> span{L_.cube_class(a)};
    const std::size_t target = n - 1;
    std::mt19937_64 rng(0x9e3779b97f4a7c15ULL + n);
    auto random_elem = [&](unsigned bound) {
        LocalField::Elem x = L_.zero();
        for (auto& c : x) c = static_cast<long>(rng() % bound);
        return x;
    };
    const LocalField::Elem three = L_.from_integer(3);
    for (int attempt = 0; attempt < 4000 && span_dim(span, n) < target; ++attempt) {
        const LocalField::Elem c0 = random_elem(9), c1 = random_elem(attempt % 3 == 0 ? 1 : 9),
                               c2 = random_elem(attempt % 5 == 0 ? 1 : 9);
        // N(c0 + c1 x + c2 x^2), x^3 = a
        const auto a2 = L_.mul(a, a);
        LocalField::Elem N = L_.pow(c0, 3);
        N = L_.add(N, L_.mul(a, L_.pow(c1, 3)));
        N = L_.add(N, L_.mul(a2, L_.pow(c2, 3)));
        N = L_.sub(N, L_.mul(L_.mul(three, a), L_.mul(c0, L_.mul(c1, c2))));
        try {
            span.push_back(L_.cube_class(N));
        } catch (const PrecisionInsufficient&) {
        }
    }
    auto basis = echelon_basis(span, n);
    if (basis.size() != target)
        throw PrecisionInsufficient("norm group of the Kummer extension not resolved");
    return basis;
}

namespace {

const HilbertPairing& cached_pairing(const LocalPlace& v) {
    static std::mutex mu;
    static std::map<std::tuple<std::string, int, unsigned>, std::unique_ptr<HilbertPairing>> cache;
    const auto key = std::make_tuple(kummer::to_string(v.d), v.sign, v.precision);
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(key);
    if (it == cache.end()) it = cache.emplace(key, std::make_unique<HilbertPairing>(LocalField(v))).first;
    return *it->second;
}

}  // namespace

int hilbert_symbol(const TowerField& F, const TElem& a, const TElem& b, const LocalPlace& v) {
    if (F.level() != 0 || v.level != 0) throw std::invalid_argument("Hilbert symbols are taken on F");
    const LocalPlace w = with_precision(v, std::max(v.precision, 8u));
    const HilbertPairing& P = cached_pairing(w);
    const F3Vec ca = cube_class(F, a, w), cb = cube_class(F, b, w);
    return P.symbol(ca, cb);
}

}  // namespace kummer
