#include "kummer/tower.hpp"

#include "kummer/errors.hpp"

#include <stdexcept>

namespace kummer {

TowerField::TowerField(Integer d, unsigned level) : d_(std::move(d)), level_(level) {
    if (level > 3) throw std::invalid_argument("tower level must be at most 3");
    if (d_ == 0 || d_ == 1 || mod(d_, 3) == 0 || !is_squarefree(d_))
        throw InvalidD("d = " + kummer::to_string(d_) + " must be squarefree, != 0, 1 and prime to 3");
    N_ = static_cast<unsigned>(pow3(level + 1).get_ui());
    m_ = N_ / 3;
    deg_ = 2 * m_;
}

TElem TowerField::zero() const { return {std::vector<Integer>(2 * deg_, 0), 1}; }

TElem TowerField::one() const { return from_rational(1); }

TElem TowerField::from_rational(const Rational& q) const {
    TElem x = zero();
    x.num[0] = q.get_num();
    x.den = q.get_den();
    return x;
}

TElem TowerField::zeta(long k) const {
    long e = ((k % static_cast<long>(N_)) + static_cast<long>(N_)) % static_cast<long>(N_);
    std::vector<Integer> p(N_, 0);
    p[static_cast<std::size_t>(e)] = 1;
    reduce(p);
    TElem x = zero();
    for (unsigned j = 0; j < deg_; ++j) x.num[j] = p[j];
    return x;
}

TElem TowerField::sqrt_d() const {
    TElem x = zero();
    x.num[deg_] = 1;
    return x;
}

TElem TowerField::from_coords(std::vector<Rational> c) const {
    if (c.size() != 2 * deg_) throw std::invalid_argument("from_coords: wrong length");
    for (auto& q : c) q.canonicalize();
    Integer den = 1;
    for (const auto& q : c) {
        Integer g;
        Integer qd = q.get_den();
        mpz_lcm(g.get_mpz_t(), den.get_mpz_t(), qd.get_mpz_t());
        den = g;
    }
    TElem x = zero();
    x.den = den;
    for (std::size_t i = 0; i < c.size(); ++i) {
        Rational t = c[i] * Rational(den);
        x.num[i] = t.get_num();
    }
    normalize(x);
    return x;
}

std::vector<Rational> TowerField::coords(const TElem& x) const {
    std::vector<Rational> out;
    for (std::size_t i = 0; i < x.num.size(); ++i) out.push_back(coeff(x, i));
    return out;
}

Rational TowerField::coeff(const TElem& x, std::size_t i) const {
    Rational q(x.num[i], x.den);
    q.canonicalize();
    return q;
}

void TowerField::normalize(TElem& x) const {
    if (x.den < 0) {
        x.den = -x.den;
        for (auto& c : x.num) c = -c;
    }
    Integer g = x.den;
    for (const auto& c : x.num) {
        if (g == 1) break;
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
    }
    if (g != 1) {
        x.den /= g;
        for (auto& c : x.num) mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), g.get_mpz_t());
    }
}

void TowerField::reduce(std::vector<Integer>& p) const {
    // zeta^(2m) = -zeta^m - 1
    for (std::size_t t = p.size(); t-- > deg_;) {
        if (p[t] == 0) continue;
        const Integer c = p[t];
        p[t] = 0;
        p[t - m_] -= c;
        p[t - 2 * m_] -= c;
    }
}

TElem TowerField::add(const TElem& x, const TElem& y) const {
    TElem r = zero();
    if (x.den == y.den) {
        r.den = x.den;
        for (std::size_t i = 0; i < r.num.size(); ++i) r.num[i] = x.num[i] + y.num[i];
    } else {
        r.den = x.den * y.den;
        for (std::size_t i = 0; i < r.num.size(); ++i) r.num[i] = x.num[i] * y.den + y.num[i] * x.den;
    }
    normalize(r);
    return r;
}

TElem TowerField::neg(const TElem& x) const {
    TElem r = x;
    for (auto& c : r.num) c = -c;
    return r;
}

TElem TowerField::sub(const TElem& x, const TElem& y) const { return add(x, neg(y)); }

TElem TowerField::mul(const TElem& x, const TElem& y) const {
    const std::size_t L = 2 * deg_ - 1;
    std::vector<Integer> r0(L, 0), r1(L, 0);
    Integer t;
    for (unsigned i = 0; i < deg_; ++i) {
        const Integer& xa = x.num[i];
        const Integer& xb = x.num[deg_ + i];
        const bool za = xa == 0, zb = xb == 0;
        if (za && zb) continue;
        for (unsigned j = 0; j < deg_; ++j) {
            const Integer& ya = y.num[j];
            const Integer& yb = y.num[deg_ + j];
            if (!za) {
                if (ya != 0) mpz_addmul(r0[i + j].get_mpz_t(), xa.get_mpz_t(), ya.get_mpz_t());
                if (yb != 0) mpz_addmul(r1[i + j].get_mpz_t(), xa.get_mpz_t(), yb.get_mpz_t());
            }
            if (!zb) {
                if (yb != 0) {
                    mpz_mul(t.get_mpz_t(), xb.get_mpz_t(), yb.get_mpz_t());
                    mpz_addmul(r0[i + j].get_mpz_t(), t.get_mpz_t(), d_.get_mpz_t());
                }
                if (ya != 0) mpz_addmul(r1[i + j].get_mpz_t(), xb.get_mpz_t(), ya.get_mpz_t());
            }
        }
    }
    reduce(r0);
    reduce(r1);
    TElem r;
    r.num.resize(2 * deg_);
    for (unsigned j = 0; j < deg_; ++j) {
        r.num[j] = std::move(r0[j]);
        r.num[deg_ + j] = std::move(r1[j]);
    }
    r.den = x.den * y.den;
    normalize(r);
    return r;
}

TElem TowerField::scale(const TElem& x, const Rational& q) const {
    TElem r = x;
    for (auto& c : r.num) c *= q.get_num();
    r.den *= q.get_den();
    normalize(r);
    return r;
}

TElem TowerField::pow(const TElem& x, long e) const {
    TElem base = e < 0 ? inv(x) : x;
    unsigned long n = static_cast<unsigned long>(e < 0 ? -e : e);
    TElem r = one();
    while (n) {
        if (n & 1) r = mul(r, base);
        n >>= 1;
        if (n) base = mul(base, base);
    }
    return r;
}

TElem TowerField::inv(const TElem& x) const {
    if (is_zero(x)) throw std::domain_error("inverse of zero");
    // product of the other conjugates divided by the norm
    TElem r = one();
    for (long k : unit_residues())
        for (bool flip : {false, true}) {
            if (k == 1 && !flip) continue;
            r = mul(r, aut(x, k, flip));
        }
    TElem n = mul(r, x);
    if (!is_rational(n)) throw std::logic_error("norm is not rational");
    Rational q(n.num[0], n.den);
    q.canonicalize();
    return scale(r, 1 / q);
}

TElem TowerField::div(const TElem& x, const TElem& y) const { return mul(x, inv(y)); }

bool TowerField::is_zero(const TElem& x) const {
    for (const auto& c : x.num)
        if (c != 0) return false;
    return true;
}

bool TowerField::is_rational(const TElem& x) const {
    for (std::size_t i = 1; i < x.num.size(); ++i)
        if (x.num[i] != 0) return false;
    return true;
}

std::vector<long> TowerField::unit_residues() const {
    std::vector<long> out;
    for (long k = 1; k < static_cast<long>(N_); ++k)
        if (k % 3) out.push_back(k);
    return out;
}

TElem TowerField::aut(const TElem& x, long k, bool flip) const {
    const long N = static_cast<long>(N_);
    k = ((k % N) + N) % N;
    if (k % 3 == 0) throw std::invalid_argument("aut: exponent must be prime to 3");
    TElem r = zero();
    r.den = x.den;
    for (unsigned e = 0; e < 2; ++e) {
        const bool negate = flip && e == 1;
        for (unsigned j = 0; j < deg_; ++j) {
            const Integer& c = x.num[e * deg_ + j];
            if (c == 0) continue;
            const unsigned t = static_cast<unsigned>((static_cast<long>(j) * k) % N);
            auto& out = r.num;
            auto bump = [&](unsigned pos, int s) {
                if ((s > 0) != negate) out[e * deg_ + pos] += c;
                else out[e * deg_ + pos] -= c;
            };
            if (t < deg_) bump(t, 1);
            else {
                bump(t - m_, -1);
                bump(t - 2 * m_, -1);
            }
        }
    }
    return r;
}

TElem TowerField::sigma(const TElem& x, unsigned times) const {
    long k = 1;
    for (unsigned i = 0; i < times; ++i) k = (k * 4) % static_cast<long>(N_);
    return aut(x, k);
}

Rational TowerField::norm_to_Q(const TElem& x) const {
    TElem r = one();
    for (long k : unit_residues())
        for (bool flip : {false, true}) r = mul(r, aut(x, k, flip));
    if (!is_rational(r)) throw std::logic_error("norm_to_Q: result is not rational");
    Rational q(r.num[0], r.den);
    q.canonicalize();
    return q;
}

TElem TowerField::norm_down(const TElem& x) const {
    if (level_ == 0) throw std::invalid_argument("norm_down from level 0");
    TElem r = one();
    for (unsigned t = 0; t < 3; ++t) r = mul(r, aut(x, 1 + static_cast<long>(m_ * t)));
    TowerField lower(d_, level_ - 1);
    TElem out = lower.zero();
    out.den = r.den;
    const unsigned low_deg = lower.phi();
    for (unsigned e = 0; e < 2; ++e)
        for (unsigned j = 0; j < deg_; ++j) {
            const Integer& c = r.num[e * deg_ + j];
            if (j % 3) {
                if (c != 0) throw std::logic_error("norm_down: result not in the lower field");
                continue;
            }
            out.num[e * low_deg + j / 3] = c;
        }
    return out;
}

TElem TowerField::norm_to_base(const TElem& x) const {
    if (level_ == 0) return x;
    TElem y = norm_down(x);
    return TowerField(d_, level_ - 1).norm_to_base(y);
}

TElem TowerField::embed_from_below(const TElem& x) const {
    if (level_ == 0) throw std::invalid_argument("embed_from_below at level 0");
    const unsigned low_deg = deg_ / 3;
    if (x.num.size() != 2 * low_deg) throw std::invalid_argument("embed_from_below: wrong source level");
    TElem r = zero();
    r.den = x.den;
    for (unsigned e = 0; e < 2; ++e)
        for (unsigned j = 0; j < low_deg; ++j) r.num[e * deg_ + 3 * j] = x.num[e * low_deg + j];
    return r;
}

TElem TowerField::embed_from_base(const TElem& x) const {
    if (level_ == 0) return x;
    TowerField lower(d_, level_ - 1);
    return embed_from_below(lower.embed_from_base(x));
}

Integer TowerField::height(const TElem& x) const {
    Integer h = x.den;
    for (const auto& c : x.num)
        if (abs(c) > h) h = abs(c);
    return h;
}

std::string TowerField::to_string(const TElem& x) const {
    std::string out;
    const std::string z = level_ == 0 ? "w" : "z" + std::to_string(N_);
    for (unsigned e = 0; e < 2; ++e)
        for (unsigned j = 0; j < deg_; ++j) {
            Rational c = coeff(x, e * deg_ + j);
            if (c == 0) continue;
            std::string mono;
            if (j > 0) mono = z + (j > 1 ? "^" + std::to_string(j) : "");
            if (e == 1) mono += (mono.empty() ? "" : "*") + std::string("sqrt(") + kummer::to_string(d_) + ")";
            std::string term;
            Rational a = abs(c);
            if (mono.empty()) term = kummer::to_string(a);
            else if (a == 1) term = mono;
            else term = kummer::to_string(a) + "*" + mono;
            if (out.empty()) out = (c < 0 ? "-" : "") + term;
            else out += (c < 0 ? " - " : " + ") + term;
        }
    return out.empty() ? "0" : out;
}

TElem norm_nu(const TowerField& F1, const TElem& x) {
    if (F1.level() != 1) throw std::invalid_argument("norm_nu is defined on level 1");
    return F1.norm_down(x);
}

TElem twisted_norm(const TowerField& F1, const TElem& x, int i) {
    if (F1.level() != 1) throw std::invalid_argument("twisted_norm is defined on level 1");
    if (i < -1 || i > 1) throw std::invalid_argument("twist must be -1, 0 or 1");
    const long kappa = i == 0 ? 1 : (i == 1 ? 4 : 7);
    TElem r = F1.one();
    long e = 1;
    for (unsigned j = 0; j < 3; ++j) {
        r = F1.mul(r, F1.pow(F1.sigma(x, j), e));
        e = (e * kappa) % 9;
    }
    return r;
}

}  // namespace kummer
