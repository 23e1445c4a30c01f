#include "kummer/units.hpp"

#include "kummer/errors.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace kummer {

namespace {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

u64 mulmod(u64 a, u64 b, u64 m) { return static_cast<u64>((static_cast<u128>(a) * b) % m); }

u64 powmod(u64 a, u64 e, u64 m) {
    u64 r = 1 % m;
    a %= m;
    while (e) {
        if (e & 1) r = mulmod(r, a, m);
        a = mulmod(a, a, m);
        e >>= 1;
    }
    return r;
}

std::vector<u64> prime_factors(u64 n) {
    std::vector<u64> out;
    for (u64 p = 2; p * p <= n; ++p) {
        if (n % p) continue;
        out.push_back(p);
        while (n % p == 0) n /= p;
    }
    if (n > 1) out.push_back(n);
    return out;
}

u64 primitive_root(u64 l) {
    auto fs = prime_factors(l - 1);
    for (u64 g = 2;; ++g) {
        bool ok = true;
        for (u64 p : fs)
            if (powmod(g, (l - 1) / p, l) == 1) {
                ok = false;
                break;
            }
        if (ok) return g;
    }
}

u64 sqrt_mod_prime(u64 a, u64 l) {
    a %= l;
    if (a == 0) return 0;
    // Tonelli-Shanks
    u64 q = l - 1, s = 0;
    while (q % 2 == 0) {
        q /= 2;
        ++s;
    }
    u64 z = 2;
    while (powmod(z, (l - 1) / 2, l) != l - 1) ++z;
    u64 m = s, c = powmod(z, q, l), t = powmod(a, q, l), r = powmod(a, (q + 1) / 2, l);
    while (t != 1) {
        u64 i = 0, tt = t;
        while (tt != 1) {
            tt = mulmod(tt, tt, l);
            ++i;
        }
        u64 b = c;
        for (u64 j = 0; j + i + 1 < m; ++j) b = mulmod(b, b, l);
        m = i;
        c = mulmod(b, b, l);
        t = mulmod(t, c, l);
        r = mulmod(r, b, l);
    }
    return r;
}

u64 reduce_mod(const Integer& x, u64 l) {
    return mpz_fdiv_ui(x.get_mpz_t(), l);
}

}  // namespace

CharacterTable::CharacterTable(const TowerField& F, unsigned order, std::size_t prime_count, u64 start)
    : field_(F), order_(order), next_(start) {
    if (order != 3 && order != 9) throw std::invalid_argument("character order must be 3 or 9");
    add_primes(prime_count);
}

void CharacterTable::add_primes(std::size_t count) {
    const u64 N = field_.N();
    const u64 step = std::lcm(N, static_cast<u64>(order_));
    const Integer d = field_.d();
    u64 l = next_ - (next_ % step) + 1;
    if (l <= next_) l += step;
    std::size_t added = 0;
    while (added < count) {
        const Integer L(static_cast<unsigned long>(l));
        if (is_prime(L) && kronecker(d, L) == 1 && reduce_mod(2 * d, l) != 0) {
            Prime p;
            p.l = l;
            const u64 g = primitive_root(l);
            const u64 r = powmod(g, (l - 1) / N, l);
            for (long k : field_.unit_residues()) p.zeta_images.push_back(powmod(r, static_cast<u64>(k), l));
            p.root_d = sqrt_mod_prime(reduce_mod(d, l), l);
            const u64 w = powmod(g, (l - 1) / order_, l);
            u64 acc = 1;
            for (unsigned i = 0; i < order_; ++i) {
                p.mu_powers.push_back(acc);
                acc = mulmod(acc, w, l);
            }
            data_.push_back(std::move(p));
            primes_.push_back(l);
            width_ += 2 * field_.phi();
            ++added;
        }
        l += step;
    }
    next_ = l;
}

std::vector<int> CharacterTable::values(const TElem& x) const {
    std::vector<int> out;
    out.reserve(width_);
    const unsigned deg = field_.phi();
    for (const auto& p : data_) {
        const u64 l = p.l;
        const u64 den = reduce_mod(x.den, l);
        if (den == 0) throw std::runtime_error("character prime divides a denominator");
        const u64 den_inv = powmod(den, l - 2, l);
        std::vector<u64> A(deg), B(deg);
        for (unsigned j = 0; j < deg; ++j) {
            A[j] = reduce_mod(x.num[j], l);
            B[j] = reduce_mod(x.num[deg + j], l);
        }
        for (u64 z : p.zeta_images) {
            u64 a = 0, b = 0;
            for (unsigned j = deg; j-- > 0;) {
                a = (mulmod(a, z, l) + A[j]) % l;
                b = (mulmod(b, z, l) + B[j]) % l;
            }
            for (u64 s : {p.root_d, l - p.root_d}) {
                u64 v = mulmod((a + mulmod(b, s, l)) % l, den_inv, l);
                if (v == 0) throw std::runtime_error("element is not a unit at a character prime");
                u64 c = powmod(v, (l - 1) / order_, l);
                auto it = std::find(p.mu_powers.begin(), p.mu_powers.end(), c);
                out.push_back(static_cast<int>(it - p.mu_powers.begin()));
            }
        }
    }
    return out;
}

namespace {

// (Z/M)[x] / Phi_N with Phi_N = x^(2m) + x^m + 1.
class ResidueCyclo {
public:
    ResidueCyclo(Integer M, unsigned N) : M_(std::move(M)), m_(N / 3), deg_(2 * (N / 3)) {}
    using Poly = std::vector<Integer>;

    const Integer& modulus() const { return M_; }
    unsigned degree() const { return deg_; }
    Poly zero() const { return Poly(deg_, 0); }
    Poly one() const {
        Poly p = zero();
        p[0] = 1;
        return p;
    }
    Poly reduce_coeffs(Poly p) const {
        for (auto& c : p) c = mod(c, M_);
        return p;
    }
    Poly mul(const Poly& a, const Poly& b) const {
        Poly r(2 * deg_ - 1, 0);
        for (unsigned i = 0; i < deg_; ++i) {
            if (a[i] == 0) continue;
            for (unsigned j = 0; j < deg_; ++j)
                if (b[j] != 0) mpz_addmul(r[i + j].get_mpz_t(), a[i].get_mpz_t(), b[j].get_mpz_t());
        }
        for (std::size_t t = r.size(); t-- > deg_;) {
            if (r[t] == 0) continue;
            r[t - m_] -= r[t];
            r[t - 2 * m_] -= r[t];
            r[t] = 0;
        }
        r.resize(deg_);
        return reduce_coeffs(std::move(r));
    }
    Poly add(const Poly& a, const Poly& b) const {
        Poly r(deg_);
        for (unsigned i = 0; i < deg_; ++i) r[i] = mod(a[i] + b[i], M_);
        return r;
    }
    Poly sub(const Poly& a, const Poly& b) const {
        Poly r(deg_);
        for (unsigned i = 0; i < deg_; ++i) r[i] = mod(a[i] - b[i], M_);
        return r;
    }
    Poly scale(const Poly& a, const Integer& c) const {
        Poly r(deg_);
        for (unsigned i = 0; i < deg_; ++i) r[i] = mod(a[i] * c, M_);
        return r;
    }
    Poly pow(Poly a, Integer e) const {
        Poly r = one();
        while (e > 0) {
            if (mpz_odd_p(e.get_mpz_t())) r = mul(r, a);
            e >>= 1;
            if (e > 0) a = mul(a, a);
        }
        return r;
    }
    bool is_one(const Poly& a) const { return a == one(); }
    Poly monomial(unsigned k) const {
        Poly p(3 * m_, 0);
        p[k % (3 * m_)] = 1;
        for (std::size_t t = p.size(); t-- > deg_;) {
            if (p[t] == 0) continue;
            p[t - m_] -= p[t];
            p[t - 2 * m_] -= p[t];
            p[t] = 0;
        }
        p.resize(deg_);
        return reduce_coeffs(std::move(p));
    }

private:
    Integer M_;
    unsigned m_, deg_;
};

using Poly = ResidueCyclo::Poly;

// Cube root in the finite field F_l[x]/Phi_N (Phi_N irreducible mod l), if one exists.
std::optional<Poly> ff_cube_root(const ResidueCyclo& R, u64 l, const Poly& a) {
    const Integer q = pow_int(Integer(static_cast<unsigned long>(l)), R.degree());
    const Integer q1 = q - 1;
    if (!R.is_one(R.pow(a, q1 / 3))) return std::nullopt;
    Integer m = q1;
    unsigned s = 0;
    while (mpz_divisible_ui_p(m.get_mpz_t(), 3)) {
        m /= 3;
        ++s;
    }
    // a non-cube generates the 3-Sylow subgroup after raising to m
    Poly c;
    bool found = false;
    for (u64 t = 0; t < l * l && !found; ++t) {
        c = R.zero();
        c[0] = t % l;
        if (R.degree() > 1) c[1] = 1 + t / l;
        c = R.reduce_coeffs(c);
        if (!R.is_one(R.pow(c, q1 / 3))) found = true;
    }
    if (!found) throw std::logic_error("no cubic non-residue found");
    const Poly g = R.pow(c, m);
    const Integer u = inv_mod(3, m);
    const Poly xr = R.pow(a, u);
    const Poly tt = R.pow(a, 3 * u - 1);
    const Poly tinv = R.pow(tt, q - 2);
    Poly gp = R.one();
    const Integer sylow = pow3(s);
    for (Integer e = 0; e < sylow; ++e) {
        if (gp == tinv) {
            if (mod(e, 3) != 0) return std::nullopt;
            Poly r = R.mul(xr, R.pow(g, e / 3));
            if (R.mul(R.mul(r, r), r) != a) throw std::logic_error("finite field cube root check failed");
            return r;
        }
        gp = R.mul(gp, g);
    }
    return std::nullopt;
}

Poly inverse_lifted(const ResidueCyclo& Rk, const ResidueCyclo& R1, u64 l, const Poly& a, unsigned k) {
    const Integer q = pow_int(Integer(static_cast<unsigned long>(l)), R1.degree());
    Poly z = R1.pow(R1.reduce_coeffs(a), q - 2);
    const Poly two = Rk.scale(Rk.one(), 2);
    for (unsigned prec = 1; prec < k; prec *= 2) z = Rk.mul(z, Rk.sub(two, Rk.mul(a, z)));
    return z;
}

}  // namespace

std::optional<TElem> cube_root(const TowerField& F, const TElem& x) {
    if (F.is_zero(x)) return F.zero();
    const unsigned deg = F.phi();
    const Integer& d = F.d();
    const Integer den = x.den;
    // root of num * den^2, then divide by den
    const Integer den2 = den * den;
    u64 l = 5;
    for (;; ++l) {
        const Integer L(static_cast<unsigned long>(l));
        if ((l % 9 == 2 || l % 9 == 5) && is_prime(L) && kronecker(d, L) == 1 &&
            mpz_fdiv_ui(Integer(2 * d * den).get_mpz_t(), l) != 0)
            break;
    }
    const ResidueCyclo R1(Integer(static_cast<unsigned long>(l)), F.N());
    const u64 s0 = sqrt_mod_prime(mpz_fdiv_ui(d.get_mpz_t(), l), l);
    const Integer H = F.height(x) * den2;
    const Integer lz(static_cast<unsigned long>(l));
    unsigned k = 4;
    while (pow_int(lz, k) < 1000 * isqrt(isqrt(H) + 1)) ++k;
    const Integer cap = H * H * 1000000 + 1000000;
    for (;; k *= 2) {
        const Integer M = pow_int(lz, k);
        const ResidueCyclo Rk(M, F.N());
        // sqrt d mod l^k
        Integer s = s0;
        for (unsigned prec = 1; prec < k; prec *= 2) s = mod(s - (s * s - d) * inv_mod(2 * s, M), M);
        s = mod(s - (s * s - d) * inv_mod(2 * s, M), M);
        std::vector<Poly> roots;
        for (const Integer& sg : {s, Integer(mod(-s, M))}) {
            Poly a(deg);
            for (unsigned j = 0; j < deg; ++j) a[j] = mod((x.num[j] + x.num[deg + j] * sg) * den2, M);
            auto r1 = ff_cube_root(R1, l, R1.reduce_coeffs(a));
            if (!r1) return std::nullopt;
            Poly y = *r1;
            for (unsigned prec = 1; prec < 2 * k; prec *= 2) {
                const Poly y2 = Rk.mul(y, y);
                const Poly f = Rk.sub(Rk.mul(y2, y), a);
                const Poly dinv = inverse_lifted(Rk, R1, l, Rk.scale(y2, 3), k);
                y = Rk.sub(y, Rk.mul(f, dinv));
            }
            if (Rk.mul(Rk.mul(y, y), y) != a) throw std::logic_error("Hensel lift of cube root failed");
            roots.push_back(y);
        }
        const Poly w = Rk.monomial(F.N() / 3);
        const std::vector<Poly> mus{Rk.one(), w, Rk.mul(w, w)};
        const Integer inv2 = inv_mod(2, M), inv2s = inv_mod(2 * s, M);
        for (const auto& m1 : mus)
            for (const auto& m2 : mus) {
                const Poly yp = Rk.mul(roots[0], m1), ym = Rk.mul(roots[1], m2);
                const Poly A = Rk.scale(Rk.add(yp, ym), inv2), B = Rk.scale(Rk.sub(yp, ym), inv2s);
                std::vector<Rational> c(2 * deg);
                for (unsigned j = 0; j < deg; ++j) {
                    c[j] = Rational(sym_mod(2 * A[j], M), 2 * den);
                    c[deg + j] = Rational(sym_mod(2 * B[j], M), 2 * den);
                    c[j].canonicalize();
                    c[deg + j].canonicalize();
                }
                TElem cand = F.from_coords(c);
                if (F.mul(F.mul(cand, cand), cand) == x) return cand;
            }
        if (M > cap) return std::nullopt;
    }
}

UnitLattice::UnitLattice(const TowerField& F, UnitSystem system, unsigned char_order, std::size_t expected_rank)
    : field_(F), system_(std::move(system)),
      chars_(F, char_order, (2 * (system_.gens.size() + 1)) / (2 * F.phi()) + 2, 100) {
    if (system_.names.size() != system_.gens.size()) throw std::invalid_argument("unit names/gens mismatch");
    saturate();
    if (expected_rank && rank() != expected_rank)
        throw RankDeficient("unit system has rank " + std::to_string(rank()) + ", expected " +
                            std::to_string(expected_rank));
}

std::vector<std::vector<int>> UnitLattice::matrix() const {
    std::vector<std::vector<int>> rows;
    rows.push_back(chars_.values(field_.zeta(1)));
    for (const auto& g : system_.gens) rows.push_back(chars_.values(g));
    return rows;
}

void UnitLattice::saturate() {
    for (int round = 0; round < 400; ++round) {
        rows_ = matrix();
        const std::size_t n = rows_.size(), w = chars_.size();
        F3Matrix t(w, n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < w; ++j) t.set(j, i, rows_[i][j]);
        auto ker = kernel_f3(t);
        if (ker.empty()) return;
        bool progressed = false;
        for (auto c : ker) {
            std::size_t pivot = 0;
            for (std::size_t i = 1; i < n && !pivot; ++i)
                if (c[i]) pivot = i;
            if (!pivot) continue;
            if (c[pivot] == 2) c = f3_scale(c, 2);
            std::vector<long> e(c.begin(), c.end());
            auto root = cube_root(field_, evaluate(e));
            if (!root) continue;
            std::string expr;
            for (std::size_t i = 0; i < n; ++i) {
                if (!c[i]) continue;
                if (!expr.empty()) expr += "*";
                expr += (i == 0 ? std::string("zeta") : system_.names[i - 1]) + (c[i] == 2 ? "^2" : "");
            }
            system_.gens[pivot - 1] = *root;
            system_.names[pivot - 1] = "cbrt(" + expr + ")";
            ++roots_adjoined_;
            progressed = true;
            break;
        }
        if (!progressed) chars_.add_primes(2);
    }
    throw RankDeficient("saturation did not terminate");
}

std::vector<int> UnitLattice::log(const TElem& x, unsigned modulus) const {
    if (modulus != 3 && !(modulus == 9 && chars_.order() == 9))
        throw std::invalid_argument("log modulus not supported by the character table");
    const std::size_t n = rows_.size(), w = chars_.size();
    std::vector<int> v = chars_.values(x);
    F3Matrix t(w, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < w; ++j) t.set(j, i, rows_[i][j]);
    auto solve3 = [&](const std::vector<int>& rhs) {
        F3Vec b(w);
        for (std::size_t j = 0; j < w; ++j) b[j] = f3(rhs[j]);
        auto c = solve_f3(t, b);
        if (!c) throw std::runtime_error("element is outside the span of the unit system");
        return *c;
    };
    F3Vec c0 = solve3(v);
    std::vector<int> out(c0.begin(), c0.end());
    if (modulus == 3) return out;
    // second digit: (v - c0 M) / 3 = c1 M mod 3
    std::vector<int> rest(w);
    for (std::size_t j = 0; j < w; ++j) {
        int acc = v[j];
        for (std::size_t i = 0; i < n; ++i) acc -= c0[i] * rows_[i][j];
        acc = ((acc % 9) + 9) % 9;
        if (acc % 3) throw std::logic_error("inconsistent ninth-power characters");
        rest[j] = acc / 3;
    }
    F3Vec c1 = solve3(rest);
    for (std::size_t i = 0; i < n; ++i) out[i] = (c0[i] + 3 * c1[i]) % 9;
    return out;
}

TElem UnitLattice::evaluate(const std::vector<long>& exponents) const {
    if (exponents.size() != system_.gens.size() + 1) throw std::invalid_argument("evaluate: wrong length");
    TElem r = field_.zeta(exponents[0]);
    for (std::size_t i = 0; i < system_.gens.size(); ++i)
        if (exponents[i + 1]) r = field_.mul(r, field_.pow(system_.gens[i], exponents[i + 1]));
    return r;
}

std::vector<std::pair<std::string, TElem>> cyclotomic_units(const TowerField& F) {
    std::vector<std::pair<std::string, TElem>> out;
    const long N = F.N();
    out.emplace_back("1-z", F.sub(F.one(), F.zeta(1)));
    for (long a = 2; a <= (N - 1) / 2; ++a) {
        if (a % 3 == 0) continue;
        TElem c = F.zero();
        for (long j = 0; j < a; ++j) c = F.add(c, F.zeta(j));
        out.emplace_back("c" + std::to_string(a), c);
    }
    return out;
}

namespace {

using IntVec = std::vector<Integer>;

int moebius(long n) {
    int mu = 1;
    for (long p = 2; p * p <= n; ++p) {
        if (n % p) continue;
        n /= p;
        if (n % p == 0) return 0;
        mu = -mu;
    }
    if (n > 1) mu = -mu;
    return mu;
}

IntVec poly_mul(const IntVec& a, const IntVec& b) {
    IntVec r(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] != 0)
            for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    return r;
}

// Exact quotient by a monic polynomial.
IntVec poly_divexact(IntVec a, const IntVec& b) {
    const std::size_t db = b.size() - 1;
    IntVec q(a.size() - db, 0);
    for (std::size_t i = a.size(); i-- > db;) {
        const Integer c = a[i];
        q[i - db] = c;
        for (std::size_t j = 0; j <= db; ++j) a[i - db + j] -= c * b[j];
    }
    return q;
}

IntVec poly_rem(IntVec a, const IntVec& b) {
    const std::size_t db = b.size() - 1;
    for (std::size_t i = a.size(); i-- > db;) {
        const Integer c = a[i];
        if (c == 0) continue;
        for (std::size_t j = 0; j <= db; ++j) a[i - db + j] -= c * b[j];
    }
    a.resize(db);
    return a;
}

IntVec cyclotomic_poly(long D) {
    IntVec num{1}, den{1};
    for (long e = 1; e <= D; ++e) {
        if (D % e) continue;
        const int mu = moebius(D / e);
        if (mu == 0) continue;
        IntVec f(static_cast<std::size_t>(e) + 1, 0);
        f[0] = -1;
        f[static_cast<std::size_t>(e)] = 1;
        if (mu == 1) num = poly_mul(num, f);
        else den = poly_mul(den, f);
    }
    return poly_divexact(num, den);
}

}  // namespace

TElem quadratic_circular_unit(const TowerField& F) {
    const QuadField K(F.d());
    const Integer disc = K.discriminant();
    const long D = Integer(abs(disc)).get_si();
    std::vector<long> H;
    for (long c = 1; c < D; ++c)
        if (std::gcd(c, D) == 1 && kronecker(disc, Integer(c)) == 1) H.push_back(c);
    // P(X) = prod_{c in H} (X - y^c) in Z[y]/(y^D - 1)
    std::vector<IntVec> P{IntVec(static_cast<std::size_t>(D), 0)};
    P[0][0] = 1;
    for (long c : H) {
        std::vector<IntVec> Q(P.size() + 1, IntVec(static_cast<std::size_t>(D), 0));
        for (std::size_t j = 0; j < P.size(); ++j)
            for (long t = 0; t < D; ++t) {
                const Integer& v = P[j][static_cast<std::size_t>(t)];
                if (v == 0) continue;
                Q[j + 1][static_cast<std::size_t>(t)] += v;
                Q[j][static_cast<std::size_t>((t + c) % D)] -= v;
            }
        P = std::move(Q);
    }
    const IntVec phiD = cyclotomic_poly(D);
    IntVec gauss(static_cast<std::size_t>(D), 0);
    for (long c : H) gauss[static_cast<std::size_t>(c)] = 1;
    const IntVec g = poly_rem(gauss, phiD);
    std::size_t idx = 1;
    while (idx < g.size() && g[idx] == 0) ++idx;
    if (idx == g.size()) throw std::logic_error("Gauss period reduced to a rational");
    // Gauss period = (mu(D) + sqrt(disc)) / 2, sqrt(disc) = sqrt d or 2 sqrt d
    const Rational mu(moebius(D));
    const Rational root_scale = disc == F.d() ? Rational(1) : Rational(2);
    TElem xi = F.zero();
    const long nH = static_cast<long>(H.size());
    for (std::size_t j = 0; j < P.size(); ++j) {
        const IntVec z = poly_rem(P[j], phiD);
        Rational b(z[idx], g[idx]);
        b.canonicalize();
        const Rational a = Rational(z[0]) - b * Rational(g[0]);
        for (std::size_t i = 1; i < z.size(); ++i)
            if (Rational(z[i]) != b * Rational(g[i])) throw std::logic_error("coefficient is not in Q(sqrt d)");
        // a + b (mu + sqrt disc) / 2
        const Rational ra = a + b * mu / 2, rb = b * root_scale / 2;
        TElem coef = F.add(F.from_rational(ra), F.scale(F.sqrt_d(), rb));
        xi = F.add(xi, F.mul(coef, F.zeta(nH - static_cast<long>(j))));
    }
    return xi;
}

std::size_t sunit_rank(const TowerField& F, unsigned primes_above_3) {
    return F.degree() / 2 - 1 + primes_above_3;
}

}  // namespace kummer
