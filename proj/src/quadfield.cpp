#include "kummer/quadfield.hpp"

#include "kummer/errors.hpp"
#include "kummer/residue.hpp"

#include <map>
#include <set>
#include <stdexcept>

namespace kummer {

std::string to_string(Splitting s) {
    switch (s) {
        case Splitting::split: return "split";
        case Splitting::inert: return "inert";
        case Splitting::ramified: return "ramified";
    }
    return "?";
}

QuadField::QuadField(const Integer& D) : D_(D) {
    if (D == 0 || D == 1 || !is_squarefree(D))
        throw InvalidD("D = " + kummer::to_string(D) + " is not a squarefree integer other than 0, 1");
    disc_ = mod(D, 4) == 1 ? D : Integer(4 * D);
}

QuadElem::QuadElem(const QuadField& K, Rational a, Rational b)
    : a_(std::move(a)), b_(std::move(b)), D_(K.D()) {
    a_.canonicalize();
    b_.canonicalize();
}

static void check_same(const QuadElem& x, const QuadElem& y) {
    if (x.D() != y.D()) throw std::invalid_argument("quadratic elements from different fields");
}

QuadElem QuadElem::operator+(const QuadElem& o) const {
    check_same(*this, o);
    QuadElem r = *this;
    r.a_ += o.a_;
    r.b_ += o.b_;
    return r;
}

QuadElem QuadElem::operator-(const QuadElem& o) const { return *this + (-o); }

QuadElem QuadElem::operator*(const QuadElem& o) const {
    check_same(*this, o);
    QuadElem r = *this;
    r.a_ = a_ * o.a_ + Rational(D_) * b_ * o.b_;
    r.b_ = a_ * o.b_ + b_ * o.a_;
    return r;
}

QuadElem QuadElem::operator/(const QuadElem& o) const {
    Rational n = o.norm();
    if (n == 0) throw std::domain_error("division by zero in quadratic field");
    QuadElem r = *this * o.conjugate();
    r.a_ /= n;
    r.b_ /= n;
    return r;
}

QuadElem QuadElem::operator-() const {
    QuadElem r = *this;
    r.a_ = -a_;
    r.b_ = -b_;
    return r;
}

bool QuadElem::operator==(const QuadElem& o) const {
    return D_ == o.D_ && a_ == o.a_ && b_ == o.b_;
}

QuadElem QuadElem::conjugate() const {
    QuadElem r = *this;
    r.b_ = -b_;
    return r;
}

Rational QuadElem::norm() const { return a_ * a_ - Rational(D_) * b_ * b_; }

Rational QuadElem::trace() const { return 2 * a_; }

QuadElem QuadElem::pow(long e) const {
    QuadElem r = *this;
    r.a_ = 1;
    r.b_ = 0;
    QuadElem base = e < 0 ? r / *this : *this;
    if (e < 0) e = -e;
    while (e) {
        if (e & 1) r = r * base;
        e >>= 1;
        if (e) base = base * base;
    }
    return r;
}

bool QuadElem::is_integral() const { return trace().get_den() == 1 && norm().get_den() == 1; }

int QuadElem::sign() const {
    if (D_ < 0) throw NotRealQuadratic("sign needs a real embedding");
    int sa = sgn(a_), sb = sgn(b_);
    if (sb == 0) return sa;
    if (sa == 0 || sa == sb) return sb;
    Rational lhs = a_ * a_, rhs = Rational(D_) * b_ * b_;
    return lhs > rhs ? sa : sb;
}

std::string QuadElem::to_string() const {
    std::string r;
    const std::string root = "sqrt(" + kummer::to_string(D_) + ")";
    if (b_ == 0) return kummer::to_string(a_);
    if (a_ != 0) r = kummer::to_string(a_);
    Rational b = b_;
    if (a_ != 0) {
        r += b < 0 ? " - " : " + ";
        if (b < 0) b = -b;
    } else if (b < 0) {
        r += "-";
        b = -b;
    }
    if (b != 1) r += kummer::to_string(b) + "*";
    return r + root;
}

Rational norm(const QuadElem& x) { return x.norm(); }

Splitting splitting_at_3(const QuadField& K) {
    int k = kronecker(K.discriminant(), 3);
    return k == 0 ? Splitting::ramified : (k == 1 ? Splitting::split : Splitting::inert);
}

namespace {

// floor((P + sqrt(disc)) / Q) for non-square disc.
Integer cf_floor(const Integer& P, const Integer& Q, const Integer& s) {
    Integer r;
    if (Q > 0) {
        Integer n = P + s;
        mpz_fdiv_q(r.get_mpz_t(), n.get_mpz_t(), Q.get_mpz_t());
        return r;
    }
    Integer n = P + s, q = -Q;
    mpz_fdiv_q(r.get_mpz_t(), n.get_mpz_t(), q.get_mpz_t());
    return -(r + 1);
}

// (P + sqrt(disc)) / Q written on the basis 1, sqrt(D).
QuadElem disc_quotient(const QuadField& K, const Integer& P, const Integer& Q) {
    Rational root_coeff = K.discriminant() == K.D() ? Rational(1) : Rational(2);
    Rational a(P, Q);
    a.canonicalize();
    return QuadElem(K, a, root_coeff / Rational(Q));
}

}  // namespace

QuadElem fundamental_unit(const QuadField& K) {
    if (!K.is_real()) throw NotRealQuadratic("fundamental_unit needs D > 0");
    const Integer& disc = K.discriminant();
    const Integer s = isqrt(disc);
    Integer P = mod(disc, 2), Q = 2;
    std::set<std::pair<Integer, Integer>> seen;
    QuadElem prod(K, 1, 0);
    // The complete quotients after the first step are reduced and purely periodic;
    // their product over one period is the fundamental unit.
    for (long step = 0;; ++step) {
        Integer a = cf_floor(P, Q, s);
        if (step >= 1) {
            if (!seen.insert({P, Q}).second) break;
            prod = prod * disc_quotient(K, P, Q);
        }
        Integer P2 = a * Q - P;
        Integer Q2 = (disc - P2 * P2) / Q;
        P = P2;
        Q = Q2;
    }
    if (prod.sign() < 0) prod = -prod;
    if (prod.norm() != 1 && prod.norm() != -1) throw std::logic_error("continued fraction unit has wrong norm");
    QuadElem one(K, 1, 0);
    if ((prod - one).sign() < 0) prod = one / prod;
    return prod;
}

std::string BinaryForm::to_string() const {
    return "(" + kummer::to_string(a) + "," + kummer::to_string(b) + "," + kummer::to_string(c) + ")";
}

BinaryForm principal_form(const Integer& disc) {
    Integer b = mod(disc, 2);
    return {1, b, (b * b - disc) / 4};
}

static BinaryForm normalize_b(BinaryForm f) {
    // b into (-|a|, |a|]
    Integer twoa = 2 * abs(f.a);
    Integer b = mod(f.b, twoa);
    if (b > abs(f.a)) b -= twoa;
    Integer disc = f.discriminant();
    f.b = b;
    f.c = (b * b - disc) / (4 * f.a);
    return f;
}

BinaryForm compose(const BinaryForm& f, const BinaryForm& g) {
    if (f.discriminant() != g.discriminant()) throw std::invalid_argument("compose: discriminant mismatch");
    BinaryForm f1 = f, f2 = g;
    if (f1.a < 0 || f2.a < 0) throw std::invalid_argument("compose expects positive leading coefficients");
    if (f1.a > f2.a) std::swap(f1, f2);
    const Integer s = (f1.b + f2.b) / 2;
    const Integer n = f2.b - s;
    Integer y1, d;
    if (mod(f2.a, f1.a) == 0) {
        y1 = 0;
        d = f1.a;
    } else {
        Integer u, v;
        mpz_gcdext(d.get_mpz_t(), u.get_mpz_t(), v.get_mpz_t(), f2.a.get_mpz_t(), f1.a.get_mpz_t());
        y1 = u;
    }
    Integer x2, y2, d1;
    if (mod(s, d) == 0) {
        y2 = -1;
        x2 = 0;
        d1 = d;
    } else {
        Integer u, v;
        mpz_gcdext(d1.get_mpz_t(), u.get_mpz_t(), v.get_mpz_t(), s.get_mpz_t(), d.get_mpz_t());
        x2 = u;
        y2 = -v;
    }
    const Integer v1 = f1.a / d1, v2 = f2.a / d1;
    const Integer r = mod(y1 * y2 * n - x2 * f2.c, v1);
    BinaryForm h;
    h.a = v1 * v2;
    h.b = f2.b + 2 * v2 * r;
    h.c = (f2.c * d1 + r * (f2.b + v2 * r)) / v1;
    if (h.discriminant() != f.discriminant()) throw std::logic_error("composition lost the discriminant");
    return normalize_b(h);
}

BinaryForm inverse(const BinaryForm& f) { return normalize_b({f.a, -f.b, f.c}); }

BinaryForm reduce_definite(const BinaryForm& f0) {
    if (f0.discriminant() >= 0 || f0.a <= 0) throw std::invalid_argument("reduce_definite needs a positive definite form");
    BinaryForm f = normalize_b(f0);
    while (f.a > f.c || (f.a == f.c && f.b < 0)) {
        f = normalize_b({f.c, -f.b, f.a});
    }
    return f;
}

namespace {

// x + y sqrt(D) as (X + Y sqrt(disc)) / 2 with X, Y rational.
std::pair<Rational, Rational> half_disc_coords(const QuadField& K, const QuadElem& g) {
    if (K.discriminant() == K.D()) return {2 * g.a(), 2 * g.b()};
    return {2 * g.a(), g.b()};
}

bool in_ideal(const QuadField& K, const BinaryForm& f, const QuadElem& g) {
    auto [X, Y] = half_disc_coords(K, g);
    if (X.get_den() != 1 || Y.get_den() != 1) return false;
    Integer x = X.get_num(), y = Y.get_num();
    Integer t = x - y * f.b;
    if (mod(t, 2) != 0) return false;
    return mod(t / 2, abs(f.a)) == 0;
}

std::optional<QuadElem> generator_real(const QuadField& K, const BinaryForm& f) {
    const Integer& disc = K.discriminant();
    const Integer s = isqrt(disc);
    Integer P = f.b, Q = 2 * abs(f.a);
    QuadElem g(K, Rational(abs(f.a)), 0);
    std::set<std::pair<Integer, Integer>> seen;
    // [a, (b + sqrt disc)/2] = a [1, gamma]; [1, gamma] = theta [1, 1/theta] with theta = gamma - floor(gamma)
    while (true) {
        if (Q == 2 || Q == -2) return g;
        if (!seen.insert({P, Q}).second) return std::nullopt;
        Integer a = cf_floor(P, Q, s);
        g = g * (disc_quotient(K, P, Q) - QuadElem(K, Rational(a), 0));
        Integer P2 = a * Q - P;
        Integer Q2 = (disc - P2 * P2) / Q;
        P = P2;
        Q = Q2;
    }
}

std::optional<QuadElem> generator_imaginary(const QuadField& K, const BinaryForm& f,
                                            unsigned long search_bound) {
    const Integer& disc = K.discriminant();
    const Integer a = abs(f.a);
    // X^2 - disc Y^2 = 4a with Y bounded by the norm
    Integer ymax = isqrt(4 * a / (-disc));
    if (ymax > search_bound)
        throw SearchBudgetExceeded("imaginary generator search needs |y| up to " + kummer::to_string(ymax) +
                                   " > bound " + std::to_string(search_bound));
    // among the unit multiples prefer the smallest rational part
    std::optional<QuadElem> best;
    for (Integer y = 0; y <= ymax; ++y) {
        Integer x2 = 4 * a + disc * y * y;
        if (!is_square(x2)) continue;
        Integer x = isqrt(x2);
        for (int sx : {1, -1})
            for (int sy : {1, -1}) {
                Rational X(sx * x), Y(sy * y);
                QuadElem g = K.discriminant() == K.D() ? QuadElem(K, X / 2, Y / 2) : QuadElem(K, X / 2, Y);
                if (in_ideal(K, f, g) && (!best || abs(g.a()) < abs(best->a()))) best = g;
            }
    }
    return best;
}

}  // namespace

std::optional<QuadElem> principal_generator(const QuadField& K, const BinaryForm& f,
                                            unsigned long search_bound) {
    if (f.discriminant() != K.discriminant()) throw std::invalid_argument("form of wrong discriminant");
    auto g = K.is_real() ? generator_real(K, f) : generator_imaginary(K, f, search_bound);
    if (g && (abs(g->norm()) != Rational(abs(f.a)) || !in_ideal(K, f, *g)))
        throw std::logic_error("principal generator failed verification");
    return g;
}

bool is_principal(const QuadField& K, const BinaryForm& f) {
    if (!K.is_real()) return reduce_definite(f) == principal_form(K.discriminant());
    return generator_real(K, f).has_value();
}

bool equivalent(const QuadField& K, const BinaryForm& f, const BinaryForm& g) {
    return is_principal(K, compose(f, inverse(g)));
}

Integer ClassGroup::class_number() const {
    Integer h = 1;
    for (const auto& n : structure) h *= n;
    return h;
}

namespace {

std::vector<BinaryForm> prime_forms(const Integer& disc, const Integer& bound) {
    std::vector<BinaryForm> out;
    for (Integer p = 2; p <= bound; ++p) {
        if (!is_prime(p) || kronecker(disc, p) == -1) continue;
        Integer fourp = 4 * p;
        for (Integer b = 0; b < 2 * p; ++b) {
            if (mod(b * b - disc, fourp) == 0) {
                out.push_back(normalize_b({p, b, (b * b - disc) / fourp}));
                break;
            }
        }
    }
    return out;
}

struct FiniteGroup {
    std::vector<std::vector<std::size_t>> mul;
    std::size_t order(std::size_t g) const {
        std::size_t n = 1, x = g;
        while (x != 0) {
            x = mul[x][g];
            ++n;
        }
        return n;
    }
    std::vector<std::size_t> closure(std::vector<std::size_t> gens) const {
        std::vector<bool> in(mul.size(), false);
        std::vector<std::size_t> elems{0};
        in[0] = true;
        for (std::size_t i = 0; i < elems.size(); ++i)
            for (auto g : gens) {
                auto y = mul[elems[i]][g];
                if (!in[y]) {
                    in[y] = true;
                    elems.push_back(y);
                }
            }
        return elems;
    }
};

std::vector<Integer> invariant_factors(const FiniteGroup& G) {
    const std::size_t h = G.mul.size();
    std::vector<std::size_t> ord(h);
    for (std::size_t i = 0; i < h; ++i) ord[i] = G.order(i);
    // p-primary parts from |G[p^k]| = p^(sum_i min(k, e_i))
    std::map<std::size_t, std::vector<int>> exps;
    std::size_t rest = h;
    for (std::size_t p = 2; p <= rest; ++p) {
        if (rest % p) continue;
        int e = 0;
        while (rest % p == 0) {
            rest /= p;
            ++e;
        }
        std::vector<int> logs(static_cast<std::size_t>(e) + 2, 0);
        std::size_t pk = 1;
        for (int k = 1; k <= e + 1; ++k) {
            pk *= p;
            std::size_t cnt = 0;
            for (std::size_t i = 0; i < h; ++i) cnt += (pk % ord[i] == 0);
            int lg = 0;
            while (cnt > 1) {
                cnt /= p;
                ++lg;
            }
            logs[static_cast<std::size_t>(k)] = lg;
        }
        // number of cyclic factors of exponent >= k is logs[k] - logs[k-1]
        std::vector<int> factor_exps;
        for (int k = e + 1; k >= 1; --k) {
            int ge_k = logs[static_cast<std::size_t>(k)] - logs[static_cast<std::size_t>(k - 1)];
            int ge_k1 = k + 1 <= e + 1 ? logs[static_cast<std::size_t>(k + 1)] - logs[static_cast<std::size_t>(k)] : 0;
            for (int t = 0; t < ge_k - ge_k1; ++t) factor_exps.push_back(k);
        }
        exps[p] = factor_exps;
    }
    std::vector<Integer> out;
    for (std::size_t i = 0;; ++i) {
        Integer n = 1;
        bool any = false;
        for (auto& [p, es] : exps)
            if (i < es.size()) {
                n *= pow_int(Integer(static_cast<unsigned long>(p)), static_cast<unsigned long>(es[i]));
                any = true;
            }
        if (!any) break;
        out.push_back(n);
    }
    return out;
}

}  // namespace

ClassGroup class_group(const QuadField& K, const Integer& disc_bound) {
    const Integer disc = K.discriminant();
    if (abs(disc) > disc_bound)
        throw DiscriminantTooLarge("|disc| = " + kummer::to_string(Integer(abs(disc))) + " exceeds " + kummer::to_string(disc_bound));
    Integer bound = K.is_real() ? isqrt(disc / 4) + 1 : isqrt(-disc / 3) + 1;
    std::vector<BinaryForm> reps{principal_form(disc)};
    auto find = [&](const BinaryForm& f) -> std::optional<std::size_t> {
        for (std::size_t i = 0; i < reps.size(); ++i)
            if (equivalent(K, f, reps[i])) return i;
        return std::nullopt;
    };
    auto canon = [&](const BinaryForm& f) { return K.is_real() ? f : reduce_definite(f); };
    for (const auto& p : prime_forms(disc, bound)) {
        for (std::size_t i = 0; i < reps.size(); ++i) {
            BinaryForm x = canon(compose(reps[i], p));
            if (!find(x)) reps.push_back(x);
        }
    }
    FiniteGroup G;
    G.mul.assign(reps.size(), std::vector<std::size_t>(reps.size()));
    for (std::size_t i = 0; i < reps.size(); ++i)
        for (std::size_t j = 0; j < reps.size(); ++j) {
            auto k = find(compose(reps[i], reps[j]));
            if (!k) throw std::logic_error("class group enumeration is not closed");
            G.mul[i][j] = *k;
        }
    ClassGroup out;
    out.structure = invariant_factors(G);
    std::vector<std::size_t> chosen;
    for (const auto& n : out.structure) {
        std::size_t target = G.closure(chosen).size() * n.get_ui();
        bool found = false;
        for (std::size_t g = 0; g < reps.size() && !found; ++g) {
            if (G.order(g) != n.get_ui()) continue;
            auto trial = chosen;
            trial.push_back(g);
            if (G.closure(trial).size() == target) {
                chosen = trial;
                found = true;
            }
        }
        if (!found) throw std::logic_error("could not choose class group generators");
    }
    for (auto g : chosen) out.generators.push_back(reps[g]);
    return out;
}

namespace {

// Push a real generator into 1 <= g / sqrt|N(g)| < eps with g > 0.
QuadElem canonical_real(const QuadField& K, QuadElem g) {
    if (g.sign() < 0) g = -g;
    const QuadElem eps = fundamental_unit(K);
    const Rational n = abs(g.norm());
    const QuadElem one(K, 1, 0), eps2 = eps * eps;
    auto ratio = [&](const QuadElem& x) {
        QuadElem t = x * x;
        return QuadElem(K, t.a() / n, t.b() / n);
    };
    while ((ratio(g) - eps2).sign() >= 0) g = g / eps;
    while ((ratio(g) - one).sign() < 0) g = g * eps;
    return g;
}

}  // namespace

PrimeGenerator three_adic_prime_generator(const QuadField& K, unsigned long search_bound) {
    const Integer disc = K.discriminant();
    const Splitting sp = splitting_at_3(K);
    if (sp == Splitting::inert) throw std::invalid_argument("3 is inert in Q(sqrt " + kummer::to_string(K.D()) + ")");
    const bool root_is_d = disc == K.D();
    auto finish = [&](QuadElem g, int h) {
        if (K.is_real()) g = canonical_real(K, g);
        else if (g.a() < 0 || (g.a() == 0 && g.b() < 0)) g = -g;
        return PrimeGenerator{g, h, g.norm(), search_bound};
    };
    if (sp == Splitting::ramified) {
        Integer b = mod(disc, 2) == 0 ? Integer(0) : Integer(3);
        BinaryForm p{3, b, (b * b - disc) / 12};
        if (auto g = principal_generator(K, p, search_bound)) return finish(*g, 1);
        return finish(QuadElem(K, 3, 0), 2);
    }
    // sqrt(D) = 1 mod p, and (b + sqrt disc)/2 lies in p
    const Integer b1 = root_is_d ? Integer(2) : Integer(1);
    for (unsigned j = 1; j <= 64; ++j) {
        Residue3k r = hensel_lift_root({-disc, 0, 1}, Residue3k(b1, 1), j);
        Integer b = r.value(), q = pow3(j);
        if (mod(b - disc, 2) != 0) b += q;
        BinaryForm pj{q, b, (b * b - disc) / (4 * q)};
        if (auto g = principal_generator(K, pj, search_bound)) return finish(*g, static_cast<int>(j));
    }
    throw SearchBudgetExceeded("no principal power of the 3-adic prime up to exponent 64");
}

}  // namespace kummer
