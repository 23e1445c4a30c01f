// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include "kummer/errors.hpp"
#include "kummer/quadfield.hpp"
#include "kummer/radicals.hpp"
#include "kummer/report.hpp"
#include "oracles.hpp"

#include <chrono>
#include <functional>
#include <iostream>
#include <sstream>

using namespace kummer;

namespace {

// Runtime limits in seconds.
constexpr double kUnitLimit = 1;
constexpr double kUhatLimit = 10;
constexpr double kRestrictedLimit = 60;
constexpr double kEngineLimit = 30 * 60;
constexpr double kSurveyLimit = 30 * 60;
// Sample sizes for the local oracle suite.
constexpr std::size_t kSymbolPairs = 500;
constexpr std::size_t kNormSamples = 500;
constexpr long kSurveyBound = 199;

const std::vector<long> kCritical{-107, 67, 103, 106, 139};

using Clock = std::chrono::steady_clock;

double since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

struct Outcome {
    bool passed = true;
    std::ostringstream detail;

    void require(bool ok, const std::string& what) {
        if (!ok) {
            passed = false;
            detail << " [failed: " << what << "]";
        }
    }
};

XCircData order_three() {
    XCircData x;
    x.order = 3;
    x.source = XCircData::Source::InputTable;
    return x;
}

RadicalSpace over67(RadicalLabel l, const std::vector<F3Vec>& span) { return RadicalSpace(l, {"3", "eps", "eta"}, span); }

// Shared survey data: every admissible d in the range, computed once with all radicals.
struct SurveyData {
    Survey survey;
    double seconds = 0;
    std::vector<RadicalReport> reports;
};

const SurveyData& survey_data() {
    static const SurveyData data = [] {
        SurveyData s;
        const auto table = FixtureTable::builtin();
        const auto t0 = Clock::now();
        s.survey = run_survey(Integer(-kSurveyBound), Integer(kSurveyBound), table, {}, 1);
        s.seconds = since(t0);
        for (const auto& row : s.survey.rows) s.reports.push_back(compute_report(row.d, Which::All, table));
        return s;
    }();
    return data;
}

void criterion1(Outcome& o) {
    const auto t0 = Clock::now();
    const QuadField K(67);
    const QuadElem eps = fundamental_unit(K);
    const double t = since(t0);
    o.require(eps == QuadElem(K, 48842, 5967), "eps = 48842 + 5967 sqrt 67");
    o.require(norm(eps) == 1, "norm +1");
    o.require(t < kUnitLimit, "runtime");
    o.detail << "eps = " << eps.to_string() << ", N = " << norm(eps) << ", " << t << " s";
}

void criterion2(Outcome& o) {
    const auto t0 = Clock::now();
    RadicalEngine E(Integer(67), order_three());
    const auto uhat = E.uhat_radical();
    const auto& T = E.field().field();
    const auto& eps = E.sunits().free_generators[1].value;
    const bool m1 = uhat_test(T, eps, E.places(), 1);
    const bool m2 = uhat_test(T, eps, E.places(), 2);
    const double t = since(t0);
    o.require(uhat == over67(RadicalLabel::Uhat, {{1, 0, 0}, {0, 1, 0}}), "Uhat = <3, eps>");
    o.require(uhat.dim() == 2, "dim 2");
    o.require(m1 && !m2, "eps passes at m = 1 and fails at m = 2");
    o.require(t < kUhatLimit, "runtime");
    o.detail << "Uhat' = <" << uhat.describe()[0] << ", " << uhat.describe()[1] << ">, test(eps) m=1 " << m1
             << " m=2 " << m2 << ", " << t << " s";
}

void criterion3(Outcome& o) {
    const auto expected = over67(RadicalLabel::T, {{1, 0, 0}, {0, 0, 1}});
    const auto table = FixtureTable::builtin();

    auto t0 = Clock::now();
    RadicalOptions restricted;
    restricted.level2_budget = 0;
    RadicalEngine R(Integer(67), order_three(), restricted);
    const auto d0 = R.uhat_radical();
    const auto dm1 = over67(RadicalLabel::Dminus1, table.find(Integer(67))->expected.at("A"));
    const auto derived = R.derive_third_radical(d0, dm1).relabel(RadicalLabel::T);
    const double t_restricted = since(t0);

    t0 = Clock::now();
    RadicalEngine E(Integer(67), order_three());
    const auto engine = E.twisted_norm_radical(1).relabel(RadicalLabel::T);
    const double t_engine = since(t0);

    o.require(derived == expected, "derived T = <3, eta>");
    o.require(engine == expected, "engine T = <3, eta>");
    o.require(E.generator_names()[2] == "eta" &&
                  E.sunits().free_generators[2].value ==
                      E.field().embed(QuadElem(E.field().sqrt_d_field(), 8, 1)),
              "eta = 8 + sqrt 67");
    o.require(t_restricted < kRestrictedLimit, "restricted runtime");
    o.require(t_engine < kEngineLimit, "engine runtime");
    o.detail << "T' = <" << derived.describe()[0] << ", " << derived.describe()[1] << "> both paths, " << t_restricted
             << " s restricted, " << t_engine << " s engine";
}

void criterion4(Outcome& o) {
    RadicalEngine E(Integer(67), order_three());
    const auto a = E.twisted_norm_radical(-1);
    const auto fixture = FixtureTable::builtin().find(Integer(67))->expected.at("A");
    o.require(span_equal(a.basis, {{1, 0, 0}, {0, 2, 1}}, 3), "A = <3, eps^2 eta>");
    o.require(span_equal(a.basis, fixture, 3), "matches the shipped fixture");
    o.detail << "A' = <" << a.describe()[0] << ", " << a.describe()[1] << "> (eps*eta^2 = (eps^2*eta)^2)";
}

void criterion5(Outcome& o) {
    RadicalEngine E(Integer(67), order_three());
    const auto amb = E.ambient_radical();
    o.require(amb.dim() == 3, "dim 3");
    o.require(amb == over67(RadicalLabel::Ambient, {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}), "span{3, eps, eta}");
    o.require(E.ambient_generators().size() == E.sunits().size(), "image of the 3-units mod cubes");
    o.detail << "Ambient' dim " << amb.dim() << " over " << amb.generators.size() << " generators";
}

void criterion6(Outcome& o) {
    RadicalEngine E(Integer(67), order_three());
    const auto& T = E.field().field();
    const auto& eps = E.sunits().free_generators[1].value;
    o.detail << "(eps, zeta3)_v =";
    for (const auto& v : E.places()) {
        const int s = hilbert_symbol(T, eps, E.field().omega(), v);
        o.detail << " " << s;
        o.require(s == 0, "symbol at " + v.label());
    }
    const auto t = E.twisted_norm_radical(1);
    o.require(!t.contains(F3Vec{0, 1, 0}), "eps not in T");
    o.detail << ", eps in T' " << t.contains(F3Vec{0, 1, 0});
}

void criterion7(Outcome& o) {
    const auto& S = survey_data();
    std::vector<Integer> expected;
    for (long d : kCritical) expected.push_back(Integer(d));
    std::size_t resolved = 0, order_one = 0;
    for (const auto& row : S.survey.rows) {
        resolved += row.status == "resolved";
        o.require(row.status == "resolved", "d = " + to_string(row.d) + " " + row.status + " " + row.message);
        if (row.xcirc_order == 1) {
            ++order_one;
            o.require(row.branch == "X°=1: A = T" && row.a_equals_t == std::optional<bool>(true),
                      "X° = 1 branch for d = " + to_string(row.d));
        }
    }
    o.require(S.survey.flagged() == expected, "flagged set");
    o.require(S.seconds < kSurveyLimit, "runtime");
    o.detail << resolved << " resolved (" << order_one << " with X° = 1), A != T for {";
    for (std::size_t i = 0; i < S.survey.flagged().size(); ++i) o.detail << (i ? ", " : "") << S.survey.flagged()[i];
    o.detail << "}, " << S.seconds << " s";
}

void criterion8(Outcome& o) {
    std::size_t engines = 0;
    for (long d : kCritical) {
        RadicalEngine E(Integer(d), order_three());
        const std::size_t n = E.generator_names().size();
        const auto uhat = E.uhat_radical();
        const auto un = E.universal_norm_subgroup();
        const auto d0 = E.twisted_norm_radical(0);
        const auto dm1 = E.twisted_norm_radical(-1);
        const auto d1 = E.twisted_norm_radical(1);
        const std::string at = " (d = " + std::to_string(d) + ")";
        o.require(span_equal(d0.basis, uhat.basis, n), "D0 = Uhat" + at);
        o.require(uhat.contains(un.space) && un.index_exponent == 1, "Utilde index 3" + at);
        o.require(E.derive_third_radical(d0, dm1).basis == d1.basis, "derived = engine" + at);
        ++engines;
    }
    // X° = 1: the universal norms are all of Uhat
    std::size_t trivial = 0;
    for (long d : {2L, -1L, 5L, -5L, 7L, 10L, -23L, 79L, -199L}) {
        XCircData x;
        RadicalEngine E(Integer(d), x);
        const auto un = E.universal_norm_subgroup();
        o.require(un.index_exponent == 0 && un.space.basis == E.uhat_radical().basis,
                  "Utilde = Uhat (d = " + std::to_string(d) + ")");
        ++trivial;
    }
    o.detail << engines << " engine runs, " << trivial << " X° = 1 fields";
}

void criterion9(Outcome& o) {
    using namespace oracle;
    std::size_t cube_checks = 0, cube_bad = 0;
    const auto Q = LocalField::rationals(8);
    for (long x = 1; x < 243; ++x, ++cube_checks) cube_bad += f3_is_zero(Q.cube_class(Q.from_integer(x))) != rational_is_cube(x);
    const BiquadField F67(Integer(67));
    const LocalField L(complete_at_3(F67.field(), 8)[0]);
    for (long a = 0; a < 81; ++a)
        for (long b = 0; b < 81; ++b) {
            if (a == 0 && b == 0) continue;
            ++cube_checks;
            cube_bad += f3_is_zero(L.cube_class(L.embed(F67.from_coords(a, b, 0, 0)))) != eisenstein_is_cube(a, b);
        }
    o.require(cube_bad == 0, "cube classes");

    std::mt19937_64 rng(2024);
    const std::vector<long> ds{67, -107, 2, -1, 103};
    std::size_t pairs = 0, bilinear = 0, antisym = 0, product = 0;
    for (std::size_t i = 0; pairs < kSymbolPairs; ++i) {
        const UnitSampler A(ds[i % ds.size()]);
        const auto& T = A.F.field();
        for (int t = 0; t < 50; ++t, ++pairs) {
            const auto a = A.random_unit(rng), b = A.random_unit(rng), c = A.random_unit(rng);
            int sum = 0;
            for (const auto& v : A.places) {
                const int ac = hilbert_symbol(T, a, c, v);
                bilinear += (hilbert_symbol(T, T.mul(a, b), c, v) - ac - hilbert_symbol(T, b, c, v)) % 3 != 0;
                antisym += (ac + hilbert_symbol(T, c, a, v)) % 3 != 0;
                sum += ac;
            }
            product += sum % 3 != 0;
        }
    }
    o.require(bilinear + antisym + product == 0, "symbol identities");

    std::size_t norms = 0, norm_bad = 0;
    for (std::size_t i = 0; norms < kNormSamples; ++i) {
        const UnitSampler A(ds[i % ds.size()]);
        const auto& T = A.F.field();
        for (int t = 0; t < 50; ++t, ++norms) {
            const auto x = A.random_unit(rng);
            const Rational N = T.norm_to_Q(x);
            int val = 0;
            Residue3k prod(1, 64);
            for (const auto& v : A.places) {
                const auto n = local_norm_to_Q3(T, x, v);
                val += n.valuation;
                const unsigned k = std::min(prod.precision(), n.unit.precision());
                prod = prod.reduce(k) * n.unit.reduce(k);
            }
            const Rational u = N / (val >= 0 ? Rational(pow3(val)) : Rational(1, pow3(-val)));
            norm_bad += val != valuation(N, 3) || rat_mod(u, prod.modulus()) != prod.value();
        }
    }
    o.require(norm_bad == 0, "norm product");
    o.detail << cube_checks << " cube classes (" << cube_bad << " off), " << pairs << " symbol pairs (" << bilinear
             << "/" << antisym << "/" << product << " violations), " << norms << " norm products (" << norm_bad
             << " off)";
}

void criterion10(Outcome& o) {
    const auto& S = survey_data();
    std::size_t checked = 0;
    for (const auto& r : S.reports) {
        for (const auto& c : r.checks)
            if (c.name.find(" in ") != std::string::npos || c.name.rfind("3 in", 0) == 0) {
                ++checked;
                o.require(c.passed, c.name + " (d = " + to_string(r.d) + ")");
            }
        o.require(r.find("Utilde") && r.find("B") && r.find("A") && r.find("T"), "radicals for d = " + to_string(r.d));
    }
    RadicalEngine E(Integer(67), order_three());
    std::vector<RadicalSpace> spaces{E.uhat_radical(), E.twisted_norm_radical(-1).relabel(RadicalLabel::A),
                                     E.twisted_norm_radical(1).relabel(RadicalLabel::T), E.bp_radical().primed()};
    const auto c = compare_radicals(spaces);
    o.require(c.b_over_uhat == std::optional<std::size_t>(1) && c.b_over_a == std::optional<std::size_t>(1) &&
                  c.b_over_t == std::optional<std::size_t>(1),
              "d = 67 deltas");
    o.detail << checked << " containment checks over " << S.reports.size() << " fields; d = 67 dim B - dim (Uhat, A, T) = "
             << c.b_over_uhat.value_or(99) << ", " << c.b_over_a.value_or(99) << ", " << c.b_over_t.value_or(99);
}

}  // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<void(Outcome&)>>> criteria{
        {"fundamental unit of Q(sqrt 67)", criterion1},
        {"Uhat radical for d = 67", criterion2},
        {"Tate kernel for d = 67", criterion3},
        {"A radical for d = 67", criterion4},
        {"Galois-fixed ambient for d = 67", criterion5},
        {"wild kernel symbol for d = 67", criterion6},
        {"survey |d| < 200", criterion7},
        {"engine self-consistency", criterion8},
        {"local arithmetic oracles", criterion9},
        {"containment lattice", criterion10},
    };
    bool all = true;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Outcome o;
        try {
            criteria[i].second(o);
        } catch (const std::exception& e) {
            o.passed = false;
            o.detail << " [exception: " << e.what() << "]";
        }
        all = all && o.passed;
        std::cout << (o.passed ? "PASS" : "FAIL") << " " << (i + 1) << " " << criteria[i].first << ": " << o.detail.str()
                  << std::endl;
    }
    return all ? 0 : 1;
}
