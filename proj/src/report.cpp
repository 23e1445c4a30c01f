#include "kummer/report.hpp"

#include "kummer/errors.hpp"

#include <atomic>
#include <chrono>
#include <fstream>
#include <sstream>
#include <thread>

namespace kummer {

using nlohmann::json;

namespace {

constexpr const char* kBuiltinFixtures = R"({
  "-107": {"xcirc_order": 3, "critical": true},
  "67": {
    "xcirc_order": 3,
    "critical": true,
    "generators": ["3", "eps", "eta"],
    "expected_radicals": {
      "uhat": [[1, 0, 0], [0, 1, 0]],
      "A": [[1, 0, 0], [0, 2, 1]],
      "T": [[1, 0, 0], [0, 0, 1]],
      "B": [[1, 0, 0], [0, 1, 0], [0, 0, 1]],
      "ambient": [[1, 0, 0], [0, 1, 0], [0, 0, 1]]
    }
  },
  "103": {"xcirc_order": 3, "critical": true},
  "106": {"xcirc_order": 3, "critical": true},
  "139": {"xcirc_order": 3, "critical": true}
})";

const std::map<std::string, std::string> kFixtureLabels = {
    {"uhat", "Uhat"}, {"utilde", "Utilde"}, {"A", "A"}, {"T", "T"}, {"B", "B"}, {"ambient", "Ambient"}};

std::vector<F3Vec> vectors_from_json(const json& j) {
    std::vector<F3Vec> out;
    for (const auto& row : j) {
        F3Vec v;
        for (const auto& c : row) v.push_back(f3(c.get<long>()));
        out.push_back(v);
    }
    return out;
}

json vectors_to_json(const std::vector<F3Vec>& vs) {
    json out = json::array();
    for (const auto& v : vs) {
        json row = json::array();
        for (auto c : v) row.push_back(static_cast<int>(c));
        out.push_back(row);
    }
    return out;
}

ReportedRadical reported(const RadicalSpace& s, const std::string& source) {
    return {to_string(s.label), s.basis, s.describe(), s.with_zeta3, source};
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

FixtureTable FixtureTable::builtin() { return from_json(json::parse(kBuiltinFixtures)); }

FixtureTable FixtureTable::from_json(const json& j) {
    if (!j.is_object()) throw FixtureError("fixture table must be an object keyed by d");
    FixtureTable t;
    for (const auto& [key, value] : j.items()) {
        FixtureEntry e;
        Integer d;
        if (d.set_str(key, 10) != 0) throw FixtureError("fixture key '" + key + "' is not an integer");
        try {
            e.xcirc_order = Integer(value.at("xcirc_order").get<long>());
            e.critical = value.value("critical", false);
            if (value.contains("generators")) e.generators = value.at("generators").get<std::vector<std::string>>();
            if (value.contains("expected_radicals")) {
                for (const auto& [name, rows] : value.at("expected_radicals").items()) {
                    if (!kFixtureLabels.count(name)) throw FixtureError("unknown radical '" + name + "' for d = " + key);
                    auto vs = vectors_from_json(rows);
                    for (const auto& v : vs)
                        if (v.size() != e.generators.size())
                            throw FixtureError("radical '" + name + "' for d = " + key + " has the wrong width");
                    e.expected[name] = vs;
                }
            }
        } catch (const json::exception& ex) {
            throw FixtureError("malformed fixture for d = " + key + ": " + ex.what());
        }
        t.entries[d] = e;
    }
    return t;
}

FixtureTable FixtureTable::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw FixtureError("cannot open fixture table " + path);
    try {
        return from_json(json::parse(in));
    } catch (const json::exception& ex) {
        throw FixtureError("fixture table " + path + " is not valid JSON: " + ex.what());
    }
}

json FixtureTable::to_json() const {
    json out = json::object();
    for (const auto& [d, e] : entries) {
        json v{{"xcirc_order", e.xcirc_order.get_si()}, {"critical", e.critical}};
        if (!e.generators.empty()) v["generators"] = e.generators;
        if (!e.expected.empty()) {
            json ex = json::object();
            for (const auto& [name, rows] : e.expected) ex[name] = vectors_to_json(rows);
            v["expected_radicals"] = ex;
        }
        out[kummer::to_string(d)] = v;
    }
    return out;
}

XCircData FixtureTable::xcirc(const Integer& d) const {
    XCircData x;
    x.source = XCircData::Source::InputTable;
    if (const auto* e = find(d)) x.order = e->xcirc_order;
    return x;
}

const FixtureEntry* FixtureTable::find(const Integer& d) const {
    auto it = entries.find(d);
    return it == entries.end() ? nullptr : &it->second;
}

Which parse_which(const std::string& s) {
    if (s == "uhat") return Which::Uhat;
    if (s == "bp" || s == "B") return Which::BP;
    if (s == "A") return Which::A;
    if (s == "T") return Which::T;
    if (s == "all") return Which::All;
    throw std::invalid_argument("--which must be one of uhat, bp, A, T, all");
}

const ReportedRadical* RadicalReport::find(const std::string& label) const {
    for (const auto& r : radicals)
        if (r.label == label) return &r;
    return nullptr;
}

bool RadicalReport::checks_passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const ReportCheck& c) { return c.passed; });
}

int RadicalReport::exit_code() const {
    if (status == "inconclusive") return 2;
    if (status != "ok" || !checks_passed()) return 1;
    return 0;
}

RadicalReport compute_report(const Integer& d, Which which, const FixtureTable& table, const ComputeOptions& options) {
    RadicalReport R;
    R.d = d;
    R.xcirc = table.xcirc(d);
    R.precision = options.radical.precision;
    std::map<std::string, double> timing;
    const auto t0 = std::chrono::steady_clock::now();
    auto check = [&](const std::string& name, bool ok, const std::string& detail = "") {
        R.checks.push_back({name, ok, detail});
    };
    std::optional<RadicalEngine> engine;
    try {
        engine.emplace(d, R.xcirc, options.radical);
        RadicalEngine& E = *engine;
        R.s = E.field().s();
        timing["setup"] = seconds_since(t0);
        const bool want_b = which == Which::BP || which == Which::All;
        const bool want_at = which == Which::A || which == Which::T || which == Which::All;

        std::vector<RadicalSpace> primed;  // for the containment checks
        const RadicalSpace uhat = E.uhat_radical();
        timing["uhat"] = seconds_since(t0);
        R.radicals.push_back(reported(uhat, "computed"));
        primed.push_back(uhat);

        if (which == Which::All) {
            const UniversalNorms un = E.universal_norm_subgroup();
            R.radicals.push_back(reported(un.space, "computed"));
            primed.push_back(un.space);
            check("Utilde in Uhat", uhat.contains(un.space));
            const std::size_t expected_index = R.xcirc.order == 3 ? 1 : 0;
            check("[Uhat : Utilde] = |X°|", un.index_exponent == expected_index,
                  "3^" + std::to_string(un.index_exponent));
            timing["utilde"] = seconds_since(t0);
        }

        std::optional<RadicalSpace> bp;
        if (want_b) {
            bp = E.bp_radical();
            R.radicals.push_back(reported(*bp, "computed"));
            F3Vec z(bp->ambient_dim() - 1, 0);
            z.push_back(1);
            check("zeta3 in B", bp->contains(z));
            timing["bp"] = seconds_since(t0);
        }

        if (want_at) {
            if (R.xcirc.order == 1) {
                R.radicals.push_back(reported(uhat.relabel(RadicalLabel::A), "declared"));
                R.radicals.push_back(reported(uhat.relabel(RadicalLabel::T), "declared"));
                primed.push_back(uhat.relabel(RadicalLabel::A));
                primed.push_back(uhat.relabel(RadicalLabel::T));
            } else if (R.xcirc.order == 3) {
                std::optional<RadicalSpace> a;
                std::string a_source = "computed";
                if (options.radical.level2_budget > 0) {
                    a = E.twisted_norm_radical(-1).relabel(RadicalLabel::A);
                } else if (const auto* fx = table.find(d); fx && fx->expected.count("A")) {
                    if (fx->generators != E.generator_names())
                        throw Inconclusive("supplied A radical is over other generators");
                    a = RadicalSpace(RadicalLabel::A, fx->generators, fx->expected.at("A"));
                    a_source = "supplied";
                } else {
                    throw Inconclusive("A radical needs the level-2 approximation (budget 0) or a supplied value");
                }
                timing["A"] = seconds_since(t0);
                const RadicalSpace derived = E.derive_third_radical(uhat, *a).relabel(RadicalLabel::T);
                check("third radical symmetric", E.derive_third_radical(*a, uhat).relabel(RadicalLabel::T) == derived);
                R.radicals.push_back(reported(*a, a_source));
                primed.push_back(*a);
                if (E.level2_ready()) {
                    const RadicalSpace d0 = E.twisted_norm_radical(0);
                    check("D0 = Uhat", d0.generators == uhat.generators && span_equal(d0.basis, uhat.basis, uhat.ambient_dim()));
                    const RadicalSpace t = E.twisted_norm_radical(1).relabel(RadicalLabel::T);
                    check("derived T = engine T", t == derived);
                    R.radicals.push_back(reported(t, "computed"));
                    primed.push_back(t);
                } else {
                    R.radicals.push_back(reported(derived, "derived"));
                    primed.push_back(derived);
                }
                timing["T"] = seconds_since(t0);
                if (which == Which::All) {
                    const RadicalSpace amb = E.ambient_radical();
                    R.radicals.push_back(reported(amb, "computed"));
                    check("A in Ambient", amb.contains(*a));
                    check("T in Ambient", amb.contains(primed.back()));
                    primed.push_back(amb);
                    timing["ambient"] = seconds_since(t0);
                }
            } else {
                throw Inconclusive("X° of order " + kummer::to_string(R.xcirc.order) + " is outside the supported regime");
            }
        }

        for (const auto& s : primed) check("3 in " + to_string(s.label), s.contains(three_class(s.ambient_dim())));
        if (bp) {
            const RadicalSpace bprime = bp->primed();
            for (const auto& s : primed)
                if (s.label != RadicalLabel::Ambient) check(to_string(s.label) + " in B", bprime.contains(s));
        }

        for (const auto& g : E.ambient_generators()) {
            ReportedGenerator rg{g.name, {}, g.provenance};
            for (const auto& c : E.field().field().coords(g.value)) rg.coordinates.push_back(c.get_str());
            R.generators.push_back(rg);
        }
        R.precision = E.log_precision();
    } catch (const Inconclusive& e) {
        R.status = "inconclusive";
        R.error = {e.kind(), e.what()};
    } catch (const Error& e) {
        R.status = "error";
        R.error = {e.kind(), e.what()};
    } catch (const std::exception& e) {
        R.status = "error";
        R.error = {"InternalError", e.what()};
    }
    if (R.generators.empty() && engine) {
        for (const auto& g : engine->sunits().free_generators) {
            ReportedGenerator rg{g.name, {}, g.provenance};
            for (const auto& c : engine->field().field().coords(g.value)) rg.coordinates.push_back(c.get_str());
            R.generators.push_back(rg);
        }
    }
    timing["total"] = seconds_since(t0);
    if (options.timing) R.timing = timing;
    return R;
}

json to_json(const RadicalReport& r) {
    json j;
    j["d"] = kummer::to_string(r.d);
    j["s"] = r.s;
    j["generators"] = json::array();
    for (const auto& g : r.generators)
        j["generators"].push_back({{"name", g.name}, {"coordinates", g.coordinates}, {"provenance", g.provenance}});
    j["radicals"] = json::array();
    for (const auto& rad : r.radicals)
        j["radicals"].push_back({{"label", rad.label},
                                 {"basis", vectors_to_json(rad.basis)},
                                 {"forms", rad.forms},
                                 {"with_zeta3", rad.with_zeta3},
                                 {"source", rad.source}});
    j["xcirc"] = {{"order", kummer::to_string(r.xcirc.order)},
                  {"gamma_action_trivial", r.xcirc.gamma_action_trivial},
                  {"source", to_string(r.xcirc.source)}};
    j["precision"] = r.precision;
    j["checks"] = json::array();
    for (const auto& c : r.checks) j["checks"].push_back({{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
    j["status"] = r.status;
    j["error"] = r.error ? json{{"kind", r.error->first}, {"message", r.error->second}} : json(nullptr);
    if (r.timing) j["timing"] = *r.timing;
    return j;
}

RadicalReport report_from_json(const json& j) {
    RadicalReport r;
    r.d = Integer(j.at("d").get<std::string>());
    r.s = j.at("s").get<unsigned>();
    for (const auto& g : j.at("generators"))
        r.generators.push_back({g.at("name"), g.at("coordinates").get<std::vector<std::string>>(), g.at("provenance")});
    for (const auto& rad : j.at("radicals"))
        r.radicals.push_back({rad.at("label"), vectors_from_json(rad.at("basis")),
                              rad.at("forms").get<std::vector<std::string>>(), rad.at("with_zeta3"), rad.at("source")});
    const auto& x = j.at("xcirc");
    r.xcirc.order = Integer(x.at("order").get<std::string>());
    r.xcirc.gamma_action_trivial = x.at("gamma_action_trivial");
    const std::string src = x.at("source");
    r.xcirc.source = src == "input-table"          ? XCircData::Source::InputTable
                     : src == "capitulation-probe" ? XCircData::Source::CapitulationProbe
                                                   : XCircData::Source::Unknown;
    r.precision = j.at("precision");
    for (const auto& c : j.at("checks")) r.checks.push_back({c.at("name"), c.at("passed"), c.at("detail")});
    r.status = j.at("status");
    if (!j.at("error").is_null()) r.error = {j["error"].at("kind"), j["error"].at("message")};
    if (j.contains("timing")) r.timing = j.at("timing").get<std::map<std::string, double>>();
    return r;
}

std::string to_text(const RadicalReport& r) {
    std::ostringstream out;
    out << "d = " << r.d << "  s = " << r.s << "  X° order " << r.xcirc.order << " (" << to_string(r.xcirc.source)
        << ")  status " << r.status << "\n";
    for (const auto& g : r.generators) out << "  " << g.name << ": " << g.provenance << "\n";
    for (const auto& rad : r.radicals) {
        out << "  " << rad.label << (rad.with_zeta3 ? "" : "'") << " = <";
        for (std::size_t i = 0; i < rad.forms.size(); ++i) out << (i ? ", " : "") << rad.forms[i];
        out << ">  dim " << rad.basis.size() << "  [" << rad.source << "]\n";
    }
    for (const auto& c : r.checks)
        out << "  check " << c.name << ": " << (c.passed ? "ok" : "FAILED") << (c.detail.empty() ? "" : " (" + c.detail + ")")
            << "\n";
    if (r.error) out << "  " << r.error->first << ": " << r.error->second << "\n";
    return out.str();
}

std::vector<Integer> Survey::flagged() const {
    std::vector<Integer> out;
    for (const auto& row : rows)
        if (row.status == "resolved" && row.a_equals_t && !*row.a_equals_t) out.push_back(row.d);
    return out;
}

Survey run_survey(const Integer& lo, const Integer& hi, const FixtureTable& table, const ComputeOptions& options,
                  unsigned jobs) {
    Survey S;
    std::vector<Integer> ds;
    for (Integer d = lo; d <= hi; ++d) {
        if (d == 0 || d == 1) S.skipped.emplace_back(d, "excluded value");
        else if (mpz_divisible_ui_p(d.get_mpz_t(), 3)) S.skipped.emplace_back(d, "divisible by 3");
        else if (!is_squarefree(d)) S.skipped.emplace_back(d, "not squarefree");
        else ds.push_back(d);
    }
    S.rows.resize(ds.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < ds.size(); i = next++) {
            const RadicalReport R = compute_report(ds[i], Which::All, table, options);
            SurveyRow row;
            row.d = ds[i];
            row.xcirc_order = R.xcirc.order;
            row.branch = R.xcirc.order == 1 ? "X°=1: A = T" : "engine";
            if (R.status == "ok" && R.checks_passed()) {
                row.status = "resolved";
                const auto* a = R.find("A");
                const auto* t = R.find("T");
                if (a && t) row.a_equals_t = span_equal(a->basis, t->basis, R.generators.size());
            } else {
                row.status = R.status == "inconclusive" ? "inconclusive" : "error";
                if (R.error) row.message = R.error->first + ": " + R.error->second;
                for (const auto& c : R.checks)
                    if (!c.passed) row.message += (row.message.empty() ? "" : "; ") + ("check failed: " + c.name);
            }
            S.rows[i] = row;
        }
    };
    jobs = std::max(1u, jobs);
    std::vector<std::thread> pool;
    for (unsigned t = 1; t < jobs; ++t) pool.emplace_back(worker);
    worker();
    for (auto& th : pool) th.join();
    return S;
}

json to_json(const Survey& s) {
    json j;
    j["rows"] = json::array();
    std::size_t resolved = 0, inconclusive = 0, errors = 0;
    for (const auto& r : s.rows) {
        j["rows"].push_back({{"d", kummer::to_string(r.d)},
                             {"status", r.status},
                             {"xcirc_order", kummer::to_string(r.xcirc_order)},
                             {"a_equals_t", r.a_equals_t ? json(*r.a_equals_t) : json(nullptr)},
                             {"branch", r.branch},
                             {"message", r.message}});
        resolved += r.status == "resolved";
        inconclusive += r.status == "inconclusive";
        errors += r.status == "error";
    }
    j["skipped"] = json::array();
    for (const auto& [d, why] : s.skipped) j["skipped"].push_back({{"d", kummer::to_string(d)}, {"reason", why}});
    json flagged = json::array();
    for (const auto& d : s.flagged()) flagged.push_back(kummer::to_string(d));
    j["summary"] = {{"resolved", resolved},
                    {"inconclusive", inconclusive},
                    {"errors", errors},
                    {"skipped", s.skipped.size()},
                    {"a_differs_from_t", flagged}};
    return j;
}

bool FixtureVerification::passed() const {
    return std::all_of(results.begin(), results.end(), [](const FixtureResult& r) { return r.passed; });
}

FixtureVerification verify_fixtures(const FixtureTable& table, const ComputeOptions& options) {
    FixtureVerification V;
    if (table.entries.empty()) V.warnings.push_back("fixture table is empty; nothing to verify");
    for (const auto& [d, e] : table.entries) {
        FixtureResult res{d, true, {}};
        auto fail = [&](const std::string& msg) {
            res.passed = false;
            res.diffs.push_back(msg);
        };
        ComputeOptions opts = options;
        const RadicalReport R = compute_report(d, Which::All, table, opts);
        if (R.status != "ok") fail("status " + R.status + (R.error ? ": " + R.error->second : ""));
        for (const auto& c : R.checks)
            if (!c.passed) fail("check failed: " + c.name);
        std::vector<std::string> names;
        for (const auto& g : R.generators) names.push_back(g.name);
        if (R.status == "ok") {
            const auto* a = R.find("A");
            const auto* t = R.find("T");
            if (a && t) {
                const bool differs = !span_equal(a->basis, t->basis, names.size());
                if (differs != e.critical)
                    fail(std::string("critical flag ") + (e.critical ? "true" : "false") + " but A " +
                         (differs ? "!=" : "=") + " T");
            }
        }
        if (!e.expected.empty() && e.generators != names) {
            std::string got;
            for (const auto& n : names) got += (got.empty() ? "" : ",") + n;
            fail("generators differ: report has [" + got + "]");
        } else {
            for (const auto& [key, rows] : e.expected) {
                const auto* r = R.find(kFixtureLabels.at(key));
                if (!r) {
                    fail(key + ": not computed");
                    continue;
                }
                std::vector<F3Vec> basis = r->basis;
                if (r->with_zeta3) {
                    auto gens = names;
                    gens.push_back("zeta3");
                    basis = RadicalSpace(RadicalLabel::B, gens, r->basis, true).primed().basis;
                }
                if (!span_equal(basis, rows, names.size()))
                    fail(key + ": expected " + json(vectors_to_json(rows)).dump() + ", got " + vectors_to_json(basis).dump());
            }
        }
        V.results.push_back(res);
    }
    return V;
}

json to_json(const FixtureVerification& v) {
    json j;
    j["results"] = json::array();
    for (const auto& r : v.results)
        j["results"].push_back({{"d", kummer::to_string(r.d)}, {"passed", r.passed}, {"diffs", r.diffs}});
    j["warnings"] = v.warnings;
    j["passed"] = v.passed();
    return j;
}

}  // namespace kummer
