// Command-line front end: compute, survey, verify-fixtures.

#include "kummer/errors.hpp"
#include "kummer/report.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <regex>
#include <thread>

namespace {

using kummer::Integer;

struct Common {
    unsigned precision = 6;
    double level2_budget = 600;
    std::string xcirc_table;
    std::string format = "json";
    bool timing = false;

    void add_to(CLI::App* cmd) {
        cmd->add_option("--precision", precision, "3-adic working precision k")->check(CLI::Range(2u, 256u));
        cmd->add_option("--level2-budget", level2_budget, "seconds for the level-2 approximation (0 disables it)")
            ->check(CLI::NonNegativeNumber);
        cmd->add_option("--xcirc-table", xcirc_table, "fixture table overriding the built-in one")
            ->check(CLI::ExistingFile);
        cmd->add_option("--format", format, "stdout format")->check(CLI::IsMember({"json", "text"}));
        cmd->add_flag("--timing", timing, "include wall-clock timings");
    }

    kummer::ComputeOptions options() const {
        kummer::ComputeOptions o;
        o.radical.precision = precision;
        o.radical.level2_budget = level2_budget;
        o.timing = timing;
        return o;
    }

    kummer::FixtureTable table() const {
        return xcirc_table.empty() ? kummer::FixtureTable::builtin() : kummer::FixtureTable::load(xcirc_table);
    }
};

std::pair<Integer, Integer> parse_range(const std::string& s) {
    static const std::regex re(R"(\s*(-?\d+)\s*\.\.\s*(-?\d+)\s*)");
    std::smatch m;
    if (!std::regex_match(s, m, re)) throw CLI::ValidationError("--range", "expected a..b, got '" + s + "'");
    Integer lo(m[1].str()), hi(m[2].str());
    if (lo > hi) throw CLI::ValidationError("--range", "empty range " + s);
    return {lo, hi};
}

void print_survey_text(const kummer::Survey& s, std::ostream& out) {
    for (const auto& r : s.rows) {
        out << r.d << "  " << r.status << "  X° order " << r.xcirc_order;
        if (r.a_equals_t) out << (*r.a_equals_t ? "  A = T" : "  A != T");
        out << "  [" << r.branch << "]";
        if (!r.message.empty()) out << "  " << r.message;
        out << "\n";
    }
    for (const auto& [d, why] : s.skipped) out << d << "  skipped (" << why << ")\n";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Kummer radicals of Q(zeta_3, sqrt d) at p = 3"};
    app.require_subcommand(1);

    Common common;
    std::string d_text, which_text = "all", range_text;
    unsigned jobs = std::max(1u, std::thread::hardware_concurrency());

    auto* compute = app.add_subcommand("compute", "radicals for one d");
    compute->add_option("--d", d_text, "squarefree integer d, 3 does not divide d")->required();
    compute->add_option("--which", which_text, "uhat, bp, A, T or all")
        ->check(CLI::IsMember({"uhat", "bp", "A", "T", "all"}));
    common.add_to(compute);

    auto* survey = app.add_subcommand("survey", "radicals for every admissible d in a range");
    survey->add_option("--range", range_text, "a..b")->required();
    survey->add_option("--jobs", jobs, "worker threads")->check(CLI::PositiveNumber);
    common.add_to(survey);

    auto* verify = app.add_subcommand("verify-fixtures", "recompute and diff every fixture entry");
    common.add_to(verify);

    CLI11_PARSE(app, argc, argv);

    try {
        if (*compute) {
            Integer d;
            if (d.set_str(d_text, 10) != 0) throw CLI::ValidationError("--d", "not an integer: " + d_text);
            const auto report = kummer::compute_report(d, kummer::parse_which(which_text), common.table(), common.options());
            if (common.format == "json") std::cout << kummer::to_json(report).dump(2) << "\n";
            else std::cout << kummer::to_text(report);
            std::cerr << kummer::to_text(report);
            return report.exit_code();
        }
        if (*survey) {
            const auto [lo, hi] = parse_range(range_text);
            const auto s = kummer::run_survey(lo, hi, common.table(), common.options(), jobs);
            const auto j = kummer::to_json(s);
            if (common.format == "json") std::cout << j.dump(2) << "\n";
            else print_survey_text(s, std::cout);
            std::cerr << "resolved " << j["summary"]["resolved"] << ", inconclusive " << j["summary"]["inconclusive"]
                      << ", errors " << j["summary"]["errors"] << ", skipped " << s.skipped.size()
                      << "; A != T for " << j["summary"]["a_differs_from_t"].dump() << "\n";
            return j["summary"]["errors"].get<std::size_t>() > 0 ? 1 : 0;
        }
        if (*verify) {
            const auto v = kummer::verify_fixtures(common.table(), common.options());
            const auto j = kummer::to_json(v);
            if (common.format == "json") std::cout << j.dump(2) << "\n";
            for (const auto& w : v.warnings) std::cerr << "warning: " << w << "\n";
            for (const auto& r : v.results) {
                std::ostream& out = common.format == "text" ? std::cout : std::cerr;
                out << "d = " << r.d << ": " << (r.passed ? "pass" : "FAIL") << "\n";
                for (const auto& diff : r.diffs) out << "  " << diff << "\n";
            }
            return v.passed() ? 0 : 1;
        }
    } catch (const CLI::Error& e) {
        return app.exit(e);
    } catch (const kummer::Error& e) {
        std::cout << nlohmann::json{{"status", "error"}, {"error", {{"kind", e.kind()}, {"message", e.what()}}}}.dump(2)
                  << "\n";
        std::cerr << e.kind() << ": " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
