#pragma once

#include "kummer/radicals.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

namespace kummer {

struct FixtureEntry {
    Integer xcirc_order = 1;
    bool critical = false;
    // Expected radicals over `generators`, keyed by uhat, utilde, A, T, B, ambient (primed).
    std::vector<std::string> generators;
    std::map<std::string, std::vector<F3Vec>> expected;
};

struct FixtureTable {
    std::map<Integer, FixtureEntry> entries;

    // Default table: the critical d with X° of order 3 and the d = 67 expectations.
    static FixtureTable builtin();
    static FixtureTable from_json(const nlohmann::json& j);
    static FixtureTable load(const std::string& path);
    nlohmann::json to_json() const;

    // X° data for d; entries missing from the table have order 1.
    XCircData xcirc(const Integer& d) const;
    const FixtureEntry* find(const Integer& d) const;
};

enum class Which { Uhat, BP, A, T, All };
Which parse_which(const std::string& s);

struct ReportedGenerator {
    std::string name;
    std::vector<std::string> coordinates;  // exact rationals on 1, w, sqrt d, w sqrt d
    std::string provenance;
};

struct ReportedRadical {
    std::string label;
    std::vector<F3Vec> basis;  // over RadicalReport::generators (primed) or + zeta3 (B)
    std::vector<std::string> forms;
    bool with_zeta3 = false;
    // computed, declared (X° = 1 branch) or derived (third radical from D0 and D-1)
    std::string source = "computed";
};

struct ReportCheck {
    std::string name;
    bool passed = false;
    std::string detail;
};

struct RadicalReport {
    Integer d;
    unsigned s = 0;
    std::vector<ReportedGenerator> generators;
    std::vector<ReportedRadical> radicals;
    XCircData xcirc;
    unsigned precision = 0;
    std::vector<ReportCheck> checks;
    std::string status = "ok";  // ok, inconclusive, error
    std::optional<std::pair<std::string, std::string>> error;  // kind, message
    std::optional<std::map<std::string, double>> timing;

    const ReportedRadical* find(const std::string& label) const;
    bool checks_passed() const;
    int exit_code() const;
};

nlohmann::json to_json(const RadicalReport& r);
RadicalReport report_from_json(const nlohmann::json& j);
std::string to_text(const RadicalReport& r);

struct ComputeOptions {
    RadicalOptions radical;
    bool timing = false;
};

// Never throws for arithmetic failures: they are recorded in the report.
RadicalReport compute_report(const Integer& d, Which which, const FixtureTable& table,
                             const ComputeOptions& options = {});

struct SurveyRow {
    Integer d;
    std::string status;  // resolved, inconclusive, error
    Integer xcirc_order;
    std::optional<bool> a_equals_t;
    std::string branch;  // "X°=1: A = T" or "engine"
    std::string message;
};

struct Survey {
    std::vector<SurveyRow> rows;
    std::vector<std::pair<Integer, std::string>> skipped;
    std::vector<Integer> flagged() const;  // resolved rows with A != T
};

// d in [lo, hi]; d = 0, 1, non-squarefree d and 3 | d are skipped with a note.
Survey run_survey(const Integer& lo, const Integer& hi, const FixtureTable& table, const ComputeOptions& options,
                  unsigned jobs = 1);
nlohmann::json to_json(const Survey& s);

struct FixtureResult {
    Integer d;
    bool passed = false;
    std::vector<std::string> diffs;
};

struct FixtureVerification {
    std::vector<FixtureResult> results;
    std::vector<std::string> warnings;
    bool passed() const;
};

FixtureVerification verify_fixtures(const FixtureTable& table, const ComputeOptions& options = {});
nlohmann::json to_json(const FixtureVerification& v);

}  // namespace kummer
