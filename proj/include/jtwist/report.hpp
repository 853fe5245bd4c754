#pragma once

#include <optional>
#include <string>
#include <vector>

namespace jtwist {

/// Outcome of one verification check, serializable to the report JSON.
struct CheckReport {
    std::string check;
    std::string family;  // "F0", "F1", "L", "R", "LR" or "" when not tied to one
    std::string u;       // exact rational string, "" when not applicable
    int order = 0;       // truncation order the check ran at
    bool pass = false;
    std::optional<int> firstResidualOrder;  // lowest kappa power of the residual
    std::size_t maxTerms = 0;               // largest series encountered
    std::string detail;                     // free-form human-readable context

    CheckReport& note(const std::string& d) {
        detail = d;
        return *this;
    }
};

/// Render one line: "pass cocycle family=L u=1/2 N=4 ..." for text reports.
std::string toLine(const CheckReport& r);

/// Deterministic ordering for report output.
void sortReports(std::vector<CheckReport>& reports);

/// JSON array (ordered keys) for --report / --format json.
std::string toJson(const std::vector<CheckReport>& reports, bool pretty = true);

}  // namespace jtwist
