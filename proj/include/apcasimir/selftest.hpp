#pragma once

// Acceptance selftest: one entry per verification criterion, each with a
// pinned tolerance and a runtime budget. Prints one PASS/FAIL line per
// criterion plus numeric findings on the two algebraic variants the
// reports surface (the zero-temperature constant and the second inversion
// relation). Output contains no timestamps or timings, so identical runs
// emit identical bytes; runtime budgets are enforced internally.

#include <iosfwd>
#include <string>
#include <vector>

namespace apc::selftest {

struct Options {
    // When > 0, replaces the built-in agreement tolerances of every
    // criterion (stress knob; 1e-14 is unreachable by design).
    double tol_override = 0.0;
};

struct CriterionResult {
    int index = 0;
    std::string name;
    bool passed = false;
    double measured = 0.0;  // worst measured residual for the criterion
    double threshold = 0.0;
    std::string detail;
    bool within_budget = true;
};

std::vector<CriterionResult> run(const Options& opt, std::vector<std::string>* findings);

// Prints the report to `out`; returns 0 iff every criterion passed.
int run_and_report(const Options& opt, std::ostream& out);

} // namespace apc::selftest
