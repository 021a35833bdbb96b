#pragma once

#include <functional>
#include <string>
#include <vector>

#include "padix/oracle.hpp"
#include "padix/serialize.hpp"

namespace padix {

/// Closed forms against the oracle and against solve, one cell per (p, q, part).
Json fast_path_section(const OracleBudget& budget);
/// Digit recursion on b^(p^m): how far the output agrees with b.
Json recursion_section(unsigned seed);
/// Emitted / re-moduled / derived criteria against solve on residue sweeps.
Json criterion_section(const OracleBudget& budget);
/// Published, reduced and constructed representative sets, validated.
Json epsilon_section(const OracleBudget& budget);
/// Power checks and decompositions quoted for the class III normal forms.
Json witness_section();
/// Catalog sizes, one normalizer witness per case, and what B_1 != 0 does.
Json leibniz_section(unsigned seed);

/// All sections plus a list of one-line findings.
Json conformance_report(const OracleBudget& budget = OracleBudget::from_env());

struct AcceptanceResult {
    int number;
    std::string title;
    bool passed;
    std::string detail;
};

constexpr int acceptance_count = 12;

/// One criterion (1..12).  Errors inside a check become a failed result.
AcceptanceResult acceptance_criterion(int number, const OracleBudget& budget);

/// Every criterion in order; on_result sees each one as soon as it is done.
std::vector<AcceptanceResult> run_acceptance(
    const OracleBudget& budget, const std::function<void(const AcceptanceResult&)>& on_result = {});

/// "PASS  3  title: detail"
std::string format_line(const AcceptanceResult& r);

}  // namespace padix
