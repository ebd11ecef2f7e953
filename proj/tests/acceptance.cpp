// One PASS/FAIL line per acceptance criterion on the default instance.
#include "e6/suite.hpp"

#include <iostream>

using namespace e6;

int main() {
    RunConfig cfg = make_run_config({});
    Report first = run_suite(cfg, all_criteria());
    // Criterion 10: a second, independent run must render to the same bytes.
    RunConfig again = make_run_config({});
    Report second = run_suite(again, all_criteria());

    bool ok = true;
    for (int c : all_criteria()) {
        bool pass = first.criterion_pass(c);
        ok = ok && pass;
        std::cout << (pass ? "PASS" : "FAIL") << "  criterion " << c << " (" << criterion_title(c)
                  << "): worst residual/tol " << first.criterion_margin(c).str(3, std::ios_base::scientific)
                  << "\n";
        if (!pass)
            for (const auto& r : first.checks)
                if (r.criterion == c && !r.pass)
                    std::cout << "      " << r.id << " residual "
                              << (r.note.empty() ? r.residual.str(6, std::ios_base::scientific) : r.note)
                              << "\n";
    }
    bool same = first.json() == second.json();
    ok = ok && same;
    std::cout << (same ? "PASS" : "FAIL") << "  criterion 10 (" << criterion_title(10)
              << "): two runs " << (same ? "byte-identical" : "differ") << ", "
              << first.checks.size() << " checks, seed " << first.seed << "\n";
    return ok ? 0 : 1;
}
