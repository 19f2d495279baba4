// Acceptance suite: runs every criterion at its stated tolerance and prints
// one pass/fail line per criterion.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>

#include "heatjet/verify.hpp"

TEST_CASE("acceptance criteria") {
    heatjet::verify::Report rep = heatjet::verify::run_acceptance();
    for (const auto& c : rep.criteria) {
        std::printf("%-4s %2d  %-24s margin=%-10.3g %8.1f ms\n", c.passed ? "PASS" : "FAIL", c.id,
                    c.name.c_str(), c.margin, c.ms);
        for (const auto& s : c.checks) {
            if (!s.passed())
                std::printf("      failed: %s  residual=%.6g  tolerance=%.6g\n", s.label.c_str(),
                            s.residual, s.tolerance);
        }
    }
    for (const auto& c : rep.criteria) {
        INFO(c.name);
        CHECK(c.passed);
    }
    CHECK(rep.all_passed);
}
