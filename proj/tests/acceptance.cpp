#include "biext/suites.hpp"

#include <cstdio>
#include <cstdlib>
#include <string>

int main(int argc, char** argv) {
    const std::uint64_t seed = argc > 1 ? std::strtoull(argv[1], nullptr, 10) : 7;
    const biext::SuiteContext ctx = biext::builtin_context(seed);
    int failed = 0;
    for (const auto& c : biext::acceptance_criteria()) {
        const biext::SuiteOutcome r = biext::run_suite(c.suite, ctx);
        const bool in_time = r.seconds < c.limit_seconds;
        const bool ok = r.passed() && in_time;
        failed += ok ? 0 : 1;
        std::printf("%s criterion %2d: %s (%zu checks, %zu instances, %.2fs, limit %.0fs)\n", ok ? "PASS" : "FAIL", c.id,
                    c.title.c_str(), r.checks, r.instances, r.seconds, c.limit_seconds);
        for (const auto& f : r.failures) std::printf("       %s\n", f.c_str());
        if (!in_time) std::printf("       over the time limit\n");
    }
    std::printf("%d of %zu criteria passed\n", static_cast<int>(biext::acceptance_criteria().size()) - failed,
                biext::acceptance_criteria().size());
    return failed == 0 ? 0 : 1;
}
