#pragma once

// Named property suites over seeded instance pools, shared by `check` and
// the acceptance runner.

#include "biext/motive_file.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace biext {

struct SuiteContext {
    FieldContext field;
    std::vector<std::pair<std::string, Mhs>> motives;  // pool of 1-motive type structures
    std::uint64_t seed = 7;
};

/// CM curves, Kummer motives, lattices and tori over Q(w), w^2 = -d.
SuiteContext builtin_context(std::uint64_t seed, long d = 1);
/// The builtin pool in the file's field plus every file motive of 1-motive type.
SuiteContext file_context(const MotiveFile& file, std::uint64_t seed);

struct SuiteOutcome {
    std::string name;
    std::size_t checks = 0;
    std::size_t instances = 0;
    std::vector<std::string> failures;  // first few only
    double seconds = 0;
    bool passed() const { return failures.empty() && checks > 0; }
};

const std::vector<std::string>& suite_names();
/// Throws InputError for unknown names.
SuiteOutcome run_suite(const std::string& name, const SuiteContext& ctx);

struct Criterion {
    int id = 0;
    std::string title;
    std::string suite;
    double limit_seconds = 0;
};

const std::vector<Criterion>& acceptance_criteria();

}  // namespace biext
