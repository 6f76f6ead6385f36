#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace nqg {

struct CheckResult {
    std::string name;
    bool pass = false;
    bool skipped = false;
    std::string detail;
    double seconds = 0;
};

struct VerifyOptions {
    bool skip_slow = false;   // skip the arity-4 census and the (2,5) enumeration
    std::uint64_t seed = 1;   // seeds the randomized suites
    int workers = 0;          // 0: one per hardware thread
    std::string data_dir;     // empty: compiled-in default / NQG_DATA_DIR env
};

std::string default_data_dir();

// Runs the full verification suite: reference counts, census cross-checks,
// construction reproduction, switching lower bounds, completion-count
// analysis, bound sandwiches and the randomized property suites. One result
// per criterion; progress lines go to `progress` when given.
std::vector<CheckResult> verify_paper(const VerifyOptions& opts, std::ostream* progress = nullptr);

bool all_passed(const std::vector<CheckResult>& results);

}  // namespace nqg
