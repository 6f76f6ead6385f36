#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace nqg {

// Process-wide knobs shared by every subcommand. Defaults are stable:
// workers 1 (NQG_WORKERS overrides), cell cap 4096, materialization cap
// 2^24 cells, seed 1, text/json output per subcommand.
struct RunConfig {
    int workers = 1;
    std::size_t cell_cap = 4096;
    std::size_t mat_cap = std::size_t{1} << 24;
    std::uint64_t seed = 1;
    std::string format;  // "", "json", "csv" or "text"
};

// Exit codes: 0 success, 1 verification failure, 2 usage error,
// 3 resource error.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace nqg
