#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace ioo::cli {

/// Exit statuses shared by every command.
enum ExitStatus : int {
    kSuccess = 0,
    kDomainFailure = 1,       // invalid content, unknown ids, wrong kinds, bad query specs
    kEnvironmentFailure = 2,  // I/O, JSON syntax, locked store, usage errors
};

struct Environment {
    std::optional<std::string> store_path;  // value of IOO_STORE, if set
};

/// Runs one command line (args excludes the program name) and returns its
/// exit status. Never throws.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
        const Environment& env = {});

}  // namespace ioo::cli
