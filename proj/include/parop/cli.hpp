#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "parop/json_io.hpp"

namespace parop::cli {

enum class Status { Ok, Fail, Warning };

struct CommandResult {
    Status status = Status::Ok;
    Json payload;
    std::vector<std::string> diagnostics;
    std::string text; // rendered table output

    int exit_code() const { return status == Status::Fail ? 1 : 0; }
};

// Parses argv (without the program name), executes the subcommand and
// renders output to `out`.  Returns the process exit code: 0 ok/warning,
// 1 computational failure, 2 usage error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace parop::cli
