#pragma once

#include <string>

#include "modlie/json_io.hpp"

namespace modlie {

struct CliOptions {
    bool json = false;
    unsigned seed = 1;
    int maxDegree = 2;
};

struct RunResult {
    int exitCode = 0; // 0 pass/trivial, 1 fail/obstruction/unknown, 2 malformed input
    Json report;
    std::string text;
};

// command is one of: check-algebroid, modular-class, groupoid-cocycle,
// invariant-density, vanest, orientability, volume-form-criterion,
// integrate-density. Never throws; input problems come back as exitCode 2.
RunResult runCommand(const std::string& command, const std::string& inputPath,
                     const CliOptions& opts);

int cliMain(int argc, const char* const* argv);

} // namespace modlie
