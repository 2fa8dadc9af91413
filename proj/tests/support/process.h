#ifndef TESTS_SUPPORT_PROCESS_H
#define TESTS_SUPPORT_PROCESS_H

#include <string>

namespace model2plan::testing {

struct CommandResult {
    int exit_code = -1;
    std::string output;  // stdout and stderr, interleaved
};

// Runs `command` through the shell.
CommandResult run_command(const std::string &command);

// The CLI binary with `arguments` appended.
CommandResult run_cli(const std::string &arguments);

std::string fixture_path(const std::string &name);
std::string read_file(const std::string &path);
void write_file(const std::string &path, const std::string &text);
// Fresh empty directory under the build tree.
std::string scratch_dir(const std::string &name);

}

#endif
