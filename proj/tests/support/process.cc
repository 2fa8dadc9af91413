#include "process.h"

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <sys/wait.h>

using namespace std;

namespace model2plan::testing {

CommandResult run_command(const string &command) {
    CommandResult result;
    FILE *pipe = popen(("{ " + command + "; } 2>&1").c_str(), "r");
    if (!pipe)
        throw runtime_error("cannot run " + command);
    array<char, 4096> buffer;
    size_t n;
    while ((n = fread(buffer.data(), 1, buffer.size(), pipe)) > 0)
        result.output.append(buffer.data(), n);
    int status = pclose(pipe);
    result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return result;
}

CommandResult run_cli(const string &arguments) {
    return run_command(string("\"") + M2P_CLI_PATH + "\" " + arguments);
}

string fixture_path(const string &name) {
    return string(M2P_FIXTURE_DIR) + "/" + name;
}

string read_file(const string &path) {
    ifstream in(path, ios::binary);
    if (!in)
        throw runtime_error("cannot read " + path);
    ostringstream out;
    out << in.rdbuf();
    return out.str();
}

void write_file(const string &path, const string &text) {
    ofstream out(path, ios::binary);
    out << text;
    if (!out)
        throw runtime_error("cannot write " + path);
}

string scratch_dir(const string &name) {
    filesystem::path dir = filesystem::path(M2P_SCRATCH_DIR) / name;
    filesystem::remove_all(dir);
    filesystem::create_directories(dir);
    return dir.string();
}

}
