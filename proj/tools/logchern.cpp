#include <cstdio>
#include <string>
#include <vector>

#include "logcalc/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    logcalc::CliResult res = logcalc::run_cli(args);
    std::fputs(res.output.c_str(), stdout);
    return res.exit_code;
}
