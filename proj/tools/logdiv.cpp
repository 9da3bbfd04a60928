#include "logdiv/io.hpp"

#include <iostream>
#include <sstream>
#include <string>
#include <vector>

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);

    std::string stdin_text;
    for (const std::string& a : args) {
        if (a == "-") {
            std::ostringstream ss;
            ss << std::cin.rdbuf();
            stdin_text = ss.str();
            break;
        }
    }

    logdiv::CliResult res = logdiv::run_cli(args, stdin_text);
    std::cout << res.out;
    if (!res.trace.empty()) std::cerr << res.trace;
    return res.exit_code;
}
