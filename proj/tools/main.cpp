#include <iostream>

#include "commands.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    const auto report = hsfgl::cli::run(args);
    (report.exit_code == hsfgl::cli::kUsage ? std::cerr : std::cout) << report.text;
    return report.exit_code;
}
