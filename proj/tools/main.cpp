// Thin process wrapper: collect argv, hand it to the in-process driver,
// and forward its exit code.

#include <afcurve/cli.hpp>

#include <iostream>
#include <string>
#include <vector>

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return afc::cli::run(args, std::cout, std::cerr);
}
