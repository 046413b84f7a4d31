#include "qsp/cli.hpp"

#include <iostream>

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    auto r = qsp::run_cli(args);
    std::cout << r.out;
    if (!r.err.empty()) std::cerr << r.err << "\n";
    return r.code;
}
