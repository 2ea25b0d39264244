#include <iostream>

#include "odekit/cli.hpp"

int main(int argc, char **argv) {
    return odekit::run_cli(std::vector<std::string>(argv + 1, argv + argc), std::cout, std::cerr);
}
