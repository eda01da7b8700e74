#include "l1sp_cli/cli.hpp"

#include <iostream>

int main(int argc, char** argv) {
    return l1sp::cli::run(std::vector<std::string>(argv + 1, argv + argc), std::cout, std::cerr);
}
