#include <iostream>

#include "cli.hpp"

int main(int argc, char** argv) {
    return vcell::cli::run_command_line(argc, argv, std::cout, std::cerr);
}
