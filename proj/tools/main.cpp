#include "annular/commands.hpp"

#include <iostream>

int main(int argc, char** argv) {
    return annular::run_cli({argv + 1, argv + argc}, std::cout, std::cerr);
}
