#include "horonerve/tools/cli.hpp"

#include <iostream>

int main(int argc, char** argv) {
    return horonerve::tools::run({argv + 1, argv + argc}, std::cout, std::cerr);
}
