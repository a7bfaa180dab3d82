#include <iostream>

#include "lepfusion/cli.hpp"

int main(int argc, char** argv) {
    return lepfusion::run_cli(argc, argv, std::cout, std::cerr);
}
