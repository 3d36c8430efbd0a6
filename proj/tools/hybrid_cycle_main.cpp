#include "hybrid_cycle/scenario.hpp"

#include <iostream>

int main(int argc, char** argv) {
    return hybrid_cycle::run_cli(argc, argv, std::cout, std::cerr);
}
