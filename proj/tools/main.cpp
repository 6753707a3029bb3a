#include <iostream>

#include "smoothset/cli.hpp"

int main(int argc, char** argv) {
    return smoothset::run(std::vector<std::string>(argv + 1, argv + argc), std::cout, std::cerr);
}
