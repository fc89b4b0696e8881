#include "cli.hpp"

int main(int argc, char** argv) { return p123::cli::run(argc, argv, std::cout, std::cerr); }
