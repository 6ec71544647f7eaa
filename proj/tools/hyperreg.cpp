#include "hyperreg/cli.hpp"

int main(int argc, char** argv) { return hyperreg::run(argc, argv); }
