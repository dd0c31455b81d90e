#include "phgen/cli.hpp"

int main(int argc, char** argv) { return phgen::run_cli(argc, argv); }
