#include "ballmap/cli.hpp"

int main(int argc, char** argv) { return ballmap::cli_run(argc, argv); }
