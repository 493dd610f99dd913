#include "jade/cli.hpp"

int main(int argc, char** argv) { return jade::cli::cli_main(argc, argv); }
