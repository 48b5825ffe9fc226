#include "gibc/cli.hpp"

int main(int argc, char** argv) { return gibc::cli_run(argc, argv); }
