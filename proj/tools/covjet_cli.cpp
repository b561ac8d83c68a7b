#include "covjet/cli.hpp"

int main(int argc, char** argv) { return covjet::cli_main(argc, argv); }
