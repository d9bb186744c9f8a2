#include "mtmb/cli.hpp"

int main(int argc, char** argv) { return mtmb::cli_main(argc, argv); }
