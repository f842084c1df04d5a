#include "hv/cli.hpp"

int main(int argc, char** argv) { return hv::cli_main(argc, argv); }
