#include "cli.hpp"

int main(int argc, char** argv) { return holoq::cli::cli_main(argc, argv); }
