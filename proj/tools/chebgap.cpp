#include "chebgap/cli.hpp"

int main(int argc, char** argv) { return chebgap::run_cli(argc, argv); }
