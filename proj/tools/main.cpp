#include "latorbit/cli.hpp"

int main(int argc, char** argv) { return latorbit::run_cli(argc, argv); }
