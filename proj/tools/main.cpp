#include "focklab/cli.hpp"

int main(int argc, char** argv) { return focklab::run_cli(argc, argv); }
