#include "conelab/cli.hpp"

int main(int argc, char** argv) { return conelab::cli_dispatch(argc, argv); }
