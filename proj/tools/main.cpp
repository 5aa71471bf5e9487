#include "axicyl/cli.hpp"

int main(int argc, char** argv) { return axicyl::cli_main(argc, argv); }
