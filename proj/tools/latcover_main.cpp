#include "latcover/cli.hpp"

int main(int argc, char** argv) { return latcover::cli_main(argc, argv); }
