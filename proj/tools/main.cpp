#include "kummer3/cli.hpp"

int main(int argc, char** argv) { return kummer3::run_cli(argc, argv); }
