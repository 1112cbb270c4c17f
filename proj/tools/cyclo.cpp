#include "cyclo/cli.hpp"

int main(int argc, char** argv) { return cyclo::run_cli(argc, argv); }
