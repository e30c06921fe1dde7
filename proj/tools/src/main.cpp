#include "betaflow_cli/config.hpp"

int main(int argc, char** argv) { return betaflow::cli::main_entry(argc, argv); }
