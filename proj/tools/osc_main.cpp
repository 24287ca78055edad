#include "osc/cli/commands.hpp"

int main(int argc, char** argv) { return osc::cli::run(argc, argv); }
