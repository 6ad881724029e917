#include "ncps/cli/commands.hpp"

int main(int argc, char** argv) { return ncps::cli::run(argc, argv); }
