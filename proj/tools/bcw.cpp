#include "bcw/cli.hpp"

int main(int argc, char** argv) { return bcw::cli::main(argc, argv); }
