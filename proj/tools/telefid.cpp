#include "telefid/cli.hpp"

int main(int argc, char** argv) { return telefid::cli::run(argc, argv); }
