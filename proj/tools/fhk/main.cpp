#include "cli.hpp"

int main(int argc, char** argv) { return fhk::cli::main(argc, argv); }
