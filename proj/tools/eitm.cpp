#include "cli.hpp"

int main(int argc, char** argv) { return eitm::cli::main(argc, argv); }
