#include "qbounce/cli.hpp"

int main(int argc, char** argv) { return qbounce::cli::main(argc, argv); }
