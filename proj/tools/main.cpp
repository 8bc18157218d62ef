#include "kdelab/cli.hpp"

int main(int argc, char** argv) { return kdelab::cli::main_entry(argc, argv); }
