#include "cli.hpp"

int main(int argc, char** argv) { return dglab::cli::run(argc, argv); }
