#include "cli.hpp"

int main(int argc, char** argv) { return streampart::cli::run(argc, argv); }
