#include "cli.hpp"

int main(int argc, char** argv) { return polytour::cli::run(argc, argv); }
