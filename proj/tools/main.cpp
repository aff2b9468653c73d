#include "cli.hpp"

int main(int argc, char** argv) { return autoseq::cli::run(argc, argv); }
