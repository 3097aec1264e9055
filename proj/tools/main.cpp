#include "cli.hpp"

int main(int argc, char** argv) { return graphcurv::cli::run(argc, argv); }
