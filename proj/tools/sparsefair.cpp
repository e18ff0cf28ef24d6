#include "sparsefair/cli_app.hpp"

int main(int argc, char** argv) { return sparsefair::cli::run(argc, argv); }
