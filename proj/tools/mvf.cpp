#include "mvf/cli/run.hpp"

int main(int argc, char** argv) { return mvf::cli::run(argc, argv); }
