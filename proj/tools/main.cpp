#include "circdom/cli.hpp"

int main(int argc, char** argv) { return circdom::cli::run(argc, argv); }
