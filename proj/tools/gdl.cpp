#include "commands.hpp"

int main(int argc, char** argv) { return gdl::cli::run(argc, argv); }
