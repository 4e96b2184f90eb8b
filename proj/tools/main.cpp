#include "partcat/cli.hpp"

int main(int argc, char** argv) { return partcat::run(argc, argv); }
