#include "arraymirror/cli.hpp"

int main(int argc, char** argv) { return arraymirror::run(argc, argv); }
