#include "modlie/cli.hpp"

int main(int argc, char** argv) { return modlie::cliMain(argc, argv); }
