#include "pvote/cli.hpp"

int main(int argc, char** argv) { return pvote::run_cli(argc, argv); }
