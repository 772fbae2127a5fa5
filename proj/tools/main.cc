#include "cli.h"

int main(int argc, char** argv) { return minepred::RunCli(argc, argv); }
