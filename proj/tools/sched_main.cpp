#include "sched/cli.hpp"

int main(int argc, char** argv) { return sched::cli::run_cli(argc, argv); }
