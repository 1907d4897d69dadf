#include "honeybee/cli.hpp"

int main(int argc, char** argv) { return honeybee::cli_dispatch(argc, argv); }
