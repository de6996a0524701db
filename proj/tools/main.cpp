#include "cli_main.hpp"

int main(int argc, char** argv) { return qmetro::cli_main(argc, argv); }
