#include <iostream>

#include "careers/app.hpp"

int main(int argc, char** argv) { return careers::app::run_cli(argc, argv, std::cout, std::cerr); }
