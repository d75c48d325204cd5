#include <iostream>

#include "commands.h"

int main(int argc, char** argv) {
  return jury::cli::Run(std::vector<std::string>(argv, argv + argc), std::cout, std::cerr);
}
