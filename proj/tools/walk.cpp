#include <string>
#include <vector>

#include "qwalk/cli.hpp"

int main(int argc, char** argv) {
  return qwalk::cli::main_entry(std::vector<std::string>(argv, argv + argc));
}
