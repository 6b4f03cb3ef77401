#include "remezlab/suites.hpp"

int main(int argc, char** argv) {
  return remezlab::run_cli(std::vector<std::string>(argv + 1, argv + argc));
}
