#include <vector>

#include "powercomm/pipeline.hpp"

int main(int argc, char** argv) {
  return powercomm::run(std::vector<std::string>(argv + 1, argv + argc));
}
