#define DOCTEST_CONFIG_IMPLEMENT
#include <doctest.h>

#include <Eigen/Core>
#include <cstdlib>

int main(int argc, char** argv) {
  if (const char* threads = std::getenv("THREADS")) {
    const int v = std::atoi(threads);
    if (v > 0) Eigen::setNbThreads(v);
  }
  return doctest::Context(argc, argv).run();
}
