#define DOCTEST_CONFIG_IMPLEMENT
#include <doctest.h>

#include "support.hpp"

#include <cstdlib>
#include <cstring>
#include <string>
#include <vector>

namespace testing_support {
std::uint64_t g_seed = 20240601;
}

int main(int argc, char** argv) {
  if (const char* env = std::getenv("KPLUS_TEST_SEED")) testing_support::g_seed = std::strtoull(env, nullptr, 10);
  std::vector<char*> rest;
  for (int i = 0; i < argc; ++i) {
    if (std::strncmp(argv[i], "--seed=", 7) == 0) {
      testing_support::g_seed = std::strtoull(argv[i] + 7, nullptr, 10);
      continue;
    }
    rest.push_back(argv[i]);
  }
  doctest::Context ctx(static_cast<int>(rest.size()), rest.data());
  int rc = ctx.run();
  if (rc != 0) std::fprintf(stderr, "property tests ran with --seed=%llu\n", static_cast<unsigned long long>(testing_support::g_seed));
  return rc;
}
