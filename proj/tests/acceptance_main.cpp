#include <cstdio>
#include <cstdlib>
#include <cstring>

#include "rqa/suite.hpp"

int main(int argc, char** argv) {
  std::uint64_t seed = 20240811;
  for (int i = 1; i + 1 < argc; ++i)
    if (std::strcmp(argv[i], "--seed") == 0) seed = std::strtoull(argv[i + 1], nullptr, 10);

  std::printf("acceptance suite, seed %llu\n", static_cast<unsigned long long>(seed));
  auto results = rqa::suite::run_all(seed);
  int failures = 0;
  for (const auto& r : results) {
    std::printf("[%s] %2d  %-72s (%.2fs)%s%s\n", r.pass ? "PASS" : "FAIL", r.id,
                r.name.c_str(), r.seconds, r.detail.empty() ? "" : "  ",
                r.detail.c_str());
    if (!r.pass) ++failures;
  }
  std::printf("%zu criteria, %d failed\n", results.size(), failures);
  return failures == 0 ? 0 : 1;
}
