// Acceptance suite: runs every criterion at its pinned tolerance and prints
// one pass/fail line each. Exit code is the number of failing criteria.

#include <cstdio>

#include "chiral/verification.hpp"

int main(int argc, char** argv) {
  std::uint64_t seed = 20260810;
  if (argc > 1) seed = std::strtoull(argv[1], nullptr, 10);
  auto results = chiral::run_acceptance(seed);
  int idx = 0, fails = 0;
  for (const auto& r : results) {
    ++idx;
    std::printf("criterion %2d  %-26s %s   measured %.4g  tolerance %.4g\n", idx,
                r.name.c_str(), r.pass ? "PASS" : "FAIL", r.measured, r.tolerance);
    if (!r.pass) {
      std::printf("              %s\n", r.detail.c_str());
      ++fails;
    }
  }
  std::printf("%d/%d criteria pass (seed %llu)\n", idx - fails, idx,
              (unsigned long long)seed);
  return fails;
}
