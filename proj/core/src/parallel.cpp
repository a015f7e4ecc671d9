#include "equispectra/parallel.hpp"

#include <cstdlib>
#include <string>

namespace equispectra {

std::size_t worker_count() {
  std::size_t n = std::max(1u, std::thread::hardware_concurrency());
  if (const char* cap = std::getenv("EQUISPECTRA_THREADS")) {
    try {
      long v = std::stol(cap);
      if (v >= 1) n = std::min<std::size_t>(n, static_cast<std::size_t>(v));
    } catch (const std::exception&) {
      // unparsable caps are ignored
    }
  }
  return n;
}

std::uint64_t task_seed(std::uint64_t seed, std::uint64_t index) {
  // splitmix64 finalizer over the combined value
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace equispectra
