#include "rbcsp/rng.hpp"

namespace rbcsp {

namespace {

std::uint64_t finalize(std::uint64_t z) noexcept {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace

std::uint64_t derive_stream(std::uint64_t base_seed, std::uint64_t index) noexcept {
  return finalize(base_seed ^ finalize(index + 0x9e3779b97f4a7c15ULL));
}

}  // namespace rbcsp
