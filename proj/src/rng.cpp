#include "fermigap/rng.hpp"

namespace fermigap {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t derive_stream_seed(std::uint64_t seed, std::uint64_t index,
                                 StreamRole role) {
  std::uint64_t h = splitmix64(seed);
  h = splitmix64(h ^ index);
  return splitmix64(h ^ static_cast<std::uint64_t>(role));
}

Stream::Stream(std::uint64_t seed, std::uint64_t index, StreamRole role)
    : engine_(derive_stream_seed(seed, index, role)) {}

double Stream::uniform() {
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double Stream::normal() { return normal_(engine_); }

}  // namespace fermigap
