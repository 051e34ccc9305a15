#pragma once

// Reproducible random streams.
//
// Every random quantity is drawn from a stream identified by
// (seed, index, role). The engine seed is
//
//   h0 = splitmix64(seed)
//   h1 = splitmix64(h0 ^ index)
//   h2 = splitmix64(h1 ^ role)
//
// and feeds std::mt19937_64, whose output sequence is fixed by the C++
// standard. Streams therefore do not depend on evaluation order, and sample
// k of a run can be regenerated alone. Normal variates use Boost's ziggurat
// normal_distribution; uniforms take the top 53 bits of one engine draw.

#include <boost/random/normal_distribution.hpp>

#include <cstdint>
#include <random>

namespace fermigap {

enum class StreamRole : std::uint64_t {
  coefficients = 0x636f656666ULL,     // Gaussian C, Wishart C, Pauli W
  singular_values = 0x7369676d61ULL,  // bounded ensemble Sigma
  left_orthogonal = 0x6c65667455ULL,  // bounded ensemble U
  right_orthogonal = 0x7269676856ULL, // bounded ensemble V
  monte_carlo = 0x6d6f6e7465ULL,      // rarity simulation
};

std::uint64_t splitmix64(std::uint64_t x);
std::uint64_t derive_stream_seed(std::uint64_t seed, std::uint64_t index,
                                 StreamRole role);

class Stream {
 public:
  Stream(std::uint64_t seed, std::uint64_t index, StreamRole role);

  double uniform();  // [0, 1)
  double normal();   // N(0, 1)

 private:
  std::mt19937_64 engine_;
  boost::random::normal_distribution<double> normal_;
};

}  // namespace fermigap
