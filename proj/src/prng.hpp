#ifndef RELAYIA_PRNG_HPP
#define RELAYIA_PRNG_HPP

#include <cmath>
#include <complex>
#include <cstdint>

namespace relayia {

// Counter-based deterministic random stream. Every draw is a pure function of
// (key, counter), so coefficients can be generated in any order, from any
// thread, and still come out identical. The integer stream is the documented
// reproducible output; the Gaussian map on top of it uses libm.
namespace prng {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Folds one stream index into a key. Chaining calls builds a key from a
// coordinate tuple; the mixing keeps distinct tuples from colliding in
// practice.
inline std::uint64_t derive(std::uint64_t key, std::uint64_t stream) {
  return splitmix64(key ^ splitmix64(stream + 0x632be59bd9b4e019ULL));
}

// Uniform in (0, 1]: never exactly zero, so log() below is safe.
inline double uniform_pos(std::uint64_t bits) {
  return static_cast<double>((bits >> 11) + 1) * 0x1.0p-53;
}

// Uniform in [0, 1).
inline double uniform(std::uint64_t bits) {
  return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

// Circularly-symmetric complex Gaussian with E|z|^2 = 1, via Box-Muller on
// two counter draws.
inline std::complex<double> complex_gaussian(std::uint64_t key, std::uint64_t counter) {
  const std::uint64_t k = derive(key, counter);
  const double u1 = uniform_pos(splitmix64(k));
  const double u2 = uniform(splitmix64(k ^ 0xd1b54a32d192ed03ULL));
  const double r = std::sqrt(-std::log(u1));  // |z| ~ Rayleigh, E|z|^2 = 1
  const double theta = 2.0 * M_PI * u2;
  return {r * std::cos(theta), r * std::sin(theta)};
}

}  // namespace prng

// Derives an independent substream seed (per trial, per resample attempt).
inline std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream) {
  return prng::derive(base, stream);
}

}  // namespace relayia

#endif
