#ifndef FDTSIM_RANDOM_HPP_
#define FDTSIM_RANDOM_HPP_

#include <cstddef>
#include <cstdint>
#include <limits>
#include <span>
#include <utility>

namespace fdtsim {

namespace detail {
__extension__ typedef unsigned __int128 Uint128;
}  // namespace detail

// SplitMix64 output function. Used both as the stream generator and as the
// key-mixing hash for deriving independent streams.
constexpr std::uint64_t mix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// What a derived stream is used for. Part of the stream key, so that e.g. the
// matching stream of round r never collides with the pair streams of round r.
enum class StreamPurpose : std::uint64_t {
  kMatching = 1,
  kPair = 2,
  kSolo = 3,
  kPopulationRound = 4,
  kRepopulation = 5,
  kSweep = 6,
  kMonteCarlo = 7,
};

// A counter-addressed random stream. Every stream is a pure function of
// (seed, purpose, a, b, c), so results never depend on which thread consumes
// which stream or in what order.
//
// Satisfies UniformRandomBitGenerator, but the helpers below are preferred:
// they are specified bit-for-bit here instead of by the standard library
// implementation, which keeps CSV output identical across toolchains.
class RandomStream {
 public:
  using result_type = std::uint64_t;

  explicit constexpr RandomStream(std::uint64_t state) noexcept
      : state_(state) {}

  static constexpr RandomStream derive(std::uint64_t seed, StreamPurpose purpose,
                                       std::uint64_t a = 0, std::uint64_t b = 0,
                                       std::uint64_t c = 0) noexcept {
    std::uint64_t h = mix64(seed);
    h = mix64(h ^ static_cast<std::uint64_t>(purpose));
    h = mix64(h ^ a);
    h = mix64(h ^ (b + 0x632be59bd9b4e019ULL));
    h = mix64(h ^ (c + 0x8cb92ba72f3d8dd7ULL));
    return RandomStream(h);
  }

  // Independent child stream `index` of this one, without advancing it.
  // Cheaper than a full derive() when many sibling streams share a key.
  constexpr RandomStream child(std::uint64_t index) const noexcept {
    return RandomStream(mix64(state_ ^ mix64(index)));
  }

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept {
    return std::numeric_limits<result_type>::max();
  }

  constexpr result_type operator()() noexcept {
    state_ += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // Uniform on [0, 1) with 53 bits of resolution.
  constexpr double uniform01() noexcept {
    return static_cast<double>((*this)() >> 11) * 0x1.0p-53;
  }

  // Uniform on (0, 1]; safe to take a logarithm of.
  constexpr double uniform_open01() noexcept {
    return static_cast<double>(((*this)() >> 11) + 1) * 0x1.0p-53;
  }

  constexpr double uniform(double lo, double hi) noexcept {
    return lo + (hi - lo) * uniform01();
  }

  constexpr bool bernoulli(double p) noexcept { return uniform01() < p; }

  // Unbiased integer in [0, n), n > 0 (Lemire's multiply-shift rejection).
  constexpr std::uint64_t below(std::uint64_t n) noexcept {
    detail::Uint128 m = static_cast<detail::Uint128>((*this)()) * n;
    auto low = static_cast<std::uint64_t>(m);
    if (low < n) {
      const std::uint64_t threshold = (0 - n) % n;
      while (low < threshold) {
        m = static_cast<detail::Uint128>((*this)()) * n;
        low = static_cast<std::uint64_t>(m);
      }
    }
    return static_cast<std::uint64_t>(m >> 64);
  }

 private:
  std::uint64_t state_;
};

// Fisher-Yates, consuming exactly size()-1 draws.
template <class T>
void shuffle(std::span<T> items, RandomStream& rng) noexcept {
  for (std::size_t i = items.size(); i > 1; --i) {
    const auto j = static_cast<std::size_t>(rng.below(i));
    using std::swap;
    swap(items[i - 1], items[j]);
  }
}

}  // namespace fdtsim

#endif  // FDTSIM_RANDOM_HPP_
