#ifndef POPDYN_RNG_HPP
#define POPDYN_RNG_HPP

#include <cstdint>

namespace popdyn {

/// SplitMix64 (Steele, Lea & Flood 2014): a 64-bit Weyl sequence pushed
/// through a finalizer. Tiny state, splittable, and bit-identical on every
/// platform, which is what the simulator's determinism contract needs.
/// Stream k of a master seed starts at stream_seed(master, k), so parallel
/// and serial runs draw identical per-run sequences.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    /// Uniform double in [0, 1) with 53 random bits.
    double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    static std::uint64_t stream_seed(std::uint64_t master, std::uint64_t stream) {
        SplitMix64 s(master ^ (0xA3EC647659359ACDULL * (stream + 1)));
        return s.next_u64();
    }

private:
    std::uint64_t state_;
};

/// Binomial(n, p) draw: exact inversion for small n*p, Hormann's BTRS
/// transformed-rejection otherwise. O(1) expected time for large n.
std::int64_t binomial(SplitMix64& rng, std::int64_t n, double p);

}  // namespace popdyn

#endif  // POPDYN_RNG_HPP
