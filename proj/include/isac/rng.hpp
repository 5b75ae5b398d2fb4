#pragma once
#include <cstdint>
#include <string_view>

#include "isac/types.hpp"

namespace isac {

/// FNV-1a 64-bit hash (used for stream-label derivation and config hashing).
std::uint64_t fnv1a64(std::string_view s);

/// Deterministic counter-based generator (SplitMix64 finalizer core).
///
/// The stream definition is fixed so results are reproducible across
/// platforms and re-implementations:
///
///   mix64(z):   z ^= z >> 30; z *= 0xBF58476D1CE4E5B9;
///               z ^= z >> 27; z *= 0x94D049BB133111EB; z ^= z >> 31
///   key(seed, label) = mix64(seed XOR fnv1a64(label))
///   output_i         = mix64(key + (i + 1) * 0x9E3779B97F4A7C15)
///
/// substream(label) derives key' = mix64(key XOR fnv1a64(label)) with the
/// counter reset, so sub-streams are independent of draw order in the parent
/// and of each other (distinct labels).
///
/// uniform() maps the top 53 bits of output_i to [0, 1). normal() uses
/// Box-Muller on u1 in (0, 1] and u2 in [0, 1), returning r*cos(2*pi*u2)
/// first and caching r*sin(2*pi*u2). cnormal() is (normal + j*normal)/sqrt(2)
/// (unit total variance).
class Rng {
public:
    explicit Rng(std::uint64_t seed, std::string_view label = {});

    /// Independent stream derived from this stream's key and a label.
    Rng substream(std::string_view label) const;

    std::uint64_t next_u64();
    std::uint32_t next_bit();  // top bit of next_u64()
    double uniform();          // [0, 1)
    double normal();           // N(0, 1) real
    cdouble cnormal();         // circularly symmetric, E|z|^2 = 1

    std::uint64_t key() const { return key_; }

private:
    struct RawKey {};
    Rng(std::uint64_t raw_key, RawKey);

    std::uint64_t key_ = 0;
    std::uint64_t counter_ = 0;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

}  // namespace isac
