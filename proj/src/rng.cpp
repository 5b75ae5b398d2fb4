#include "isac/rng.hpp"

#include <cmath>
#include <numbers>

namespace isac {

namespace {

constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ull;

std::uint64_t mix64(std::uint64_t z) {
    z ^= z >> 30;
    z *= 0xBF58476D1CE4E5B9ull;
    z ^= z >> 27;
    z *= 0x94D049BB133111EBull;
    z ^= z >> 31;
    return z;
}

}  // namespace

std::uint64_t fnv1a64(std::string_view s) {
    std::uint64_t h = 0xCBF29CE484222325ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001B3ull;
    }
    return h;
}

Rng::Rng(std::uint64_t raw_key, RawKey) : key_(raw_key) {}

Rng::Rng(std::uint64_t seed, std::string_view label)
    : key_(mix64(seed ^ fnv1a64(label))) {}

Rng Rng::substream(std::string_view label) const {
    return Rng(mix64(key_ ^ fnv1a64(label)), RawKey{});
}

std::uint64_t Rng::next_u64() {
    ++counter_;
    return mix64(key_ + counter_ * kGolden);
}

std::uint32_t Rng::next_bit() {
    return static_cast<std::uint32_t>(next_u64() >> 63);
}

double Rng::uniform() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double Rng::normal() {
    if (has_spare_) {
        has_spare_ = false;
        return spare_;
    }
    // u1 in (0,1] so log(u1) is finite; u2 in [0,1)
    double u1 = (static_cast<double>(next_u64() >> 11) + 1.0) * 0x1.0p-53;
    double u2 = static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    double r = std::sqrt(-2.0 * std::log(u1));
    double a = 2.0 * std::numbers::pi * u2;
    spare_ = r * std::sin(a);
    has_spare_ = true;
    return r * std::cos(a);
}

cdouble Rng::cnormal() {
    double re = normal();
    double im = normal();
    return cdouble(re, im) * std::numbers::sqrt2 * 0.5;  // 1/sqrt(2)
}

}  // namespace isac
