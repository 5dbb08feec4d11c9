#pragma once

#include <cstdint>

namespace wignerlab {

/// SplitMix64 finalizer; a bijective 64-bit mixer.
constexpr std::uint64_t mix64(std::uint64_t x) {
    x ^= x >> 30;
    x *= 0xbf58476d1ce4e5b9ULL;
    x ^= x >> 27;
    x *= 0x94d049bb133111ebULL;
    x ^= x >> 31;
    return x;
}

constexpr std::uint64_t hash_combine(std::uint64_t key, std::uint64_t value) {
    return mix64(key ^ mix64(value + 0x9e3779b97f4a7c15ULL));
}

/// Counter-based generator: draw t of a stream is a pure function of (key, t), so any entry of
/// any replica can be replayed without touching the others.
class CounterRng {
public:
    explicit constexpr CounterRng(std::uint64_t key) : key_(key) {}

    /// Stream for one matrix entry of one replica.
    static constexpr CounterRng for_entry(std::uint64_t seed, std::uint64_t replica, std::uint64_t entry) {
        return CounterRng(hash_combine(hash_combine(mix64(seed), replica), entry));
    }

    constexpr std::uint64_t next() { return mix64(key_ + 0x9e3779b97f4a7c15ULL * ++counter_); }

    /// Uniform on [0, 1) with 53 random bits.
    constexpr double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    std::uint64_t key() const { return key_; }
    std::uint64_t counter() const { return counter_; }

private:
    std::uint64_t key_;
    std::uint64_t counter_ = 0;
};

}  // namespace wignerlab
