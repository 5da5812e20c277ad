#pragma once

#include <array>
#include <cstdint>

namespace kaclab {

// Philox-4x32-10 counter-based generator (Salmon et al., SC 2011).
// A block is a pure function of (key, counter); there is no generator state,
// so any worker can reproduce any draw from its coordinates alone.
namespace philox {

inline constexpr std::uint32_t kWeylA = 0x9E3779B9u;
inline constexpr std::uint32_t kWeylB = 0xBB67AE85u;
inline constexpr std::uint32_t kMulA = 0xD2511F53u;
inline constexpr std::uint32_t kMulB = 0xCD9E8D57u;

inline std::array<std::uint32_t, 4> block(std::uint64_t key, std::uint64_t ctr_hi,
                                          std::uint64_t ctr_lo) {
    std::uint32_t c0 = static_cast<std::uint32_t>(ctr_lo);
    std::uint32_t c1 = static_cast<std::uint32_t>(ctr_lo >> 32);
    std::uint32_t c2 = static_cast<std::uint32_t>(ctr_hi);
    std::uint32_t c3 = static_cast<std::uint32_t>(ctr_hi >> 32);
    std::uint32_t k0 = static_cast<std::uint32_t>(key);
    std::uint32_t k1 = static_cast<std::uint32_t>(key >> 32);
    for (int round = 0; round < 10; ++round) {
        std::uint64_t p0 = static_cast<std::uint64_t>(kMulA) * c0;
        std::uint64_t p1 = static_cast<std::uint64_t>(kMulB) * c2;
        std::uint32_t lo0 = static_cast<std::uint32_t>(p0), hi0 = static_cast<std::uint32_t>(p0 >> 32);
        std::uint32_t lo1 = static_cast<std::uint32_t>(p1), hi1 = static_cast<std::uint32_t>(p1 >> 32);
        std::uint32_t n0 = hi1 ^ c1 ^ k0;
        std::uint32_t n1 = lo1;
        std::uint32_t n2 = hi0 ^ c3 ^ k1;
        std::uint32_t n3 = lo0;
        c0 = n0; c1 = n1; c2 = n2; c3 = n3;
        k0 += kWeylA;
        k1 += kWeylB;
    }
    return {c0, c1, c2, c3};
}

}  // namespace philox

/// The k-th uniform of (seed, trial), identical no matter which law consumes it.
/// Values lie strictly inside (0,1): 53 random mantissa bits offset by half an ulp.
inline double uniform_at(std::uint64_t seed, std::uint64_t trial, std::uint64_t k) {
    auto words = philox::block(seed, trial, k >> 1);
    int half = static_cast<int>(k & 1) * 2;
    std::uint64_t bits = (static_cast<std::uint64_t>(words[half + 1]) << 32) | words[half];
    return (static_cast<double>(bits >> 11) + 0.5) * 0x1.0p-53;
}

// Sequential view over the uniforms U_0, U_1, ... of one trial.  Caches the
// current Philox block so consecutive draws cost half a block each.
class CouplingStream {
public:
    CouplingStream(std::uint64_t seed, std::uint64_t trial = 0)
        : seed_(seed), trial_(trial) {}

    std::uint64_t seed() const { return seed_; }
    std::uint64_t trial() const { return trial_; }
    std::uint64_t index() const { return index_; }

    void reset(std::uint64_t trial) {
        trial_ = trial;
        index_ = 0;
        cached_block_ = ~std::uint64_t{0};
    }

    double next() { return at(index_++); }

    /// Random access within the trial (does not advance the cursor).
    double at(std::uint64_t k) {
        std::uint64_t blk = k >> 1;
        if (blk != cached_block_) {
            words_ = philox::block(seed_, trial_, blk);
            cached_block_ = blk;
        }
        int half = static_cast<int>(k & 1) * 2;
        std::uint64_t bits = (static_cast<std::uint64_t>(words_[half + 1]) << 32) | words_[half];
        return (static_cast<double>(bits >> 11) + 0.5) * 0x1.0p-53;
    }

private:
    std::uint64_t seed_;
    std::uint64_t trial_ = 0;
    std::uint64_t index_ = 0;
    std::uint64_t cached_block_ = ~std::uint64_t{0};
    std::array<std::uint32_t, 4> words_{};
};

}  // namespace kaclab
