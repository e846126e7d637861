#pragma once

// Philox4x64-10 counter-based generator (Salmon et al., Random123). Each
// replication owns the substream keyed by the run seed and indexed by its
// replication number, so results never depend on how work is scheduled.

#include <array>
#include <cstdint>

namespace realopt {

__extension__ using uint128_t = unsigned __int128;

class Philox4x64 {
public:
    using Counter = std::array<std::uint64_t, 4>;
    using Key = std::array<std::uint64_t, 2>;

    static constexpr Counter block(Counter ctr, Key key) noexcept {
        for (int round = 0; round < 10; ++round) {
            if (round > 0) {
                key[0] += kWeyl0;
                key[1] += kWeyl1;
            }
            const uint128_t p0 = static_cast<uint128_t>(kMul0) * ctr[0];
            const uint128_t p1 = static_cast<uint128_t>(kMul1) * ctr[2];
            const auto hi0 = static_cast<std::uint64_t>(p0 >> 64);
            const auto lo0 = static_cast<std::uint64_t>(p0);
            const auto hi1 = static_cast<std::uint64_t>(p1 >> 64);
            const auto lo1 = static_cast<std::uint64_t>(p1);
            ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
        }
        return ctr;
    }

private:
    static constexpr std::uint64_t kMul0 = 0xD2E7470EE14C6C93ULL;
    static constexpr std::uint64_t kMul1 = 0xCA5A826395121157ULL;
    static constexpr std::uint64_t kWeyl0 = 0x9E3779B97F4A7C15ULL;
    static constexpr std::uint64_t kWeyl1 = 0xBB67AE8584CAA73BULL;
};

/// Sequential view of one replication's substream: counter
/// (replication, block, 0, 0) under key (seed, 0), four words per block.
class RandomStream {
public:
    RandomStream(std::uint64_t seed, std::uint64_t replication) noexcept
        : key_{seed, 0}, replication_(replication) {}

    std::uint64_t next_u64() noexcept {
        if (pos_ == 4) {
            buffer_ = Philox4x64::block({replication_, block_++, 0, 0}, key_);
            pos_ = 0;
        }
        return buffer_[pos_++];
    }

    /// Uniform on the open interval (0, 1) with 53-bit resolution.
    double next_unit() noexcept {
        return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
    }

    /// Standard normal by inverse-CDF transform (one word per deviate).
    double next_normal() noexcept;

    std::uint64_t words_consumed() const noexcept { return block_ * 4 - (4 - pos_); }

private:
    Philox4x64::Key key_;
    std::uint64_t replication_;
    std::uint64_t block_ = 0;
    Philox4x64::Counter buffer_{};
    int pos_ = 4;
};

}  // namespace realopt
