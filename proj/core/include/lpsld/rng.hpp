#pragma once

#include <array>
#include <cstdint>
#include <limits>

namespace lpsld {

/// Philox4x32-10 block: 128-bit counter, 64-bit key.
[[nodiscard]] std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> ctr,
                                                      std::array<std::uint32_t, 2> key) noexcept;

/// Counter-based generator. The key is the master seed; counter words 0-1
/// hold the stream id and words 2-3 the block index, so (seed, stream) pairs
/// name disjoint, reproducible sequences independent of scheduling.
/// Satisfies UniformRandomBitGenerator with 64-bit output.
class CounterRng {
public:
    using result_type = std::uint64_t;

    CounterRng(std::uint64_t seed, std::uint64_t stream) noexcept
        : key_{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)},
          stream_(stream) {}

    static constexpr result_type min() noexcept { return 0; }
    static constexpr result_type max() noexcept { return std::numeric_limits<result_type>::max(); }

    result_type operator()() noexcept {
        if (used_ == 2) {
            refill();
        }
        return buffer_[used_++];
    }

    /// Uniform double in the open interval (0, 1), 53 random bits.
    double uniform_open() noexcept {
        return (static_cast<double>((*this)() >> 11) + 0.5) * 0x1.0p-53;
    }

private:
    void refill() noexcept {
        const auto out = philox4x32({static_cast<std::uint32_t>(stream_), static_cast<std::uint32_t>(stream_ >> 32),
                                     static_cast<std::uint32_t>(block_), static_cast<std::uint32_t>(block_ >> 32)},
                                    key_);
        ++block_;
        buffer_[0] = (static_cast<std::uint64_t>(out[1]) << 32) | out[0];
        buffer_[1] = (static_cast<std::uint64_t>(out[3]) << 32) | out[2];
        used_ = 0;
    }

    std::array<std::uint32_t, 2> key_;
    std::uint64_t stream_;
    std::uint64_t block_ = 0;
    std::array<std::uint64_t, 2> buffer_{};
    int used_ = 2;
};

/// Stream ids: high byte tags the purpose so direction draws, noise draws
/// and auxiliary draws never share a counter range.
enum class StreamPurpose : std::uint64_t {
    Direction = 1,
    Replication = 2,
    Fluctuation = 3,
    Limit = 4,
};

[[nodiscard]] constexpr std::uint64_t stream_id(StreamPurpose purpose, std::uint64_t index) noexcept {
    return (static_cast<std::uint64_t>(purpose) << 56) | (index & ((std::uint64_t{1} << 56) - 1));
}

}  // namespace lpsld
