#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "submark/rng.hpp"

namespace submark {

/// Fixed-length bit vector used as the search-space element. Keeps a running
/// count of ones so |x|_1 is O(1).
class BitString {
public:
    BitString() = default;

    explicit BitString(std::size_t size) : bits_(size, 0) {}

    static BitString random(std::size_t size, RngStream& rng) {
        BitString x(size);
        std::size_t i = 0;
        while (i < size) {
            uint64_t word = rng.next_u64();
            const std::size_t chunk = std::min<std::size_t>(64, size - i);
            for (std::size_t j = 0; j < chunk; ++j) {
                if ((word >> j) & 1u) {
                    x.bits_[i + j] = 1;
                    ++x.ones_;
                }
            }
            i += chunk;
        }
        return x;
    }

    static BitString from_mask(uint64_t mask, std::size_t size) {
        if (size > 64) throw std::invalid_argument("from_mask: size exceeds 64");
        BitString x(size);
        for (std::size_t i = 0; i < size; ++i) {
            if ((mask >> i) & 1u) x.set(i, true);
        }
        return x;
    }

    std::size_t size() const noexcept { return bits_.size(); }

    bool test(std::size_t i) const noexcept { return bits_[i] != 0; }

    void set(std::size_t i, bool value) noexcept {
        ones_ += static_cast<int64_t>(value) - static_cast<int64_t>(bits_[i]);
        bits_[i] = value ? 1 : 0;
    }

    void flip(std::size_t i) noexcept {
        ones_ += bits_[i] ? -1 : 1;
        bits_[i] ^= 1;
    }

    /// |x|_1
    int64_t ones() const noexcept { return ones_; }

    uint64_t to_mask() const {
        if (size() > 64) throw std::invalid_argument("to_mask: size exceeds 64");
        uint64_t mask = 0;
        for (std::size_t i = 0; i < size(); ++i) {
            if (bits_[i]) mask |= uint64_t{1} << i;
        }
        return mask;
    }

    bool operator==(const BitString& other) const noexcept {
        return bits_ == other.bits_;
    }

private:
    std::vector<uint8_t> bits_;
    int64_t ones_ = 0;
};

}  // namespace submark
