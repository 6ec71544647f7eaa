#pragma once

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace hyperreg {

/// Fixed-width bit row. Adjacency rows, candidate sets and vertex subsets all
/// use this; the hot paths are and-assignment and popcount.
class Bitset {
public:
    using word_type = std::uint64_t;
    static constexpr std::size_t kWordBits = 64;

    Bitset() = default;
    explicit Bitset(std::size_t bits, bool value = false)
        : bits_(bits), words_((bits + kWordBits - 1) / kWordBits, value ? ~word_type{0} : 0) {
        trim();
    }

    static Bitset from_indices(std::size_t bits, std::span<const std::uint32_t> idx) {
        Bitset b(bits);
        for (auto i : idx) b.set(i);
        return b;
    }

    std::size_t size() const noexcept { return bits_; }
    std::size_t word_count() const noexcept { return words_.size(); }
    const word_type* data() const noexcept { return words_.data(); }

    bool test(std::size_t i) const noexcept { return (words_[i / kWordBits] >> (i % kWordBits)) & 1u; }
    void set(std::size_t i) noexcept { words_[i / kWordBits] |= word_type{1} << (i % kWordBits); }
    void reset(std::size_t i) noexcept { words_[i / kWordBits] &= ~(word_type{1} << (i % kWordBits)); }
    void assign(std::size_t i, bool v) noexcept { v ? set(i) : reset(i); }
    void fill(bool v) noexcept {
        std::fill(words_.begin(), words_.end(), v ? ~word_type{0} : 0);
        trim();
    }

    std::size_t count() const noexcept {
        std::size_t c = 0;
        for (auto w : words_) c += static_cast<std::size_t>(std::popcount(w));
        return c;
    }
    bool none() const noexcept {
        return std::all_of(words_.begin(), words_.end(), [](word_type w) { return w == 0; });
    }
    bool any() const noexcept { return !none(); }

    Bitset& operator&=(const Bitset& o) noexcept {
        for (std::size_t w = 0; w < words_.size(); ++w) words_[w] &= o.words_[w];
        return *this;
    }
    Bitset& operator|=(const Bitset& o) noexcept {
        for (std::size_t w = 0; w < words_.size(); ++w) words_[w] |= o.words_[w];
        return *this;
    }
    /// this &= ~o
    Bitset& subtract(const Bitset& o) noexcept {
        for (std::size_t w = 0; w < words_.size(); ++w) words_[w] &= ~o.words_[w];
        return *this;
    }
    friend Bitset operator&(Bitset a, const Bitset& b) noexcept { return a &= b; }
    friend Bitset operator|(Bitset a, const Bitset& b) noexcept { return a |= b; }

    /// popcount(a & b) without materializing the intersection.
    static std::size_t and_count(const Bitset& a, const Bitset& b) noexcept {
        std::size_t c = 0;
        for (std::size_t w = 0; w < a.words_.size(); ++w)
            c += static_cast<std::size_t>(std::popcount(a.words_[w] & b.words_[w]));
        return c;
    }

    bool is_subset_of(const Bitset& o) const noexcept {
        for (std::size_t w = 0; w < words_.size(); ++w)
            if (words_[w] & ~o.words_[w]) return false;
        return true;
    }

    template <class F>
    void for_each(F&& f) const {
        for (std::size_t w = 0; w < words_.size(); ++w) {
            word_type word = words_[w];
            while (word) {
                const auto bit = static_cast<std::size_t>(std::countr_zero(word));
                f(static_cast<std::uint32_t>(w * kWordBits + bit));
                word &= word - 1;
            }
        }
    }

    std::vector<std::uint32_t> indices() const {
        std::vector<std::uint32_t> out;
        out.reserve(count());
        for_each([&](std::uint32_t i) { out.push_back(i); });
        return out;
    }

    friend bool operator==(const Bitset&, const Bitset&) = default;

private:
    void trim() noexcept {
        if (bits_ % kWordBits != 0 && !words_.empty())
            words_.back() &= (word_type{1} << (bits_ % kWordBits)) - 1;
    }

    std::size_t bits_ = 0;
    std::vector<word_type> words_;
};

}  // namespace hyperreg
