#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace anosovkit {

/// Fixed-size dynamic bitset over dense element ids.
///
/// Bits past size() in the last word are always kept clear, so word-level
/// comparisons and popcounts are exact.
class Bitset {
public:
    using Word = std::uint64_t;
    static constexpr std::size_t kWordBits = 64;

    Bitset() = default;
    explicit Bitset(std::size_t n) : size_(n), words_((n + kWordBits - 1) / kWordBits, 0) {}

    std::size_t size() const noexcept { return size_; }
    std::size_t word_count() const noexcept { return words_.size(); }
    const std::vector<Word>& words() const noexcept { return words_; }
    std::vector<Word>& words() noexcept { return words_; }

    bool test(std::size_t i) const noexcept { return (words_[i / kWordBits] >> (i % kWordBits)) & 1u; }
    void set(std::size_t i) noexcept { words_[i / kWordBits] |= Word{1} << (i % kWordBits); }
    void reset(std::size_t i) noexcept { words_[i / kWordBits] &= ~(Word{1} << (i % kWordBits)); }
    void clear() noexcept {
        for (auto& w : words_) w = 0;
    }
    void fill() noexcept {
        for (auto& w : words_) w = ~Word{0};
        trim();
    }

    std::size_t count() const noexcept {
        std::size_t c = 0;
        for (Word w : words_) c += static_cast<std::size_t>(std::popcount(w));
        return c;
    }
    bool none() const noexcept {
        for (Word w : words_)
            if (w) return false;
        return true;
    }
    bool any() const noexcept { return !none(); }

    bool intersects(const Bitset& o) const noexcept {
        for (std::size_t k = 0; k < words_.size(); ++k)
            if (words_[k] & o.words_[k]) return true;
        return false;
    }
    bool is_subset_of(const Bitset& o) const noexcept {
        for (std::size_t k = 0; k < words_.size(); ++k)
            if (words_[k] & ~o.words_[k]) return false;
        return true;
    }

    Bitset& operator|=(const Bitset& o) noexcept {
        for (std::size_t k = 0; k < words_.size(); ++k) words_[k] |= o.words_[k];
        return *this;
    }
    Bitset& operator&=(const Bitset& o) noexcept {
        for (std::size_t k = 0; k < words_.size(); ++k) words_[k] &= o.words_[k];
        return *this;
    }
    /// this &= ~o
    Bitset& subtract(const Bitset& o) noexcept {
        for (std::size_t k = 0; k < words_.size(); ++k) words_[k] &= ~o.words_[k];
        return *this;
    }
    friend Bitset operator|(Bitset a, const Bitset& b) { return a |= b; }
    friend Bitset operator&(Bitset a, const Bitset& b) { return a &= b; }

    friend bool operator==(const Bitset&, const Bitset&) = default;

    /// Lexicographic on the bit sequence b_0 b_1 ... with absent < present.
    friend bool lex_less(const Bitset& a, const Bitset& b) noexcept {
        for (std::size_t k = 0; k < a.words_.size(); ++k) {
            Word diff = a.words_[k] ^ b.words_[k];
            if (diff) {
                Word low = diff & (~diff + 1);
                return (b.words_[k] & low) != 0;
            }
        }
        return false;
    }

    /// Calls f(i) for each set bit, ascending.
    template <class F>
    void for_each(F&& f) const {
        for (std::size_t k = 0; k < words_.size(); ++k) {
            Word w = words_[k];
            while (w) {
                std::size_t bit = static_cast<std::size_t>(std::countr_zero(w));
                f(k * kWordBits + bit);
                w &= w - 1;
            }
        }
    }

    /// First set bit at or after `from`, or size() if none.
    std::size_t find_next(std::size_t from) const noexcept {
        if (from >= size_) return size_;
        std::size_t k = from / kWordBits;
        Word w = words_[k] & (~Word{0} << (from % kWordBits));
        while (true) {
            if (w) return k * kWordBits + static_cast<std::size_t>(std::countr_zero(w));
            if (++k == words_.size()) return size_;
            w = words_[k];
        }
    }

    std::vector<std::size_t> to_indices() const {
        std::vector<std::size_t> out;
        for_each([&](std::size_t i) { out.push_back(i); });
        return out;
    }

    /// Hex of the integer sum_i b_i 2^i, most significant digit first,
    /// zero-padded to ceil(size/4) digits.
    std::string to_hex() const;
    static Bitset from_hex(std::string_view hex, std::size_t n);

    std::size_t hash() const noexcept {
        std::size_t h = 1469598103934665603ull;
        for (Word w : words_) {
            h ^= static_cast<std::size_t>(w);
            h *= 1099511628211ull;
            h ^= h >> 29;
        }
        return h;
    }

private:
    void trim() noexcept {
        if (size_ % kWordBits && !words_.empty()) words_.back() &= (Word{1} << (size_ % kWordBits)) - 1;
    }

    std::size_t size_ = 0;
    std::vector<Word> words_;
};

struct BitsetHash {
    std::size_t operator()(const Bitset& b) const noexcept { return b.hash(); }
};

}  // namespace anosovkit
