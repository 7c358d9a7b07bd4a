#pragma once

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <vector>

namespace vtask {

/// Iterate the set bits of a word, lowest first.
template <class Word, class Fn>
constexpr void for_each_bit(Word word, Fn && fn)
{
    while (word != 0) {
        fn(static_cast<unsigned>(std::countr_zero(word)));
        word &= word - 1;
    }
}

/// Fixed-universe dynamic bitset. Bit `i` stands for the statement at
/// canonical position `i` of a language.
class StatementSet
{
public:
    using word_type = std::uint64_t;
    static constexpr std::size_t word_bits = 64;

    StatementSet() = default;

    explicit StatementSet(std::size_t universe)
        : universe_(universe), words_((universe + word_bits - 1) / word_bits, 0)
    {
    }

    static StatementSet full(std::size_t universe)
    {
        StatementSet s(universe);
        std::fill(s.words_.begin(), s.words_.end(), ~word_type{0});
        s.trim();
        return s;
    }

    std::size_t universe() const { return universe_; }

    bool contains(std::size_t pos) const
    {
        return pos < universe_ && ((words_[pos / word_bits] >> (pos % word_bits)) & 1U) != 0;
    }

    void insert(std::size_t pos) { words_[pos / word_bits] |= word_type{1} << (pos % word_bits); }
    void erase(std::size_t pos) { words_[pos / word_bits] &= ~(word_type{1} << (pos % word_bits)); }

    std::size_t size() const
    {
        std::size_t n = 0;
        for (auto w : words_)
            n += static_cast<std::size_t>(std::popcount(w));
        return n;
    }

    bool empty() const
    {
        return std::all_of(words_.begin(), words_.end(), [](word_type w) { return w == 0; });
    }

    StatementSet & operator|=(const StatementSet & other)
    {
        for (std::size_t i = 0; i < words_.size(); ++i)
            words_[i] |= other.words_[i];
        return *this;
    }

    StatementSet & operator&=(const StatementSet & other)
    {
        for (std::size_t i = 0; i < words_.size(); ++i)
            words_[i] &= other.words_[i];
        return *this;
    }

    /// Set difference.
    StatementSet & operator-=(const StatementSet & other)
    {
        for (std::size_t i = 0; i < words_.size(); ++i)
            words_[i] &= ~other.words_[i];
        return *this;
    }

    friend StatementSet operator|(StatementSet a, const StatementSet & b) { return a |= b; }
    friend StatementSet operator&(StatementSet a, const StatementSet & b) { return a &= b; }
    friend StatementSet operator-(StatementSet a, const StatementSet & b) { return a -= b; }

    bool is_subset_of(const StatementSet & other) const
    {
        for (std::size_t i = 0; i < words_.size(); ++i)
            if ((words_[i] & ~other.words_[i]) != 0)
                return false;
        return true;
    }

    template <class Fn>
    void for_each(Fn && fn) const
    {
        for (std::size_t i = 0; i < words_.size(); ++i)
            for_each_bit(words_[i], [&](unsigned b) { fn(i * word_bits + b); });
    }

    std::vector<std::size_t> positions() const
    {
        std::vector<std::size_t> out;
        out.reserve(size());
        for_each([&](std::size_t p) { out.push_back(p); });
        return out;
    }

    const std::vector<word_type> & words() const { return words_; }

    bool operator==(const StatementSet &) const = default;

private:
    void trim()
    {
        if (universe_ % word_bits != 0 && !words_.empty())
            words_.back() &= (word_type{1} << (universe_ % word_bits)) - 1;
    }

    std::size_t universe_ = 0;
    std::vector<word_type> words_;
};

} // namespace vtask
