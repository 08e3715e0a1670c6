#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <vector>

namespace cotv {

// Fixed-width bitset over verifier ids. Width is set at construction and
// every binary operation expects operands of equal width.
class VerifierSet
{
    std::vector<std::uint64_t> _words;
    std::size_t _width = 0;

    void trim()
    {
        if (_width % 64 != 0 && !_words.empty())
            _words.back() &= (std::uint64_t{ 1 } << (_width % 64)) - 1;
    }

public:
    VerifierSet() = default;
    explicit VerifierSet(std::size_t width, bool filled = false)
        : _words((width + 63) / 64, filled ? ~std::uint64_t{ 0 } : 0), _width{ width }
    {
        trim();
    }

    [[nodiscard]] std::size_t width() const { return _width; }

    [[nodiscard]] bool test(std::size_t i) const { return (_words[i / 64] >> (i % 64)) & 1u; }
    void set(std::size_t i) { _words[i / 64] |= std::uint64_t{ 1 } << (i % 64); }
    void reset(std::size_t i) { _words[i / 64] &= ~(std::uint64_t{ 1 } << (i % 64)); }

    [[nodiscard]] std::size_t count() const
    {
        std::size_t n = 0;
        for (auto w : _words)
            n += static_cast<std::size_t>(std::popcount(w));
        return n;
    }

    [[nodiscard]] bool empty() const
    {
        for (auto w : _words)
            if (w != 0)
                return false;
        return true;
    }

    [[nodiscard]] bool is_subset_of(const VerifierSet& other) const
    {
        for (std::size_t i = 0; i < _words.size(); ++i)
            if ((_words[i] & ~other._words[i]) != 0)
                return false;
        return true;
    }

    VerifierSet& operator&=(const VerifierSet& other)
    {
        for (std::size_t i = 0; i < _words.size(); ++i)
            _words[i] &= other._words[i];
        return *this;
    }

    VerifierSet& operator|=(const VerifierSet& other)
    {
        for (std::size_t i = 0; i < _words.size(); ++i)
            _words[i] |= other._words[i];
        return *this;
    }

    // this \ other
    [[nodiscard]] VerifierSet minus(const VerifierSet& other) const
    {
        VerifierSet out = *this;
        for (std::size_t i = 0; i < _words.size(); ++i)
            out._words[i] &= ~other._words[i];
        return out;
    }

    friend VerifierSet operator&(VerifierSet a, const VerifierSet& b) { return a &= b; }
    friend VerifierSet operator|(VerifierSet a, const VerifierSet& b) { return a |= b; }

    friend bool operator==(const VerifierSet&, const VerifierSet&) = default;

    // Lowest set index, or width() when empty.
    [[nodiscard]] std::size_t first() const
    {
        for (std::size_t i = 0; i < _words.size(); ++i)
            if (_words[i] != 0)
                return i * 64 + static_cast<std::size_t>(std::countr_zero(_words[i]));
        return _width;
    }

    template <typename F>
    void for_each(F&& f) const
    {
        for (std::size_t i = 0; i < _words.size(); ++i) {
            auto w = _words[i];
            while (w != 0) {
                f(i * 64 + static_cast<std::size_t>(std::countr_zero(w)));
                w &= w - 1;
            }
        }
    }

    [[nodiscard]] std::vector<std::size_t> members() const
    {
        std::vector<std::size_t> out;
        for_each([&](std::size_t i) { out.push_back(i); });
        return out;
    }

    [[nodiscard]] std::size_t hash() const
    {
        std::uint64_t h = 0x9e3779b97f4a7c15ull ^ _width;
        for (auto w : _words) {
            h ^= w + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
        }
        return static_cast<std::size_t>(h);
    }
};

struct VerifierSetHash
{
    std::size_t operator()(const VerifierSet& s) const { return s.hash(); }
};

} // namespace cotv
