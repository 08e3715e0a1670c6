#include "cotv/rng.hpp"

#include "cotv/error.hpp"

namespace cotv {

std::uint64_t splitmix64(std::uint64_t x)
{
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

std::uint64_t Rng::next() { return splitmix64(_key + 0x9e3779b97f4a7c15ull * _counter++); }

std::uint64_t Rng::below(std::uint64_t n)
{
    if (n == 0)
        throw Error(ErrorCode::InvalidArgument, "Rng::below needs n >= 1");
    // Reject the top partial block so every residue is equally likely.
    const std::uint64_t limit = UINT64_MAX - (UINT64_MAX % n + 1) % n;
    for (;;) {
        const auto v = next();
        if (v <= limit)
            return v % n;
    }
}

Rng Rng::split(std::uint64_t tag) const
{
    Rng child;
    child._key = splitmix64(_key ^ splitmix64(tag ^ 0x5851f42d4c957f2dull));
    return child;
}

Rng Rng::split(std::string_view tag) const
{
    // FNV-1a over the tag bytes.
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char c : tag)
        h = (h ^ c) * 0x100000001b3ull;
    return split(h);
}

} // namespace cotv
