#pragma once

#include <cstdint>
#include <string_view>

namespace cotv {

std::uint64_t splitmix64(std::uint64_t x);

// Counter-based generator: output i of stream `key` is splitmix64(key + i*φ).
// split() derives an independent child stream from a tag, so every consumer
// gets its own stream and results do not depend on call interleaving.
class Rng
{
    std::uint64_t _key = 0;
    std::uint64_t _counter = 0;

public:
    Rng() = default;
    explicit Rng(std::uint64_t seed) : _key{ splitmix64(seed) } {}

    std::uint64_t next();
    // Uniform on [0, n) without modulo bias; n >= 1.
    std::uint64_t below(std::uint64_t n);

    [[nodiscard]] Rng split(std::uint64_t tag) const;
    [[nodiscard]] Rng split(std::string_view tag) const;

    [[nodiscard]] std::uint64_t key() const { return _key; }
};

} // namespace cotv
