#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <string_view>

namespace vereval::util {

using Sha256 = std::array<std::uint8_t, 32>;

Sha256 sha256(std::string_view data);
std::string sha256_hex(std::string_view data);
std::string to_hex(const Sha256& digest);

/// Incremental SHA-256 for hashing several pieces without concatenating them.
class Sha256Builder {
public:
    Sha256Builder();
    ~Sha256Builder();
    Sha256Builder(const Sha256Builder&) = delete;
    Sha256Builder& operator=(const Sha256Builder&) = delete;

    Sha256Builder& update(std::string_view data);
    /// Length-prefixed update, so ("ab","c") and ("a","bc") hash differently.
    Sha256Builder& field(std::string_view data);
    std::string hex();

private:
    void* ctx_;
};

// SplitMix64 finalizer. Bijective on 64-bit values.
constexpr std::uint64_t mix64(std::uint64_t x) noexcept {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// FNV-1a over bytes followed by mix64; stable across platforms and runs.
constexpr std::uint64_t hash64(std::string_view bytes) noexcept {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return mix64(h);
}

}  // namespace vereval::util
