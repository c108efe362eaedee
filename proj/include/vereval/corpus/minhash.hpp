#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

namespace vereval::corpus {

inline constexpr std::size_t kDefaultNumHashes = 256;
inline constexpr std::size_t kDefaultShingleLength = 7;
inline constexpr std::uint64_t kDefaultMinHashSeed = 0x5eed'0f'5ba1'1ce5ULL;

/// Sorted, de-duplicated 64-bit hashes of k-character shingles.
struct ShingleSet {
    std::vector<std::uint64_t> hashes;
    std::size_t k = kDefaultShingleLength;

    bool operator==(const ShingleSet&) const = default;
};

/// Hashes every k-code-point window of the whitespace-collapsed text. Text
/// shorter than k (including "") yields the singleton {hash(text)}.
ShingleSet shingle_set(std::string_view text, std::size_t k);

struct MinHashSignature {
    std::vector<std::uint64_t> mins;
    std::size_t k_shingle = kDefaultShingleLength;
    std::uint64_t seed = kDefaultMinHashSeed;

    bool operator==(const MinHashSignature&) const = default;
};

/// mins[i] = min over shingles of h_i(s), with h_i(x) = (a_i*x + b_i) mod (2^61 - 1)
/// and (a_i, b_i) drawn from a SplitMix64 stream seeded by `seed`.
/// Throws std::invalid_argument on an empty set or num_hashes == 0.
MinHashSignature minhash_signature(const ShingleSet& shingles, std::size_t num_hashes, std::uint64_t seed);

/// |a ∩ b| / |a ∪ b| over sorted unique ranges; 1.0 when both are empty.
double jaccard_exact(std::span<const std::uint64_t> a, std::span<const std::uint64_t> b);

inline double jaccard_exact(const ShingleSet& a, const ShingleSet& b) { return jaccard_exact(a.hashes, b.hashes); }

/// Fraction of agreeing positions. Throws ParameterMismatch if the signatures
/// differ in length, seed or shingle length.
double estimate_jaccard(const MinHashSignature& a, const MinHashSignature& b);

}  // namespace vereval::corpus
