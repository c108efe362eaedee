#include "vereval/corpus/minhash.hpp"

#include "vereval/errors.hpp"
#include "vereval/util/digest.hpp"
#include "vereval/util/text.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace vereval::corpus {

namespace {

constexpr std::uint64_t kMersenne61 = (1ULL << 61) - 1;

std::uint64_t mod_mersenne61(unsigned __int128 x) {
    std::uint64_t r = static_cast<std::uint64_t>(x & kMersenne61) + static_cast<std::uint64_t>(x >> 61);
    r = (r & kMersenne61) + (r >> 61);
    return r >= kMersenne61 ? r - kMersenne61 : r;
}

struct HashCoefficients {
    std::uint64_t a;
    std::uint64_t b;
};

std::vector<HashCoefficients> hash_family(std::size_t n, std::uint64_t seed) {
    std::vector<HashCoefficients> fam;
    fam.reserve(n);
    std::uint64_t state = seed;
    auto next = [&state] {  // SplitMix64
        const std::uint64_t r = util::mix64(state);
        state += 0x9e3779b97f4a7c15ULL;
        return r;
    };
    for (std::size_t i = 0; i < n; ++i) {
        std::uint64_t a = next() % kMersenne61;
        if (a == 0) a = 1;
        const std::uint64_t b = next() % kMersenne61;
        fam.push_back({a, b});
    }
    return fam;
}

}  // namespace

ShingleSet shingle_set(std::string_view text, std::size_t k) {
    if (k == 0) throw std::invalid_argument("shingle length must be >= 1");
    const std::string norm = util::collapse_whitespace(text);
    const auto offs = util::code_point_offsets(norm);
    const std::size_t n = offs.size() - 1;

    ShingleSet s;
    s.k = k;
    if (n < k) {
        s.hashes.push_back(util::hash64(norm));
        return s;
    }
    s.hashes.reserve(n - k + 1);
    for (std::size_t i = 0; i + k <= n; ++i) {
        s.hashes.push_back(util::hash64(std::string_view(norm).substr(offs[i], offs[i + k] - offs[i])));
    }
    std::sort(s.hashes.begin(), s.hashes.end());
    s.hashes.erase(std::unique(s.hashes.begin(), s.hashes.end()), s.hashes.end());
    return s;
}

MinHashSignature minhash_signature(const ShingleSet& shingles, std::size_t num_hashes, std::uint64_t seed) {
    if (shingles.hashes.empty()) throw std::invalid_argument("minhash of an empty shingle set");
    if (num_hashes == 0) throw std::invalid_argument("minhash needs at least one hash function");

    const auto family = hash_family(num_hashes, seed);
    MinHashSignature sig;
    sig.k_shingle = shingles.k;
    sig.seed = seed;
    sig.mins.assign(num_hashes, std::numeric_limits<std::uint64_t>::max());
    for (const std::uint64_t h : shingles.hashes) {
        const std::uint64_t x = util::mix64(h) % kMersenne61;
        for (std::size_t i = 0; i < num_hashes; ++i) {
            const auto v = mod_mersenne61(static_cast<unsigned __int128>(family[i].a) * x + family[i].b);
            if (v < sig.mins[i]) sig.mins[i] = v;
        }
    }
    return sig;
}

double jaccard_exact(std::span<const std::uint64_t> a, std::span<const std::uint64_t> b) {
    if (a.empty() && b.empty()) return 1.0;
    std::size_t i = 0, j = 0, inter = 0;
    while (i < a.size() && j < b.size()) {
        if (a[i] == b[j]) {
            ++inter;
            ++i;
            ++j;
        } else if (a[i] < b[j]) {
            ++i;
        } else {
            ++j;
        }
    }
    const std::size_t uni = a.size() + b.size() - inter;
    return static_cast<double>(inter) / static_cast<double>(uni);
}

double estimate_jaccard(const MinHashSignature& a, const MinHashSignature& b) {
    if (a.mins.size() != b.mins.size() || a.seed != b.seed || a.k_shingle != b.k_shingle) {
        throw ParameterMismatch(fmt::format(
            "signature parameters differ: K {} vs {}, seed {:#x} vs {:#x}, k_shingle {} vs {}", a.mins.size(),
            b.mins.size(), a.seed, b.seed, a.k_shingle, b.k_shingle));
    }
    if (a.mins.empty()) return 1.0;
    std::size_t same = 0;
    for (std::size_t i = 0; i < a.mins.size(); ++i) same += a.mins[i] == b.mins[i];
    return static_cast<double>(same) / static_cast<double>(a.mins.size());
}

}  // namespace vereval::corpus
