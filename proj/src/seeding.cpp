#include "gridposet/seeding.hpp"

#include <stdexcept>
#include <vector>

namespace gridposet {

std::uint64_t splitmix64(std::uint64_t x) noexcept
{
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream) noexcept
{
    return splitmix64(master + 0x9E3779B97F4A7C15ULL * (stream + 1));
}

std::uint64_t uniform_below(std::uint64_t bound, Rng& rng)
{
    if (bound == 0)
        throw std::invalid_argument("uniform_below: empty range");
    // Largest multiple of bound representable in 64 bits.
    const std::uint64_t limit = bound * (UINT64_MAX / bound);
    for (;;) {
        std::uint64_t x = rng();
        if (x < limit)
            return x % bound;
    }
}

mpz_class uniform_below(const mpz_class& bound, Rng& rng)
{
    if (bound <= 0)
        throw std::invalid_argument("uniform_below: empty range");
    if (bound.fits_ulong_p() && sizeof(unsigned long) == 8)
        return mpz_class(uniform_below(static_cast<std::uint64_t>(bound.get_ui()), rng));

    const std::size_t bits = mpz_sizeinbase(bound.get_mpz_t(), 2);
    const std::size_t words = (bits + 63) / 64;
    const unsigned top_bits = static_cast<unsigned>(bits - 64 * (words - 1));
    const std::uint64_t top_mask = top_bits == 64 ? UINT64_MAX : ((std::uint64_t{1} << top_bits) - 1);
    std::vector<std::uint64_t> buf(words);
    mpz_class x;
    for (;;) {
        for (auto& w : buf)
            w = rng();
        buf.back() &= top_mask;  // most significant word, least-significant-first order
        mpz_import(x.get_mpz_t(), words, -1, sizeof(std::uint64_t), 0, 0, buf.data());
        if (x < bound)
            return x;
    }
}

}  // namespace gridposet
