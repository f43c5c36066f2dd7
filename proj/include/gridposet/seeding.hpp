#pragma once

#include <cstdint>
#include <random>

#include "gridposet/common.hpp"

namespace gridposet {

using Rng = std::mt19937_64;

/// One SplitMix64 step from state x: add the golden gamma, then mix.
std::uint64_t splitmix64(std::uint64_t x) noexcept;

/// Seed of stream `stream` under `master`:
/// splitmix64(master + 0x9E3779B97F4A7C15 * (stream + 1)), i.e. output
/// stream + 2 of the reference SplitMix64 sequence started at master.
/// Used for trial seeds (stream = trial index) and per-level generator seeds
/// (stream = lower level index), so every sampled object is a function of the
/// master seed alone.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream) noexcept;

/// Uniform integer in [0, bound) by rejection on whole 64-bit words. Does not
/// depend on the standard library's distribution implementations.
mpz_class uniform_below(const mpz_class& bound, Rng& rng);
std::uint64_t uniform_below(std::uint64_t bound, Rng& rng);

}  // namespace gridposet
