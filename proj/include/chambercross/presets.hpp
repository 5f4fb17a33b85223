#pragma once

// Root-system presets and seeded random configurations.

#include <cstdint>
#include <string>

#include "chambercross/chambers.hpp"

namespace chambercross {

/// Positive roots of A_r in the coordinates a = sum a_i (e_i - e_{r+1}),
/// ordered by height then by first index.
IntMatrix roots_A(std::size_t r);
/// Positive roots of B_r: e_i, then e_i + e_j and e_i - e_j for i < j.
IntMatrix roots_B(std::size_t r);

/// "A3", "A_3", "B2", ... Throws ValidationError on unknown names.
VectorConfig preset(const std::string& name);

/// Pointed configuration of n vectors of rank r generating Z^r, entries in
/// [-bound, bound], drawn deterministically from `seed`.
VectorConfig random_config(std::size_t r, std::size_t n, std::uint64_t seed, long bound = 3);

} // namespace chambercross
