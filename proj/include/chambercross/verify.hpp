#pragma once

// Invariant suites run by `chambercross verify` and the acceptance binary.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "chambercross/wallcross.hpp"

namespace chambercross {

struct VerifyOptions {
    /// Closure lattice points per chamber for the oracle comparison.
    std::size_t points = 50;
    /// Regular points per configuration for the dilation volume.
    std::size_t dilation_points = 20;
    /// Random (a, phi) triples for the brute-count difference equation.
    std::size_t brute_triples = 100;
    /// Wall contexts and grid side for the convolution identity.
    std::size_t convolution_contexts = 3;
    std::size_t grid = 10;
    std::uint64_t seed = 1;
    bool check_all_jumps = false;
    bool recheck_truncation = false;
    /// Interior chamber count to enforce, when known.
    std::optional<std::size_t> expected_chambers;

    /// Scale the suite sizes from one number (closure points per chamber).
    static VerifyOptions with_budget(std::size_t budget);
};

struct SuiteResult {
    std::string name;
    std::size_t checks = 0;
    std::size_t failures = 0;
    /// Items left out because they exceed the cost cap (not failures).
    std::size_t skipped = 0;
    /// First few failure descriptions.
    std::vector<std::string> messages;
    double seconds = 0;

    bool passed() const { return failures == 0; }
};

struct VerifyReport {
    std::string config;
    std::vector<SuiteResult> suites;
    /// Set when the sweep itself raised an internal-consistency error.
    std::optional<std::string> internal_error;

    bool passed() const;
};

VerifyReport run_verify(const VectorConfig& config, const VerifyOptions& options);

/// Lattice points in the closure of `chamber`, nearest the origin first
/// (L-infinity, then lexicographic); thin chambers are topped up with
/// translates along their rays.
std::vector<IntVec> closure_points(const ChamberComplex& complex, std::size_t chamber,
                                   std::size_t count);

/// The same wall with F replaced by F + sum shift_i b_i.
WallFrame shifted_frame(const WallFrame& frame, const IntVec& shift);

} // namespace chambercross
