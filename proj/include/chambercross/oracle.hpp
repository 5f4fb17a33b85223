#pragma once

// Brute-force ground truth: lattice-point counts, K+, the discrete
// convolution C(q, Psi, E) and dilation volumes.

#include <unordered_map>
#include <utility>

#include "chambercross/chambers.hpp"
#include "chambercross/polyalg.hpp"

namespace chambercross {

/// Number of non-negative integer solutions of sum t_i phi_i = a.
/// Memoized across queries on the same vectors.
class BruteCounter {
public:
    /// `certificate` must pair to >= 1 with every vector.
    BruteCounter(IntMatrix vectors, IntVec certificate);
    explicit BruteCounter(const VectorConfig& config)
        : BruteCounter(config.vectors, config.positive)
    {
    }

    Integer count(const IntVec& a);
    std::size_t memo_size() const { return memo_.size(); }
    void clear() { memo_.clear(); }

private:
    Integer count_from(std::size_t i, const IntVec& b);
    /// b is a non-negative integer combination of the independent tail.
    bool tail_solution(const IntVec& b) const;

    IntMatrix vectors_;
    IntVec certificate_;
    std::vector<long> weight_;
    std::size_t tail_start_ = 0;
    std::vector<std::size_t> tail_rows_;
    RatMatrix tail_inverse_;
    struct KeyHash {
        std::size_t operator()(const IntVec& v) const noexcept
        {
            std::size_t h = 0x9e3779b97f4a7c15ULL;
            for (long x : v)
                h = (h ^ static_cast<std::size_t>(x)) * 0x100000001b3ULL + (h >> 29);
            return h;
        }
    };
    /// Keyed by the residual with the vector index appended.
    std::unordered_map<IntVec, Integer, KeyHash> memo_;
};

Integer brute_count(const VectorConfig& config, const IntVec& a);

/// Coefficients of prod 1/(1 - e^{-psi}) expanded on the E > 0 side:
/// (-1)^{|Psi-|} k(R+)(a + kappa-), R+ = Psi+ and -Psi-.
class KPlus {
public:
    KPlus(const IntMatrix& psi, const IntVec& E);
    Integer operator()(const IntVec& a);

    const IntMatrix& reflected() const { return reflected_; }
    const IntVec& kappa_minus() const { return kappa_; }
    const IntVec& normal() const { return E_; }
    bool negative_odd() const { return odd_; }

private:
    IntVec kappa_;
    bool odd_ = false;
    IntMatrix reflected_;
    IntVec E_;
    BruteCounter counter_;
};

Integer kplus(const IntMatrix& psi, const IntVec& E, const IntVec& a);

/// sum over w in Gamma0 of q(w) K+(a - w); q in B0 coordinates of `frame`,
/// whose normal may differ from E by sign.
Rational convolve_C(const QuasiPoly& q, KPlus& kernel, const WallFrame& frame, const IntVec& a);
Rational convolve_C(const QuasiPoly& q, const IntMatrix& psi, const WallFrame& frame,
                    const IntVec& E, const IntVec& a);

/// Leading coefficient of m -> k(Phi)(m a), fitted exactly per residue class
/// of m modulo `period` (M, or any multiple of the quasi-period along a).
/// Throws InternalError when the classes disagree.
Rational volume_dilation(const VectorConfig& config, const IntVec& a, unsigned long period,
                         BruteCounter* counter = nullptr);

} // namespace chambercross
