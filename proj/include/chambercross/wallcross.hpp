#pragma once

// Residue functionals Pol / Par / Para, jumps across walls, the chamber sweep
// and Todd operators.

#include <map>
#include <memory>
#include <optional>

#include "chambercross/chambers.hpp"
#include "chambercross/jets.hpp"
#include "chambercross/polyalg.hpp"

namespace chambercross {

/// Res_z (P(d_x) e^{<a, x + zE>} / prod <psi, x + zE>)|_{x=0}; P on V.
MultiPoly pol(const MultiPoly& P, const IntMatrix& psi, const IntVec& E, bool recheck = false);
/// Same with 1 - e^{-<psi, x + zE>} in the denominator.
MultiPoly par(const MultiPoly& P, const IntMatrix& psi, const IntVec& E, bool recheck = false);
/// Sum over the feasible g = y + G E of the residues with character e_g.
QuasiPoly para(const QuasiPoly& Q, const IntMatrix& psi, const IntVec& E, bool recheck = false);

/// Extension of wall data (B0 coordinates) to V, constant along F.
MultiPoly extend_from_wall(const MultiPoly& p, const WallFrame& frame);
QuasiPoly extend_from_wall(const QuasiPoly& q, const WallFrame& frame);

/// Shifts g with e^{2 i pi <g, phi>} = 1 on a basis of Phi, restricted to
/// those whose fixed vectors span V. Zero first.
std::vector<Shift> compute_G(const VectorConfig& config);
/// Coefficients c_0..c_n of z / (1 - zeta^{-1} e^{-z}).
std::vector<Cyclotomic> todd_coefficients(const Cyclotomic& zeta, unsigned n);
/// sum_{g in G} e_g(a) prod_phi Todd(e_g(phi), d(phi)) v.
QuasiPoly todd_apply(const IntMatrix& vectors, const std::vector<Shift>& G, const MultiPoly& v);

struct JumpContext {
    std::size_t wall = 0;
    /// Oriented normal: positive_chamber lies on <E, .> > 0.
    IntVec E;
    IntMatrix psi;
    WallFrame frame;
    std::size_t positive_chamber = 0, negative_chamber = 0;
    /// Chamber of the wall configuration containing the shared facet;
    /// nothing when the wall is the origin of a rank-1 space.
    std::optional<std::size_t> wall_chamber;
    MultiPoly v12;
    QuasiPoly k12;
};

/// v(c1) - v(c2) = Pol(v12, Psi, E).
MultiPoly jump_volume(const JumpContext& ctx, bool recheck = false);
/// k(c1) - k(c2) = Para(k12, Psi, E).
QuasiPoly jump_partition(const JumpContext& ctx, bool recheck = false);

struct TreeEdge {
    std::size_t parent;
    std::size_t wall;
};

struct ChamberSolution {
    ChamberComplex complex;
    /// Indexed by chamber id; entry 0 is the exterior (zero).
    std::vector<MultiPoly> volume;
    std::vector<QuasiPoly> partition;
    std::vector<std::optional<TreeEdge>> tree;
    /// Non-tree adjacencies checked against their jump formulas.
    std::size_t verified_jumps = 0;
};

struct SolverOptions {
    bool recheck_truncation = false;
    /// Verify non-tree jumps in wall recursions too, not only at the top.
    bool check_all_jumps = false;
    /// Verify non-tree jumps of the requested configuration.
    bool check_top_level = true;
};

class Solver {
public:
    explicit Solver(SolverOptions options = {}) : options_(options) {}

    /// Full sweep; memoized by the configuration's vectors.
    std::shared_ptr<const ChamberSolution> solve(const VectorConfig& config);

    /// Jump data for crossing from `from` into `to` across `wall` (ids of the
    /// complex in `solution`).
    JumpContext jump_context(const ChamberSolution& solution, std::size_t from, std::size_t to,
                             std::size_t wall, const RatVec& facet_witness, int depth);

    const SolverOptions& options() const { return options_; }
    std::size_t cached_configs() const { return memo_.size(); }

private:
    std::shared_ptr<const ChamberSolution> solve_at(const VectorConfig& config, int depth);
    void wall_data(JumpContext& ctx, const VectorConfig& config, const RatVec& facet_witness,
                   int depth);

    SolverOptions options_;
    std::map<IntMatrix, std::shared_ptr<const ChamberSolution>> memo_;
};

} // namespace chambercross
