#pragma once

// Vector configurations, walls, the chamber complex and wall frames.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "chambercross/exactnum.hpp"

namespace chambercross {

struct VectorConfig {
    std::string name;
    std::size_t rank = 0;
    /// Vectors in working coordinates (a basis of Z Phi).
    IntMatrix vectors;
    /// Rows: the working basis in input coordinates. Empty when the input
    /// coordinates are kept.
    IntMatrix basis;
    /// [Z^n : Z Phi] for full-rank input, 1 when coordinates are kept.
    long index = 1;
    /// <phi, x0> >= 1 for every phi.
    IntVec positive;

    std::size_t size() const { return vectors.size(); }
    bool rewritten() const { return !basis.empty(); }
    /// Working coordinates of an input-coordinate point (nothing when it is
    /// off the span).
    std::optional<RatVec> to_working(const RatVec& input_point) const;
};

/// Rejects empty input, zero vectors, ragged rows and non-pointed input.
/// Rewrites coordinates to a basis of Z Phi when Z Phi is not Z^n.
VectorConfig validate_config(const IntMatrix& rows, std::string name = {});

/// The rank-0 configuration with no vectors.
VectorConfig empty_config(std::string name = {});

struct Wall {
    IntVec normal;
    std::vector<std::size_t> on_wall, positive, negative;

    /// All of Phi weakly on one side: a facet hyperplane of C(Phi).
    bool is_facet() const { return positive.empty() || negative.empty(); }
};

std::vector<Wall> enumerate_walls(const VectorConfig& config);

struct Adjacency {
    std::size_t wall;
    std::size_t neighbor;
    /// Relative-interior point of the shared facet.
    RatVec facet_witness;
};

struct Chamber {
    std::size_t id = 0;
    bool exterior = false;
    /// Sign vectors (over all walls) of the cells merged into this chamber.
    std::vector<std::vector<int>> cells;
    RatVec witness;
    IntMatrix rays;
    std::vector<Adjacency> adjacent;
};

struct ChamberComplex {
    VectorConfig config;
    std::vector<Wall> walls;
    /// chambers[0] is the exterior.
    std::vector<Chamber> chambers;
    std::map<std::vector<int>, std::size_t> cell_chamber;

    std::vector<int> signs(const RatVec& a) const;
    /// Chamber id (0 for the exterior), or nothing on a wall.
    std::optional<std::size_t> locate(const RatVec& a) const;
    /// Interior chambers whose closure contains a, ascending.
    std::vector<std::size_t> closure_chambers(const RatVec& a) const;
    bool inside_cone(const RatVec& a) const;
    std::size_t interior_count() const { return chambers.size() - 1; }
};

ChamberComplex chamber_complex(const VectorConfig& config);

/// w in C(vectors) with vectors given as rows.
bool in_cone(const IntMatrix& vectors, const RatVec& w);

/// Integral splitting Z^r = Gamma0 + Z F adapted to a wall.
struct WallFrame {
    IntVec normal;
    /// Rows b_1..b_{r-1}: a basis of Gamma0 = Z^r cap W.
    IntMatrix B0;
    IntVec F;
    /// Phi0 in B0 coordinates.
    IntMatrix on_wall;
    /// Rows: basis of Z Phi0 in B0 coordinates (Hermite form).
    IntMatrix sublattice;
    long index = 1;
    /// Characters of Gamma0 / Z Phi0 as shifts in B0 coordinates.
    std::vector<RatVec> characters;
    /// (w, t) = coordinates * a for a = sum w_i b_i + t F. The first r-1
    /// rows give B0 coordinates; the last row is the normal.
    RatMatrix coordinates;

    /// B0 coordinates of a point of W.
    RatVec wall_coordinates(const RatVec& a) const;
};

WallFrame wall_frame(const VectorConfig& config, const Wall& wall);
/// B0, F and coordinates only; the wall vectors are left empty.
WallFrame normal_frame(const IntVec& normal);

struct UnimodularInfo {
    bool unimodular;
    unsigned long period;
};
UnimodularInfo unimodular_and_period(const VectorConfig& config);

} // namespace chambercross
