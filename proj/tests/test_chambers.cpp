#include <doctest.h>

#include <algorithm>

#include "chambercross/chambers.hpp"
#include "chambercross/lattice.hpp"

using namespace chambercross;

namespace {

const IntMatrix kB2{{1, 0}, {0, 1}, {1, 1}, {1, -1}};
const IntMatrix kA2{{1, -1}, {0, 1}, {1, 0}};
const IntMatrix kA3{{1, -1, 0}, {1, 0, -1}, {1, 0, 0}, {0, 1, -1}, {0, 1, 0}, {0, 0, 1}};

RatVec rv(std::initializer_list<long> v)
{
    return to_rational(IntVec(v));
}

} // namespace

TEST_CASE("lattice basics")
{
    CHECK(det(IntMatrix{{1, 1}, {1, -1}}) == -2);
    CHECK(rank(IntMatrix{{1, 2}, {2, 4}}) == 1);
    CHECK(hermite_basis(IntMatrix{{2, 0}, {0, 2}, {2, 2}}) == IntMatrix{{2, 0}, {0, 2}});
    CHECK(hermite_basis(IntMatrix{{1, 1}, {1, -1}}) == IntMatrix{{1, 1}, {0, 2}});
    auto sf = smith_form(IntMatrix{{2, 4}, {6, 8}});
    CHECK(sf.diagonal == IntVec{2, 4});
    auto q = dual_quotient(IntMatrix{{1, 1}, {0, 2}});
    REQUIRE(q.size() == 2);
    CHECK(q[1] == RatVec{ratio(1, 2), ratio(1, 2)});
    CHECK(dual_quotient(IntMatrix{{2}}).size() == 2);

    IntVec E{3, -2, 5};
    auto U = unimodular_completion(E);
    CHECK(std::abs(to_long(det(U))) == 1);
    IntMatrix cols = transpose(U);
    CHECK(dot(E, cols[0]) == 1);
    CHECK(dot(E, cols[1]) == 0);
    CHECK(dot(E, cols[2]) == 0);
}

TEST_CASE("Fourier-Motzkin")
{
    // x + y >= 1, x - y >= 1, -x >= -3
    auto w = fm_feasible(2, {{rv({1, 1}), 1}, {rv({1, -1}), 1}, {rv({-1, 0}), -3}});
    REQUIRE(w);
    CHECK((*w)[0] + (*w)[1] >= 1);
    CHECK(!fm_feasible(1, {{rv({1}), 1}, {rv({-1}), 1}}));
    CHECK(!fm_feasible(2, {{rv({1, 0}), 1}}, {{rv({1, 0}), 0}}));
    CHECK(in_cone(IntMatrix{{1, 0}, {1, 1}}, rv({2, 1})));
    CHECK(!in_cone(IntMatrix{{1, 0}, {1, 1}}, rv({0, 1})));
}

TEST_CASE("validation")
{
    auto b2 = validate_config(kB2);
    CHECK(b2.rank == 2);
    CHECK(!b2.rewritten());
    for (const auto& v : b2.vectors)
        CHECK(dot(v, b2.positive) >= 1);
    CHECK_THROWS_AS(validate_config(IntMatrix{{1, 0}, {-1, 0}}), ValidationError);
    CHECK_THROWS_AS(validate_config(IntMatrix{{1, 0}, {0, 0}}), ValidationError);
    CHECK_THROWS_AS(validate_config(IntMatrix{}), ValidationError);
    auto sub = validate_config(IntMatrix{{2, 0}, {0, 2}});
    CHECK(sub.rewritten());
    CHECK(sub.index == 4);
    CHECK(sub.vectors == IntMatrix{{1, 0}, {0, 1}});
    auto line = validate_config(IntMatrix{{1, 1, 0}, {2, 2, 0}});
    CHECK(line.rank == 1);
    CHECK(line.vectors == IntMatrix{{1}, {2}});
    CHECK(*line.to_working(rv({3, 3, 0})) == rv({3}));
}

TEST_CASE("walls")
{
    auto walls = enumerate_walls(validate_config(kB2));
    REQUIRE(walls.size() == 4);
    std::vector<IntVec> normals;
    for (const auto& w : walls)
        normals.push_back(w.normal);
    std::sort(normals.begin(), normals.end());
    CHECK(normals == std::vector<IntVec>{{0, 1}, {1, -1}, {1, 0}, {1, 1}});
    CHECK(enumerate_walls(validate_config(kA2)).size() == 3);
    auto one = enumerate_walls(validate_config(IntMatrix{{1}, {2}}));
    REQUIRE(one.size() == 1);
    CHECK(one[0].on_wall.empty());
    CHECK(one[0].positive.size() == 2);
}

TEST_CASE("chamber census")
{
    CHECK(chamber_complex(validate_config(kA2)).interior_count() == 2);
    CHECK(chamber_complex(validate_config(kB2)).interior_count() == 3);
    CHECK(chamber_complex(validate_config(kA3)).interior_count() == 7);
    CHECK(chamber_complex(validate_config(IntMatrix{{1, 0}, {0, 1}})).interior_count() == 1);
}

TEST_CASE("chamber complex invariants")
{
    for (const auto& rows : {kA2, kB2, kA3}) {
        auto cx = chamber_complex(validate_config(rows));
        for (const auto& c : cx.chambers) {
            if (c.exterior)
                continue;
            CHECK(cx.locate(c.witness) == c.id);
            CHECK(!c.rays.empty());
            for (const auto& adj : c.adjacent) {
                const auto& w = cx.walls[adj.wall];
                CHECK(dot(adj.facet_witness, w.normal) == 0);
                // the neighbour lists the same edge
                const auto& back = cx.chambers[adj.neighbor].adjacent;
                CHECK(std::any_of(back.begin(), back.end(), [&](const Adjacency& b) {
                    return b.neighbor == c.id && b.wall == adj.wall;
                }));
            }
        }
    }
}

TEST_CASE("locate")
{
    auto cx = chamber_complex(validate_config(kB2));
    auto c2 = cx.locate(rv({2, 1}));
    REQUIRE(c2);
    CHECK(*c2 != 0);
    CHECK(!cx.locate(rv({1, 1})));
    CHECK(cx.locate(rv({-1, -5})) == 0);
    auto closure = cx.closure_chambers(rv({1, 1}));
    CHECK(closure.size() == 2);
    CHECK(cx.closure_chambers(rv({0, 0})).size() == 3);
}

TEST_CASE("wall frames")
{
    auto b2 = validate_config(kB2);
    auto walls = enumerate_walls(b2);
    for (const auto& w : walls) {
        auto fr = wall_frame(b2, w);
        CHECK(dot(fr.normal, fr.F) == 1);
        for (const auto& b : fr.B0)
            CHECK(dot(fr.normal, b) == 0);
        if (w.normal == IntVec{1, -1}) {
            CHECK(fr.B0 == IntMatrix{{1, 1}});
            CHECK(fr.on_wall == IntMatrix{{1}});
            CHECK(fr.index == 1);
        }
    }
    auto cfg = validate_config(IntMatrix{{2, 0}, {0, 1}, {1, 1}});
    Wall w;
    w.normal = {0, 1};
    w.on_wall = {0};
    auto fr = wall_frame(cfg, w);
    CHECK(fr.index == 2);
    CHECK(fr.characters == std::vector<RatVec>{{Rational(0)}, {ratio(1, 2)}});
}

TEST_CASE("unimodularity")
{
    auto a3 = unimodular_and_period(validate_config(kA3));
    CHECK(a3.unimodular);
    CHECK(a3.period == 1);
    auto b2 = unimodular_and_period(validate_config(kB2));
    CHECK(!b2.unimodular);
    CHECK(b2.period == 2);
}
