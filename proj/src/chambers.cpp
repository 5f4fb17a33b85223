#include "chambercross/chambers.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <set>

#include "chambercross/lattice.hpp"

namespace chambercross {

namespace {

int sign(const Rational& q)
{
    return sgn(q);
}

// Solves c . H = p for the rows H of an echelon basis.
std::optional<RatVec> solve_in_basis(const IntMatrix& H, const RatVec& p)
{
    std::size_t k = H.size();
    RatVec c(k, Rational(0));
    RatVec rest = p;
    for (std::size_t i = 0; i < k; ++i) {
        std::size_t piv = 0;
        while (piv < H[i].size() && H[i][piv] == 0)
            ++piv;
        c[i] = rest[piv] / H[i][piv];
        for (std::size_t j = 0; j < rest.size(); ++j)
            rest[j] -= c[i] * H[i][j];
    }
    for (const auto& v : rest)
        if (v != 0)
            return std::nullopt;
    return c;
}

// gcd of the k x k minors of a k x n matrix.
long minor_content(const IntMatrix& H)
{
    std::size_t k = H.size(), n = H.empty() ? 0 : H[0].size();
    long g = 0;
    std::vector<std::size_t> cols(k);
    std::iota(cols.begin(), cols.end(), 0);
    while (true) {
        IntMatrix sq(k, IntVec(k));
        for (std::size_t i = 0; i < k; ++i)
            for (std::size_t j = 0; j < k; ++j)
                sq[i][j] = H[i][cols[j]];
        g = std::gcd(g, to_long(det(sq)));
        std::size_t i = k;
        while (i > 0 && cols[i - 1] == n - k + i - 1)
            --i;
        if (i == 0)
            break;
        ++cols[i - 1];
        for (std::size_t j = i; j < k; ++j)
            cols[j] = cols[j - 1] + 1;
    }
    return std::abs(g);
}

template <class F>
void for_each_subset(std::size_t n, std::size_t k, F&& f)
{
    if (k > n)
        return;
    std::vector<std::size_t> idx(k);
    std::iota(idx.begin(), idx.end(), 0);
    while (true) {
        f(idx);
        std::size_t i = k;
        while (i > 0 && idx[i - 1] == n - k + i - 1)
            --i;
        if (i == 0)
            return;
        ++idx[i - 1];
        for (std::size_t j = i; j < k; ++j)
            idx[j] = idx[j - 1] + 1;
    }
}

IntVec canonical_normal(IntVec n)
{
    long g = content(n);
    for (auto& v : n)
        v /= g;
    auto first = std::find_if(n.begin(), n.end(), [](long v) { return v != 0; });
    if (first != n.end() && *first < 0)
        for (auto& v : n)
            v = -v;
    return n;
}

struct UnionFind {
    std::vector<std::size_t> parent;
    std::size_t find(std::size_t x)
    {
        while (parent[x] != x)
            x = parent[x] = parent[parent[x]];
        return x;
    }
    void unite(std::size_t a, std::size_t b)
    {
        a = find(a);
        b = find(b);
        if (a != b)
            parent[std::max(a, b)] = std::min(a, b);
    }
};

} // namespace

std::optional<RatVec> VectorConfig::to_working(const RatVec& p) const
{
    if (!rewritten()) {
        if (p.size() != rank)
            return std::nullopt;
        return p;
    }
    if (p.size() != basis[0].size())
        return std::nullopt;
    return solve_in_basis(basis, p);
}

VectorConfig validate_config(const IntMatrix& rows, std::string name)
{
    if (rows.empty())
        throw ValidationError("configuration has no vectors");
    std::size_t n = rows[0].size();
    if (n == 0)
        throw ValidationError("vectors must have at least one coordinate");
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != n)
            throw ValidationError("vector " + std::to_string(i + 1) + " has " +
                                  std::to_string(rows[i].size()) + " coordinates, expected " +
                                  std::to_string(n));
        if (std::all_of(rows[i].begin(), rows[i].end(), [](long v) { return v == 0; }))
            throw ValidationError("vector " + std::to_string(i + 1) + " is zero");
    }

    VectorConfig cfg;
    cfg.name = std::move(name);
    IntMatrix H = hermite_basis(rows);
    cfg.rank = H.size();
    cfg.index = minor_content(H);
    if (cfg.rank == n && cfg.index == 1) {
        cfg.vectors = rows;
    } else {
        cfg.basis = H;
        for (const auto& row : rows) {
            auto c = solve_in_basis(H, to_rational(row));
            if (!c)
                throw InternalError("vector outside the span of its own lattice basis");
            IntVec v;
            for (const auto& x : *c)
                v.push_back(to_long(x));
            cfg.vectors.push_back(v);
        }
    }

    std::vector<LinearConstraint> ineqs;
    for (const auto& v : cfg.vectors)
        ineqs.push_back({to_rational(v), 1});
    auto x = fm_feasible(cfg.rank, ineqs);
    if (!x)
        throw ValidationError("configuration is not pointed: no x with <phi, x> > 0 for all phi");
    Integer den = 1;
    for (const auto& c : *x)
        mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.get_den_mpz_t());
    for (const auto& c : *x)
        cfg.positive.push_back(to_long(Rational(c * den)));
    return cfg;
}

VectorConfig empty_config(std::string name)
{
    VectorConfig cfg;
    cfg.name = std::move(name);
    return cfg;
}

std::vector<Wall> enumerate_walls(const VectorConfig& config)
{
    std::size_t r = config.rank;
    std::vector<Wall> walls;
    if (r == 0)
        return walls;
    std::set<IntVec> seen;
    auto add = [&](const IntVec& normal) {
        if (!seen.insert(normal).second)
            return;
        Wall w;
        w.normal = normal;
        for (std::size_t i = 0; i < config.size(); ++i) {
            long d = dot(normal, config.vectors[i]);
            (d == 0 ? w.on_wall : d > 0 ? w.positive : w.negative).push_back(i);
        }
        walls.push_back(std::move(w));
    };
    if (r == 1) {
        add(IntVec{1});
        return walls;
    }
    for_each_subset(config.size(), r - 1, [&](const std::vector<std::size_t>& idx) {
        IntMatrix rows;
        for (auto i : idx)
            rows.push_back(config.vectors[i]);
        IntVec n = cofactor_normal(rows, r);
        if (std::all_of(n.begin(), n.end(), [](long v) { return v == 0; }))
            return;
        add(canonical_normal(n));
    });
    return walls;
}

bool in_cone(const IntMatrix& vectors, const RatVec& w)
{
    if (vectors.empty())
        return std::all_of(w.begin(), w.end(), [](const Rational& v) { return v == 0; });
    std::size_t n = vectors.size(), r = w.size();
    std::vector<LinearConstraint> eqs, ineqs;
    for (std::size_t i = 0; i < r; ++i) {
        RatVec c(n);
        for (std::size_t k = 0; k < n; ++k)
            c[k] = vectors[k][i];
        eqs.push_back({c, w[i]});
    }
    for (std::size_t k = 0; k < n; ++k) {
        RatVec c(n, Rational(0));
        c[k] = 1;
        ineqs.push_back({c, 0});
    }
    return fm_feasible(n, ineqs, eqs).has_value();
}

std::vector<int> ChamberComplex::signs(const RatVec& a) const
{
    if (a.size() != config.rank)
        throw ValidationError("point has " + std::to_string(a.size()) + " coordinates, rank is " +
                              std::to_string(config.rank));
    std::vector<int> s;
    s.reserve(walls.size());
    for (const auto& w : walls)
        s.push_back(sign(dot(a, w.normal)));
    return s;
}

bool ChamberComplex::inside_cone(const RatVec& a) const
{
    for (const auto& w : walls) {
        if (!w.is_facet())
            continue;
        int side = w.positive.empty() ? -1 : 1;
        if (sign(dot(a, w.normal)) * side < 0)
            return false;
    }
    return true;
}

std::optional<std::size_t> ChamberComplex::locate(const RatVec& a) const
{
    auto s = signs(a);
    if (std::find(s.begin(), s.end(), 0) != s.end())
        return std::nullopt;
    if (!inside_cone(a))
        return 0;
    auto it = cell_chamber.find(s);
    if (it == cell_chamber.end())
        throw InternalError("regular point inside the cone matches no chamber");
    return it->second;
}

std::vector<std::size_t> ChamberComplex::closure_chambers(const RatVec& a) const
{
    auto s = signs(a);
    std::vector<std::size_t> out;
    for (const auto& c : chambers) {
        if (c.exterior)
            continue;
        for (const auto& cell : c.cells) {
            bool ok = true;
            for (std::size_t j = 0; j < s.size() && ok; ++j)
                ok = s[j] * cell[j] >= 0;
            if (ok) {
                out.push_back(c.id);
                break;
            }
        }
    }
    return out;
}

namespace {

struct Cell {
    std::vector<int> signs;
    RatVec witness;
};

struct CellEdge {
    std::size_t a, b; // b == npos: exterior
    std::size_t wall;
    RatVec witness;
    bool merge;
};

constexpr std::size_t kExteriorCell = static_cast<std::size_t>(-1);

RatVec regular_start(const ChamberComplex& cx)
{
    std::size_t r = cx.config.rank;
    RatVec base(r, Rational(0));
    for (const auto& v : cx.config.vectors)
        for (std::size_t i = 0; i < r; ++i)
            base[i] += v[i];
    for (long t = 2; t < 64; ++t) {
        Rational eps = ratio(1, 2);
        for (int k = 0; k < 24; ++k, eps /= 2) {
            RatVec p = base;
            Rational tp = 1;
            for (std::size_t i = 0; i < r; ++i, tp *= t)
                p[i] += eps * tp;
            auto s = cx.signs(p);
            if (std::find(s.begin(), s.end(), 0) == s.end() && cx.inside_cone(p))
                return p;
        }
    }
    throw InternalError("no regular starting point found");
}

IntMatrix chamber_rays(const ChamberComplex& cx, const Chamber& c)
{
    std::size_t r = cx.config.rank;
    std::vector<std::size_t> bounding;
    for (const auto& adj : c.adjacent)
        if (std::find(bounding.begin(), bounding.end(), adj.wall) == bounding.end())
            bounding.push_back(adj.wall);
    std::sort(bounding.begin(), bounding.end());
    std::vector<int> side;
    for (auto j : bounding)
        side.push_back(sign(dot(c.witness, cx.walls[j].normal)));

    std::set<IntVec> rays;
    auto admissible = [&](const IntVec& d) {
        for (std::size_t k = 0; k < bounding.size(); ++k)
            if (side[k] * dot(d, cx.walls[bounding[k]].normal) < 0)
                return false;
        return true;
    };
    if (r == 1) {
        IntVec d{sign(c.witness[0])};
        rays.insert(d);
    } else {
        for_each_subset(bounding.size(), r - 1, [&](const std::vector<std::size_t>& idx) {
            IntMatrix rows;
            for (auto k : idx)
                rows.push_back(cx.walls[bounding[k]].normal);
            IntVec d = cofactor_normal(rows, r);
            if (std::all_of(d.begin(), d.end(), [](long v) { return v == 0; }))
                return;
            long g = content(d);
            for (auto& v : d)
                v /= g;
            if (admissible(d))
                rays.insert(d);
            for (auto& v : d)
                v = -v;
            if (admissible(d))
                rays.insert(d);
        });
    }
    return IntMatrix(rays.begin(), rays.end());
}

} // namespace

ChamberComplex chamber_complex(const VectorConfig& config)
{
    ChamberComplex cx;
    cx.config = config;
    cx.walls = enumerate_walls(config);
    std::size_t r = config.rank;
    std::size_t nw = cx.walls.size();

    Chamber ext;
    ext.id = 0;
    ext.exterior = true;
    cx.chambers.push_back(ext);
    if (r == 0)
        return cx;

    std::vector<Cell> cells;
    std::map<std::vector<int>, std::size_t> index;
    std::vector<CellEdge> edges;
    std::set<std::pair<std::size_t, std::size_t>> known; // (cell, wall) already crossed

    RatVec start = regular_start(cx);
    cells.push_back({cx.signs(start), start});
    index.emplace(cells[0].signs, 0);

    std::vector<IntMatrix> on_wall(nw);
    for (std::size_t i = 0; i < nw; ++i)
        for (auto k : cx.walls[i].on_wall)
            on_wall[i].push_back(config.vectors[k]);

    for (std::size_t ci = 0; ci < cells.size(); ++ci) {
        for (std::size_t i = 0; i < nw; ++i) {
            if (known.count({ci, i}))
                continue;
            const auto s = cells[ci].signs;
            std::vector<LinearConstraint> ineqs, eqs;
            eqs.push_back({to_rational(cx.walls[i].normal), 0});
            for (std::size_t j = 0; j < nw; ++j) {
                if (j == i)
                    continue;
                RatVec c = to_rational(cx.walls[j].normal);
                for (auto& v : c)
                    v *= s[j];
                ineqs.push_back({c, 1});
            }
            auto w = fm_feasible(r, ineqs, eqs);
            if (!w)
                continue;
            if (cx.walls[i].is_facet()) {
                edges.push_back({ci, kExteriorCell, i, *w, false});
                continue;
            }
            auto ns = s;
            ns[i] = -s[i];
            std::size_t nb;
            auto it = index.find(ns);
            if (it == index.end()) {
                RatVec dir = to_rational(cx.walls[i].normal);
                Rational eps = ratio(1, 2);
                RatVec p;
                for (int k = 0;; ++k, eps /= 2) {
                    if (k > 60)
                        throw InternalError("no witness for a neighbouring cell");
                    p = *w;
                    for (std::size_t j = 0; j < r; ++j)
                        p[j] += eps * ns[i] * dir[j];
                    if (cx.signs(p) == ns)
                        break;
                }
                nb = cells.size();
                cells.push_back({ns, p});
                index.emplace(ns, nb);
            } else {
                nb = it->second;
            }
            known.insert({nb, i});
            bool merge = !in_cone(on_wall[i], *w);
            edges.push_back({ci, nb, i, *w, merge});
        }
    }

    UnionFind uf{std::vector<std::size_t>(cells.size())};
    std::iota(uf.parent.begin(), uf.parent.end(), 0);
    for (const auto& e : edges)
        if (e.merge)
            uf.unite(e.a, e.b);

    std::map<std::size_t, std::size_t> root_to_id;
    for (std::size_t ci = 0; ci < cells.size(); ++ci) {
        std::size_t root = uf.find(ci);
        auto [it, inserted] = root_to_id.emplace(root, cx.chambers.size());
        if (inserted) {
            Chamber c;
            c.id = cx.chambers.size();
            c.witness = cells[ci].witness;
            cx.chambers.push_back(c);
        }
        cx.chambers[it->second].cells.push_back(cells[ci].signs);
        cx.cell_chamber.emplace(cells[ci].signs, it->second);
    }

    auto link = [&](std::size_t a, std::size_t b, std::size_t wall, const RatVec& w) {
        auto& adj = cx.chambers[a].adjacent;
        for (const auto& x : adj)
            if (x.neighbor == b && x.wall == wall)
                return;
        adj.push_back({wall, b, w});
    };
    for (const auto& e : edges) {
        if (e.merge)
            continue;
        std::size_t a = cx.cell_chamber.at(cells[e.a].signs);
        std::size_t b = e.b == kExteriorCell ? 0 : cx.cell_chamber.at(cells[e.b].signs);
        if (a == b)
            throw InternalError("chamber adjacent to itself across a wall");
        link(a, b, e.wall, e.witness);
        link(b, a, e.wall, e.witness);
    }
    for (auto& c : cx.chambers)
        if (!c.exterior)
            c.rays = chamber_rays(cx, c);
    return cx;
}

RatVec WallFrame::wall_coordinates(const RatVec& a) const
{
    RatVec w;
    for (std::size_t i = 0; i + 1 < coordinates.size(); ++i)
        w.push_back(dot(coordinates[i], a));
    return w;
}

WallFrame normal_frame(const IntVec& normal)
{
    std::size_t r = normal.size();
    WallFrame fr;
    fr.normal = normal;
    IntMatrix U = unimodular_completion(normal);
    IntMatrix cols = transpose(U);
    fr.F = cols[0];
    IntMatrix kernel(cols.begin() + 1, cols.end());
    fr.B0 = r > 1 ? hermite_basis(kernel) : IntMatrix{};
    IntMatrix A = fr.B0;
    A.push_back(fr.F);
    fr.coordinates = inverse(transpose(to_rational(A)));
    return fr;
}

WallFrame wall_frame(const VectorConfig& config, const Wall& wall)
{
    std::size_t r = config.rank;
    WallFrame fr = normal_frame(wall.normal);
    for (auto k : wall.on_wall) {
        RatVec w = fr.wall_coordinates(to_rational(config.vectors[k]));
        IntVec v;
        for (const auto& x : w)
            v.push_back(to_long(x));
        fr.on_wall.push_back(v);
    }
    if (r > 1) {
        fr.sublattice = hermite_basis(fr.on_wall);
        if (fr.sublattice.size() != r - 1)
            throw InternalError("wall vectors do not span the wall");
        fr.index = std::abs(to_long(det(fr.sublattice)));
        fr.characters = dual_quotient(fr.sublattice);
    } else {
        fr.characters = {RatVec{}};
    }
    return fr;
}

UnimodularInfo unimodular_and_period(const VectorConfig& config)
{
    UnimodularInfo info{true, 1};
    for_each_subset(config.size(), config.rank, [&](const std::vector<std::size_t>& idx) {
        IntMatrix rows;
        for (auto i : idx)
            rows.push_back(config.vectors[i]);
        long d = std::abs(to_long(det(rows)));
        if (d == 0)
            return;
        if (d != 1)
            info.unimodular = false;
        info.period = lcm(info.period, static_cast<unsigned long>(d));
    });
    return info;
}

} // namespace chambercross
