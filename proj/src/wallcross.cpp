#include "chambercross/wallcross.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <set>

#include "chambercross/lattice.hpp"

namespace chambercross {

namespace {

std::vector<ResidueFactor> factors(const IntMatrix& psi, bool linear)
{
    std::vector<ResidueFactor> out;
    out.reserve(psi.size());
    for (const auto& v : psi)
        out.push_back({to_rational(v), linear, 1});
    return out;
}

RatMatrix wall_to_space(const WallFrame& frame)
{
    return RatMatrix(frame.coordinates.begin(), frame.coordinates.end() - 1);
}

} // namespace

MultiPoly pol(const MultiPoly& P, const IntMatrix& psi, const IntVec& E, bool recheck)
{
    return residue(P, factors(psi, true), to_rational(E), recheck);
}

MultiPoly par(const MultiPoly& P, const IntMatrix& psi, const IntVec& E, bool recheck)
{
    return residue(P, factors(psi, false), to_rational(E), recheck);
}

namespace {

// G in [0, 1) with <y + G E, psi> integral for some psi.
std::set<Rational> feasible_heights(const Shift& y, const IntMatrix& psi, const IntVec& E)
{
    std::set<Rational> out;
    for (const auto& v : psi) {
        long d = dot(v, E);
        if (d == 0)
            throw MathError("vector lies in the wall: <psi, E> = 0");
        Rational s = dot(y, v);
        for (long k = 0; k < std::abs(d); ++k)
            out.insert(frac((Rational(k) - s) / d));
    }
    return out;
}

} // namespace

QuasiPoly para(const QuasiPoly& Q, const IntMatrix& psi, const IntVec& E, bool recheck)
{
    std::size_t r = E.size();
    RatVec e = to_rational(E);
    QuasiPoly out(r);
    // The residue at sigma_k(g) is sigma_k of the residue at g, so one
    // residue is computed per Galois orbit of pairs (y, G); a conjugate is
    // used only when Q carries the conjugate term at k y.
    std::set<std::pair<Shift, Rational>> done;
    for (const auto& [y, Qy] : Q.terms()) {
        for (const auto& G : feasible_heights(y, psi, E)) {
            if (!done.insert({y, G}).second)
                continue;
            RatVec g = y;
            for (std::size_t i = 0; i < r; ++i)
                g[i] += G * e[i];
            std::vector<ResidueFactor> fs;
            for (const auto& v : psi)
                fs.push_back({to_rational(v), false, Cyclotomic::exp_2pi_i(-dot(g, v))});
            MultiPoly res = residue(Qy, fs, e, recheck);
            out.add_term(reduce_shift(g), res);

            long L = static_cast<long>(lcm(shift_order(g), Qy.field_order()));
            for (long k = 2; k < L; ++k) {
                if (std::gcd(k, L) != 1)
                    continue;
                Shift ky = y;
                for (auto& c : ky)
                    c *= k;
                ky = reduce_shift(ky);
                Rational kG = frac(G * k);
                if (done.count({ky, kG}))
                    continue;
                auto it = Q.terms().find(ky);
                if (it == Q.terms().end() || !feasible_heights(ky, psi, E).count(kG) ||
                    it->second != Qy.galois(k))
                    continue;
                done.insert({ky, kG});
                RatVec kg = g;
                for (auto& c : kg)
                    c *= k;
                out.add_term(reduce_shift(kg), res.galois(k));
            }
        }
    }
    return out;
}

MultiPoly extend_from_wall(const MultiPoly& p, const WallFrame& frame)
{
    return p.compose(wall_to_space(frame), frame.normal.size());
}

QuasiPoly extend_from_wall(const QuasiPoly& q, const WallFrame& frame)
{
    return q.compose(wall_to_space(frame), frame.normal.size());
}

std::vector<Shift> compute_G(const VectorConfig& config)
{
    std::size_t r = config.rank, n = config.size();
    std::set<Shift> seen;
    std::vector<Shift> out{Shift(r, Rational(0))};
    seen.insert(out[0]);
    if (r == 0 || n < r)
        return out;
    std::vector<std::size_t> idx(r);
    std::iota(idx.begin(), idx.end(), 0);
    while (true) {
        IntMatrix sigma;
        for (auto i : idx)
            sigma.push_back(config.vectors[i]);
        if (det(sigma) != 0) {
            for (const auto& g : dual_quotient(sigma)) {
                if (seen.count(g))
                    continue;
                IntMatrix fixed;
                for (const auto& v : config.vectors)
                    if (dot(g, v).get_den() == 1)
                        fixed.push_back(v);
                if (rank(fixed) == r) {
                    seen.insert(g);
                    out.push_back(g);
                }
            }
        }
        std::size_t i = r;
        while (i > 0 && idx[i - 1] == n - r + i - 1)
            --i;
        if (i == 0)
            break;
        ++idx[i - 1];
        for (std::size_t j = i; j < r; ++j)
            idx[j] = idx[j - 1] + 1;
    }
    std::sort(out.begin() + 1, out.end());
    return out;
}

std::vector<Cyclotomic> todd_coefficients(const Cyclotomic& zeta, unsigned n)
{
    std::vector<Cyclotomic> c;
    if (zeta.is_one()) {
        for (const auto& t : todd_series(n))
            c.emplace_back(t);
        return c;
    }
    // z / (1 - zeta^{-1} e^{-z}) = z * sum b_k z^k
    auto b = n > 0 ? geometric_series(zeta.inverse(), n - 1) : std::vector<Cyclotomic>{};
    c.emplace_back(0);
    for (const auto& x : b)
        c.push_back(x);
    return c;
}

QuasiPoly todd_apply(const IntMatrix& vectors, const std::vector<Shift>& G, const MultiPoly& v)
{
    std::size_t r = v.rank();
    QuasiPoly out(r);
    if (v.is_zero())
        return out;
    for (const auto& g : G) {
        MultiPoly p = v;
        for (const auto& phi : vectors) {
            if (p.is_zero())
                break;
            int deg = p.degree();
            auto c = todd_coefficients(Cyclotomic::exp_2pi_i(dot(g, phi)), static_cast<unsigned>(deg));
            RatVec dir = to_rational(phi);
            MultiPoly acc(r), term = p;
            for (int k = 0; k <= deg && !term.is_zero(); ++k) {
                acc += term * c[k];
                term = directional_derivative(dir, term);
            }
            p = acc;
        }
        out.add_term(g, p);
    }
    return out;
}

MultiPoly jump_volume(const JumpContext& ctx, bool recheck)
{
    return pol(extend_from_wall(ctx.v12, ctx.frame), ctx.psi, ctx.E, recheck);
}

QuasiPoly jump_partition(const JumpContext& ctx, bool recheck)
{
    return para(extend_from_wall(ctx.k12, ctx.frame), ctx.psi, ctx.E, recheck);
}

// ---------------------------------------------------------------- sweep

std::shared_ptr<const ChamberSolution> Solver::solve(const VectorConfig& config)
{
    return solve_at(config, 0);
}

JumpContext Solver::jump_context(const ChamberSolution& sol, std::size_t from, std::size_t to,
                                 std::size_t wall, const RatVec& facet_witness, int depth)
{
    const auto& cx = sol.complex;
    const auto& config = cx.config;
    JumpContext ctx;
    ctx.wall = wall;
    std::size_t inner = to != 0 ? to : from;
    std::size_t other = inner == to ? from : to;
    if (inner == 0)
        throw InternalError("jump between two exterior chambers");
    ctx.E = cx.walls[wall].normal;
    if (dot(cx.chambers[inner].witness, ctx.E) < 0)
        for (auto& x : ctx.E)
            x = -x;
    ctx.positive_chamber = inner;
    ctx.negative_chamber = other;
    bool has_positive = false;
    for (const auto& v : config.vectors) {
        long d = dot(v, ctx.E);
        if (d != 0)
            ctx.psi.push_back(v);
        if (d > 0)
            has_positive = true;
    }
    if (!has_positive) {
        for (auto& x : ctx.E)
            x = -x;
        std::swap(ctx.positive_chamber, ctx.negative_chamber);
    }
    ctx.frame = wall_frame(config, cx.walls[wall]);
    wall_data(ctx, config, facet_witness, depth);
    return ctx;
}

void Solver::wall_data(JumpContext& ctx, const VectorConfig& config, const RatVec& facet_witness,
                       int depth)
{
    std::size_t r = config.rank;
    if (r == 1) {
        ctx.v12 = MultiPoly(0, 1);
        ctx.k12 = QuasiPoly(MultiPoly(0, 1));
        return;
    }
    const auto& fr = ctx.frame;
    VectorConfig sub = validate_config(fr.on_wall);
    auto subsol = solve_at(sub, depth + 1);
    auto u = sub.to_working(fr.wall_coordinates(facet_witness));
    if (!u)
        throw InternalError("facet witness outside the span of the wall vectors");
    auto id = subsol->complex.locate(*u);
    if (!id)
        throw InternalError("facet witness lies on a wall of the wall configuration");
    ctx.wall_chamber = *id;
    MultiPoly v = subsol->volume[*id];
    QuasiPoly k = subsol->partition[*id];
    if (sub.rewritten()) {
        // u = S^{-T} w for w in B0 coordinates
        RatMatrix map = transpose(inverse(to_rational(sub.basis)));
        Rational inv_m = ratio(1, sub.index);
        v = v.compose(map, r - 1) * Cyclotomic(inv_m);
        QuasiPoly indicator(r - 1);
        for (const auto& chi : fr.characters)
            indicator += QuasiPoly::character(chi);
        k = k.compose(map, r - 1) * indicator * Cyclotomic(inv_m);
    }
    ctx.v12 = v;
    ctx.k12 = k;
}

std::shared_ptr<const ChamberSolution> Solver::solve_at(const VectorConfig& config, int depth)
{
    auto hit = memo_.find(config.vectors);
    if (hit != memo_.end())
        return hit->second;

    auto sol = std::make_shared<ChamberSolution>();
    sol->complex = chamber_complex(config);
    const auto& cx = sol->complex;
    std::size_t n = cx.chambers.size(), r = config.rank;
    sol->volume.assign(n, MultiPoly(r));
    sol->partition.assign(n, QuasiPoly(r));
    sol->tree.assign(n, std::nullopt);
    bool recheck = options_.recheck_truncation;

    std::vector<bool> seen(n, false);
    seen[0] = true;
    std::deque<std::size_t> queue{0};
    while (!queue.empty()) {
        std::size_t a = queue.front();
        queue.pop_front();
        for (const auto& adj : cx.chambers[a].adjacent) {
            std::size_t b = adj.neighbor;
            if (seen[b])
                continue;
            seen[b] = true;
            JumpContext ctx = jump_context(*sol, a, b, adj.wall, adj.facet_witness, depth);
            MultiPoly jv = jump_volume(ctx, recheck);
            QuasiPoly jk = jump_partition(ctx, recheck);
            if (ctx.positive_chamber == b) {
                sol->volume[b] = sol->volume[a] + jv;
                sol->partition[b] = sol->partition[a] + jk;
            } else {
                sol->volume[b] = sol->volume[a] - jv;
                sol->partition[b] = sol->partition[a] - jk;
            }
            sol->tree[b] = TreeEdge{a, adj.wall};
            queue.push_back(b);
        }
    }
    for (std::size_t c = 1; c < n; ++c)
        if (!seen[c])
            throw InternalError("chamber " + std::to_string(c) + " is unreachable from the exterior");

    bool verify = options_.check_all_jumps || (depth == 0 && options_.check_top_level);
    if (verify) {
        for (std::size_t a = 0; a < n; ++a) {
            for (const auto& adj : cx.chambers[a].adjacent) {
                std::size_t b = adj.neighbor;
                if (b < a)
                    continue;
                bool tree_edge = (sol->tree[b] && sol->tree[b]->parent == a && sol->tree[b]->wall == adj.wall) ||
                                 (sol->tree[a] && sol->tree[a]->parent == b && sol->tree[a]->wall == adj.wall);
                if (tree_edge)
                    continue;
                JumpContext ctx = jump_context(*sol, a, b, adj.wall, adj.facet_witness, depth);
                std::size_t p = ctx.positive_chamber, q = ctx.negative_chamber;
                if (sol->volume[p] - sol->volume[q] != jump_volume(ctx, recheck))
                    throw InternalError("volume jump mismatch between chambers " + std::to_string(a) +
                                        " and " + std::to_string(b));
                if (sol->partition[p] - sol->partition[q] != jump_partition(ctx, recheck))
                    throw InternalError("partition jump mismatch between chambers " +
                                        std::to_string(a) + " and " + std::to_string(b));
                ++sol->verified_jumps;
            }
        }
    }
    memo_.emplace(config.vectors, sol);
    return sol;
}

} // namespace chambercross
