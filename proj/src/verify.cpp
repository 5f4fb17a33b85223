#include "chambercross/verify.hpp"

#include <algorithm>
#include <chrono>
#include <functional>
#include <numeric>
#include <random>
#include <set>
#include <sstream>

#include "chambercross/lattice.hpp"
#include "chambercross/oracle.hpp"

namespace chambercross {

VerifyOptions VerifyOptions::with_budget(std::size_t budget)
{
    VerifyOptions o;
    budget = std::max<std::size_t>(budget, 1);
    o.points = budget;
    o.dilation_points = std::max<std::size_t>(1, budget * 2 / 5);
    o.brute_triples = 2 * budget;
    return o;
}

bool VerifyReport::passed() const
{
    return !internal_error && std::all_of(suites.begin(), suites.end(),
                                          [](const SuiteResult& s) { return s.passed(); });
}

namespace {

std::string show(const IntVec& v)
{
    std::ostringstream os;
    os << '(';
    for (std::size_t i = 0; i < v.size(); ++i)
        os << (i ? "," : "") << v[i];
    os << ')';
    return os.str();
}

IntVec add(IntVec a, const IntVec& b, long scale = 1)
{
    for (std::size_t i = 0; i < a.size(); ++i)
        a[i] += scale * b[i];
    return a;
}

/// All points of [-R, R]^r with max norm exactly R, lexicographic.
std::vector<IntVec> shell(std::size_t r, long R)
{
    std::vector<IntVec> out;
    IntVec p(r, -R);
    if (r == 0)
        return R == 0 ? std::vector<IntVec>{IntVec{}} : out;
    while (true) {
        long m = 0;
        for (auto x : p)
            m = std::max(m, std::abs(x));
        if (m == R)
            out.push_back(p);
        std::size_t i = r;
        while (i > 0 && p[i - 1] == R)
            p[--i] = -R;
        if (i == 0)
            break;
        ++p[i - 1];
    }
    return out;
}

long shell_limit(std::size_t r)
{
    switch (r) {
    case 0:
        return 0;
    case 1:
        return 200;
    case 2:
        return 60;
    case 3:
        return 24;
    case 4:
        return 10;
    default:
        return 5;
    }
}

/// Lattice points in each interior chamber's closure, nearest first, topped
/// up with ray translates when the shells run out.
std::vector<std::vector<IntVec>> closure_points_all(const ChamberComplex& cx, std::size_t count)
{
    std::size_t n = cx.chambers.size(), r = cx.config.rank;
    std::vector<std::vector<IntVec>> out(n);
    auto enough = [&] {
        for (std::size_t c = 1; c < n; ++c)
            if (out[c].size() < count)
                return false;
        return true;
    };
    for (long R = 0; R <= shell_limit(r) && !enough(); ++R) {
        for (const auto& p : shell(r, R)) {
            for (auto c : cx.closure_chambers(to_rational(p)))
                if (out[c].size() < count)
                    out[c].push_back(p);
        }
    }
    // thin chambers: translate the points found so far along the rays
    for (std::size_t c = 1; c < n; ++c) {
        auto& pts = out[c];
        std::set<IntVec> seen(pts.begin(), pts.end());
        for (std::size_t i = 0; i < pts.size() && pts.size() < count; ++i) {
            for (const auto& ray : cx.chambers[c].rays) {
                IntVec q = add(pts[i], ray, 1);
                if (pts.size() < count && seen.insert(q).second)
                    pts.push_back(q);
            }
        }
    }
    return out;
}

class Suite {
public:
    explicit Suite(std::string name) : start_(std::chrono::steady_clock::now())
    {
        result_.name = std::move(name);
    }

    void check(bool ok, const std::function<std::string()>& what)
    {
        ++result_.checks;
        if (ok)
            return;
        ++result_.failures;
        if (result_.messages.size() < 5)
            result_.messages.push_back(what());
    }

    /// Runs `body`, recording any math/internal error as a failure.
    void guard(const std::function<void()>& body, const std::string& where)
    {
        try {
            body();
        } catch (const std::exception& e) {
            check(false, [&] { return where + ": " + e.what(); });
        }
    }

    std::size_t& skipped() { return result_.skipped; }

    SuiteResult finish()
    {
        result_.seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
        return std::move(result_);
    }

private:
    SuiteResult result_;
    std::chrono::steady_clock::time_point start_;
};

struct Context {
    const VerifyOptions& opt;
    const VectorConfig& config;
    Solver& solver;
    std::shared_ptr<const ChamberSolution> sol;
    std::vector<std::vector<IntVec>> points;
    BruteCounter counter;
    std::mt19937_64 rng;

    const ChamberComplex& cx() const { return sol->complex; }
    std::size_t degree() const { return config.size() - config.rank; }

    /// Every adjacency once, as (chamber, neighbour, wall, witness).
    std::vector<std::tuple<std::size_t, std::size_t, std::size_t, RatVec>> adjacencies() const
    {
        std::vector<std::tuple<std::size_t, std::size_t, std::size_t, RatVec>> out;
        for (const auto& c : cx().chambers)
            for (const auto& adj : c.adjacent)
                if (c.id < adj.neighbor)
                    out.emplace_back(c.id, adj.neighbor, adj.wall, adj.facet_witness);
        return out;
    }

    JumpContext jump(std::size_t a, std::size_t b, std::size_t wall, const RatVec& witness)
    {
        return solver.jump_context(*sol, a, b, wall, witness, 0);
    }
};

std::string where(std::size_t a, std::size_t b)
{
    return "c" + std::to_string(a) + "|c" + std::to_string(b);
}

SuiteResult suite_complex(Context& ctx)
{
    Suite s("complex");
    const auto& cx = ctx.cx();
    if (ctx.opt.expected_chambers)
        s.check(cx.interior_count() == *ctx.opt.expected_chambers, [&] {
            return "interior chambers " + std::to_string(cx.interior_count()) + ", expected " +
                   std::to_string(*ctx.opt.expected_chambers);
        });
    s.check(cx.interior_count() >= 1, [] { return std::string("no interior chamber"); });
    s.check(ctx.sol->volume[0].is_zero() && ctx.sol->partition[0].is_zero(),
            [] { return std::string("exterior chamber carries nonzero data"); });
    unsigned long period = unimodular_and_period(ctx.config).period;
    for (std::size_t c = 1; c < cx.chambers.size(); ++c) {
        auto id = cx.locate(cx.chambers[c].witness);
        s.check(id && *id == c, [&] { return "witness of c" + std::to_string(c) + " not located"; });
        const auto& v = ctx.sol->volume[c];
        s.check(!v.is_zero() && v.is_homogeneous() && v.degree() == static_cast<int>(ctx.degree()),
                [&] { return "volume of c" + std::to_string(c) + " not homogeneous of degree d"; });
        s.check(period % ctx.sol->partition[c].period() == 0,
                [&] { return "period of k(c" + std::to_string(c) + ") does not divide M"; });
        for (const auto& ray : cx.chambers[c].rays)
            s.check(cx.inside_cone(to_rational(ray)),
                    [&] { return "ray " + show(ray) + " outside the cone"; });
    }
    return s.finish();
}

SuiteResult suite_non_tree(Context& ctx)
{
    Suite s("non_tree_jumps");
    std::size_t expected = 0;
    for (auto& [a, b, wall, w] : ctx.adjacencies()) {
        bool tree = (ctx.sol->tree[b] && ctx.sol->tree[b]->parent == a && ctx.sol->tree[b]->wall == wall) ||
                    (ctx.sol->tree[a] && ctx.sol->tree[a]->parent == b && ctx.sol->tree[a]->wall == wall);
        if (!tree)
            ++expected;
    }
    s.check(ctx.sol->verified_jumps == expected, [&] {
        return "verified " + std::to_string(ctx.sol->verified_jumps) + " of " +
               std::to_string(expected) + " non-tree adjacencies";
    });
    // re-check every adjacency, tree edges included
    for (auto& [a, b, wall, w] : ctx.adjacencies()) {
        s.guard(
            [&, a = a, b = b, wall = wall, w = w] {
                auto j = ctx.jump(a, b, wall, w);
                std::size_t p = j.positive_chamber, q = j.negative_chamber;
                s.check(ctx.sol->volume[p] - ctx.sol->volume[q] == jump_volume(j),
                        [&] { return "volume jump " + where(a, b); });
                s.check(ctx.sol->partition[p] - ctx.sol->partition[q] == jump_partition(j),
                        [&] { return "partition jump " + where(a, b); });
            },
            where(a, b));
    }
    return s.finish();
}

SuiteResult suite_oracle(Context& ctx)
{
    Suite s("oracle_equivalence");
    const auto& cx = ctx.cx();
    for (std::size_t c = 1; c < cx.chambers.size(); ++c) {
        s.check(ctx.points[c].size() >= ctx.opt.points, [&] {
            return "only " + std::to_string(ctx.points[c].size()) + " closure points for c" +
                   std::to_string(c);
        });
        for (const auto& a : ctx.points[c]) {
            s.guard(
                [&] {
                    Rational got = ctx.sol->partition[c].evaluate(a);
                    Integer want = ctx.counter.count(a);
                    s.check(got == Rational(want) && want >= 0, [&] {
                        return "k(c" + std::to_string(c) + ")" + show(a) + " = " + to_string(got) +
                               ", count " + want.get_str();
                    });
                },
                "c" + std::to_string(c) + " at " + show(a));
        }
    }
    return s.finish();
}

SuiteResult suite_todd(Context& ctx)
{
    Suite s("todd_consistency");
    auto G = compute_G(ctx.config);
    for (std::size_t c = 1; c < ctx.cx().chambers.size(); ++c)
        s.check(todd_apply(ctx.config.vectors, G, ctx.sol->volume[c]) == ctx.sol->partition[c],
                [&] { return "Todd(v) != k on c" + std::to_string(c); });
    return s.finish();
}

SuiteResult suite_top_degree(Context& ctx)
{
    Suite s("top_degree");
    unsigned d = static_cast<unsigned>(ctx.degree());
    for (std::size_t c = 1; c < ctx.cx().chambers.size(); ++c) {
        const auto& k = ctx.sol->partition[c];
        s.check(k.degree() == static_cast<int>(d), [&] { return "deg k(c" + std::to_string(c) + ") != d"; });
        MultiPoly top(ctx.config.rank);
        for (const auto& [y, p] : k.terms()) {
            if (is_zero_shift(y))
                top = p.homogeneous_part(d);
            else
                s.check(p.degree() < static_cast<int>(d),
                        [&] { return "periodic part of k(c" + std::to_string(c) + ") reaches degree d"; });
        }
        s.check(top == ctx.sol->volume[c],
                [&] { return "top-degree part of k(c" + std::to_string(c) + ") != v"; });
    }
    return s.finish();
}

SuiteResult suite_todd_commutation(Context& ctx)
{
    Suite s("todd_commutation");
    auto G = compute_G(ctx.config);
    for (auto& [a, b, wall, w] : ctx.adjacencies()) {
        s.guard(
            [&, a = a, b = b, wall = wall, w = w] {
                auto j = ctx.jump(a, b, wall, w);
                s.check(todd_apply(ctx.config.vectors, G, jump_volume(j)) == jump_partition(j),
                        [&] { return "Todd(Pol) != Para at " + where(a, b); });
            },
            where(a, b));
    }
    return s.finish();
}

IntMatrix without(const IntMatrix& m, std::size_t i)
{
    IntMatrix out = m;
    out.erase(out.begin() + static_cast<long>(i));
    return out;
}

SuiteResult suite_functionals(Context& ctx)
{
    Suite s("functional_properties");
    std::size_t r = ctx.config.rank;
    for (auto& [a, b, wall, w] : ctx.adjacencies()) {
        s.guard(
            [&, a = a, b = b, wall = wall, w = w] {
                auto j = ctx.jump(a, b, wall, w);
                MultiPoly P = extend_from_wall(j.v12, j.frame);
                QuasiPoly Q = extend_from_wall(j.k12, j.frame);
                MultiPoly vol = pol(P, j.psi, j.E);
                QuasiPoly part = para(Q, j.psi, j.E);
                std::string at = where(a, b);

                if (j.psi.size() >= 2) {
                    for (std::size_t i = 0; i < j.psi.size(); ++i) {
                        auto rest = without(j.psi, i);
                        s.check(directional_derivative(to_rational(j.psi[i]), vol) == pol(P, rest, j.E),
                                [&] { return "d(psi) Pol at " + at; });
                        s.check(difference_apply(j.psi[i], part) == para(Q, rest, j.E),
                                [&] { return "D(psi) Para at " + at; });
                    }
                }
                for (const auto& bw : j.frame.B0) {
                    RatVec dir = to_rational(bw);
                    s.check(directional_derivative(dir, vol) == pol(directional_derivative(dir, P), j.psi, j.E),
                            [&] { return "wall derivative at " + at; });
                    s.check(part.translate(bw) == para(Q.translate(bw), j.psi, j.E),
                            [&] { return "wall translation at " + at; });
                }

                // restriction to the wall
                RatMatrix into = transpose(to_rational(j.frame.B0));
                MultiPoly restricted = r > 1 ? vol.compose(into, r - 1) : vol.with_rank(0);
                if (j.psi.size() > 1)
                    s.check(restricted.is_zero(), [&] { return "Pol does not vanish on W at " + at; });
                else
                    s.check(restricted == j.v12, [&] { return "Pol restriction != p at " + at; });
                bool has_negative = std::any_of(j.psi.begin(), j.psi.end(),
                                                [&](const IntVec& v) { return dot(v, j.E) < 0; });
                std::vector<IntVec> wall_pts;
                for (long R = 0; R <= 2; ++R)
                    for (const auto& c : shell(r - 1, R))
                        wall_pts.push_back(c);
                for (const auto& c : wall_pts) {
                    IntVec pt(r, 0);
                    for (std::size_t i = 0; i < c.size(); ++i)
                        pt = add(pt, j.frame.B0[i], c[i]);
                    Rational got = part.evaluate(pt);
                    Rational want = has_negative ? Rational(0) : j.k12.evaluate(c);
                    s.check(got == want, [&] { return "Para restriction at " + show(pt) + ", " + at; });
                }

                // scaling one vector by 2 halves Pol
                IntMatrix scaled = j.psi;
                for (auto& x : scaled[0])
                    x *= 2;
                s.check(pol(P, scaled, j.E) == vol * Cyclotomic(ratio(1, 2)),
                        [&] { return "scaling at " + at; });
            },
            where(a, b));
    }
    return s.finish();
}

SuiteResult suite_extension(Context& ctx)
{
    Suite s("extension_independence");
    std::size_t r = ctx.config.rank;
    if (r < 2)
        return s.finish();
    for (auto& [a, b, wall, w] : ctx.adjacencies()) {
        s.guard(
            [&, a = a, b = b, wall = wall, w = w] {
                auto j = ctx.jump(a, b, wall, w);
                MultiPoly vol = jump_volume(j);
                QuasiPoly part = jump_partition(j);
                for (std::size_t i = 0; i + 1 < r; ++i) {
                    IntVec shift(r - 1, 0);
                    shift[i] = i % 2 ? -1 : 1;
                    WallFrame alt = shifted_frame(j.frame, shift);
                    s.check(pol(extend_from_wall(j.v12, alt), j.psi, j.E) == vol,
                            [&] { return "Pol depends on F at " + where(a, b); });
                    s.check(para(extend_from_wall(j.k12, alt), j.psi, j.E) == part,
                            [&] { return "Para depends on F at " + where(a, b); });
                }
            },
            where(a, b));
    }
    return s.finish();
}

SuiteResult suite_truncation(Context& ctx)
{
    Suite s("truncation_stability");
    for (auto& [a, b, wall, w] : ctx.adjacencies()) {
        s.guard(
            [&, a = a, b = b, wall = wall, w = w] {
                auto j = ctx.jump(a, b, wall, w);
                s.check(jump_volume(j, true) == jump_volume(j), [&] { return "Pol " + where(a, b); });
                s.check(jump_partition(j, true) == jump_partition(j), [&] { return "Para " + where(a, b); });
            },
            where(a, b));
    }
    return s.finish();
}

SuiteResult suite_difference_equations(Context& ctx)
{
    Suite s("difference_equations");
    const auto& cfg = ctx.config;
    for (std::size_t i = 0; i < cfg.size(); ++i) {
        IntMatrix rest = without(cfg.vectors, i);
        if (rest.empty() || rank(rest) < cfg.rank)
            continue;
        s.guard(
            [&] {
                VectorConfig sub = validate_config(rest);
                if (sub.rewritten())
                    return;
                auto subsol = ctx.solver.solve(sub);
                RatVec dir = to_rational(cfg.vectors[i]);
                for (std::size_t c = 1; c < ctx.cx().chambers.size(); ++c) {
                    auto id = subsol->complex.locate(ctx.cx().chambers[c].witness);
                    if (!id)
                        throw InternalError("chamber witness on a wall of the smaller configuration");
                    s.check(directional_derivative(dir, ctx.sol->volume[c]) == subsol->volume[*id], [&] {
                        return "d(phi" + std::to_string(i) + ") v(c" + std::to_string(c) + ")";
                    });
                    s.check(difference_apply(cfg.vectors[i], ctx.sol->partition[c]) == subsol->partition[*id], [&] {
                        return "D(phi" + std::to_string(i) + ") k(c" + std::to_string(c) + ")";
                    });
                }
            },
            "without phi" + std::to_string(i));
    }
    return s.finish();
}

SuiteResult suite_facets(Context& ctx)
{
    Suite s("facet_restriction");
    const auto& cx = ctx.cx();
    std::size_t r = ctx.config.rank;
    for (const auto& adj : cx.chambers[0].adjacent) {
        const auto& wall = cx.walls[adj.wall];
        std::size_t c = adj.neighbor;
        IntMatrix phi0;
        for (auto k : wall.on_wall)
            phi0.push_back(ctx.config.vectors[k]);
        BruteCounter sub(phi0, ctx.config.positive);
        WallFrame fr = normal_frame(wall.normal);
        std::size_t found = 0;
        for (long R = 0; R <= shell_limit(r - 1) && found < ctx.opt.points; ++R) {
            for (const auto& co : shell(r - 1, R)) {
                IntVec pt(r, 0);
                for (std::size_t i = 0; i < co.size(); ++i)
                    pt = add(pt, fr.B0[i], co[i]);
                auto cl = cx.closure_chambers(to_rational(pt));
                if (std::find(cl.begin(), cl.end(), c) == cl.end())
                    continue;
                ++found;
                s.guard(
                    [&] {
                        s.check(ctx.sol->partition[c].evaluate(pt) == Rational(sub.count(pt)), [&] {
                            return "k(c" + std::to_string(c) + ") != k(Phi0) at " + show(pt);
                        });
                    },
                    show(pt));
            }
        }
    }
    return s.finish();
}

SuiteResult suite_convolution(Context& ctx)
{
    Suite s("convolution");
    std::size_t r = ctx.config.rank, done = 0;
    long g = static_cast<long>(ctx.opt.grid);
    for (std::size_t c = 1; c < ctx.cx().chambers.size() && done < ctx.opt.convolution_contexts; ++c) {
        const auto& edge = ctx.sol->tree[c];
        if (!edge)
            continue;
        ++done;
        const Adjacency* adj = nullptr;
        for (const auto& x : ctx.cx().chambers[edge->parent].adjacent)
            if (x.neighbor == c && x.wall == edge->wall)
                adj = &x;
        s.guard(
            [&] {
                auto j = ctx.jump(edge->parent, c, edge->wall, adj->facet_witness);
                QuasiPoly part = jump_partition(j);
                KPlus kernel(j.psi, j.E);
                IntVec F = j.frame.F;
                if (dot(F, j.E) < 0)
                    for (auto& x : F)
                        x = -x;
                for (long t = 0; t < g; ++t) {
                    for (long u = -g / 2; u < g - g / 2; ++u) {
                        IntVec pt = add(IntVec(r, 0), F, t);
                        for (std::size_t i = 0; i + 1 < r; ++i)
                            pt = add(pt, j.frame.B0[i], i == 0 ? u : 1);
                        if (r == 1 && u != 0)
                            continue;
                        Rational lhs = convolve_C(j.k12, kernel, j.frame, pt);
                        s.check(lhs == part.evaluate(pt), [&] {
                            return "C(q) != Para at " + show(pt) + ", " + where(edge->parent, c);
                        });
                    }
                }
            },
            where(edge->parent, c));
    }
    return s.finish();
}

/// Period of m -> k(c)(m a): lcm of the denominators of <y, a> over the shifts.
unsigned long ray_period(const QuasiPoly& k, const IntVec& a)
{
    unsigned long p = 1;
    for (const auto& [y, poly] : k.terms())
        p = std::lcm(p, static_cast<unsigned long>(to_long(Rational(dot(y, a)).get_den())));
    return p;
}

long dilation_cap(std::size_t r)
{
    return r <= 2 ? 600 : r == 3 ? 60 : 24;
}

SuiteResult suite_dilation(Context& ctx)
{
    Suite s("dilation_volume");
    const auto& cx = ctx.cx();
    long d = static_cast<long>(ctx.degree());
    // regular points by dilation cost, taken round-robin over chambers
    using Pick = std::pair<long, IntVec>;
    std::vector<std::vector<Pick>> cand(cx.chambers.size());
    for (std::size_t c = 1; c < cx.chambers.size(); ++c) {
        for (const auto& p : ctx.points[c]) {
            auto id = cx.locate(to_rational(p));
            if (!id || *id != c)
                continue;
            long norm = 0;
            for (auto x : p)
                norm = std::max(norm, std::abs(x));
            long cost = static_cast<long>(ray_period(ctx.sol->partition[c], p)) * (d + 1) * norm;
            if (cost <= dilation_cap(ctx.config.rank))
                cand[c].emplace_back(cost, p);
        }
        std::stable_sort(cand[c].begin(), cand[c].end(),
                         [](const Pick& x, const Pick& y) { return x.first < y.first; });
        if (cand[c].empty())
            ++s.skipped();
    }
    std::vector<std::pair<std::size_t, IntVec>> picks;
    for (std::size_t round = 0; picks.size() < ctx.opt.dilation_points; ++round) {
        bool any = false;
        for (std::size_t c = 1; c < cx.chambers.size() && picks.size() < ctx.opt.dilation_points; ++c) {
            if (round < cand[c].size()) {
                picks.emplace_back(c, cand[c][round].second);
                any = true;
            }
        }
        if (!any)
            break;
    }
    BruteCounter counter(ctx.config);
    for (const auto& [c, p] : picks) {
        s.guard(
            [&, c = c, p = p] {
                if (counter.memo_size() > 2000000)
                    counter.clear();
                Rational got = volume_dilation(ctx.config, p, ray_period(ctx.sol->partition[c], p), &counter);
                auto want = ctx.sol->volume[c].evaluate(p).to_rational();
                s.check(want && got == *want, [&] {
                    return "dilation " + to_string(got) + " at " + show(p) + " in c" + std::to_string(c);
                });
            },
            show(p));
    }
    return s.finish();
}

SuiteResult suite_brute(Context& ctx)
{
    Suite s("brute_count_properties");
    const auto& cfg = ctx.config;
    std::size_t r = cfg.rank;
    IntMatrix shuffled = cfg.vectors;
    std::shuffle(shuffled.begin(), shuffled.end(), ctx.rng);
    BruteCounter perm(shuffled, cfg.positive);
    std::vector<std::optional<BruteCounter>> minus(cfg.size());
    std::uniform_int_distribution<long> coord(-3, 6);
    std::uniform_int_distribution<std::size_t> pick(0, cfg.size() - 1);
    for (std::size_t t = 0; t < ctx.opt.brute_triples; ++t) {
        IntVec a(r);
        for (auto& x : a)
            x = coord(ctx.rng);
        std::size_t i = pick(ctx.rng);
        if (!minus[i])
            minus[i].emplace(without(cfg.vectors, i), cfg.positive);
        Integer k = ctx.counter.count(a);
        s.check(k == perm.count(a), [&] { return "order dependence at " + show(a); });
        s.check(k - ctx.counter.count(add(a, cfg.vectors[i], -1)) == minus[i]->count(a),
                [&] { return "D(phi" + std::to_string(i) + ") at " + show(a); });
    }
    return s.finish();
}

SuiteResult suite_round_trip(Context& ctx)
{
    Suite s("round_trip");
    std::size_t r = ctx.config.rank;
    for (std::size_t c = 1; c < ctx.cx().chambers.size(); ++c) {
        s.guard(
            [&] {
                s.check(parse_poly(ctx.sol->volume[c].str(), r) == ctx.sol->volume[c],
                        [&] { return "volume of c" + std::to_string(c); });
                s.check(parse_quasi(ctx.sol->partition[c].str(), r) == ctx.sol->partition[c],
                        [&] { return "partition of c" + std::to_string(c); });
                const auto& k = ctx.sol->partition[c];
                if (k.coset_count() > kMaxCosets) {
                    ++s.skipped();
                    return;
                }
                auto cosets = k.cosets();
                if (cosets.size() <= 256) {
                    s.check(QuasiPoly::from_cosets(r, k.period(), cosets) == k,
                            [&] { return "coset form of c" + std::to_string(c); });
                    return;
                }
                // the inverse transform is quadratic in the table size: sample instead
                for (const auto& cp : cosets) {
                    IntVec a = cp.representative;
                    for (auto& x : a)
                        x += static_cast<long>(k.period());
                    s.check(Cyclotomic(cp.poly.evaluate(a)) == k.evaluate_exact(a),
                            [&] { return "coset " + show(cp.representative) + " of c" + std::to_string(c); });
                }
            },
            "c" + std::to_string(c));
    }
    return s.finish();
}

} // namespace

std::vector<IntVec> closure_points(const ChamberComplex& complex, std::size_t chamber, std::size_t count)
{
    return closure_points_all(complex, count).at(chamber);
}

WallFrame shifted_frame(const WallFrame& frame, const IntVec& shift)
{
    WallFrame out = frame;
    for (std::size_t i = 0; i < shift.size(); ++i)
        out.F = add(out.F, frame.B0[i], shift[i]);
    IntMatrix A = out.B0;
    A.push_back(out.F);
    out.coordinates = inverse(transpose(to_rational(A)));
    return out;
}

VerifyReport run_verify(const VectorConfig& config, const VerifyOptions& options)
{
    VerifyReport report;
    report.config = config.name;
    SolverOptions so;
    so.check_all_jumps = options.check_all_jumps;
    so.recheck_truncation = options.recheck_truncation;
    Solver solver(so);
    std::shared_ptr<const ChamberSolution> sol;
    try {
        sol = solver.solve(config);
    } catch (const InternalError& e) {
        report.internal_error = e.what();
        return report;
    }
    Context ctx{options, config, solver, sol, closure_points_all(sol->complex, options.points),
                BruteCounter(config), std::mt19937_64(options.seed)};

    using Fn = SuiteResult (*)(Context&);
    for (Fn f : {suite_complex, suite_non_tree, suite_oracle, suite_todd, suite_top_degree,
                 suite_todd_commutation, suite_functionals, suite_extension, suite_truncation,
                 suite_difference_equations, suite_facets, suite_convolution, suite_dilation,
                 suite_brute, suite_round_trip})
        report.suites.push_back(f(ctx));
    return report;
}

} // namespace chambercross
