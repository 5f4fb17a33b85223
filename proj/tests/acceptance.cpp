// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include <chrono>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "chambercross/oracle.hpp"
#include "chambercross/presets.hpp"
#include "chambercross/verify.hpp"
#include "chambercross/wallcross.hpp"

using namespace chambercross;

namespace {

struct Outcome {
    bool ok = true;
    std::string detail;

    void require(bool cond, const std::string& what)
    {
        if (cond)
            return;
        if (ok)
            detail = what;
        else if (detail.size() < 300)
            detail += "; " + what;
        ok = false;
    }
};

struct Criterion {
    int number;
    const char* title;
    double limit_seconds; // 0: no limit
    std::function<void(Outcome&)> body;
};

std::size_t chamber_at(const ChamberSolution& sol, const IntVec& point, Outcome& out)
{
    auto id = sol.complex.locate(to_rational(point));
    if (!id || *id == 0) {
        out.require(false, "no interior chamber at the witness point");
        return 0;
    }
    return *id;
}

MultiPoly P(const char* s, std::size_t r)
{
    return parse_poly(s, r);
}

QuasiPoly Q(const char* s, std::size_t r)
{
    return parse_quasi(s, r);
}

void b2_volumes(Outcome& out)
{
    Solver solver;
    auto sol = solver.solve(preset("B2"));
    auto c1 = chamber_at(*sol, {1, 3}, out), c2 = chamber_at(*sol, {3, 1}, out),
         c3 = chamber_at(*sol, {3, -1}, out);
    out.require(sol->volume[c1] == P("1/2*a1^2", 2), "v(c1)");
    out.require(sol->volume[c2] == P("1/4*(a1+a2)^2 - 1/2*a2^2", 2), "v(c2)");
    out.require(sol->volume[c3] == P("1/4*(a1+a2)^2", 2), "v(c3)");
}

void a_partitions(Outcome& out)
{
    Solver solver;
    auto a2 = solver.solve(preset("A2"));
    out.require(a2->partition[chamber_at(*a2, {1, 2}, out)] == Q("1 + a1", 2), "k(A2,c1)");
    out.require(a2->partition[chamber_at(*a2, {2, -1}, out)] == Q("1 + a1 + a2", 2), "k(A2,c2)");
    auto a3 = solver.solve(preset("A3"));
    auto c1 = chamber_at(*a3, {7, -1, -2}, out), c2 = chamber_at(*a3, {5, -1, 2}, out);
    out.require(a3->partition[c2] - a3->partition[c1] == Q("1/6*a3*(a3-1)*(2*a3+3*a2+3*a1+5)", 3),
                "A3 jump");
}

void b2_partitions(Outcome& out)
{
    Solver solver;
    auto sol = solver.solve(preset("B2"));
    struct Case {
        IntVec witness;
        const char* formula;
    };
    const Case cases[] = {
        {{1, 3}, "1/2*(a1+2)*(a1+1)"},
        {{3, 1}, "1/4*a1^2 + 1/2*a1*a2 - 1/4*a2^2 + a1 + 1/2*a2 + 7/8 + 1/8*E(2)^(a1+a2)"},
        {{3, -1}, "1/4*a1^2 + 1/2*a1*a2 + 1/4*a2^2 + a1 + a2 + 7/8 + 1/8*E(2)^(a1+a2)"},
    };
    int i = 1;
    for (const auto& c : cases) {
        const QuasiPoly& got = sol->partition[chamber_at(*sol, c.witness, out)];
        QuasiPoly want = Q(c.formula, 2);
        // coset polynomials over Z^2 / 2Z^2
        auto lift = [](const QuasiPoly& k) {
            std::vector<CosetPolynomial> out;
            for (long h1 = 0; h1 < 2; ++h1)
                for (long h2 = 0; h2 < 2; ++h2) {
                    MultiPoly p(2);
                    for (const auto& [y, py] : k.terms())
                        p += py * character_value(y, {h1, h2});
                    out.push_back({{h1, h2}, p});
                }
            return out;
        };
        auto g = lift(got), w = lift(want);
        bool same = true;
        for (std::size_t j = 0; j < g.size(); ++j)
            same = same && g[j].poly == w[j].poly;
        out.require(same && got.period() <= 2, "k(B2,c" + std::to_string(i) + ")");
        ++i;
    }
}

void b3_volumes(Outcome& out)
{
    Solver solver;
    auto sol = solver.solve(preset("B3"));
    auto c1 = chamber_at(*sol, {7, -2, -4}, out), c2 = chamber_at(*sol, {7, -2, 4}, out),
         c3 = chamber_at(*sol, {4, 1, 2}, out);
    out.require(sol->volume[c2] - sol->volume[c1] ==
                    P("1/1440*a3^4*(30*a1*a2+15*a1^2+15*a2^2+2*a3^2)", 3),
                "c1 -> c2 volume jump");
    out.require(sol->volume[c3] - sol->volume[c2] == P("-1/96*a2^4*(a1^2+2*a1*a3-a3^2)", 3),
                "c2 -> c3 volume jump");
}

void b3_partition(Outcome& out)
{
    Solver solver;
    auto sol = solver.solve(preset("B3"));
    auto c1 = chamber_at(*sol, {7, -2, -4}, out), c2 = chamber_at(*sol, {7, -2, 4}, out);
    out.require(sol->partition[c2] - sol->partition[c1] ==
                    Q("1/2880*a3*(a3-1)*(a3+2)*(a3+1)*(4*a3^2+4*a3+30*a1^2+60*a2*a1+30*a2^2+441+240*a1+240*a2)"
                      " + 1/128*E(2)^(a1+a2) + 1/384*E(2)^(a1+a2+a3)*(2*a3+1)*(2*a3^2+2*a3-3)",
                      3),
                "c1 -> c2 partition jump");
}

void nice_chambers(Outcome& out)
{
    Solver solver;
    auto a3 = solver.solve(preset("A3"));
    out.require(a3->partition[chamber_at(*a3, {9, 5, 2}, out)] == Q("1/6*(a1+2)*(a1+1)*(a1+3*a2+3)", 3),
                "k(A3,c_nice)");
    auto a4 = solver.solve(preset("A4"));
    out.require(a4->partition[chamber_at(*a4, {13, 7, 5, 2}, out)] ==
                    Q("1/360*(a1+3)*(a1+2)*(a1+1)*(a1+3+a2+3*a3)*(a1^2+9*a1+5*a1*a2+10*a2^2+20+30*a2)", 4),
                "k(A4,c_nice)");
}

void census(Outcome& out)
{
    for (auto [name, n] : {std::pair{"A2", 2}, {"B2", 3}, {"A3", 7}}) {
        std::size_t got = chamber_complex(preset(name)).interior_count();
        out.require(got == static_cast<std::size_t>(n),
                    std::string(name) + " has " + std::to_string(got) + " chambers");
    }
}

std::vector<VectorConfig> oracle_configs()
{
    std::vector<VectorConfig> out{preset("A2"), preset("B2"), preset("A3")};
    const std::pair<std::size_t, std::size_t> shapes[] = {{2, 4}, {2, 5}, {2, 6}, {3, 4}, {3, 5},
                                                          {3, 6}, {2, 5}, {2, 6}, {3, 5}, {3, 6}};
    std::uint64_t seed = 1;
    for (auto [r, n] : shapes)
        out.push_back(random_config(r, n, seed++));
    return out;
}

void oracle_equivalence(Outcome& out)
{
    std::size_t compared = 0;
    for (const auto& cfg : oracle_configs()) {
        Solver solver;
        auto sol = solver.solve(cfg);
        BruteCounter counter(cfg);
        for (std::size_t c = 1; c < sol->partition.size(); ++c) {
            auto pts = closure_points(sol->complex, c, 50);
            out.require(pts.size() >= 50, cfg.name + " c" + std::to_string(c) + " has only " +
                                              std::to_string(pts.size()) + " closure points");
            for (const auto& a : pts) {
                Rational k = sol->partition[c].evaluate(a);
                Integer b = counter.count(a);
                ++compared;
                out.require(k == b && k.get_den() == 1 && k >= 0,
                            cfg.name + " c" + std::to_string(c) + " mismatch");
            }
        }
    }
    if (out.ok)
        out.detail = std::to_string(compared) + " points in 13 configurations";
}

void todd_consistency(Outcome& out)
{
    Solver solver;
    for (const char* name : {"A2", "B2", "A3"}) {
        auto cfg = preset(name);
        auto sol = solver.solve(cfg);
        auto G = compute_G(cfg);
        for (std::size_t c = 1; c < sol->volume.size(); ++c)
            out.require(todd_apply(cfg.vectors, G, sol->volume[c]) == sol->partition[c],
                        std::string(name) + " c" + std::to_string(c));
    }
}

void convolution(Outcome& out)
{
    Solver solver;
    std::size_t contexts = 0, points = 0;
    for (auto [name, wanted] : {std::pair{"B2", 1}, {"A3", 2}}) {
        auto cfg = preset(name);
        auto sol = solver.solve(cfg);
        std::size_t r = cfg.rank;
        int taken = 0;
        for (std::size_t c = 1; c < sol->tree.size() && taken < wanted; ++c) {
            const auto& edge = sol->tree[c];
            if (!edge || edge->parent == 0)
                continue;
            const Adjacency* adj = nullptr;
            for (const auto& x : sol->complex.chambers[edge->parent].adjacent)
                if (x.neighbor == c && x.wall == edge->wall)
                    adj = &x;
            auto j = solver.jump_context(*sol, edge->parent, c, edge->wall, adj->facet_witness, 0);
            QuasiPoly para_value = jump_partition(j);
            KPlus kernel(j.psi, j.E);
            IntVec F = j.frame.F;
            if (dot(F, j.E) < 0)
                for (auto& x : F)
                    x = -x;
            for (long t = 0; t < 10; ++t) {
                for (long u = -5; u < 5; ++u) {
                    IntVec a(r, 0);
                    for (std::size_t i = 0; i < r; ++i) {
                        a[i] += t * F[i];
                        for (std::size_t k = 0; k + 1 < r; ++k)
                            a[i] += (k == 0 ? u : 1) * j.frame.B0[k][i];
                    }
                    ++points;
                    out.require(convolve_C(j.k12, kernel, j.frame, a) == para_value.evaluate(a),
                                std::string(name) + " wall " + std::to_string(edge->wall));
                }
            }
            ++taken;
            ++contexts;
        }
    }
    out.require(contexts == 3, "found " + std::to_string(contexts) + " wall contexts");
    if (out.ok)
        out.detail = std::to_string(contexts) + " walls, " + std::to_string(points) + " points";
}

void structural_suites(Outcome& out)
{
    std::size_t checks = 0, skipped = 0;
    for (auto [name, n] : {std::pair{"A1", 1}, {"A2", 2}, {"B2", 3}, {"A3", 7}, {"B3", 0}}) {
        VerifyOptions opt;
        if (n)
            opt.expected_chambers = static_cast<std::size_t>(n);
        auto rep = run_verify(preset(name), opt);
        if (rep.internal_error)
            out.require(false, std::string(name) + ": " + *rep.internal_error);
        for (const auto& s : rep.suites) {
            checks += s.checks;
            skipped += s.skipped;
            out.require(s.passed(), std::string(name) + " " + s.name + " (" + std::to_string(s.failures) +
                                        " failures)");
        }
    }
    if (out.ok)
        out.detail = std::to_string(checks) + " checks, " + std::to_string(skipped) + " skipped";
}

} // namespace

int main()
{
    const std::vector<Criterion> criteria = {
        {1, "B2 volume polynomials", 1, b2_volumes},
        {2, "A2 partitions and the A3 jump", 5, a_partitions},
        {3, "B2 partition quasi-polynomials in coset form", 5, b2_partitions},
        {4, "B3 volume jumps", 30, b3_volumes},
        {5, "B3 partition jump", 60, b3_partition},
        {6, "A3 and A4 nice chambers", 60, nice_chambers},
        {7, "chamber census A2, B2, A3", 0, census},
        {8, "oracle equivalence on presets and 10 random configurations", 0, oracle_equivalence},
        {9, "Todd consistency on A2, B2, A3", 0, todd_consistency},
        {10, "convolution identity on three walls of B2 and A3", 0, convolution},
        {11, "structural invariant suites on the presets", 300, structural_suites},
    };
    int failed = 0;
    for (const auto& c : criteria) {
        Outcome out;
        auto t0 = std::chrono::steady_clock::now();
        try {
            c.body(out);
        } catch (const std::exception& e) {
            out.require(false, std::string("exception: ") + e.what());
        }
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (c.limit_seconds > 0 && secs > c.limit_seconds)
            out.require(false, "took " + std::to_string(secs) + " s, limit " + std::to_string(c.limit_seconds));
        std::printf("criterion %2d  %s  %s (%.2f s)%s%s\n", c.number, out.ok ? "PASS" : "FAIL", c.title, secs,
                    out.detail.empty() ? "" : ": ", out.detail.c_str());
        std::fflush(stdout);
        failed += out.ok ? 0 : 1;
    }
    std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
    return failed == 0 ? 0 : 1;
}
