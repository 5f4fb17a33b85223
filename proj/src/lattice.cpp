#include "chambercross/lattice.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

namespace chambercross {

namespace {

using BigMatrix = std::vector<std::vector<Integer>>;

BigMatrix to_big(const IntMatrix& m)
{
    BigMatrix out;
    for (const auto& row : m) {
        std::vector<Integer> r;
        for (long v : row)
            r.emplace_back(v);
        out.push_back(std::move(r));
    }
    return out;
}

IntMatrix from_big(const BigMatrix& m)
{
    IntMatrix out;
    for (const auto& row : m) {
        IntVec r;
        for (const auto& v : row)
            r.push_back(to_long(v));
        out.push_back(std::move(r));
    }
    return out;
}

BigMatrix identity(std::size_t n)
{
    BigMatrix id(n, std::vector<Integer>(n, 0));
    for (std::size_t i = 0; i < n; ++i)
        id[i][i] = 1;
    return id;
}

// Row operation: rows (i, j) <- (a r_i + b r_j, c r_i + d r_j).
void row_combine(BigMatrix& m, std::size_t i, std::size_t j, const Integer& a, const Integer& b,
                 const Integer& c, const Integer& d)
{
    for (std::size_t k = 0; k < m[i].size(); ++k) {
        Integer x = m[i][k], y = m[j][k];
        m[i][k] = a * x + b * y;
        m[j][k] = c * x + d * y;
    }
}

void col_combine(BigMatrix& m, std::size_t i, std::size_t j, const Integer& a, const Integer& b,
                 const Integer& c, const Integer& d)
{
    for (auto& row : m) {
        Integer x = row[i], y = row[j];
        row[i] = a * x + b * y;
        row[j] = c * x + d * y;
    }
}

// g = s x + t y with g = gcd(x, y) >= 0.
void ext_gcd(const Integer& x, const Integer& y, Integer& g, Integer& s, Integer& t)
{
    mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t());
}

} // namespace

long to_long(const Integer& v)
{
    if (!v.fits_slong_p())
        throw MathError("integer overflow: " + v.get_str());
    return v.get_si();
}

long to_long(const Rational& v)
{
    if (v.get_den() != 1)
        throw MathError("expected an integer, got " + to_string(v));
    return to_long(Integer(v.get_num()));
}

Rational det(const RatMatrix& m)
{
    std::size_t n = m.size();
    RatMatrix a = m;
    Rational d = 1;
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        while (p < n && a[p][c] == 0)
            ++p;
        if (p == n)
            return 0;
        if (p != c) {
            std::swap(a[p], a[c]);
            d = -d;
        }
        d *= a[c][c];
        for (std::size_t r = c + 1; r < n; ++r) {
            if (a[r][c] == 0)
                continue;
            Rational f = a[r][c] / a[c][c];
            for (std::size_t k = c; k < n; ++k)
                a[r][k] -= f * a[c][k];
        }
    }
    return d;
}

Integer det(const IntMatrix& m)
{
    Rational d = det(to_rational(m));
    return d.get_num();
}

std::size_t rank(const IntMatrix& rows)
{
    if (rows.empty())
        return 0;
    RatMatrix a = to_rational(rows);
    std::size_t n = a.size(), cols = a[0].size(), r = 0;
    for (std::size_t c = 0; c < cols && r < n; ++c) {
        std::size_t p = r;
        while (p < n && a[p][c] == 0)
            ++p;
        if (p == n)
            continue;
        std::swap(a[p], a[r]);
        for (std::size_t i = r + 1; i < n; ++i) {
            if (a[i][c] == 0)
                continue;
            Rational f = a[i][c] / a[r][c];
            for (std::size_t k = c; k < cols; ++k)
                a[i][k] -= f * a[r][k];
        }
        ++r;
    }
    return r;
}

RatMatrix inverse(const RatMatrix& m)
{
    std::size_t n = m.size();
    RatMatrix a = m;
    RatMatrix inv(n, RatVec(n, Rational(0)));
    for (std::size_t i = 0; i < n; ++i)
        inv[i][i] = 1;
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        while (p < n && a[p][c] == 0)
            ++p;
        if (p == n)
            throw MathError("singular matrix");
        std::swap(a[p], a[c]);
        std::swap(inv[p], inv[c]);
        Rational piv = a[c][c];
        for (std::size_t k = 0; k < n; ++k) {
            a[c][k] /= piv;
            inv[c][k] /= piv;
        }
        for (std::size_t r = 0; r < n; ++r) {
            if (r == c || a[r][c] == 0)
                continue;
            Rational f = a[r][c];
            for (std::size_t k = 0; k < n; ++k) {
                a[r][k] -= f * a[c][k];
                inv[r][k] -= f * inv[c][k];
            }
        }
    }
    return inv;
}

RatMatrix to_rational(const IntMatrix& m)
{
    RatMatrix out;
    out.reserve(m.size());
    for (const auto& row : m)
        out.push_back(to_rational(row));
    return out;
}

RatMatrix transpose(const RatMatrix& m)
{
    if (m.empty())
        return {};
    RatMatrix t(m[0].size(), RatVec(m.size()));
    for (std::size_t i = 0; i < m.size(); ++i)
        for (std::size_t j = 0; j < m[i].size(); ++j)
            t[j][i] = m[i][j];
    return t;
}

IntMatrix transpose(const IntMatrix& m)
{
    if (m.empty())
        return {};
    IntMatrix t(m[0].size(), IntVec(m.size()));
    for (std::size_t i = 0; i < m.size(); ++i)
        for (std::size_t j = 0; j < m[i].size(); ++j)
            t[j][i] = m[i][j];
    return t;
}

RatVec mat_vec(const RatMatrix& m, const RatVec& v)
{
    RatVec out;
    out.reserve(m.size());
    for (const auto& row : m)
        out.push_back(dot(row, v));
    return out;
}

RatMatrix mat_mul(const RatMatrix& a, const RatMatrix& b)
{
    std::size_t inner = b.size(), cols = b.empty() ? 0 : b[0].size();
    RatMatrix out(a.size(), RatVec(cols, Rational(0)));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t k = 0; k < inner; ++k)
            if (a[i][k] != 0)
                for (std::size_t j = 0; j < cols; ++j)
                    out[i][j] += a[i][k] * b[k][j];
    return out;
}

long content(const IntVec& v)
{
    long g = 0;
    for (long x : v)
        g = std::gcd(g, x);
    return g;
}

IntVec primitive(const RatVec& v)
{
    Integer den = 1;
    for (const auto& c : v)
        mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.get_den_mpz_t());
    std::vector<Integer> num;
    Integer g = 0;
    for (const auto& c : v) {
        Integer n = c.get_num() * (den / c.get_den());
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), n.get_mpz_t());
        num.push_back(n);
    }
    IntVec out;
    for (auto& n : num)
        out.push_back(g == 0 ? 0 : to_long(Integer(n / g)));
    return out;
}

IntMatrix hermite_basis(const IntMatrix& rows)
{
    if (rows.empty())
        return {};
    BigMatrix a = to_big(rows);
    std::size_t n = a.size(), cols = a[0].size(), r = 0;
    for (std::size_t c = 0; c < cols && r < n; ++c) {
        // gcd-combine everything below r into row r
        for (std::size_t i = r + 1; i < n; ++i) {
            if (a[i][c] == 0)
                continue;
            if (a[r][c] == 0) {
                std::swap(a[r], a[i]);
                continue;
            }
            Integer g, s, t;
            ext_gcd(a[r][c], a[i][c], g, s, t);
            Integer u = a[r][c] / g, v = a[i][c] / g;
            row_combine(a, r, i, s, t, -v, u);
        }
        if (a[r][c] == 0)
            continue;
        if (a[r][c] < 0)
            for (auto& x : a[r])
                x = -x;
        for (std::size_t i = 0; i < r; ++i) {
            Integer q;
            mpz_fdiv_q(q.get_mpz_t(), a[i][c].get_mpz_t(), a[r][c].get_mpz_t());
            if (q != 0)
                for (std::size_t k = 0; k < cols; ++k)
                    a[i][k] -= q * a[r][k];
        }
        ++r;
    }
    a.resize(r);
    return from_big(a);
}

SmithForm smith_form(const IntMatrix& s)
{
    std::size_t n = s.size();
    BigMatrix a = to_big(s);
    BigMatrix U = identity(n), V = identity(n);
    for (std::size_t t = 0; t < n; ++t) {
        while (true) {
            // smallest nonzero entry of the trailing block to (t, t)
            std::size_t pi = n, pj = n;
            for (std::size_t i = t; i < n; ++i)
                for (std::size_t j = t; j < n; ++j)
                    if (a[i][j] != 0 && (pi == n || abs(a[i][j]) < abs(a[pi][pj]))) {
                        pi = i;
                        pj = j;
                    }
            if (pi == n)
                throw MathError("smith_form needs a nonsingular matrix");
            std::swap(a[t], a[pi]);
            std::swap(U[t], U[pi]);
            col_combine(a, t, pj, 0, 1, 1, 0);
            col_combine(V, t, pj, 0, 1, 1, 0);
            bool clean = true;
            for (std::size_t i = t + 1; i < n; ++i) {
                if (a[i][t] == 0)
                    continue;
                Integer q;
                mpz_tdiv_q(q.get_mpz_t(), a[i][t].get_mpz_t(), a[t][t].get_mpz_t());
                row_combine(a, i, t, 1, -q, 0, 1);
                row_combine(U, i, t, 1, -q, 0, 1);
                if (a[i][t] != 0)
                    clean = false;
            }
            for (std::size_t j = t + 1; j < n; ++j) {
                if (a[t][j] == 0)
                    continue;
                Integer q;
                mpz_tdiv_q(q.get_mpz_t(), a[t][j].get_mpz_t(), a[t][t].get_mpz_t());
                col_combine(a, j, t, 1, -q, 0, 1);
                col_combine(V, j, t, 1, -q, 0, 1);
                if (a[t][j] != 0)
                    clean = false;
            }
            if (!clean)
                continue;
            // divisibility of the trailing block
            std::size_t bad = n;
            for (std::size_t i = t + 1; i < n && bad == n; ++i)
                for (std::size_t j = t + 1; j < n; ++j)
                    if (a[i][j] % a[t][t] != 0) {
                        bad = i;
                        break;
                    }
            if (bad == n)
                break;
            row_combine(a, t, bad, 1, 1, 0, 1);
            row_combine(U, t, bad, 1, 1, 0, 1);
        }
        if (a[t][t] < 0) {
            for (auto& x : a[t])
                x = -x;
            for (auto& x : U[t])
                x = -x;
        }
    }
    SmithForm out;
    out.U = from_big(U);
    out.V = from_big(V);
    for (std::size_t i = 0; i < n; ++i)
        out.diagonal.push_back(to_long(a[i][i]));
    return out;
}

std::vector<RatVec> dual_quotient(const IntMatrix& s)
{
    std::size_t k = s.size();
    if (k == 0)
        return {RatVec{}};
    // S = U^-1 D V^-1, so S^-1 Z^k = V D^-1 Z^k.
    SmithForm sf = smith_form(s);
    std::set<RatVec> seen;
    std::vector<RatVec> out;
    IntVec n(k, 0);
    while (true) {
        RatVec y(k, Rational(0));
        for (std::size_t i = 0; i < k; ++i)
            for (std::size_t j = 0; j < k; ++j)
                y[i] += Rational(sf.V[i][j]) * ratio(n[j], sf.diagonal[j]);
        for (auto& c : y)
            c = frac(c);
        if (seen.insert(y).second)
            out.push_back(y);
        std::size_t i = k;
        bool done = true;
        while (i > 0) {
            --i;
            if (++n[i] < sf.diagonal[i]) {
                done = false;
                break;
            }
            n[i] = 0;
        }
        if (done)
            break;
    }
    return out;
}

IntMatrix unimodular_completion(const IntVec& E)
{
    std::size_t r = E.size();
    BigMatrix row{std::vector<Integer>()};
    for (long v : E)
        row[0].emplace_back(v);
    BigMatrix U = identity(r);
    for (std::size_t j = 1; j < r; ++j) {
        if (row[0][j] == 0)
            continue;
        if (row[0][0] == 0) {
            col_combine(row, 0, j, 0, 1, 1, 0);
            col_combine(U, 0, j, 0, 1, 1, 0);
            continue;
        }
        Integer g, s, t;
        ext_gcd(row[0][0], row[0][j], g, s, t);
        Integer u = row[0][0] / g, v = row[0][j] / g;
        // (c0, cj) <- (s c0 + t cj, -v c0 + u cj); determinant s u + t v = 1
        col_combine(row, 0, j, s, t, -v, u);
        col_combine(U, 0, j, s, t, -v, u);
    }
    if (row[0][0] < 0) {
        for (auto& r2 : U)
            r2[0] = -r2[0];
        row[0][0] = -row[0][0];
    }
    if (row[0][0] != 1)
        throw ValidationError("wall normal is not primitive");
    return from_big(U);
}

IntVec cofactor_normal(const IntMatrix& rows, std::size_t r)
{
    IntVec n(r, 0);
    if (r == 1)
        return IntVec{1};
    for (std::size_t i = 0; i < r; ++i) {
        IntMatrix minor;
        for (const auto& row : rows) {
            IntVec m;
            for (std::size_t j = 0; j < r; ++j)
                if (j != i)
                    m.push_back(row[j]);
            minor.push_back(m);
        }
        long d = to_long(det(minor));
        n[i] = (i % 2) ? -d : d;
    }
    return n;
}

// ---------------------------------------------------------------- Fourier-Motzkin

namespace {

struct Row {
    RatVec c;
    Rational b;
    std::vector<std::size_t> history; // sorted indices of the original rows
};

// Scale so that the first nonzero coefficient has absolute value 1.
void normalize(Row& row)
{
    for (const auto& v : row.c) {
        if (v != 0) {
            Rational s = abs(v);
            for (auto& x : row.c)
                x /= s;
            row.b /= s;
            return;
        }
    }
}

std::vector<std::size_t> merge(const std::vector<std::size_t>& a, const std::vector<std::size_t>& b)
{
    std::vector<std::size_t> out;
    std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

// Among rows with equal coefficients, drops those dominated by a row with a
// bound at least as tight and a history contained in theirs. Dropping a
// tighter row with a larger history would defeat the history cap.
std::vector<Row> dedupe(std::vector<Row> rows)
{
    auto dominates = [](const Row& y, const Row& x) {
        return y.b >= x.b && std::includes(x.history.begin(), x.history.end(), y.history.begin(),
                                           y.history.end());
    };
    std::map<RatVec, std::vector<Row>> groups;
    std::vector<RatVec> order;
    for (auto& row : rows) {
        auto [it, fresh] = groups.try_emplace(row.c);
        if (fresh)
            order.push_back(row.c);
        auto& g = it->second;
        if (std::any_of(g.begin(), g.end(), [&](const Row& y) { return dominates(y, row); }))
            continue;
        std::erase_if(g, [&](const Row& x) { return dominates(row, x); });
        g.push_back(std::move(row));
    }
    std::vector<Row> out;
    for (const auto& c : order)
        for (auto& row : groups[c])
            out.push_back(std::move(row));
    return out;
}

std::optional<RatVec> fm_inequalities(std::size_t n, const std::vector<LinearConstraint>& ineqs)
{
    std::vector<Row> rows;
    for (std::size_t i = 0; i < ineqs.size(); ++i) {
        Row row{ineqs[i].coeffs, ineqs[i].bound, {i}};
        normalize(row);
        rows.push_back(std::move(row));
    }
    // stages[k]: constraints involving only variables 0..k
    std::vector<std::vector<Row>> stages(n);
    for (std::size_t step = 0; step < n; ++step) {
        std::size_t k = n - 1 - step;
        rows = dedupe(std::move(rows));
        stages[k] = rows;
        std::vector<const Row*> pos, neg;
        std::vector<Row> next;
        for (const auto& row : rows) {
            if (row.c[k] > 0)
                pos.push_back(&row);
            else if (row.c[k] < 0)
                neg.push_back(&row);
            else
                next.push_back(row);
        }
        std::size_t limit = step + 2; // Chernikov: at most step + 2 originals
        for (const Row* p : pos) {
            for (const Row* q : neg) {
                auto hist = merge(p->history, q->history);
                if (hist.size() > limit)
                    continue;
                Rational sp = p->c[k], sq = -q->c[k];
                Row row;
                row.c.resize(n);
                for (std::size_t j = 0; j < n; ++j)
                    row.c[j] = p->c[j] / sp + q->c[j] / sq;
                row.c[k] = 0;
                row.b = p->b / sp + q->b / sq;
                row.history = std::move(hist);
                bool zero = std::all_of(row.c.begin(), row.c.end(), [](const Rational& v) { return v == 0; });
                if (zero) {
                    if (row.b > 0)
                        return std::nullopt;
                    continue;
                }
                normalize(row);
                next.push_back(std::move(row));
            }
        }
        rows = std::move(next);
    }
    for (const auto& row : rows)
        if (row.b > 0)
            return std::nullopt;

    RatVec x(n, Rational(0));
    for (std::size_t k = 0; k < n; ++k) {
        std::optional<Rational> lo, hi;
        for (const auto& row : stages[k]) {
            if (row.c[k] == 0)
                continue;
            Rational rest = row.b;
            for (std::size_t j = 0; j < k; ++j)
                rest -= row.c[j] * x[j];
            Rational v = rest / row.c[k];
            if (row.c[k] > 0) {
                if (!lo || v > *lo)
                    lo = v;
            } else if (!hi || v < *hi) {
                hi = v;
            }
        }
        if (lo && hi) {
            if (*lo > *hi)
                throw InternalError("Fourier-Motzkin back-substitution found an empty range");
            x[k] = (*lo + *hi) / 2;
        } else if (lo) {
            x[k] = floor(*lo) + 1;
        } else if (hi) {
            x[k] = floor(*hi) - (frac(*hi) == 0 ? 1 : 0);
        }
    }
    return x;
}

} // namespace

std::optional<RatVec> fm_feasible(std::size_t nvars, const std::vector<LinearConstraint>& ineqs,
                                  const std::vector<LinearConstraint>& eqs)
{
    // Solve the equalities: x = x0 + N t.
    RatMatrix a;
    RatVec rhs;
    for (const auto& e : eqs) {
        a.push_back(e.coeffs);
        rhs.push_back(e.bound);
    }
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    for (std::size_t c = 0; c < nvars && r < a.size(); ++c) {
        std::size_t p = r;
        while (p < a.size() && a[p][c] == 0)
            ++p;
        if (p == a.size())
            continue;
        std::swap(a[p], a[r]);
        std::swap(rhs[p], rhs[r]);
        Rational piv = a[r][c];
        for (auto& v : a[r])
            v /= piv;
        rhs[r] /= piv;
        for (std::size_t i = 0; i < a.size(); ++i) {
            if (i == r || a[i][c] == 0)
                continue;
            Rational f = a[i][c];
            for (std::size_t k = 0; k < nvars; ++k)
                a[i][k] -= f * a[r][k];
            rhs[i] -= f * rhs[r];
        }
        pivots.push_back(c);
        ++r;
    }
    for (std::size_t i = r; i < a.size(); ++i)
        if (rhs[i] != 0)
            return std::nullopt;

    std::vector<std::size_t> free_vars;
    for (std::size_t c = 0; c < nvars; ++c)
        if (std::find(pivots.begin(), pivots.end(), c) == pivots.end())
            free_vars.push_back(c);
    RatVec x0(nvars, Rational(0));
    for (std::size_t i = 0; i < r; ++i)
        x0[pivots[i]] = rhs[i];
    // column f of N: free variable f = 1, pivots adjust
    RatMatrix N(nvars, RatVec(free_vars.size(), Rational(0)));
    for (std::size_t f = 0; f < free_vars.size(); ++f) {
        N[free_vars[f]][f] = 1;
        for (std::size_t i = 0; i < r; ++i)
            N[pivots[i]][f] = -a[i][free_vars[f]];
    }

    std::vector<LinearConstraint> reduced;
    for (const auto& ineq : ineqs) {
        LinearConstraint c;
        c.coeffs.assign(free_vars.size(), Rational(0));
        for (std::size_t f = 0; f < free_vars.size(); ++f)
            for (std::size_t k = 0; k < nvars; ++k)
                c.coeffs[f] += ineq.coeffs[k] * N[k][f];
        c.bound = ineq.bound - dot(ineq.coeffs, x0);
        reduced.push_back(std::move(c));
    }
    std::optional<RatVec> t;
    if (free_vars.empty()) {
        for (const auto& c : reduced)
            if (c.bound > 0)
                return std::nullopt;
        t = RatVec{};
    } else {
        t = fm_inequalities(free_vars.size(), reduced);
        if (!t)
            return std::nullopt;
    }
    RatVec x = x0;
    for (std::size_t k = 0; k < nvars; ++k)
        for (std::size_t f = 0; f < free_vars.size(); ++f)
            x[k] += N[k][f] * (*t)[f];
    for (const auto& ineq : ineqs)
        if (dot(ineq.coeffs, x) < ineq.bound)
            throw InternalError("Fourier-Motzkin witness violates a constraint");
    return x;
}

} // namespace chambercross
