#include "chambercross/oracle.hpp"

#include "chambercross/lattice.hpp"

#include <algorithm>
#include <functional>
#include <optional>
#include <numeric>
#include <set>

namespace chambercross {

BruteCounter::BruteCounter(IntMatrix vectors, IntVec certificate)
    : vectors_(std::move(vectors)), certificate_(std::move(certificate))
{
    for (const auto& v : vectors_)
        if (dot(v, certificate_) < 1)
            throw ValidationError("counting certificate does not separate the vectors");
    // largest <phi, x0> first
    std::stable_sort(vectors_.begin(), vectors_.end(), [&](const IntVec& a, const IntVec& b) {
        return dot(a, certificate_) > dot(b, certificate_);
    });
    for (const auto& v : vectors_)
        weight_.push_back(dot(v, certificate_));

    // shortest suffix that is still linearly independent
    std::size_t n = vectors_.size(), r = certificate_.size();
    tail_start_ = n;
    while (tail_start_ > 0) {
        IntMatrix tail(vectors_.begin() + static_cast<long>(tail_start_ - 1), vectors_.end());
        if (rank(tail) < tail.size())
            break;
        --tail_start_;
    }
    std::size_t k = n - tail_start_;
    if (k == 0)
        return;
    // k coordinate rows with an invertible k x k minor
    IntMatrix tail_t = transpose(IntMatrix(vectors_.begin() + static_cast<long>(tail_start_), vectors_.end()));
    IntMatrix chosen;
    for (std::size_t row = 0; row < r && chosen.size() < k; ++row) {
        chosen.push_back(tail_t[row]);
        if (rank(chosen) < chosen.size())
            chosen.pop_back();
        else
            tail_rows_.push_back(row);
    }
    tail_inverse_ = inverse(to_rational(chosen));
}

bool BruteCounter::tail_solution(const IntVec& b) const
{
    std::size_t k = tail_rows_.size();
    IntVec n(k);
    for (std::size_t j = 0; j < k; ++j) {
        Rational x = 0;
        for (std::size_t l = 0; l < k; ++l)
            x += tail_inverse_[j][l] * b[tail_rows_[l]];
        if (x.get_den() != 1 || x < 0)
            return false;
        n[j] = x.get_num().get_si();
    }
    for (std::size_t c = 0; c < b.size(); ++c) {
        long sum = 0;
        for (std::size_t j = 0; j < k; ++j)
            sum += n[j] * vectors_[tail_start_ + j][c];
        if (sum != b[c])
            return false;
    }
    return true;
}

Integer BruteCounter::count(const IntVec& a)
{
    if (a.size() != certificate_.size())
        throw ValidationError("count point has the wrong rank");
    return count_from(0, a);
}

Integer BruteCounter::count_from(std::size_t i, const IntVec& b)
{
    long h = dot(b, certificate_);
    if (h < 0)
        return 0;
    if (i == vectors_.size())
        return std::all_of(b.begin(), b.end(), [](long v) { return v == 0; }) ? 1 : 0;
    if (i >= tail_start_)
        return tail_solution(b) ? 1 : 0;
    IntVec key = b;
    key.push_back(static_cast<long>(i));
    auto it = memo_.find(key);
    if (it != memo_.end())
        return it->second;
    // k_i(b) = k_{i+1}(b) + k_i(b - phi_i)
    IntVec rest = b;
    for (std::size_t k = 0; k < rest.size(); ++k)
        rest[k] -= vectors_[i][k];
    Integer total = count_from(i + 1, b) + count_from(i, rest);
    memo_.emplace(std::move(key), total);
    return total;
}

Integer brute_count(const VectorConfig& config, const IntVec& a)
{
    BruteCounter c(config);
    return c.count(a);
}

namespace {

IntMatrix reflect(const IntMatrix& psi, const IntVec& E, IntVec& kappa, bool& odd)
{
    IntMatrix out;
    kappa.assign(E.size(), 0);
    std::size_t neg = 0;
    for (const auto& v : psi) {
        long d = dot(v, E);
        if (d == 0)
            throw MathError("vector lies in the wall: <psi, E> = 0");
        if (d > 0) {
            out.push_back(v);
        } else {
            IntVec m = v;
            for (std::size_t k = 0; k < m.size(); ++k) {
                kappa[k] += v[k];
                m[k] = -v[k];
            }
            out.push_back(m);
            ++neg;
        }
    }
    odd = neg % 2 == 1;
    return out;
}

} // namespace

KPlus::KPlus(const IntMatrix& psi, const IntVec& E)
    : reflected_(reflect(psi, E, kappa_, odd_)), E_(E), counter_(reflected_, E)
{
}

Integer KPlus::operator()(const IntVec& a)
{
    // support is -kappa- + C(R+)
    IntVec b = a;
    for (std::size_t k = 0; k < b.size(); ++k)
        b[k] += kappa_[k];
    Integer v = counter_.count(b);
    return odd_ ? Integer(-v) : v;
}

Integer kplus(const IntMatrix& psi, const IntVec& E, const IntVec& a)
{
    KPlus k(psi, E);
    return k(a);
}

Rational convolve_C(const QuasiPoly& q, KPlus& kernel, const WallFrame& frame, const IntVec& a)
{
    const IntVec& E = kernel.normal();
    const auto& rho = kernel.reflected();
    IntVec base = a;
    for (std::size_t k = 0; k < base.size(); ++k)
        base[k] += kernel.kappa_minus()[k];
    long h = dot(base, E);
    if (h < 0)
        return 0;
    std::vector<long> d;
    for (const auto& v : rho)
        d.push_back(dot(v, E));

    // all w = base - sum n_i rho_i with sum n_i d_i = h
    std::set<IntVec> ws;
    std::function<void(std::size_t, long, IntVec&)> walk = [&](std::size_t i, long left, IntVec& w) {
        if (i == rho.size()) {
            if (left == 0)
                ws.insert(w);
            return;
        }
        for (long k = 0; k * d[i] <= left; ++k) {
            walk(i + 1, left - k * d[i], w);
            for (std::size_t j = 0; j < w.size(); ++j)
                w[j] -= rho[i][j];
        }
        for (long k = 0; k * d[i] <= left; ++k)
            for (std::size_t j = 0; j < w.size(); ++j)
                w[j] += rho[i][j];
    };
    IntVec w = base;
    walk(0, h, w);

    Rational total = 0;
    for (const auto& x : ws) {
        RatVec coords = frame.wall_coordinates(to_rational(x));
        IntVec wc;
        for (const auto& c : coords) {
            if (c.get_den() != 1)
                throw InternalError("convolution point off the wall lattice");
            wc.push_back(c.get_num().get_si());
        }
        Rational qv = q.evaluate(wc);
        if (qv == 0)
            continue;
        IntVec diff = a;
        for (std::size_t k = 0; k < diff.size(); ++k)
            diff[k] -= x[k];
        total += qv * Rational(kernel(diff));
    }
    return total;
}

Rational convolve_C(const QuasiPoly& q, const IntMatrix& psi, const WallFrame& frame,
                    const IntVec& E, const IntVec& a)
{
    KPlus kernel(psi, E);
    return convolve_C(q, kernel, frame, a);
}

Rational volume_dilation(const VectorConfig& config, const IntVec& a, unsigned long period,
                         BruteCounter* counter)
{
    std::optional<BruteCounter> own;
    if (!counter) {
        own.emplace(config);
        counter = &*own;
    }
    long d = static_cast<long>(config.size()) - static_cast<long>(config.rank);
    long M = static_cast<long>(period);
    std::optional<Rational> lead;
    for (long c = 1; c <= M; ++c) {
        std::vector<long> ms;
        std::vector<Rational> ys;
        for (long j = 0; j <= d; ++j) {
            long m = c + M * j;
            IntVec p = a;
            for (auto& x : p)
                x *= m;
            ms.push_back(m);
            ys.push_back(Rational(counter->count(p)));
        }
        // leading coefficient of the interpolating polynomial
        Rational L = 0;
        for (std::size_t j = 0; j < ms.size(); ++j) {
            Rational den = 1;
            for (std::size_t i = 0; i < ms.size(); ++i)
                if (i != j)
                    den *= ms[j] - ms[i];
            L += ys[j] / den;
        }
        if (lead && *lead != L)
            throw InternalError("dilation classes disagree on the leading coefficient");
        lead = L;
    }
    return *lead;
}

} // namespace chambercross
