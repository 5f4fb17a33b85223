#include "chambercross/exactnum.hpp"

#include <cctype>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <sstream>

namespace chambercross {

std::string to_string(const Rational& q)
{
    return q.get_str();
}

Rational parse_rational(std::string_view text)
{
    std::string s(text);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())))
        s.pop_back();
    std::size_t start = 0;
    while (start < s.size() && std::isspace(static_cast<unsigned char>(s[start])))
        ++start;
    s = s.substr(start);
    if (s.empty())
        throw ValidationError("empty rational literal");
    std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    bool seen_slash = false;
    bool digit_before = false;
    bool digit_after = false;
    for (; i < s.size(); ++i) {
        if (s[i] == '/' && !seen_slash) {
            seen_slash = true;
        } else if (std::isdigit(static_cast<unsigned char>(s[i]))) {
            (seen_slash ? digit_after : digit_before) = true;
        } else {
            throw ValidationError("bad rational literal '" + s + "'");
        }
    }
    if (!digit_before || (seen_slash && !digit_after))
        throw ValidationError("bad rational literal '" + s + "'");
    if (s[0] == '+')
        s = s.substr(1);
    Rational q;
    q.set_str(s, 10);
    if (q.get_den() == 0)
        throw DivisionByZero();
    q.canonicalize();
    return q;
}

RatVec to_rational(const IntVec& v)
{
    RatVec out;
    out.reserve(v.size());
    for (long x : v)
        out.emplace_back(x);
    return out;
}

Rational dot(const RatVec& a, const RatVec& b)
{
    Rational s = 0;
    for (std::size_t i = 0; i < a.size(); ++i)
        s += a[i] * b[i];
    return s;
}

Rational dot(const RatVec& a, const IntVec& b)
{
    Rational s = 0;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (b[i] != 0)
            s += a[i] * b[i];
    return s;
}

long dot(const IntVec& a, const IntVec& b)
{
    long s = 0;
    for (std::size_t i = 0; i < a.size(); ++i)
        s += a[i] * b[i];
    return s;
}

Rational ratio(long n, long d)
{
    if (d == 0)
        throw DivisionByZero();
    Rational q(n, d);
    q.canonicalize();
    return q;
}

Rational floor(const Rational& q)
{
    Integer f;
    mpz_fdiv_q(f.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    return Rational(f);
}

Rational frac(const Rational& q)
{
    return q - floor(q);
}

unsigned long lcm(unsigned long a, unsigned long b)
{
    return std::lcm(a, b);
}

unsigned euler_phi(unsigned m)
{
    unsigned result = m;
    unsigned n = m;
    for (unsigned p = 2; p * p <= n; ++p) {
        if (n % p == 0) {
            while (n % p == 0)
                n /= p;
            result -= result / p;
        }
    }
    if (n > 1)
        result -= result / n;
    return result;
}

namespace {

// Reduction data for one cyclotomic field. power_table[k] holds x^k mod Phi_M
// for 0 <= k < M, which together with zeta^M = 1 reduces any exponent.
struct CycloField {
    unsigned order = 1;
    unsigned degree = 1;
    std::vector<long> poly;
    std::vector<std::vector<long>> power_table;
};

std::vector<long> poly_exact_div(std::vector<long> num, const std::vector<long>& den)
{
    // den is monic.
    std::size_t dn = den.size() - 1;
    std::vector<long> q(num.size() - dn, 0);
    for (std::size_t i = num.size(); i-- > dn;) {
        long c = num[i];
        q[i - dn] = c;
        if (c != 0)
            for (std::size_t j = 0; j <= dn; ++j)
                num[i - dn + j] -= c * den[j];
    }
    for (std::size_t i = 0; i < dn; ++i)
        if (num[i] != 0)
            throw InternalError("cyclotomic polynomial division left a remainder");
    return q;
}

std::vector<long> compute_cyclotomic(unsigned m)
{
    std::vector<long> p(m + 1, 0);
    p[0] = -1;
    p[m] = 1;
    for (unsigned d = 1; d < m; ++d)
        if (m % d == 0)
            p = poly_exact_div(p, cyclotomic_polynomial(d));
    return p;
}

std::mutex& field_mutex()
{
    static std::mutex mu;
    return mu;
}

const CycloField& cyclotomic_field(unsigned m)
{
    static std::map<unsigned, std::unique_ptr<CycloField>> cache;
    {
        std::lock_guard lock(field_mutex());
        auto it = cache.find(m);
        if (it != cache.end())
            return *it->second;
    }
    auto field = std::make_unique<CycloField>();
    field->order = m;
    field->poly = cyclotomic_polynomial(m);
    field->degree = static_cast<unsigned>(field->poly.size() - 1);
    const unsigned deg = field->degree;
    std::vector<long> cur(deg, 0);
    if (deg > 0)
        cur[0] = 1;
    for (unsigned k = 0; k < m; ++k) {
        field->power_table.push_back(cur);
        // multiply by x and reduce by the monic poly
        long top = cur[deg - 1];
        for (unsigned j = deg - 1; j > 0; --j)
            cur[j] = cur[j - 1] - top * field->poly[j];
        cur[0] = -top * field->poly[0];
    }
    std::lock_guard lock(field_mutex());
    auto [it, inserted] = cache.emplace(m, std::move(field));
    return *it->second;
}

using QPoly = RatVec; // dense, low degree first

void trim(QPoly& p)
{
    while (!p.empty() && p.back() == 0)
        p.pop_back();
}

// Returns (q, r) with a = q*b + r.
std::pair<QPoly, QPoly> divmod(QPoly a, const QPoly& b)
{
    trim(a);
    QPoly q;
    if (a.size() >= b.size())
        q.assign(a.size() - b.size() + 1, Rational(0));
    while (a.size() >= b.size() && !a.empty()) {
        Rational c = a.back() / b.back();
        std::size_t shift = a.size() - b.size();
        q[shift] = c;
        for (std::size_t j = 0; j < b.size(); ++j)
            a[shift + j] -= c * b[j];
        trim(a);
    }
    trim(q);
    return {q, a};
}

QPoly mul(const QPoly& a, const QPoly& b)
{
    if (a.empty() || b.empty())
        return {};
    QPoly r(a.size() + b.size() - 1, Rational(0));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j)
            r[i + j] += a[i] * b[j];
    trim(r);
    return r;
}

QPoly sub(QPoly a, const QPoly& b)
{
    if (a.size() < b.size())
        a.resize(b.size(), Rational(0));
    for (std::size_t i = 0; i < b.size(); ++i)
        a[i] -= b[i];
    trim(a);
    return a;
}

} // namespace

const std::vector<long>& cyclotomic_polynomial(unsigned m)
{
    if (m == 0)
        throw MathError("cyclotomic order must be positive");
    static std::map<unsigned, std::vector<long>> cache;
    static std::mutex mu;
    {
        std::lock_guard lock(mu);
        auto it = cache.find(m);
        if (it != cache.end())
            return it->second;
    }
    std::vector<long> p = (m == 1) ? std::vector<long>{-1, 1} : compute_cyclotomic(m);
    std::lock_guard lock(mu);
    return cache.emplace(m, std::move(p)).first->second;
}

Cyclotomic::Cyclotomic(unsigned order, RatVec coeffs) : order_(order), coeffs_(std::move(coeffs))
{
    normalize();
}

void Cyclotomic::normalize()
{
    if (order_ == 1)
        return;
    for (std::size_t i = 1; i < coeffs_.size(); ++i)
        if (coeffs_[i] != 0)
            return;
    Rational c = coeffs_.empty() ? Rational(0) : coeffs_[0];
    order_ = 1;
    coeffs_.assign(1, c);
}

Cyclotomic Cyclotomic::from_exponents(unsigned order, const RatVec& by_exponent)
{
    const CycloField& f = cyclotomic_field(order);
    RatVec out(f.degree, Rational(0));
    for (unsigned k = 0; k < order; ++k) {
        const Rational& c = by_exponent[k];
        if (c == 0)
            continue;
        const auto& row = f.power_table[k];
        for (unsigned j = 0; j < f.degree; ++j)
            if (row[j] != 0)
                out[j] += c * row[j];
    }
    return Cyclotomic(order, std::move(out));
}

Cyclotomic Cyclotomic::root_of_unity(long k, unsigned m)
{
    if (m == 0)
        throw MathError("root of unity order must be positive");
    long r = ((k % static_cast<long>(m)) + m) % m;
    long g = std::gcd(r, static_cast<long>(m));
    unsigned order = (r == 0) ? 1u : static_cast<unsigned>(m / g);
    if (order == 1)
        return Cyclotomic(1);
    RatVec ex(order, Rational(0));
    ex[static_cast<std::size_t>(r / g)] = 1;
    return from_exponents(order, ex);
}

Cyclotomic Cyclotomic::exp_2pi_i(const Rational& q)
{
    Rational f = frac(q);
    return root_of_unity(f.get_num().get_si(), static_cast<unsigned>(f.get_den().get_ui()));
}

std::optional<Rational> Cyclotomic::to_rational() const
{
    if (order_ == 1)
        return coeffs_[0];
    return std::nullopt;
}

Cyclotomic Cyclotomic::promoted(unsigned m) const
{
    if (m % order_ != 0)
        throw MathError("cannot promote Q(zeta_" + std::to_string(order_) + ") to Q(zeta_" +
                        std::to_string(m) + ")");
    if (m == order_)
        return *this;
    RatVec ex(m, Rational(0));
    unsigned step = m / order_;
    for (std::size_t k = 0; k < coeffs_.size(); ++k)
        ex[(k * step) % m] += coeffs_[k];
    Cyclotomic out = from_exponents(m, ex);
    // from_exponents normalizes rationals back to order 1; keep the requested
    // order so callers can combine coefficient vectors positionally.
    if (out.order_ == 1 && m != 1) {
        Cyclotomic keep;
        keep.order_ = m;
        keep.coeffs_.assign(cyclotomic_field(m).degree, Rational(0));
        keep.coeffs_[0] = out.coeffs_[0];
        return keep;
    }
    return out;
}

Cyclotomic& Cyclotomic::operator+=(const Cyclotomic& o)
{
    if (order_ == 1 && o.order_ == 1) {
        coeffs_[0] += o.coeffs_[0];
        return *this;
    }
    unsigned m = static_cast<unsigned>(lcm(order_, o.order_));
    Cyclotomic a = promoted(m);
    Cyclotomic b = o.promoted(m);
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
        a.coeffs_[i] += b.coeffs_[i];
    a.normalize();
    return *this = std::move(a);
}

Cyclotomic& Cyclotomic::operator-=(const Cyclotomic& o)
{
    return *this += -o;
}

Cyclotomic Cyclotomic::operator-() const
{
    Cyclotomic r = *this;
    for (auto& c : r.coeffs_)
        c = -c;
    return r;
}

Cyclotomic& Cyclotomic::operator*=(const Cyclotomic& o)
{
    if (o.order_ == 1) {
        if (o.coeffs_[0] == 0)
            return *this = Cyclotomic();
        for (auto& c : coeffs_)
            c *= o.coeffs_[0];
        return *this;
    }
    if (order_ == 1) {
        Rational s = coeffs_[0];
        *this = o;
        if (s == 0)
            return *this = Cyclotomic();
        for (auto& c : coeffs_)
            c *= s;
        return *this;
    }
    unsigned m = static_cast<unsigned>(lcm(order_, o.order_));
    Cyclotomic a = promoted(m);
    Cyclotomic b = o.promoted(m);
    // Integer product of the cleared numerators, reduced by the monic Phi_m,
    // then one division: no gcd inside the quadratic loops.
    auto clear = [](const RatVec& v, Integer& den) {
        den = 1;
        for (const auto& c : v)
            if (c != 0)
                mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.get_den_mpz_t());
        std::vector<Integer> out(v.size());
        for (std::size_t i = 0; i < v.size(); ++i)
            if (v[i] != 0)
                out[i] = v[i].get_num() * (den / v[i].get_den());
        return out;
    };
    Integer da, db;
    auto A = clear(a.coeffs_, da), B = clear(b.coeffs_, db);
    const CycloField& f = cyclotomic_field(m);
    const std::size_t deg = f.degree;
    std::vector<Integer> prod(2 * deg - 1);
    for (std::size_t i = 0; i < deg; ++i) {
        if (A[i] == 0)
            continue;
        for (std::size_t j = 0; j < deg; ++j)
            if (B[j] != 0)
                mpz_addmul(prod[i + j].get_mpz_t(), A[i].get_mpz_t(), B[j].get_mpz_t());
    }
    for (std::size_t k = prod.size(); k-- > deg;) {
        if (prod[k] == 0)
            continue;
        const Integer c = prod[k];
        for (std::size_t j = 0; j < deg; ++j)
            if (f.poly[j] != 0)
                prod[k - deg + j] -= c * f.poly[j];
        prod[k] = 0;
    }
    Integer den = da * db;
    RatVec out(deg);
    for (std::size_t i = 0; i < deg; ++i) {
        if (prod[i] == 0)
            continue;
        out[i] = Rational(prod[i], den);
        out[i].canonicalize();
    }
    return *this = Cyclotomic(m, std::move(out));
}

Cyclotomic Cyclotomic::galois(long k) const
{
    if (order_ == 1)
        return *this;
    long m = static_cast<long>(order_);
    long kk = ((k % m) + m) % m;
    if (std::gcd(kk, m) != 1)
        throw MathError("Galois exponent " + std::to_string(k) + " is not a unit mod " + std::to_string(m));
    RatVec ex(order_, Rational(0));
    for (std::size_t j = 0; j < coeffs_.size(); ++j)
        if (coeffs_[j] != 0)
            ex[static_cast<std::size_t>((static_cast<long>(j) * kk) % m)] = coeffs_[j];
    return from_exponents(order_, ex);
}

Cyclotomic Cyclotomic::inverse() const
{
    if (is_zero())
        throw DivisionByZero();
    if (order_ == 1)
        return Cyclotomic(1 / coeffs_[0]);
    // Extended Euclid: find u with a*u = 1 mod Phi_M.
    const CycloField& f = cyclotomic_field(order_);
    QPoly modulus;
    for (long c : f.poly)
        modulus.emplace_back(c);
    QPoly a = coeffs_;
    trim(a);
    QPoly r0 = modulus, r1 = a;
    QPoly s0, s1{Rational(1)}; // coefficients of a
    while (!(r1.size() == 1)) {
        if (r1.empty())
            throw InternalError("non-invertible cyclotomic element");
        auto [q, r] = divmod(r0, r1);
        QPoly s2 = sub(s0, mul(q, s1));
        r0 = std::move(r1);
        r1 = std::move(r);
        s0 = std::move(s1);
        s1 = std::move(s2);
    }
    Rational lead = r1[0];
    auto [q, rem] = divmod(s1, modulus);
    (void)q;
    RatVec out(f.degree, Rational(0));
    for (std::size_t i = 0; i < rem.size(); ++i)
        out[i] = rem[i] / lead;
    return Cyclotomic(order_, std::move(out));
}

bool operator==(const Cyclotomic& a, const Cyclotomic& b)
{
    if (a.order_ == b.order_)
        return a.coeffs_ == b.coeffs_;
    if (a.order_ == 1 || b.order_ == 1)
        return false; // normalized: rational values live at order 1
    unsigned m = static_cast<unsigned>(lcm(a.order_, b.order_));
    return a.promoted(m).coeffs_ == b.promoted(m).coeffs_;
}

std::string Cyclotomic::str() const
{
    if (order_ == 1)
        return to_string(coeffs_[0]);
    std::ostringstream os;
    bool first = true;
    for (std::size_t k = coeffs_.size(); k-- > 0;) {
        const Rational& c = coeffs_[k];
        if (c == 0)
            continue;
        bool neg = c < 0;
        Rational mag = neg ? Rational(-c) : c;
        if (first)
            os << (neg ? "-" : "");
        else
            os << (neg ? " - " : " + ");
        first = false;
        if (k == 0) {
            os << to_string(mag);
        } else {
            if (mag != 1)
                os << to_string(mag) << "*";
            os << "E(" << order_ << ")^" << k;
        }
    }
    return os.str();
}

Cyclotomic parse_cyclotomic(std::string_view text)
{
    // terms: [sign] (rational ['*' E(M)[^k]] | E(M)[^k])
    std::size_t i = 0;
    auto skip = [&] {
        while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i])))
            ++i;
    };
    auto read_int = [&]() -> long {
        skip();
        std::size_t start = i;
        while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i])))
            ++i;
        if (start == i)
            throw ValidationError("expected integer in cyclotomic literal '" + std::string(text) + "'");
        return std::stol(std::string(text.substr(start, i - start)));
    };
    auto read_root = [&]() -> Cyclotomic {
        // at 'E'
        ++i;
        skip();
        if (i >= text.size() || text[i] != '(')
            throw ValidationError("expected '(' after E");
        ++i;
        long m = read_int();
        skip();
        if (i >= text.size() || text[i] != ')')
            throw ValidationError("expected ')' in E(M)");
        ++i;
        skip();
        long k = 1;
        if (i < text.size() && text[i] == '^') {
            ++i;
            k = read_int();
        }
        if (m <= 0)
            throw ValidationError("E(M) needs M >= 1");
        return Cyclotomic::root_of_unity(k, static_cast<unsigned>(m));
    };
    Cyclotomic total;
    skip();
    if (i >= text.size())
        throw ValidationError("empty cyclotomic literal");
    bool first = true;
    while (true) {
        skip();
        if (i >= text.size())
            break;
        int sign = 1;
        if (text[i] == '+' || text[i] == '-') {
            sign = text[i] == '-' ? -1 : 1;
            ++i;
            skip();
        } else if (!first) {
            throw ValidationError("expected '+' or '-' in cyclotomic literal '" + std::string(text) + "'");
        }
        first = false;
        Cyclotomic term;
        if (i < text.size() && text[i] == 'E') {
            term = read_root();
        } else {
            std::size_t start = i;
            while (i < text.size() &&
                   (std::isdigit(static_cast<unsigned char>(text[i])) || text[i] == '/'))
                ++i;
            Rational c = parse_rational(text.substr(start, i - start));
            skip();
            if (i < text.size() && text[i] == '*') {
                ++i;
                skip();
                if (i >= text.size() || text[i] != 'E')
                    throw ValidationError("expected E(M) after '*'");
                term = Cyclotomic(c) * read_root();
            } else {
                term = Cyclotomic(c);
            }
        }
        total += sign > 0 ? term : -term;
    }
    return total;
}

} // namespace chambercross
