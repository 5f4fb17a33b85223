#include "chambercross/polyalg.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <sstream>

namespace chambercross {

Integer Monomial::factorial() const
{
    Integer f = 1;
    for (auto e : exp) {
        if (e > 1) {
            Integer t;
            mpz_fac_ui(t.get_mpz_t(), e);
            f *= t;
        }
    }
    return f;
}

bool LinearForm::is_zero() const
{
    return std::all_of(coeffs.begin(), coeffs.end(), [](const Rational& c) { return c == 0; });
}

// ---------------------------------------------------------------- MultiPoly

MultiPoly::MultiPoly(std::size_t rank) : rank_(rank)
{
    if (rank > kMaxVars)
        throw ValidationError("rank " + std::to_string(rank) + " exceeds the supported maximum of " +
                              std::to_string(kMaxVars));
}

MultiPoly::MultiPoly(std::size_t rank, const Cyclotomic& constant) : MultiPoly(rank)
{
    add_term(Monomial{}, constant);
}

MultiPoly MultiPoly::variable(std::size_t rank, std::size_t index)
{
    MultiPoly p(rank);
    Monomial m;
    m.exp[index] = 1;
    p.add_term(m, 1);
    return p;
}

MultiPoly MultiPoly::linear(const RatVec& coeffs, const Rational& constant)
{
    MultiPoly p(coeffs.size());
    for (std::size_t i = 0; i < coeffs.size(); ++i) {
        Monomial m;
        m.exp[i] = 1;
        p.add_term(m, coeffs[i]);
    }
    p.add_term(Monomial{}, constant);
    return p;
}

MultiPoly MultiPoly::monomial(std::size_t rank, const Monomial& m, const Cyclotomic& c)
{
    MultiPoly p(rank);
    p.add_term(m, c);
    return p;
}

int MultiPoly::degree() const
{
    if (terms_.empty())
        return -1;
    return static_cast<int>(terms_.begin()->first.degree());
}

bool MultiPoly::is_homogeneous() const
{
    if (terms_.empty())
        return true;
    unsigned d = terms_.begin()->first.degree();
    return std::all_of(terms_.begin(), terms_.end(),
                       [d](const auto& t) { return t.first.degree() == d; });
}

bool MultiPoly::is_rational() const
{
    return std::all_of(terms_.begin(), terms_.end(),
                       [](const auto& t) { return t.second.is_rational(); });
}

MultiPoly MultiPoly::homogeneous_part(unsigned d) const
{
    MultiPoly out(rank_);
    for (const auto& [m, c] : terms_)
        if (m.degree() == d)
            out.terms_.emplace(m, c);
    return out;
}

Cyclotomic MultiPoly::coefficient(const Monomial& m) const
{
    auto it = terms_.find(m);
    return it == terms_.end() ? Cyclotomic() : it->second;
}

void MultiPoly::add_term(const Monomial& m, const Cyclotomic& c)
{
    if (c.is_zero())
        return;
    auto [it, inserted] = terms_.emplace(m, c);
    if (!inserted) {
        it->second += c;
        if (it->second.is_zero())
            terms_.erase(it);
    }
}

MultiPoly& MultiPoly::operator+=(const MultiPoly& o)
{
    if (o.rank_ != rank_)
        throw ValidationError("polynomial rank mismatch");
    for (const auto& [m, c] : o.terms_)
        add_term(m, c);
    return *this;
}

MultiPoly& MultiPoly::operator-=(const MultiPoly& o)
{
    if (o.rank_ != rank_)
        throw ValidationError("polynomial rank mismatch");
    for (const auto& [m, c] : o.terms_)
        add_term(m, -c);
    return *this;
}

MultiPoly& MultiPoly::operator*=(const Cyclotomic& c)
{
    if (c.is_zero()) {
        terms_.clear();
        return *this;
    }
    for (auto& [m, v] : terms_)
        v *= c;
    return *this;
}

MultiPoly MultiPoly::operator-() const
{
    MultiPoly r = *this;
    for (auto& [m, v] : r.terms_)
        v = -v;
    return r;
}

MultiPoly operator*(const MultiPoly& a, const MultiPoly& b)
{
    if (a.rank_ != b.rank_)
        throw ValidationError("polynomial rank mismatch");
    MultiPoly r(a.rank_);
    for (const auto& [ma, ca] : a.terms_)
        for (const auto& [mb, cb] : b.terms_)
            r.add_term(ma * mb, ca * cb);
    return r;
}

bool operator==(const MultiPoly& a, const MultiPoly& b)
{
    return a.rank_ == b.rank_ && a.terms_ == b.terms_;
}

MultiPoly MultiPoly::pow(unsigned n) const
{
    MultiPoly result(rank_, 1);
    MultiPoly base = *this;
    while (n > 0) {
        if (n & 1u)
            result = result * base;
        n >>= 1;
        if (n > 0)
            base = base * base;
    }
    return result;
}

Cyclotomic MultiPoly::evaluate(const RatVec& point) const
{
    if (point.size() != rank_)
        throw ValidationError("evaluation point has rank " + std::to_string(point.size()) +
                              ", polynomial has rank " + std::to_string(rank_));
    // powers[i][e] = point[i]^e
    std::vector<RatVec> powers(rank_);
    Rational rational_part = 0;
    Cyclotomic other;
    for (const auto& [m, c] : terms_) {
        Rational value = 1;
        for (std::size_t i = 0; i < rank_; ++i) {
            auto e = m.exp[i];
            if (e == 0)
                continue;
            auto& pw = powers[i];
            if (pw.empty())
                pw.emplace_back(1);
            while (pw.size() <= e)
                pw.push_back(pw.back() * point[i]);
            value *= pw[e];
        }
        if (c.is_rational())
            rational_part += c.coeffs()[0] * value;
        else
            other += c * Cyclotomic(value);
    }
    return other + Cyclotomic(rational_part);
}

MultiPoly MultiPoly::galois(long k) const
{
    MultiPoly out(rank_);
    for (const auto& [m, c] : terms_)
        out.terms_.emplace(m, c.galois(k));
    return out;
}

unsigned long MultiPoly::field_order() const
{
    unsigned long m = 1;
    for (const auto& [mono, c] : terms_)
        m = lcm(m, c.order());
    return m;
}

MultiPoly MultiPoly::partial(std::size_t i) const
{
    MultiPoly out(rank_);
    for (const auto& [m, c] : terms_) {
        if (m.exp[i] == 0)
            continue;
        Monomial d = m;
        --d.exp[i];
        out.add_term(d, c * Cyclotomic(static_cast<long>(m.exp[i])));
    }
    return out;
}

MultiPoly MultiPoly::substitute(const std::vector<MultiPoly>& images) const
{
    if (images.size() != rank_)
        throw ValidationError("substitution needs one image per variable");
    std::size_t new_rank = images.empty() ? 0 : images[0].rank();
    std::vector<std::vector<MultiPoly>> powers(rank_);
    MultiPoly out(new_rank);
    for (const auto& [m, c] : terms_) {
        MultiPoly term(new_rank, c);
        for (std::size_t i = 0; i < rank_; ++i) {
            auto e = m.exp[i];
            if (e == 0)
                continue;
            auto& pw = powers[i];
            if (pw.empty())
                pw.emplace_back(new_rank, 1);
            while (pw.size() <= e)
                pw.push_back(pw.back() * images[i]);
            term = term * pw[e];
        }
        out += term;
    }
    return out;
}

MultiPoly MultiPoly::compose(const RatMatrix& map, std::size_t new_rank) const
{
    if (map.size() != rank_)
        throw ValidationError("composition map has the wrong number of rows");
    std::vector<MultiPoly> images;
    images.reserve(rank_);
    for (const auto& row : map) {
        if (row.size() != new_rank)
            throw ValidationError("composition map has the wrong number of columns");
        images.push_back(MultiPoly::linear(row));
    }
    if (rank_ == 0) {
        MultiPoly out(new_rank);
        for (const auto& [m, c] : terms_)
            out.add_term(Monomial{}, c);
        return out;
    }
    return substitute(images);
}

MultiPoly MultiPoly::translate(const RatVec& gamma) const
{
    std::vector<MultiPoly> images;
    for (std::size_t i = 0; i < rank_; ++i) {
        RatVec row(rank_, Rational(0));
        row[i] = 1;
        images.push_back(MultiPoly::linear(row, -gamma[i]));
    }
    return substitute(images);
}

MultiPoly MultiPoly::with_rank(std::size_t new_rank) const
{
    MultiPoly out(new_rank);
    for (const auto& [m, c] : terms_) {
        for (std::size_t i = new_rank; i < rank_; ++i)
            if (m.exp[i] != 0)
                throw ValidationError("cannot drop a variable that is used");
        out.terms_.emplace(m, c);
    }
    return out;
}

namespace {

std::string monomial_str(const Monomial& m, std::size_t rank, std::string_view var)
{
    std::string s;
    for (std::size_t i = 0; i < rank; ++i) {
        if (m.exp[i] == 0)
            continue;
        if (!s.empty())
            s += "*";
        s += std::string(var) + std::to_string(i + 1);
        if (m.exp[i] > 1)
            s += "^" + std::to_string(m.exp[i]);
    }
    return s;
}

} // namespace

std::string MultiPoly::str(std::string_view var) const
{
    if (terms_.empty())
        return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [m, c] : terms_) {
        std::string mono = monomial_str(m, rank_, var);
        if (c.is_rational()) {
            Rational q = c.coeffs()[0];
            bool neg = q < 0;
            if (neg)
                q = -q;
            os << (first ? (neg ? "-" : "") : (neg ? " - " : " + "));
            if (mono.empty())
                os << to_string(q);
            else if (q == 1)
                os << mono;
            else
                os << to_string(q) << "*" << mono;
        } else {
            os << (first ? "" : " + ") << "(" << c.str() << ")";
            if (!mono.empty())
                os << "*" << mono;
        }
        first = false;
    }
    return os.str();
}

MultiPoly diff_apply(const MultiPoly& op, const MultiPoly& target)
{
    if (op.rank() != target.rank())
        throw ValidationError("operator and target ranks differ");
    MultiPoly out(target.rank());
    for (const auto& [mo, co] : op.terms()) {
        for (const auto& [mt, ct] : target.terms()) {
            bool ok = true;
            Integer falling = 1;
            Monomial rest;
            for (std::size_t i = 0; i < kMaxVars && ok; ++i) {
                if (mo.exp[i] > mt.exp[i]) {
                    ok = false;
                    break;
                }
                rest.exp[i] = static_cast<std::uint16_t>(mt.exp[i] - mo.exp[i]);
                for (unsigned k = 0; k < mo.exp[i]; ++k)
                    falling *= mt.exp[i] - k;
            }
            if (ok)
                out.add_term(rest, co * ct * Cyclotomic(Rational(falling)));
        }
    }
    return out;
}

MultiPoly directional_derivative(const RatVec& direction, const MultiPoly& p)
{
    return diff_apply(MultiPoly::linear(direction), p);
}

MultiPoly difference_apply(const RatVec& gamma, const MultiPoly& p)
{
    return p - p.translate(gamma);
}

// ---------------------------------------------------------------- shifts

Shift reduce_shift(const RatVec& y)
{
    Shift out;
    out.reserve(y.size());
    for (const auto& c : y)
        out.push_back(frac(c));
    return out;
}

bool is_zero_shift(const Shift& y)
{
    return std::all_of(y.begin(), y.end(), [](const Rational& c) { return c == 0; });
}

unsigned long shift_order(const Shift& y)
{
    unsigned long m = 1;
    for (const auto& c : y)
        m = lcm(m, c.get_den().get_ui());
    return m;
}

Cyclotomic character_value(const Shift& y, const IntVec& a)
{
    if (is_zero_shift(y))
        return 1;
    return Cyclotomic::exp_2pi_i(dot(y, a));
}

// ---------------------------------------------------------------- QuasiPoly

QuasiPoly::QuasiPoly(std::size_t rank) : rank_(rank) {}

QuasiPoly::QuasiPoly(const MultiPoly& p) : rank_(p.rank())
{
    add_term(Shift(p.rank(), Rational(0)), p);
}

QuasiPoly QuasiPoly::character(const Shift& y)
{
    QuasiPoly q(y.size());
    q.add_term(y, MultiPoly(y.size(), 1));
    return q;
}

bool QuasiPoly::is_polynomial() const
{
    return terms_.empty() || (terms_.size() == 1 && is_zero_shift(terms_.begin()->first));
}

unsigned QuasiPoly::period() const
{
    unsigned long m = 1;
    for (const auto& [y, p] : terms_)
        for (const auto& c : y)
            m = lcm(m, c.get_den().get_ui());
    return static_cast<unsigned>(m);
}

int QuasiPoly::degree() const
{
    int d = -1;
    for (const auto& [y, p] : terms_)
        d = std::max(d, p.degree());
    return d;
}

MultiPoly QuasiPoly::polynomial_part() const
{
    auto it = terms_.find(Shift(rank_, Rational(0)));
    return it == terms_.end() ? MultiPoly(rank_) : it->second;
}

void QuasiPoly::add_term(const Shift& y, const MultiPoly& p)
{
    if (y.size() != rank_ || p.rank() != rank_)
        throw ValidationError("quasi-polynomial rank mismatch");
    if (p.is_zero())
        return;
    Shift key = reduce_shift(y);
    auto [it, inserted] = terms_.emplace(key, p);
    if (!inserted) {
        it->second += p;
        if (it->second.is_zero())
            terms_.erase(it);
    }
}

QuasiPoly& QuasiPoly::operator+=(const QuasiPoly& o)
{
    if (o.rank_ != rank_)
        throw ValidationError("quasi-polynomial rank mismatch");
    for (const auto& [y, p] : o.terms_)
        add_term(y, p);
    return *this;
}

QuasiPoly& QuasiPoly::operator-=(const QuasiPoly& o)
{
    if (o.rank_ != rank_)
        throw ValidationError("quasi-polynomial rank mismatch");
    for (const auto& [y, p] : o.terms_)
        add_term(y, -p);
    return *this;
}

QuasiPoly& QuasiPoly::operator*=(const Cyclotomic& c)
{
    if (c.is_zero()) {
        terms_.clear();
        return *this;
    }
    for (auto& [y, p] : terms_)
        p *= c;
    return *this;
}

QuasiPoly QuasiPoly::operator-() const
{
    QuasiPoly r = *this;
    for (auto& [y, p] : r.terms_)
        p = -p;
    return r;
}

QuasiPoly operator*(const QuasiPoly& a, const QuasiPoly& b)
{
    if (a.rank_ != b.rank_)
        throw ValidationError("quasi-polynomial rank mismatch");
    QuasiPoly r(a.rank_);
    for (const auto& [ya, pa] : a.terms_) {
        for (const auto& [yb, pb] : b.terms_) {
            Shift y(a.rank_);
            for (std::size_t i = 0; i < a.rank_; ++i)
                y[i] = ya[i] + yb[i];
            r.add_term(y, pa * pb);
        }
    }
    return r;
}

Cyclotomic QuasiPoly::evaluate_exact(const IntVec& a) const
{
    if (a.size() != rank_)
        throw ValidationError("evaluation point has rank " + std::to_string(a.size()) +
                              ", quasi-polynomial has rank " + std::to_string(rank_));
    // Galois conjugation keeps the shift denominator, so for rational-valued
    // functions each partial sum below is rational and no field larger than
    // a single term's is ever formed.
    RatVec pt = to_rational(a);
    std::map<unsigned long, Cyclotomic> parts;
    for (const auto& [y, p] : terms_)
        parts[shift_order(y)] += character_value(y, a) * p.evaluate(pt);
    Cyclotomic total;
    for (const auto& [d, v] : parts)
        total += v;
    return total;
}

Rational QuasiPoly::evaluate(const IntVec& a) const
{
    Cyclotomic v = evaluate_exact(a);
    auto q = v.to_rational();
    if (!q)
        throw InternalError("quasi-polynomial value " + v.str() + " is not rational");
    return *q;
}

QuasiPoly QuasiPoly::translate(const IntVec& gamma) const
{
    QuasiPoly out(rank_);
    RatVec g = to_rational(gamma);
    for (const auto& [y, p] : terms_) {
        // e_y(a - gamma) = e_y(a) e_y(-gamma)
        Cyclotomic phase = Cyclotomic::exp_2pi_i(-dot(y, gamma));
        out.add_term(y, p.translate(g) * phase);
    }
    return out;
}

QuasiPoly QuasiPoly::compose(const RatMatrix& map, std::size_t new_rank) const
{
    QuasiPoly out(new_rank);
    for (const auto& [y, p] : terms_) {
        Shift ny(new_rank, Rational(0));
        for (std::size_t i = 0; i < rank_; ++i)
            for (std::size_t j = 0; j < new_rank; ++j)
                ny[j] += map[i][j] * y[i];
        out.add_term(ny, p.compose(map, new_rank));
    }
    return out;
}

namespace {

// Iterates all h in [0, m)^rank in lexicographic order.
template <class F>
void for_each_residue(std::size_t rank, unsigned m, F&& f)
{
    IntVec h(rank, 0);
    while (true) {
        f(h);
        std::size_t i = rank;
        while (i > 0) {
            --i;
            if (++h[i] < static_cast<long>(m))
                break;
            h[i] = 0;
            if (i == 0)
                return;
        }
        if (rank == 0)
            return;
    }
}

} // namespace

std::size_t QuasiPoly::coset_count() const
{
    std::size_t n = 1, m = period();
    for (std::size_t i = 0; i < rank_; ++i) {
        if (n > SIZE_MAX / m)
            return SIZE_MAX;
        n *= m;
    }
    return n;
}

std::vector<CosetPolynomial> QuasiPoly::cosets() const
{
    unsigned m = period();
    std::vector<CosetPolynomial> out;
    for_each_residue(rank_, m, [&](const IntVec& h) {
        std::map<unsigned long, MultiPoly> parts;
        for (const auto& [y, py] : terms_) {
            auto [it, fresh] = parts.try_emplace(shift_order(y), rank_);
            it->second += py * character_value(y, h);
        }
        MultiPoly p(rank_);
        for (const auto& [d, part] : parts)
            p += part;
        if (!p.is_rational())
            throw InternalError("coset polynomial has non-rational coefficients: " + p.str());
        out.push_back({h, p});
    });
    return out;
}

QuasiPoly QuasiPoly::from_cosets(std::size_t rank, unsigned period,
                                 const std::vector<CosetPolynomial>& cosets)
{
    // P_y = M^{-r} sum_h e_y(-h) P_h  for y in (1/M) Z^r / Z^r
    QuasiPoly out(rank);
    Rational scale = 1;
    for (std::size_t i = 0; i < rank; ++i)
        scale /= period;
    for_each_residue(rank, period, [&](const IntVec& n) {
        Shift y(rank);
        for (std::size_t i = 0; i < rank; ++i)
            y[i] = ratio(n[i], static_cast<long>(period));
        MultiPoly py(rank);
        for (const auto& c : cosets) {
            IntVec neg(c.representative.size());
            for (std::size_t i = 0; i < neg.size(); ++i)
                neg[i] = -c.representative[i];
            py += c.poly * character_value(y, neg);
        }
        y = reduce_shift(y);
        out.add_term(y, py * Cyclotomic(scale));
    });
    return out;
}

std::string QuasiPoly::str(std::string_view var) const
{
    if (terms_.empty())
        return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [y, p] : terms_) {
        if (!first)
            os << " + ";
        first = false;
        if (!is_zero_shift(y)) {
            unsigned long m = 1;
            for (const auto& c : y)
                m = lcm(m, c.get_den().get_ui());
            os << "E(" << m << ")^(";
            bool f2 = true;
            for (std::size_t i = 0; i < rank_; ++i) {
                Rational n = y[i] * static_cast<long>(m);
                if (n == 0)
                    continue;
                if (!f2)
                    os << " + ";
                f2 = false;
                if (n != 1)
                    os << to_string(n) << "*";
                os << var << (i + 1);
            }
            os << ")*";
        }
        os << "(" << p.str(var) << ")";
    }
    return os.str();
}

std::string QuasiPoly::coset_str(std::string_view var) const
{
    std::ostringstream os;
    unsigned m = period();
    for (const auto& c : cosets()) {
        os << var << " = (";
        for (std::size_t i = 0; i < c.representative.size(); ++i)
            os << (i ? "," : "") << c.representative[i];
        os << ") mod " << m << ": " << c.poly.str(var) << "\n";
    }
    return os.str();
}

QuasiPoly difference_apply(const IntVec& gamma, const QuasiPoly& k)
{
    return k - k.translate(gamma);
}

// ---------------------------------------------------------------- parser

namespace {

class ExprParser {
public:
    ExprParser(std::string_view text, std::size_t rank, std::string_view var)
        : text_(text), rank_(rank), var_(var)
    {
    }

    QuasiPoly parse()
    {
        QuasiPoly v = expr();
        skip();
        if (pos_ != text_.size())
            fail("unexpected trailing input");
        return v;
    }

private:
    [[noreturn]] void fail(const std::string& msg) const
    {
        throw ValidationError("cannot parse '" + std::string(text_) + "' at offset " +
                              std::to_string(pos_) + ": " + msg);
    }

    void skip()
    {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_])))
            ++pos_;
    }

    bool accept(char c)
    {
        skip();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    long integer()
    {
        skip();
        std::size_t start = pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_])))
            ++pos_;
        if (start == pos_)
            fail("expected integer");
        return std::stol(std::string(text_.substr(start, pos_ - start)));
    }

    QuasiPoly constant(const Cyclotomic& c) const { return QuasiPoly(MultiPoly(rank_, c)); }

    static std::optional<Cyclotomic> as_constant(const QuasiPoly& q)
    {
        if (!q.is_polynomial())
            return std::nullopt;
        MultiPoly p = q.polynomial_part();
        if (p.degree() > 0)
            return std::nullopt;
        return p.coefficient(Monomial{});
    }

    QuasiPoly expr()
    {
        QuasiPoly v(rank_);
        skip();
        bool neg = false;
        if (accept('-'))
            neg = true;
        else
            accept('+');
        v = term();
        if (neg)
            v = -v;
        while (true) {
            if (accept('+'))
                v += term();
            else if (accept('-'))
                v -= term();
            else
                break;
        }
        return v;
    }

    QuasiPoly term()
    {
        QuasiPoly v = unary();
        while (true) {
            if (accept('*')) {
                v = v * unary();
            } else if (accept('/')) {
                auto c = as_constant(unary());
                if (!c || c->is_zero())
                    fail("division only by nonzero constants");
                v *= c->inverse();
            } else {
                break;
            }
        }
        return v;
    }

    QuasiPoly unary()
    {
        if (accept('-'))
            return -unary();
        return power();
    }

    QuasiPoly power()
    {
        skip();
        if (pos_ < text_.size() && text_[pos_] == 'E' &&
            (var_ != "E" || (pos_ + 1 < text_.size() && text_[pos_ + 1] == '('))) {
            ++pos_;
            if (!accept('('))
                fail("expected '(' after E");
            long m = integer();
            if (m <= 0)
                fail("E(M) needs M >= 1");
            if (!accept(')'))
                fail("expected ')'");
            if (accept('^')) {
                skip();
                if (accept('(')) {
                    QuasiPoly e = expr();
                    if (!accept(')'))
                        fail("expected ')'");
                    return root_power(static_cast<unsigned>(m), e);
                }
                long k = integer();
                return constant(Cyclotomic::root_of_unity(k, static_cast<unsigned>(m)));
            }
            return constant(Cyclotomic::root_of_unity(1, static_cast<unsigned>(m)));
        }
        QuasiPoly base = primary();
        if (accept('^')) {
            long k = integer();
            QuasiPoly r = constant(1);
            for (long i = 0; i < k; ++i)
                r = r * base;
            return r;
        }
        return base;
    }

    // E(M)^(n . a + c) with integral n and c.
    QuasiPoly root_power(unsigned m, const QuasiPoly& exponent)
    {
        if (!exponent.is_polynomial())
            fail("exponent of E(M) must be linear");
        MultiPoly p = exponent.polynomial_part();
        if (p.degree() > 1)
            fail("exponent of E(M) must be linear");
        Shift y(rank_, Rational(0));
        Cyclotomic c0 = 1;
        for (const auto& [mono, c] : p.terms()) {
            auto q = c.to_rational();
            if (!q || q->get_den() != 1)
                fail("exponent of E(M) needs integer coefficients");
            if (mono.degree() == 0) {
                c0 = Cyclotomic::root_of_unity(q->get_num().get_si(), m);
            } else {
                for (std::size_t i = 0; i < rank_; ++i)
                    if (mono.exp[i] == 1)
                        y[i] = *q / static_cast<long>(m);
            }
        }
        QuasiPoly ch = QuasiPoly::character(y);
        return ch * c0;
    }

    QuasiPoly primary()
    {
        skip();
        if (pos_ >= text_.size())
            fail("unexpected end of input");
        char c = text_[pos_];
        if (c == '(') {
            ++pos_;
            QuasiPoly v = expr();
            if (!accept(')'))
                fail("expected ')'");
            return v;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t start = pos_;
            while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_])))
                ++pos_;
            Rational q;
            q.set_str(std::string(text_.substr(start, pos_ - start)), 10);
            return constant(q);
        }
        if (text_.substr(pos_, var_.size()) == var_) {
            pos_ += var_.size();
            long idx = integer();
            if (idx < 1 || static_cast<std::size_t>(idx) > rank_)
                fail("variable index out of range");
            return QuasiPoly(MultiPoly::variable(rank_, static_cast<std::size_t>(idx - 1)));
        }
        fail(std::string("unexpected character '") + c + "'");
    }

    std::string_view text_;
    std::size_t rank_;
    std::string_view var_;
    std::size_t pos_ = 0;
};

} // namespace

QuasiPoly parse_quasi(std::string_view text, std::size_t rank, std::string_view var)
{
    return ExprParser(text, rank, var).parse();
}

MultiPoly parse_poly(std::string_view text, std::size_t rank, std::string_view var)
{
    QuasiPoly q = parse_quasi(text, rank, var);
    if (!q.is_polynomial())
        throw ValidationError("expected a polynomial, got a quasi-polynomial: " + std::string(text));
    return q.polynomial_part();
}

} // namespace chambercross
