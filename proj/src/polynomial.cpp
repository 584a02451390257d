#include "loopgrowth/polynomial.hpp"

#include "loopgrowth/error.hpp"

#include <algorithm>
#include <sstream>

namespace loopgrowth {

namespace {

const Integer kZero{0};

}  // namespace

IntPolynomial::IntPolynomial(std::vector<Integer> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

IntPolynomial::IntPolynomial(std::initializer_list<long> coeffs)
{
    coeffs_.reserve(coeffs.size());
    for (long c : coeffs)
        coeffs_.emplace_back(c);
    trim();
}

IntPolynomial IntPolynomial::constant(const Integer& c) { return IntPolynomial(std::vector<Integer>{c}); }

IntPolynomial IntPolynomial::monomial(const Integer& c, std::size_t degree)
{
    std::vector<Integer> v(degree + 1);
    v[degree] = c;
    return IntPolynomial(std::move(v));
}

void IntPolynomial::trim()
{
    while (!coeffs_.empty() && coeffs_.back() == 0)
        coeffs_.pop_back();
}

const Integer& IntPolynomial::operator[](std::size_t i) const { return i < coeffs_.size() ? coeffs_[i] : kZero; }

const Integer& IntPolynomial::leading() const { return is_zero() ? kZero : coeffs_.back(); }

Integer IntPolynomial::content() const
{
    Integer g = 0;
    for (const auto& c : coeffs_) {
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
        if (g == 1)
            break;
    }
    return g;
}

IntPolynomial IntPolynomial::primitive_part() const
{
    if (is_zero())
        return {};
    Integer g = content();
    if (leading() < 0)
        g = -g;
    std::vector<Integer> out(coeffs_.size());
    for (std::size_t i = 0; i < coeffs_.size(); ++i)
        mpz_divexact(out[i].get_mpz_t(), coeffs_[i].get_mpz_t(), g.get_mpz_t());
    return IntPolynomial(std::move(out));
}

IntPolynomial IntPolynomial::derivative() const
{
    if (coeffs_.size() <= 1)
        return {};
    std::vector<Integer> out(coeffs_.size() - 1);
    for (std::size_t i = 1; i < coeffs_.size(); ++i)
        out[i - 1] = coeffs_[i] * static_cast<unsigned long>(i);
    return IntPolynomial(std::move(out));
}

IntPolynomial IntPolynomial::shifted(std::size_t k) const
{
    if (is_zero() || k == 0)
        return *this;
    std::vector<Integer> out(coeffs_.size() + k);
    std::copy(coeffs_.begin(), coeffs_.end(), out.begin() + static_cast<std::ptrdiff_t>(k));
    return IntPolynomial(std::move(out));
}

Rational IntPolynomial::evaluate(const Rational& x) const
{
    Rational acc = 0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it)
        acc = acc * x + *it;
    return acc;
}

int IntPolynomial::sign_at(const Rational& x) const
{
    // Homogenized Horner on numerator/denominator avoids rational normalization.
    const Integer& p = x.get_num();
    const Integer& q = x.get_den();
    Integer acc = 0;
    Integer qpow = 1;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
        acc = acc * p + *it * qpow;
        qpow *= q;
    }
    return sgn(acc);
}

IntPolynomial IntPolynomial::operator-() const
{
    std::vector<Integer> out(coeffs_.size());
    for (std::size_t i = 0; i < coeffs_.size(); ++i)
        out[i] = -coeffs_[i];
    return IntPolynomial(std::move(out));
}

IntPolynomial operator+(const IntPolynomial& a, const IntPolynomial& b)
{
    std::vector<Integer> out(std::max(a.coeffs_.size(), b.coeffs_.size()));
    for (std::size_t i = 0; i < out.size(); ++i)
        out[i] = a[i] + b[i];
    return IntPolynomial(std::move(out));
}

IntPolynomial operator-(const IntPolynomial& a, const IntPolynomial& b)
{
    std::vector<Integer> out(std::max(a.coeffs_.size(), b.coeffs_.size()));
    for (std::size_t i = 0; i < out.size(); ++i)
        out[i] = a[i] - b[i];
    return IntPolynomial(std::move(out));
}

IntPolynomial operator*(const IntPolynomial& a, const IntPolynomial& b)
{
    if (a.is_zero() || b.is_zero())
        return {};
    std::vector<Integer> out(a.coeffs_.size() + b.coeffs_.size() - 1);
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
        if (a.coeffs_[i] == 0)
            continue;
        for (std::size_t j = 0; j < b.coeffs_.size(); ++j)
            mpz_addmul(out[i + j].get_mpz_t(), a.coeffs_[i].get_mpz_t(), b.coeffs_[j].get_mpz_t());
    }
    return IntPolynomial(std::move(out));
}

IntPolynomial operator*(const Integer& c, const IntPolynomial& p)
{
    std::vector<Integer> out(p.coeffs_.size());
    for (std::size_t i = 0; i < out.size(); ++i)
        out[i] = c * p.coeffs_[i];
    return IntPolynomial(std::move(out));
}

std::string IntPolynomial::to_string() const
{
    if (is_zero())
        return "0";
    std::ostringstream os;
    bool first = true;
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
        const Integer& c = coeffs_[i];
        if (c == 0)
            continue;
        Integer mag = abs(c);
        if (first)
            os << (c < 0 ? "-" : "");
        else
            os << (c < 0 ? " - " : " + ");
        if (i == 0 || mag != 1)
            os << mag;
        if (i > 0) {
            if (mag != 1)
                os << '*';
            os << 'z';
            if (i > 1)
                os << '^' << i;
        }
        first = false;
    }
    return os.str();
}

IntPolynomial pseudo_remainder(const IntPolynomial& a, const IntPolynomial& b)
{
    if (b.is_zero())
        throw validation_error("pseudo-division by the zero polynomial");
    std::vector<Integer> r(a.coeffs().begin(), a.coeffs().end());
    const int db = b.degree();
    const Integer& lb = b.leading();
    int dr = a.degree();
    int steps = std::max(a.degree() - db + 1, 0);
    while (dr >= db && dr >= 0) {
        Integer lr = r[static_cast<std::size_t>(dr)];
        for (auto& c : r)
            c *= lb;
        for (int j = 0; j <= db; ++j)
            r[static_cast<std::size_t>(dr - db + j)] -= lr * b[static_cast<std::size_t>(j)];
        --steps;
        while (dr >= 0 && r[static_cast<std::size_t>(dr)] == 0)
            --dr;
    }
    IntPolynomial rem(std::move(r));
    // Complete the multiplier lc(b)^(deg a - deg b + 1) when leading terms cancelled early.
    for (; steps > 0; --steps)
        rem = lb * rem;
    return rem;
}

IntPolynomial exact_quotient(const IntPolynomial& a, const IntPolynomial& b)
{
    if (b.is_zero())
        throw validation_error("division by the zero polynomial");
    if (a.is_zero())
        return {};
    const int da = a.degree();
    const int db = b.degree();
    if (da < db)
        throw validation_error("polynomial division is not exact");
    std::vector<Integer> r(a.coeffs().begin(), a.coeffs().end());
    std::vector<Integer> q(static_cast<std::size_t>(da - db + 1));
    const Integer& lb = b.leading();
    for (int k = da - db; k >= 0; --k) {
        Integer& top = r[static_cast<std::size_t>(k + db)];
        if (top == 0)
            continue;
        if (!mpz_divisible_p(top.get_mpz_t(), lb.get_mpz_t()))
            throw validation_error("polynomial division is not exact");
        Integer c;
        mpz_divexact(c.get_mpz_t(), top.get_mpz_t(), lb.get_mpz_t());
        for (int j = 0; j <= db; ++j)
            mpz_submul(r[static_cast<std::size_t>(k + j)].get_mpz_t(), c.get_mpz_t(),
                       b[static_cast<std::size_t>(j)].get_mpz_t());
        q[static_cast<std::size_t>(k)] = c;
    }
    for (const auto& c : r)
        if (c != 0)
            throw validation_error("polynomial division is not exact");
    return IntPolynomial(std::move(q));
}

IntPolynomial gcd(const IntPolynomial& a, const IntPolynomial& b)
{
    if (a.is_zero())
        return b.primitive_part();
    if (b.is_zero())
        return a.primitive_part();
    // Primitive polynomial remainder sequence.
    IntPolynomial x = a.primitive_part();
    IntPolynomial y = b.primitive_part();
    if (x.degree() < y.degree())
        std::swap(x, y);
    while (!y.is_zero()) {
        IntPolynomial r = pseudo_remainder(x, y).primitive_part();
        x = std::move(y);
        y = std::move(r);
    }
    return x;
}

IntPolynomial squarefree_part(const IntPolynomial& p)
{
    if (p.degree() <= 0)
        return p.primitive_part();
    IntPolynomial g = gcd(p, p.derivative());
    return exact_quotient(p.primitive_part(), g).primitive_part();
}

SturmSequence::SturmSequence(const IntPolynomial& p)
{
    chain_.push_back(p);
    if (p.degree() <= 0)
        return;
    chain_.push_back(p.derivative());
    while (chain_.back().degree() > 0) {
        const IntPolynomial& a = chain_[chain_.size() - 2];
        const IntPolynomial& b = chain_.back();
        IntPolynomial r = pseudo_remainder(a, b);
        // prem multiplies by lc(b)^(da-db+1); undo a negative multiplier's sign.
        const int e = a.degree() - b.degree() + 1;
        const bool flip = b.leading() < 0 && (e % 2 != 0);
        IntPolynomial next = flip ? r : -r;
        if (next.is_zero())
            break;
        Integer c = next.content();
        std::vector<Integer> scaled(next.coeffs().begin(), next.coeffs().end());
        for (auto& v : scaled)
            mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), c.get_mpz_t());
        chain_.emplace_back(std::move(scaled));
    }
}

int SturmSequence::variations(const Rational& x) const
{
    int count = 0;
    int last = 0;
    for (const auto& q : chain_) {
        int s = q.sign_at(x);
        if (s == 0)
            continue;
        if (last != 0 && s != last)
            ++count;
        last = s;
    }
    return count;
}

int SturmSequence::count_roots(const Rational& lo, const Rational& hi) const
{
    if (hi <= lo)
        return 0;
    return variations(lo) - variations(hi);
}

Rational root_bound(const IntPolynomial& p)
{
    if (p.degree() <= 0)
        return Rational(1);
    Rational best = 0;
    const Integer lead = abs(p.leading());
    for (int i = 0; i < p.degree(); ++i) {
        Rational r(abs(p[static_cast<std::size_t>(i)]), lead);
        r.canonicalize();
        if (r > best)
            best = r;
    }
    Rational bound = 1;
    const Rational cauchy = best + 1;
    while (bound < cauchy)
        bound *= 2;
    return bound;
}

const char* to_string(ErrorKind kind) noexcept
{
    switch (kind) {
    case ErrorKind::Parse: return "parse_error";
    case ErrorKind::Hypothesis: return "hypothesis_error";
    case ErrorKind::Validation: return "validation_error";
    }
    return "error";
}

}  // namespace loopgrowth
