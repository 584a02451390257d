#include "loopgrowth/series.hpp"

#include "loopgrowth/error.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace loopgrowth {

RationalGF::RationalGF(IntPolynomial num, IntPolynomial den)
{
    if (den.is_zero())
        throw validation_error("generating function with zero denominator");
    if (den[0] == 0)
        throw validation_error("denominator has zero constant term; no power-series expansion at z = 0");
    if (num.is_zero()) {
        num_ = {};
        den_ = IntPolynomial{1};
        return;
    }
    IntPolynomial g = gcd(num, den);
    if (g.degree() > 0) {
        num = exact_quotient(num, g);
        den = exact_quotient(den, g);
    }
    Integer c = num.content();
    mpz_gcd(c.get_mpz_t(), c.get_mpz_t(), den.content().get_mpz_t());
    if (den[0] < 0)
        c = -c;
    if (c != 1) {
        auto divide = [&c](const IntPolynomial& p) {
            std::vector<Integer> out(p.coeffs().begin(), p.coeffs().end());
            for (auto& v : out)
                mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), c.get_mpz_t());
            return IntPolynomial(std::move(out));
        };
        num = divide(num);
        den = divide(den);
    }
    num_ = std::move(num);
    den_ = std::move(den);
}

Rational RationalGF::constant_term() const
{
    Rational r(num_[0], den_[0]);
    r.canonicalize();
    return r;
}

std::string RationalGF::to_string() const
{
    if (is_polynomial() && den_[0] == 1)
        return num_.to_string();
    return "(" + num_.to_string() + ")/(" + den_.to_string() + ")";
}

RationalGF gf_add(const RationalGF& a, const RationalGF& b)
{
    if (a.den() == b.den())
        return RationalGF(a.num() + b.num(), a.den());
    return RationalGF(a.num() * b.den() + b.num() * a.den(), a.den() * b.den());
}

RationalGF gf_sub(const RationalGF& a, const RationalGF& b)
{
    if (a.den() == b.den())
        return RationalGF(a.num() - b.num(), a.den());
    return RationalGF(a.num() * b.den() - b.num() * a.den(), a.den() * b.den());
}

RationalGF gf_mul(const RationalGF& a, const RationalGF& b) { return RationalGF(a.num() * b.num(), a.den() * b.den()); }

RationalGF gf_reciprocal(const RationalGF& a)
{
    if (a.num()[0] == 0)
        throw validation_error("not invertible as a power series");
    return RationalGF(a.den(), a.num());
}

RationalGF gf_shift(const RationalGF& a, std::size_t k) { return RationalGF(a.num().shifted(k), a.den()); }

TruncatedSeries::TruncatedSeries(std::vector<Rational> coeffs) : coeffs_(std::move(coeffs)) {}

TruncatedSeries TruncatedSeries::from_integers(const std::vector<Integer>& coeffs)
{
    std::vector<Rational> out;
    out.reserve(coeffs.size());
    for (const auto& c : coeffs)
        out.emplace_back(c);
    return TruncatedSeries(std::move(out));
}

bool TruncatedSeries::all_nonnegative_integers() const
{
    return std::all_of(coeffs_.begin(), coeffs_.end(),
                       [](const Rational& c) { return c.get_den() == 1 && c >= 0; });
}

bool TruncatedSeries::has_negative_coefficient() const
{
    return std::any_of(coeffs_.begin(), coeffs_.end(), [](const Rational& c) { return c < 0; });
}

Rational TruncatedSeries::cumulative(std::size_t k) const
{
    Rational acc = 0;
    for (std::size_t i = 0; i <= k && i < coeffs_.size(); ++i)
        acc += coeffs_[i];
    return acc;
}

TruncatedSeries expand(const RationalGF& a, std::size_t N)
{
    const IntPolynomial& num = a.num();
    const IntPolynomial& den = a.den();
    const Integer& d0 = den[0];
    const int dd = den.degree();
    std::vector<Rational> c(N + 1);
    if (d0 == 1) {
        // Common case: integer recurrence, no rational normalization.
        std::vector<Integer> ci(N + 1);
        for (std::size_t k = 0; k <= N; ++k) {
            Integer acc = num[k];
            const std::size_t jmax = std::min<std::size_t>(k, static_cast<std::size_t>(std::max(dd, 0)));
            for (std::size_t j = 1; j <= jmax; ++j)
                mpz_submul(acc.get_mpz_t(), den[j].get_mpz_t(), ci[k - j].get_mpz_t());
            ci[k] = acc;
            c[k] = acc;
        }
        return TruncatedSeries(std::move(c));
    }
    for (std::size_t k = 0; k <= N; ++k) {
        Rational acc = num[k];
        const std::size_t jmax = std::min<std::size_t>(k, static_cast<std::size_t>(std::max(dd, 0)));
        for (std::size_t j = 1; j <= jmax; ++j)
            acc -= Rational(den[j]) * c[k - j];
        c[k] = acc / d0;
    }
    return TruncatedSeries(std::move(c));
}

Radius Radius::infinite(bool eventually_zero, bool nonnegative_expansion)
{
    Radius r;
    r.infinite_ = true;
    r.eventually_zero_ = eventually_zero;
    r.nonnegative_ = nonnegative_expansion;
    return r;
}

Radius Radius::interval(IntPolynomial defining, Rational lo, Rational hi, bool nonnegative_expansion)
{
    Radius r;
    r.infinite_ = false;
    r.defining_ = std::move(defining);
    r.lo_ = std::move(lo);
    r.hi_ = std::move(hi);
    r.nonnegative_ = nonnegative_expansion;
    return r;
}

namespace {

// Bisect (lo, hi] holding exactly one root of p until narrower than width
// and lo > 0. Collapses to a point when a midpoint hits the root exactly.
void narrow(const SturmSequence& sturm, Rational& lo, Rational& hi, const Rational& width)
{
    const IntPolynomial& p = sturm.polynomial();
    while (true) {
        if (lo == hi)
            return;
        const int here = sturm.count_roots(lo, hi);
        if (here == 1 && p.sign_at(hi) == 0) {
            lo = hi;
            return;
        }
        if (here == 1 && hi - lo < width && lo > 0)
            return;
        Rational mid = (lo + hi) / 2;
        if (sturm.count_roots(lo, mid) >= 1)
            hi = mid;
        else
            lo = mid;
    }
}

bool nonnegative_to_64(const RationalGF& a) { return !expand(a, 64).has_negative_coefficient(); }

}  // namespace

Rational default_pole_tolerance()
{
    Integer den;
    mpz_ui_pow_ui(den.get_mpz_t(), 10, 12);
    return Rational(Integer(1), den);
}

Radius Radius::refined(const Rational& width) const
{
    if (infinite_ || lo_ == hi_ || hi_ - lo_ < width)
        return *this;
    SturmSequence sturm(defining_);
    Rational lo = lo_;
    Rational hi = hi_;
    // lo is never a root of the defining polynomial unless the interval is a point.
    narrow(sturm, lo, hi, width);
    return interval(defining_, lo, hi, nonnegative_);
}

Radius smallest_positive_pole(const RationalGF& a, const Rational& tolerance)
{
    const bool nonneg = nonnegative_to_64(a);
    if (a.is_polynomial())
        return Radius::infinite(true, nonneg);
    IntPolynomial p = squarefree_part(a.den());
    SturmSequence sturm(p);
    Rational lo = 0;
    Rational hi = root_bound(p);
    if (sturm.count_roots(lo, hi) == 0)
        return Radius::infinite(false, nonneg);
    narrow(sturm, lo, hi, tolerance);
    return Radius::interval(std::move(p), std::move(lo), std::move(hi), nonneg);
}

namespace {

// True when gcd(p, q) has a root in [lo, hi].
bool common_root_in(const IntPolynomial& p, const IntPolynomial& q, const Rational& lo, const Rational& hi)
{
    IntPolynomial g = gcd(p, q);
    if (g.degree() <= 0 || hi < lo)
        return false;
    if (g.sign_at(lo) == 0)
        return true;
    return SturmSequence(g).count_roots(lo, hi) > 0;
}

}  // namespace

std::partial_ordering compare(const Radius& a, const Radius& b)
{
    if (a.is_infinite() || b.is_infinite()) {
        if (a.is_infinite() && b.is_infinite())
            return std::partial_ordering::equivalent;
        return a.is_infinite() ? std::partial_ordering::greater : std::partial_ordering::less;
    }
    Radius x = a;
    Radius y = b;
    while (true) {
        if (x.hi() < y.lo())
            return std::partial_ordering::less;
        if (y.hi() < x.lo())
            return std::partial_ordering::greater;
        const Rational lo = std::max(x.lo(), y.lo());
        const Rational hi = std::min(x.hi(), y.hi());
        if (common_root_in(x.defining_polynomial(), y.defining_polynomial(), lo, hi))
            return std::partial_ordering::equivalent;
        x = x.refined(x.width() / 2);
        y = y.refined(y.width() / 2);
    }
}

std::partial_ordering compare(const Radius& a, const Rational& v)
{
    if (a.is_infinite())
        return std::partial_ordering::greater;
    Radius x = a;
    while (true) {
        if (x.hi() < v)
            return std::partial_ordering::less;
        if (v < x.lo())
            return std::partial_ordering::greater;
        if (x.defining_polynomial().sign_at(v) == 0)
            return std::partial_ordering::equivalent;
        x = x.refined(x.width() / 2);
    }
}

double log_of(const Integer& x)
{
    long exp = 0;
    const double mant = mpz_get_d_2exp(&exp, x.get_mpz_t());
    return std::log(mant) + static_cast<double>(exp) * std::log(2.0);
}

namespace {

double log_ratio(const Rational& x) { return log_of(x.get_num()) - log_of(x.get_den()); }

}  // namespace

LogIndex log_index_exact(const Radius& rho)
{
    LogIndex out;
    if (rho.is_infinite()) {
        out.rho_infinite = true;
        out.eventually_zero = rho.eventually_zero();
        return out;
    }
    const double lo = log_ratio(rho.lo());
    const double hi = log_ratio(rho.hi());
    out.value = -log_ratio(rho.midpoint());
    if (out.value == 0.0)
        out.value = 0.0;  // normalize -0
    out.error = (hi - lo) / 2.0;
    return out;
}

double log_index_empirical(const TruncatedSeries& s, std::size_t tail_start)
{
    const std::size_t N = s.trunc_degree();
    if (tail_start >= N)
        throw validation_error("tail start must be below the truncation degree");
    bool any = false;
    double best = 0.0;
    for (std::size_t i = std::max<std::size_t>(tail_start, 1); i <= N; ++i) {
        if (s[i] <= 0)
            continue;
        const double a = log_ratio(s[i]) / static_cast<double>(i);
        if (!any || a > best)
            best = a;
        any = true;
    }
    if (!any)
        throw validation_error("series has no tail growth to measure");
    return best == 0.0 ? 0.0 : best;
}

GrowthCheckResult controlled_growth_check(const TruncatedSeries& s, double target, const GrowthParams& params)
{
    if (!(params.lambda > 1.0))
        throw validation_error("controlled growth requires lambda > 1");
    if (!(params.epsilon > 0.0))
        throw validation_error("controlled growth requires epsilon > 0");
    const std::size_t N = s.trunc_degree();
    if (N < params.k_min)
        throw validation_error("truncation degree must be at least k_min");

    GrowthCheckResult out;
    out.target = target;
    out.params = params;
    out.trunc_degree = N;
    const std::size_t start = std::max<std::size_t>(params.k_min, 1);
    for (std::size_t i = start; i <= N; ++i) {
        if (s[i] <= 0)
            continue;
        const double alpha = log_ratio(s[i]) / static_cast<double>(i);
        if (std::abs(alpha - target) <= params.epsilon) {
            out.sequence.push_back(i);
            out.alphas.push_back(alpha);
        }
    }
    const double lambda = params.lambda;
    if (out.sequence.empty()) {
        out.failure = "no admissible degree in the tail";
        return out;
    }
    if (!(static_cast<double>(out.sequence.front()) < lambda * static_cast<double>(start))) {
        out.failure = "gap between k_min and the first admissible degree";
        return out;
    }
    for (std::size_t i = 1; i < out.sequence.size(); ++i) {
        if (!(static_cast<double>(out.sequence[i]) < lambda * static_cast<double>(out.sequence[i - 1]))) {
            out.failure = "consecutive admissible degrees violate n_{i+1} < lambda * n_i at "
                + std::to_string(out.sequence[i - 1]) + " -> " + std::to_string(out.sequence[i]);
            return out;
        }
    }
    if (!(lambda * static_cast<double>(out.sequence.back()) >= static_cast<double>(N))) {
        out.failure = "gap between the last admissible degree and the truncation degree";
        return out;
    }
    out.passed = true;
    return out;
}

}  // namespace loopgrowth
