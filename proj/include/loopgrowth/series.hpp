#pragma once

#include "loopgrowth/polynomial.hpp"

#include <compare>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace loopgrowth {

/// A Hilbert series stored as a reduced fraction num/den of integer
/// polynomials. den(0) > 0 and gcd(num, den) = 1, so the fraction has a
/// power-series expansion at z = 0 and equal series compare equal.
class RationalGF {
public:
    RationalGF() : RationalGF(IntPolynomial{}) {}
    RationalGF(IntPolynomial num, IntPolynomial den = IntPolynomial{1});

    static RationalGF polynomial(IntPolynomial p) { return RationalGF(std::move(p)); }
    static RationalGF one() { return RationalGF(IntPolynomial{1}); }

    const IntPolynomial& num() const noexcept { return num_; }
    const IntPolynomial& den() const noexcept { return den_; }

    bool is_polynomial() const noexcept { return den_.degree() == 0; }
    bool is_zero() const noexcept { return num_.is_zero(); }
    Rational constant_term() const;

    bool operator==(const RationalGF& other) const = default;

    std::string to_string() const;

private:
    IntPolynomial num_;
    IntPolynomial den_;
};

RationalGF gf_add(const RationalGF& a, const RationalGF& b);
RationalGF gf_sub(const RationalGF& a, const RationalGF& b);
RationalGF gf_mul(const RationalGF& a, const RationalGF& b);
/// Throws when the constant term vanishes ("not invertible as a power series").
RationalGF gf_reciprocal(const RationalGF& a);
RationalGF gf_shift(const RationalGF& a, std::size_t k);

inline RationalGF operator+(const RationalGF& a, const RationalGF& b) { return gf_add(a, b); }
inline RationalGF operator-(const RationalGF& a, const RationalGF& b) { return gf_sub(a, b); }
inline RationalGF operator*(const RationalGF& a, const RationalGF& b) { return gf_mul(a, b); }

/// Coefficients 0..N of a power series.
class TruncatedSeries {
public:
    TruncatedSeries() = default;
    explicit TruncatedSeries(std::vector<Rational> coeffs);
    static TruncatedSeries from_integers(const std::vector<Integer>& coeffs);

    std::size_t trunc_degree() const noexcept { return coeffs_.empty() ? 0 : coeffs_.size() - 1; }
    std::size_t size() const noexcept { return coeffs_.size(); }
    const Rational& operator[](std::size_t i) const { return coeffs_.at(i); }
    const std::vector<Rational>& coeffs() const noexcept { return coeffs_; }

    bool all_nonnegative_integers() const;
    bool has_negative_coefficient() const;
    /// r_k = sum of coefficients in degrees 0..k.
    Rational cumulative(std::size_t k) const;

    bool operator==(const TruncatedSeries& other) const = default;

private:
    std::vector<Rational> coeffs_;
};

TruncatedSeries expand(const RationalGF& a, std::size_t N);

/// Smallest positive real pole of a reduced series: either an isolating
/// interval [lo, hi] of the square-free reduced denominator or infinite.
class Radius {
public:
    static Radius infinite(bool eventually_zero, bool nonnegative_expansion);
    static Radius interval(IntPolynomial defining, Rational lo, Rational hi, bool nonnegative_expansion);

    bool is_infinite() const noexcept { return infinite_; }
    bool is_exact() const noexcept { return !infinite_ && lo_ == hi_; }
    /// Polynomial series: dimensions vanish beyond some degree.
    bool eventually_zero() const noexcept { return eventually_zero_; }
    /// Expansion to degree 64 has no negative coefficient, so the pole is the
    /// radius of convergence.
    bool nonnegative_expansion() const noexcept { return nonnegative_; }

    const Rational& lo() const { return lo_; }
    const Rational& hi() const { return hi_; }
    Rational width() const { return hi_ - lo_; }
    Rational midpoint() const { return (lo_ + hi_) / 2; }
    /// Square-free denominator whose unique root in [lo, hi] is the pole.
    const IntPolynomial& defining_polynomial() const { return defining_; }

    /// Narrow the isolating interval below the given width.
    Radius refined(const Rational& width) const;

private:
    bool infinite_ = true;
    bool eventually_zero_ = false;
    bool nonnegative_ = true;
    IntPolynomial defining_;
    Rational lo_;
    Rational hi_;
};

Rational default_pole_tolerance();  // 10^-12

Radius smallest_positive_pole(const RationalGF& a, const Rational& tolerance = default_pole_tolerance());

/// Certified ordering of two radii (infinite compares above every interval).
std::partial_ordering compare(const Radius& a, const Radius& b);
std::partial_ordering compare(const Radius& a, const Rational& x);

struct LogIndex {
    double value = 0.0;
    double error = 0.0;          // half-width propagated from the pole interval
    bool rho_infinite = false;
    bool eventually_zero = false;  // lim sup is -inf; value 0 is a convention
};

LogIndex log_index_exact(const Radius& rho);

/// max over i in [tail_start, N] of log(c_i)/i, zero coefficients skipped.
double log_index_empirical(const TruncatedSeries& s, std::size_t tail_start);

struct GrowthParams {
    double lambda = 1.5;
    double epsilon = 0.1;
    std::size_t k_min = 10;
};

struct GrowthCheckResult {
    bool passed = false;
    std::vector<std::size_t> sequence;
    std::vector<double> alphas;
    double target = 0.0;
    GrowthParams params;
    std::size_t trunc_degree = 0;
    std::string failure;  // empty when passed
};

GrowthCheckResult controlled_growth_check(const TruncatedSeries& s, double target, const GrowthParams& params);

/// Natural log of a positive integer without overflow.
double log_of(const Integer& x);

}  // namespace loopgrowth
