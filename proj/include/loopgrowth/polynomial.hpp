#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

namespace loopgrowth {

using Integer = mpz_class;
using Rational = mpq_class;

/// Dense univariate polynomial with arbitrary-precision integer coefficients,
/// lowest degree first. The coefficient vector never carries trailing zeros,
/// so the zero polynomial has an empty vector and degree -1.
class IntPolynomial {
public:
    IntPolynomial() = default;
    explicit IntPolynomial(std::vector<Integer> coeffs);
    IntPolynomial(std::initializer_list<long> coeffs);

    static IntPolynomial constant(const Integer& c);
    static IntPolynomial monomial(const Integer& c, std::size_t degree);

    int degree() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
    bool is_zero() const noexcept { return coeffs_.empty(); }
    bool is_constant() const noexcept { return coeffs_.size() <= 1; }

    /// Coefficient of z^i; zero beyond the degree.
    const Integer& operator[](std::size_t i) const;
    std::span<const Integer> coeffs() const noexcept { return coeffs_; }
    const Integer& leading() const;

    Integer content() const;
    IntPolynomial primitive_part() const;
    IntPolynomial derivative() const;
    IntPolynomial shifted(std::size_t k) const;  // z^k * p

    Rational evaluate(const Rational& x) const;
    int sign_at(const Rational& x) const;

    IntPolynomial operator-() const;
    friend IntPolynomial operator+(const IntPolynomial& a, const IntPolynomial& b);
    friend IntPolynomial operator-(const IntPolynomial& a, const IntPolynomial& b);
    friend IntPolynomial operator*(const IntPolynomial& a, const IntPolynomial& b);
    friend IntPolynomial operator*(const Integer& c, const IntPolynomial& p);

    bool operator==(const IntPolynomial& other) const { return coeffs_ == other.coeffs_; }

    std::string to_string() const;

private:
    void trim();

    std::vector<Integer> coeffs_;
};

/// Pseudo-remainder: lc(b)^(deg a - deg b + 1) * a = q * b + r.
IntPolynomial pseudo_remainder(const IntPolynomial& a, const IntPolynomial& b);

/// Exact quotient a / b in Z[z]; throws if b does not divide a.
IntPolynomial exact_quotient(const IntPolynomial& a, const IntPolynomial& b);

/// Primitive gcd with positive leading coefficient (gcd(0, 0) = 0).
IntPolynomial gcd(const IntPolynomial& a, const IntPolynomial& b);

IntPolynomial squarefree_part(const IntPolynomial& p);

/// Sturm chain of a square-free polynomial. Each member is scaled by a
/// positive constant only, so sign variations are those of the classical chain.
class SturmSequence {
public:
    explicit SturmSequence(const IntPolynomial& p);

    int variations(const Rational& x) const;

    /// Number of distinct real roots in the half-open interval (lo, hi].
    /// Requires p(lo) != 0.
    int count_roots(const Rational& lo, const Rational& hi) const;

    const IntPolynomial& polynomial() const { return chain_.front(); }

private:
    std::vector<IntPolynomial> chain_;
};

/// A power of two bounding the absolute value of every real root (Cauchy bound).
Rational root_bound(const IntPolynomial& p);

}  // namespace loopgrowth
