#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

namespace sdk {

using Rational = mpq_class;
using Integer = mpz_class;

// "p/q" or "p"; throws Error(ParseError) on malformed input.
Rational parse_rational(const std::string& text);
std::string format_rational(const Rational& q);

// Closed rational interval [lo, hi].
struct Interval {
    Rational lo;
    Rational hi;

    bool contains_zero() const { return lo <= 0 && hi >= 0; }
    Rational width() const { return hi - lo; }
};

Interval operator+(const Interval& x, const Interval& y);
Interval operator*(const Interval& x, const Interval& y);

/// Dense univariate polynomial over Q, coefficients stored low degree first.
/// The zero polynomial has no coefficients.
class QPoly {
public:
    QPoly() = default;
    explicit QPoly(std::vector<Rational> coeffs);

    static QPoly constant(const Rational& c);
    static QPoly monomial(const Rational& c, int degree);

    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
    bool is_zero() const { return coeffs_.empty(); }
    const std::vector<Rational>& coeffs() const { return coeffs_; }
    Rational coeff(int i) const;
    const Rational& leading() const { return coeffs_.back(); }

    Rational eval(const Rational& x) const;
    Interval eval(const Interval& x) const;
    double eval(double x) const;

    QPoly derivative() const;
    QPoly monic() const;

    friend QPoly operator+(const QPoly& p, const QPoly& q);
    friend QPoly operator-(const QPoly& p, const QPoly& q);
    friend QPoly operator*(const QPoly& p, const QPoly& q);
    friend QPoly operator*(const Rational& c, const QPoly& p);
    friend bool operator==(const QPoly& p, const QPoly& q) { return p.coeffs_ == q.coeffs_; }

    // Euclidean division; divisor must be nonzero.
    static void divmod(const QPoly& num, const QPoly& den, QPoly& quot, QPoly& rem);
    friend QPoly operator%(const QPoly& p, const QPoly& q);

    // Monic gcd (zero if both are zero).
    static QPoly gcd(const QPoly& p, const QPoly& q);
    // g = s*p + t*q with g the monic gcd.
    static QPoly ext_gcd(const QPoly& p, const QPoly& q, QPoly& s, QPoly& t);

    std::string to_string() const;

private:
    void trim();
    std::vector<Rational> coeffs_;
};

/// Sturm chain of a squarefree polynomial; counts distinct real roots.
class SturmChain {
public:
    explicit SturmChain(const QPoly& p);

    // Number of distinct roots in the half-open interval (a, b].
    int count_roots(const Rational& a, const Rational& b) const;

private:
    int variations(const Rational& x) const;
    std::vector<QPoly> chain_;
};

// Cauchy bound: every complex root has modulus < bound.
Rational root_bound(const QPoly& p);

}  // namespace sdk
