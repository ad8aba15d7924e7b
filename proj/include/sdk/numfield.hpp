#pragma once

#include "sdk/poly.hpp"

#include <memory>
#include <string>
#include <vector>

namespace sdk {

class FieldElement;

/// Q[x]/(p) for a monic squarefree integer polynomial p.
///
/// Handles are cheap to copy and share one immutable description, including
/// isolating intervals for the real roots of p.
class NumberField {
public:
    // Coefficients low degree first; the last one must be 1.
    explicit NumberField(const std::vector<Rational>& min_poly);
    static NumberField rationals();

    int degree() const;
    const QPoly& min_poly() const;
    int real_root_count() const;
    int complex_pair_count() const;
    bool totally_real() const { return complex_pair_count() == 0; }

    // Ascending, disjoint; each contains exactly one real root.
    const std::vector<Interval>& root_intervals() const;

    FieldElement zero() const;
    FieldElement one() const;
    FieldElement gen() const;
    FieldElement from_rational(const Rational& q) const;
    FieldElement element(std::vector<Rational> coeffs) const;

    friend bool operator==(const NumberField& a, const NumberField& b);
    friend bool operator!=(const NumberField& a, const NumberField& b) { return !(a == b); }

private:
    struct Impl;
    std::shared_ptr<const Impl> impl_;
};

class FieldElement {
public:
    FieldElement() = default;
    FieldElement(NumberField field, std::vector<Rational> coeffs);

    const NumberField& field() const { return field_; }
    const std::vector<Rational>& coeffs() const { return coeffs_; }
    QPoly poly() const { return QPoly(coeffs_); }

    bool is_zero() const;
    bool is_rational() const;
    Rational rational_value() const;  // requires is_rational()

    FieldElement inv() const;
    FieldElement operator-() const;

    friend FieldElement operator+(const FieldElement& x, const FieldElement& y);
    friend FieldElement operator-(const FieldElement& x, const FieldElement& y);
    friend FieldElement operator*(const FieldElement& x, const FieldElement& y);
    friend FieldElement operator/(const FieldElement& x, const FieldElement& y) { return x * y.inv(); }
    friend FieldElement operator*(const Rational& c, const FieldElement& x);
    friend bool operator==(const FieldElement& x, const FieldElement& y);
    friend bool operator!=(const FieldElement& x, const FieldElement& y) { return !(x == y); }

    FieldElement& operator+=(const FieldElement& y) { return *this = *this + y; }
    FieldElement& operator-=(const FieldElement& y) { return *this = *this - y; }
    FieldElement& operator*=(const FieldElement& y) { return *this = *this * y; }

    std::string to_string() const;

private:
    NumberField field_ = NumberField::rationals();
    std::vector<Rational> coeffs_;
};

// Scalar hooks used by the generic matrix and quaternion code.
inline FieldElement zero_of(const FieldElement& x) { return x.field().zero(); }
inline FieldElement one_of(const FieldElement& x) { return x.field().one(); }
inline bool is_zero(const FieldElement& x) { return x.is_zero(); }
inline FieldElement inverse(const FieldElement& x) { return x.inv(); }

/// A real place of a number field: evaluation at one real root of min_poly.
class RealEmbedding {
public:
    RealEmbedding(NumberField field, int index, Interval root);

    const NumberField& field() const { return field_; }
    int index() const { return index_; }
    const Interval& root() const { return root_; }

    // Enclosure of v(e) of width at most 2^-bits.
    Interval enclose(const FieldElement& e, int bits) const;
    // Exact sign of v(e), refining as far as needed.
    int sign(const FieldElement& e) const;
    double value(const FieldElement& e) const;

private:
    NumberField field_;
    int index_;
    Interval root_;
};

constexpr int kDefaultPrecisionBits = 128;

// Ascending order of the real roots. Throws NotTotallyReal unless every root is real.
std::vector<RealEmbedding> real_embeddings(const NumberField& field,
                                           int precision_bits = kDefaultPrecisionBits);

enum class TotalityMode { TotallyRealField, TotallyNegative, TotallyPositive };

bool totality_check(const NumberField& field, const FieldElement& e, TotalityMode mode);

}  // namespace sdk
