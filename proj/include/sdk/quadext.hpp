#pragma once

#include "sdk/errors.hpp"
#include "sdk/numfield.hpp"

#include <complex>
#include <string>

namespace sdk {

template <class S>
class QuadElem;
template <class S>
bool is_zero(const QuadElem<S>& x);

/// a + b*sqrt(d) over a base scalar S, with d a non-square of S.
/// Nesting QuadElem<QuadElem<FieldElement>> gives biquadratic fields.
template <class S>
class QuadElem {
public:
    QuadElem() = default;
    QuadElem(S a, S b, S d) : a_(std::move(a)), b_(std::move(b)), d_(std::move(d)) {}

    static QuadElem from_base(const S& x, const S& d) { return QuadElem(x, zero_of(x), d); }
    static QuadElem sqrt_d(const S& d) { return QuadElem(zero_of(d), one_of(d), d); }

    const S& a() const { return a_; }
    const S& b() const { return b_; }
    const S& d() const { return d_; }

    bool is_zero() const { return sdk::is_zero(a_) && sdk::is_zero(b_); }
    bool in_base() const { return sdk::is_zero(b_); }

    QuadElem conj() const { return QuadElem(a_, -b_, d_); }
    S norm() const { return a_ * a_ - d_ * b_ * b_; }
    S trace() const { return a_ + a_; }

    QuadElem inv() const
    {
        if (is_zero())
            throw Error(Errc::DivisionByZero, "inverse of zero in quadratic extension");
        S n = norm();
        if (sdk::is_zero(n))
            throw Error(Errc::ZeroDivisor, "norm vanishes; the radicand is a square");
        S ni = inverse(n);
        return QuadElem(a_ * ni, -(b_ * ni), d_);
    }

    QuadElem operator-() const { return QuadElem(-a_, -b_, d_); }
    friend QuadElem operator+(const QuadElem& x, const QuadElem& y)
    {
        return QuadElem(x.a_ + y.a_, x.b_ + y.b_, x.d_);
    }
    friend QuadElem operator-(const QuadElem& x, const QuadElem& y)
    {
        return QuadElem(x.a_ - y.a_, x.b_ - y.b_, x.d_);
    }
    friend QuadElem operator*(const QuadElem& x, const QuadElem& y)
    {
        return QuadElem(x.a_ * y.a_ + x.d_ * x.b_ * y.b_, x.a_ * y.b_ + x.b_ * y.a_, x.d_);
    }
    friend QuadElem operator*(const S& c, const QuadElem& x) { return QuadElem(c * x.a_, c * x.b_, x.d_); }
    friend QuadElem operator/(const QuadElem& x, const QuadElem& y) { return x * y.inv(); }
    friend bool operator==(const QuadElem& x, const QuadElem& y) { return x.a_ == y.a_ && x.b_ == y.b_; }
    friend bool operator!=(const QuadElem& x, const QuadElem& y) { return !(x == y); }

    QuadElem& operator+=(const QuadElem& y) { return *this = *this + y; }
    QuadElem& operator-=(const QuadElem& y) { return *this = *this - y; }
    QuadElem& operator*=(const QuadElem& y) { return *this = *this * y; }

private:
    S a_, b_, d_;
};

template <class S>
QuadElem<S> zero_of(const QuadElem<S>& x) { return QuadElem<S>(zero_of(x.a()), zero_of(x.a()), x.d()); }
template <class S>
QuadElem<S> one_of(const QuadElem<S>& x) { return QuadElem<S>(one_of(x.a()), zero_of(x.a()), x.d()); }
template <class S>
bool is_zero(const QuadElem<S>& x) { return x.is_zero(); }
template <class S>
QuadElem<S> inverse(const QuadElem<S>& x) { return x.inv(); }

using KElement = QuadElem<FieldElement>;

/// K = F(sqrt(delta)) with F totally real and delta totally negative.
class CMExtension {
public:
    CMExtension(NumberField base, FieldElement delta);

    const NumberField& base() const { return base_; }
    const FieldElement& delta() const { return delta_; }

    KElement element(const FieldElement& a, const FieldElement& b) const { return KElement(a, b, delta_); }
    KElement from_base(const FieldElement& a) const { return KElement(a, base_.zero(), delta_); }
    KElement from_rational(const Rational& q) const { return from_base(base_.from_rational(q)); }
    KElement sqrt_delta() const { return KElement(base_.zero(), base_.one(), delta_); }
    KElement zero() const { return from_rational(0); }
    KElement one() const { return from_rational(1); }

    // Complex embedding extending v; sqrt(delta) goes to i*sqrt(-v(delta)).
    std::complex<double> embed(const KElement& z, const RealEmbedding& v) const;

private:
    NumberField base_;
    FieldElement delta_;
};

inline KElement cm_conjugate(const KElement& z) { return z.conj(); }
inline KElement cm_conjugate(const CMExtension&, const KElement& z) { return z.conj(); }

}  // namespace sdk
