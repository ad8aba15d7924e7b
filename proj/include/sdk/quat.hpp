#pragma once

#include "sdk/errors.hpp"
#include "sdk/matrix.hpp"
#include "sdk/numfield.hpp"
#include "sdk/quadext.hpp"

#include <Eigen/Dense>

#include <array>
#include <optional>
#include <string>

namespace sdk {

template <class S>
class Quaternion;

/// (a, b) with basis 1, lambda, mu, lambda*mu, lambda^2 = a, mu^2 = b, lambda*mu = -mu*lambda.
template <class S>
class QuaternionAlgebra {
public:
    QuaternionAlgebra(S a, S b) : a_(std::move(a)), b_(std::move(b))
    {
        if (sdk::is_zero(a_) || sdk::is_zero(b_))
            throw Error(Errc::InvalidField, "quaternion algebra parameters must be nonzero");
    }

    const S& a() const { return a_; }
    const S& b() const { return b_; }

    Quaternion<S> element(S x0, S x1, S x2, S x3) const;
    Quaternion<S> scalar(const S& x) const;
    Quaternion<S> zero() const { return scalar(zero_of(a_)); }
    Quaternion<S> one() const { return scalar(one_of(a_)); }
    Quaternion<S> lambda() const;
    Quaternion<S> mu() const;
    Quaternion<S> lambda_mu() const;
    std::array<Quaternion<S>, 4> basis() const { return {one(), lambda(), mu(), lambda_mu()}; }

private:
    S a_, b_;
};

template <class S>
class Quaternion {
public:
    Quaternion() = default;
    Quaternion(std::array<S, 4> c, S a, S b) : c_(std::move(c)), a_(std::move(a)), b_(std::move(b)) {}

    const std::array<S, 4>& coeffs() const { return c_; }
    const S& operator[](int i) const { return c_[i]; }
    const S& a() const { return a_; }
    const S& b() const { return b_; }
    QuaternionAlgebra<S> algebra() const { return QuaternionAlgebra<S>(a_, b_); }

    Quaternion sigma() const { return Quaternion({c_[0], -c_[1], -c_[2], -c_[3]}, a_, b_); }
    S trd() const { return c_[0] + c_[0]; }
    S nrd() const
    {
        return c_[0] * c_[0] - a_ * c_[1] * c_[1] - b_ * c_[2] * c_[2] + a_ * b_ * c_[3] * c_[3];
    }
    bool is_zero() const
    {
        for (const auto& x : c_)
            if (!sdk::is_zero(x))
                return false;
        return true;
    }
    bool is_pure() const { return sdk::is_zero(c_[0]); }
    bool is_scalar() const { return sdk::is_zero(c_[1]) && sdk::is_zero(c_[2]) && sdk::is_zero(c_[3]); }

    Quaternion inv() const
    {
        if (is_zero())
            throw Error(Errc::DivisionByZero, "inverse of the zero quaternion");
        S n = nrd();
        if (sdk::is_zero(n))
            throw Error(Errc::ZeroDivisor, "quaternion has zero reduced norm");
        S ni = inverse(n);
        return ni * sigma();
    }

    template <class F>
    Quaternion map_coeffs(F&& f) const
    {
        return Quaternion({f(c_[0]), f(c_[1]), f(c_[2]), f(c_[3])}, a_, b_);
    }

    Quaternion operator-() const { return Quaternion({-c_[0], -c_[1], -c_[2], -c_[3]}, a_, b_); }
    friend Quaternion operator+(const Quaternion& x, const Quaternion& y)
    {
        return Quaternion({x.c_[0] + y.c_[0], x.c_[1] + y.c_[1], x.c_[2] + y.c_[2], x.c_[3] + y.c_[3]}, x.a_, x.b_);
    }
    friend Quaternion operator-(const Quaternion& x, const Quaternion& y) { return x + (-y); }
    friend Quaternion operator*(const Quaternion& x, const Quaternion& y)
    {
        const auto& p = x.c_;
        const auto& q = y.c_;
        const S& a = x.a_;
        const S& b = x.b_;
        S ab = a * b;
        return Quaternion({p[0] * q[0] + a * p[1] * q[1] + b * p[2] * q[2] - ab * p[3] * q[3],
                           p[0] * q[1] + p[1] * q[0] - b * p[2] * q[3] + b * p[3] * q[2],
                           p[0] * q[2] + p[2] * q[0] + a * p[1] * q[3] - a * p[3] * q[1],
                           p[0] * q[3] + p[3] * q[0] + p[1] * q[2] - p[2] * q[1]},
                          a, b);
    }
    friend Quaternion operator*(const S& c, const Quaternion& x) { return x.map_coeffs([&](const S& v) { return c * v; }); }
    friend bool operator==(const Quaternion& x, const Quaternion& y) { return x.c_ == y.c_; }
    friend bool operator!=(const Quaternion& x, const Quaternion& y) { return !(x == y); }

private:
    std::array<S, 4> c_;
    S a_, b_;
};

template <class S>
Quaternion<S> zero_of(const Quaternion<S>& x) { return x.algebra().zero(); }
template <class S>
Quaternion<S> one_of(const Quaternion<S>& x) { return x.algebra().one(); }
template <class S>
bool is_zero(const Quaternion<S>& x) { return x.is_zero(); }
template <class S>
Quaternion<S> inverse(const Quaternion<S>& x) { return x.inv(); }

template <class S>
Quaternion<S> QuaternionAlgebra<S>::element(S x0, S x1, S x2, S x3) const
{
    return Quaternion<S>({std::move(x0), std::move(x1), std::move(x2), std::move(x3)}, a_, b_);
}
template <class S>
Quaternion<S> QuaternionAlgebra<S>::scalar(const S& x) const
{
    S z = zero_of(a_);
    return element(x, z, z, z);
}
template <class S>
Quaternion<S> QuaternionAlgebra<S>::lambda() const
{
    S z = zero_of(a_);
    return element(z, one_of(a_), z, z);
}
template <class S>
Quaternion<S> QuaternionAlgebra<S>::mu() const
{
    S z = zero_of(a_);
    return element(z, z, one_of(a_), z);
}
template <class S>
Quaternion<S> QuaternionAlgebra<S>::lambda_mu() const
{
    S z = zero_of(a_);
    return element(z, z, z, one_of(a_));
}

// The scalar q^2 of a pure quaternion.
template <class S>
S pure_square(const Quaternion<S>& q)
{
    return -q.nrd();
}

// Pure u with q*u = -u*q: kernel of a*x*u1 + b*y*u2 - ab*z*u3 over the pure
// subspace; first invertible element of k1, k2, k1 + k2.
template <class S>
Quaternion<S> anticommuting_complement(const Quaternion<S>& q)
{
    if (q.is_zero() || !q.is_pure())
        throw Error(Errc::NoComplement, "complement requires a nonzero pure quaternion");
    const S& a = q.a();
    const S& b = q.b();
    std::array<S, 3> row = {a * q[1], b * q[2], -(a * b * q[3])};
    int pivot = 0;
    while (sdk::is_zero(row[pivot]))
        ++pivot;
    S z = zero_of(a);
    std::array<std::array<S, 3>, 2> kernel;
    int k = 0;
    for (int free = 0; free < 3; ++free) {
        if (free == pivot)
            continue;
        std::array<S, 3> v = {z, z, z};
        v[free] = one_of(a);
        v[pivot] = -(row[free] * inverse(row[pivot]));
        kernel[k++] = v;
    }
    QuaternionAlgebra<S> alg = q.algebra();
    auto make = [&](const std::array<S, 3>& v) { return alg.element(z, v[0], v[1], v[2]); };
    Quaternion<S> cands[3] = {make(kernel[0]), make(kernel[1]), make(kernel[0]) + make(kernel[1])};
    for (const auto& c : cands)
        if (!sdk::is_zero(c.nrd()))
            return c;
    throw Error(Errc::NoComplement, "no invertible pure quaternion anticommutes with the input");
}

// Coordinates of x in the standard basis 1, r, s, rs built from an anticommuting pure pair.
template <class S>
std::array<S, 4> coords_in_basis(const Quaternion<S>& x, const Quaternion<S>& r, const Quaternion<S>& s)
{
    Quaternion<S> e[4] = {x.algebra().one(), r, s, r * s};
    std::array<S, 4> out;
    for (int k = 0; k < 4; ++k) {
        S num = (x * e[k].sigma()).trd();
        S den = (e[k] * e[k].sigma()).trd();
        out[k] = num * inverse(den);
    }
    return out;
}

enum class Splitting { Split, NonSplit };

// Nonsplit at v iff v(a) < 0 and v(b) < 0, decided with exact signs.
Splitting real_place_splitting(const QuaternionAlgebra<FieldElement>& d, const RealEmbedding& v);

/// phi: D (x) L -> M2(L) with L = S(r), r -> diag(r, -r), s -> [[0, s^2], [1, 0]].
template <class S>
class SplittingMap {
public:
    using LElem = QuadElem<S>;

    SplittingMap(Quaternion<S> r, Quaternion<S> s) : r_(std::move(r)), s_(std::move(s))
    {
        if (!r_.is_pure() || !s_.is_pure() || r_ * s_ != -(s_ * r_))
            throw Error(Errc::NoComplement, "splitting data must be anticommuting pure quaternions");
        r2_ = pure_square(r_);
        s2_ = pure_square(s_);
    }
    explicit SplittingMap(Quaternion<S> r) : SplittingMap(r, anticommuting_complement(r)) {}

    const Quaternion<S>& r() const { return r_; }
    const Quaternion<S>& s() const { return s_; }
    const S& r_square() const { return r2_; }
    const S& s_square() const { return s2_; }
    LElem lift(const S& x) const { return LElem::from_base(x, r2_); }
    LElem root() const { return LElem::sqrt_d(r2_); }

    Mat<LElem> operator()(const Quaternion<S>& x) const
    {
        auto c = coords_in_basis(x, r_, s_);
        LElem R = root();
        Mat<LElem> m(2, 2, lift(zero_of(r2_)));
        m(0, 0) = lift(c[0]) + lift(c[1]) * R;
        m(1, 1) = lift(c[0]) - lift(c[1]) * R;
        m(0, 1) = lift(c[2] * s2_) + lift(c[3] * s2_) * R;
        m(1, 0) = lift(c[2]) - lift(c[3]) * R;
        return m;
    }

    // Applies phi entrywise, with block order (phi row, matrix row).
    Mat<LElem> on_matrix(const Mat<Quaternion<S>>& x) const
    {
        int n = x.rows();
        Mat<LElem> out(2 * n, 2 * n, lift(zero_of(r2_)));
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                Mat<LElem> b = (*this)(x(i, j));
                for (int p = 0; p < 2; ++p)
                    for (int q = 0; q < 2; ++q)
                        out(p * n + i, q * n + j) = b(p, q);
            }
        return out;
    }

private:
    Quaternion<S> r_, s_;
    S r2_, s2_;
};

/// psi: D_v -> H at a nonsplit place, r -> sqrt(-u) e2, s -> sqrt(-t) e3.
class PsiMap {
public:
    PsiMap(Quaternion<FieldElement> r, Quaternion<FieldElement> s, RealEmbedding v);

    double u() const { return u_; }
    double t() const { return t_; }
    Eigen::Matrix2cd operator()(const Quaternion<FieldElement>& x) const;

    static Eigen::Matrix2cd e(int k);  // 1-based e1..e4

private:
    Quaternion<FieldElement> r_, s_;
    RealEmbedding v_;
    double u_, t_;
};

PsiMap nonsplit_iso_psi(const QuaternionAlgebra<FieldElement>& d, const RealEmbedding& v,
                        const Quaternion<FieldElement>& r, const Quaternion<FieldElement>& s);

/// D = D0 (x)_F K with J = sigma0 (x) iota, or D = K when d0 is empty.
class SecondKindData {
public:
    // degree is deg_K D; only 1 and 2 admit a canonical conjugation.
    SecondKindData(CMExtension k, std::optional<QuaternionAlgebra<FieldElement>> d0, int degree = -1);

    const CMExtension& cm() const { return k_; }
    const std::optional<QuaternionAlgebra<FieldElement>>& d0() const { return d0_; }
    int m() const { return d0_ ? 2 : 1; }
    QuaternionAlgebra<KElement> algebra() const;  // requires m() == 2
    Quaternion<KElement> extend(const Quaternion<FieldElement>& x) const;

    KElement J(const KElement& x) const { return x.conj(); }
    Quaternion<KElement> J(const Quaternion<KElement>& x) const { return alpha(x).sigma(); }
    KElement alpha(const KElement& x) const { return x.conj(); }
    Quaternion<KElement> alpha(const Quaternion<KElement>& x) const
    {
        return x.map_coeffs([](const KElement& c) { return c.conj(); });
    }

private:
    CMExtension k_;
    std::optional<QuaternionAlgebra<FieldElement>> d0_;
};

struct ConjugationReport {
    bool alpha_involution = false;
    bool alpha_commutes_with_J = false;
    bool alphaJ_expected = false;  // sigma in the quaternion case, identity when D = K
    bool fixes_d0 = false;
    bool conjugates_scalars = false;
    bool ok() const { return alpha_involution && alpha_commutes_with_J && alphaJ_expected && fixes_d0 && conjugates_scalars; }
};

ConjugationReport canonical_conjugation(const SecondKindData& data);

}  // namespace sdk
