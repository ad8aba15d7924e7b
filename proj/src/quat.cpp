#include "sdk/quat.hpp"

#include <cmath>

namespace sdk {

Splitting real_place_splitting(const QuaternionAlgebra<FieldElement>& d, const RealEmbedding& v)
{
    return v.sign(d.a()) < 0 && v.sign(d.b()) < 0 ? Splitting::NonSplit : Splitting::Split;
}

PsiMap::PsiMap(Quaternion<FieldElement> r, Quaternion<FieldElement> s, RealEmbedding v)
    : r_(std::move(r)), s_(std::move(s)), v_(std::move(v))
{
    if (!r_.is_pure() || !s_.is_pure() || r_ * s_ != -(s_ * r_))
        throw Error(Errc::NoComplement, "psi needs anticommuting pure quaternions r, s");
    FieldElement u = pure_square(r_), t = pure_square(s_);
    if (v_.sign(u) >= 0 || v_.sign(t) >= 0)
        throw Error(Errc::WrongModel, "psi is only defined at nonsplit places (u < 0 and t < 0)");
    u_ = v_.value(u);
    t_ = v_.value(t);
}

Eigen::Matrix2cd PsiMap::e(int k)
{
    using C = std::complex<double>;
    const C i(0, 1);
    Eigen::Matrix2cd m;
    switch (k) {
    case 1: m << 1, 0, 0, 1; break;
    case 2: m << i, 0, 0, -i; break;
    case 3: m << 0, 1, -1, 0; break;
    default: m = e(2) * e(3); break;
    }
    return m;
}

Eigen::Matrix2cd PsiMap::operator()(const Quaternion<FieldElement>& x) const
{
    auto c = coords_in_basis(x, r_, s_);
    double su = std::sqrt(-u_), st = std::sqrt(-t_);
    return v_.value(c[0]) * e(1) + v_.value(c[1]) * su * e(2) + v_.value(c[2]) * st * e(3) +
           v_.value(c[3]) * su * st * e(4);
}

PsiMap nonsplit_iso_psi(const QuaternionAlgebra<FieldElement>& d, const RealEmbedding& v,
                        const Quaternion<FieldElement>& r, const Quaternion<FieldElement>& s)
{
    if (real_place_splitting(d, v) == Splitting::Split)
        throw Error(Errc::WrongModel, "algebra is split at this place; use the matrix splitting instead");
    return PsiMap(r, s, v);
}

SecondKindData::SecondKindData(CMExtension k, std::optional<QuaternionAlgebra<FieldElement>> d0, int degree)
    : k_(std::move(k)), d0_(std::move(d0))
{
    int m = d0_ ? 2 : 1;
    if (degree < 0)
        degree = m;
    if (degree != m || degree > 2)
        throw Error(Errc::NotAdmissible, "division algebra of degree " + std::to_string(degree) +
                                             " over K admits no canonical conjugation");
    if (d0_ && d0_->a().field() != k_.base())
        throw Error(Errc::FieldMismatch, "quaternion algebra must be defined over the base of K");
}

QuaternionAlgebra<KElement> SecondKindData::algebra() const
{
    if (!d0_)
        throw Error(Errc::InternalError, "D = K has no quaternion structure");
    return QuaternionAlgebra<KElement>(k_.from_base(d0_->a()), k_.from_base(d0_->b()));
}

Quaternion<KElement> SecondKindData::extend(const Quaternion<FieldElement>& x) const
{
    return algebra().element(k_.from_base(x[0]), k_.from_base(x[1]), k_.from_base(x[2]), k_.from_base(x[3]));
}

ConjugationReport canonical_conjugation(const SecondKindData& data)
{
    ConjugationReport rep;
    const CMExtension& k = data.cm();
    std::vector<KElement> scalars = {k.one(), k.sqrt_delta(), k.one() + k.sqrt_delta(),
                                     k.from_rational(3) - k.from_rational(2) * k.sqrt_delta()};
    if (data.m() == 1) {
        rep.alpha_involution = rep.alpha_commutes_with_J = rep.alphaJ_expected = true;
        for (const auto& z : scalars) {
            rep.alpha_involution = rep.alpha_involution && data.alpha(data.alpha(z)) == z;
            rep.alpha_commutes_with_J = rep.alpha_commutes_with_J && data.alpha(data.J(z)) == data.J(data.alpha(z));
            rep.alphaJ_expected = rep.alphaJ_expected && data.alpha(data.J(z)) == z;
        }
        rep.fixes_d0 = data.alpha(k.from_rational(5)) == k.from_rational(5);
        rep.conjugates_scalars = data.alpha(k.sqrt_delta()) == -k.sqrt_delta();
        return rep;
    }
    auto alg = data.algebra();
    rep.alpha_involution = rep.alpha_commutes_with_J = rep.alphaJ_expected = rep.fixes_d0 = true;
    for (const auto& e : alg.basis()) {
        rep.fixes_d0 = rep.fixes_d0 && data.alpha(e) == e;
        for (const auto& z : scalars) {
            Quaternion<KElement> x = z * e;
            rep.alpha_involution = rep.alpha_involution && data.alpha(data.alpha(x)) == x;
            rep.alpha_commutes_with_J = rep.alpha_commutes_with_J && data.alpha(data.J(x)) == data.J(data.alpha(x));
            rep.alphaJ_expected = rep.alphaJ_expected && data.alpha(data.J(x)) == x.sigma();
        }
    }
    auto s = k.sqrt_delta();
    rep.conjugates_scalars = data.alpha(alg.scalar(s)) == alg.scalar(-s);
    return rep;
}

}  // namespace sdk
