#include "sdk/hermitian.hpp"

#include <cmath>

namespace sdk {

namespace {

std::vector<FieldElement> real_parts(const std::vector<KElement>& gram, std::vector<std::string>& warnings)
{
    std::vector<FieldElement> out;
    for (size_t i = 0; i < gram.size(); ++i) {
        if (!gram[i].in_base())
            warnings.push_back("gram entry " + std::to_string(i + 1) +
                               " has a nonzero sqrt(delta) part; only its F part is used");
        out.push_back(gram[i].a());
    }
    return out;
}

}  // namespace

HermitianSpace::HermitianSpace(SecondKindData algebra, const std::vector<KElement>& gram, std::string basis_label)
    : algebra_(std::move(algebra)), label_(std::move(basis_label))
{
    gram_ = real_parts(gram, warnings_);
    if (gram_.empty())
        throw Error(Errc::InvalidType, "hermitian space must have positive dimension");
    for (const auto& q : gram_)
        if (q.is_zero())
            throw Error(Errc::Singular, "diagonal gram entries must be nonzero");
}

HermitianSpace::HermitianSpace(SecondKindData algebra, const std::vector<FieldElement>& gram, std::string basis_label)
    : algebra_(std::move(algebra)), gram_(gram), label_(std::move(basis_label))
{
    if (gram_.empty())
        throw Error(Errc::InvalidType, "hermitian space must have positive dimension");
    for (const auto& q : gram_) {
        if (q.field() != base())
            throw Error(Errc::FieldMismatch, "gram entries must lie in the base field");
        if (q.is_zero())
            throw Error(Errc::Singular, "diagonal gram entries must be nonzero");
    }
}

SkewHermitianSpace::SkewHermitianSpace(FQuatAlgebra algebra, std::vector<FQuat> gram, FQuat r)
    : algebra_(std::move(algebra)), gram_(std::move(gram)), r_(std::move(r))
{
    if (gram_.empty())
        throw Error(Errc::InvalidType, "skew-hermitian space must have positive dimension");
    for (const auto& q : gram_)
        if (!q.is_pure() || q.nrd().is_zero())
            throw Error(Errc::NotAdmissible, "gram entries must be invertible pure quaternions");
    if (!r_.is_pure() || r_.nrd().is_zero())
        throw Error(Errc::NotAdmissible, "r must be an invertible pure quaternion");
}

Signature signature_at_place(const HermitianSpace& space, const RealEmbedding& v)
{
    Signature s;
    int pos = 0;
    for (const auto& q : space.gram())
        if (v.sign(q) > 0)
            ++pos;
    int neg = space.n() - pos;
    if (space.m() == 1) {
        s.p = pos;
        s.q = neg;
        s.compact = pos == 0 || neg == 0;
        return s;
    }
    if (real_place_splitting(*space.algebra().d0(), v) == Splitting::Split) {
        s.p = s.q = space.n();
        s.compact = false;
        return s;
    }
    s.nonsplit_marker = true;
    s.p = 2 * pos;
    s.q = 2 * neg;
    s.compact = pos == 0 || neg == 0;
    return s;
}

std::vector<int> PlaceProfile::compact() const
{
    std::vector<int> out;
    for (const auto& p : places)
        if (p.compact)
            out.push_back(p.index);
    return out;
}
std::vector<int> PlaceProfile::noncompact() const
{
    std::vector<int> out;
    for (const auto& p : places)
        if (!p.compact)
            out.push_back(p.index);
    return out;
}
std::vector<int> PlaceProfile::split() const
{
    std::vector<int> out;
    for (const auto& p : places)
        if (p.split)
            out.push_back(p.index);
    return out;
}
std::vector<int> PlaceProfile::nonsplit() const
{
    std::vector<int> out;
    for (const auto& p : places)
        if (!p.split)
            out.push_back(p.index);
    return out;
}

PlaceProfile place_profile(const HermitianSpace& space)
{
    PlaceProfile prof;
    for (const auto& v : real_embeddings(space.base())) {
        PlaceInfo info;
        info.index = v.index();
        if (space.m() == 2)
            info.split = real_place_splitting(*space.algebra().d0(), v) == Splitting::Split;
        Signature s = signature_at_place(space, v);
        info.compact = s.compact;
        info.signature = s;
        prof.places.push_back(info);
    }
    return prof;
}

PlaceProfile place_profile(const SkewHermitianSpace& space)
{
    PlaceProfile prof;
    for (const auto& v : real_embeddings(space.base())) {
        PlaceInfo info;
        info.index = v.index();
        info.split = real_place_splitting(space.algebra(), v) == Splitting::Split;
        info.compact = info.split && associated_bilinear_form(space, v).definite;
        prof.places.push_back(info);
    }
    return prof;
}

int sign_with_root(const RealEmbedding& v, const FieldElement& x, const FieldElement& y, const FieldElement& d)
{
    int sx = v.sign(x);
    int sy = v.sign(y);
    if (sy == 0)
        return sx;
    if (sx == 0 || sx == sy)
        return sy;
    // Opposite signs: compare x^2 with y^2 d.
    int cmp = v.sign(x * x - y * y * d);
    return cmp == 0 ? 0 : (cmp > 0 ? sx : sy);
}

BilinearForm associated_bilinear_form(const SkewHermitianSpace& space, const RealEmbedding& v)
{
    const FQuatAlgebra& alg = space.algebra();
    if (real_place_splitting(alg, v) == Splitting::NonSplit)
        throw Error(Errc::WrongModel, "associated bilinear form needs a split place");
    int n = space.n();
    BilinearForm out;
    out.matrix = Eigen::MatrixXd::Zero(2 * n, 2 * n);

    // Entries of a block eps * phi(q) are (phi10, phi11, -phi00, -phi01);
    // each is x + y * w with w the chosen root, kept exact for sign decisions.
    struct Entry {
        FieldElement x, y;
    };
    auto block = [&](const SplittingMap<FieldElement>& phi, const FQuat& q) {
        auto m = phi(q);
        std::array<Entry, 4> e = {Entry{m(1, 0).a(), m(1, 0).b()}, Entry{m(1, 1).a(), m(1, 1).b()},
                                  Entry{-m(0, 0).a(), -m(0, 0).b()}, Entry{-m(0, 1).a(), -m(0, 1).b()}};
        return e;
    };

    std::vector<FQuat> choices = {space.r(), alg.lambda(), alg.mu()};
    std::optional<SplittingMap<FieldElement>> phi;
    bool from_r = false;
    // Prefer phi on F(r) when it already lands in real matrices.
    {
        SplittingMap<FieldElement> pr(space.r());
        bool real = v.sign(pr.r_square()) > 0;
        if (!real) {
            real = true;
            for (const auto& q : space.gram())
                for (const auto& e : block(pr, q))
                    real = real && e.y.is_zero();
        }
        if (real) {
            phi = pr;
            from_r = true;
        }
    }
    for (size_t k = 1; !phi && k < choices.size(); ++k)
        if (v.sign(pure_square(choices[k])) > 0)
            phi = SplittingMap<FieldElement>(choices[k]);
    if (!phi)
        throw Error(Errc::InternalError, "no real splitting found at a split place");

    const FieldElement& d = phi->r_square();
    bool root_real = v.sign(d) > 0;
    double w = root_real ? std::sqrt(v.value(d)) : 0.0;
    bool definite = true;
    int common = 0;
    for (int i = 0; i < n; ++i) {
        auto e = block(*phi, space.gram()[i]);
        auto val = [&](const Entry& t) { return v.value(t.x) + v.value(t.y) * w; };
        out.matrix(i, i) = val(e[0]);
        out.matrix(i, n + i) = val(e[1]);
        out.matrix(n + i, i) = val(e[2]);
        out.matrix(n + i, n + i) = val(e[3]);
        // The block has determinant Nrd(q_i); definite iff that is positive.
        int det_sign = v.sign(space.gram()[i].nrd());
        int s = root_real ? sign_with_root(v, e[0].x, e[0].y, d) : v.sign(e[0].x);
        if (det_sign <= 0 || s == 0) {
            definite = false;
            continue;
        }
        if (common == 0)
            common = s;
        else if (common != s)
            definite = false;
    }
    out.definite = definite;
    out.sign = definite ? common : 0;
    out.diagonal_from_r = from_r;
    return out;
}

StrongTest is_strongly_hermitian(const HermitianSpace& space)
{
    StrongTest t;
    t.ok = true;
    if (space.m() == 1)
        return t;
    for (const auto& p : place_profile(space).places) {
        if (!p.split && !p.compact) {
            t.ok = false;
            t.reasons.push_back("place " + std::to_string(p.index + 1) +
                                " is quaternion-nonsplit but not compact");
        }
    }
    return t;
}

StrongTest is_strongly_skew_hermitian(const SkewHermitianSpace& space)
{
    StrongTest t;
    t.ok = true;
    const FQuat& r = space.r();
    for (int i = 0; i < space.n(); ++i) {
        const FQuat& q = space.gram()[i];
        if (!q.is_pure()) {
            t.ok = false;
            t.reasons.push_back("q_" + std::to_string(i + 1) + " is not pure");
        } else if (r * q != -(q * r)) {
            t.ok = false;
            t.reasons.push_back("r does not anticommute with q_" + std::to_string(i + 1));
        }
    }
    if (space.n() % 2 == 0 || space.n() < 5) {
        t.ok = false;
        t.reasons.push_back("dimension " + std::to_string(space.n()) + " is not an odd number >= 5");
    }
    auto prof = place_profile(space);
    if (prof.compact() != prof.split()) {
        t.ok = false;
        t.reasons.push_back("compact places differ from split places");
    }
    return t;
}

}  // namespace sdk
