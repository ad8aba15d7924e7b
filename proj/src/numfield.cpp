#include "sdk/numfield.hpp"

#include "sdk/errors.hpp"

#include <sstream>

namespace sdk {

struct NumberField::Impl {
    QPoly p;
    std::vector<Interval> roots;
    int complex_pairs = 0;
};

namespace {

Rational two_pow_neg(int bits)
{
    Integer d = 1;
    d <<= bits;
    return Rational(1, 1) / Rational(d);
}

// Moves an endpoint off a root of p; p has finitely many roots so this terminates.
Rational non_root_near(const QPoly& p, const Rational& a, const Rational& b, Rational x)
{
    int k = 3;
    while (p.eval(x) == 0) {
        x = a + (b - a) / k;
        k += 2;
    }
    return x;
}

void isolate(const QPoly& p, const SturmChain& sc, const Rational& a, const Rational& b, int count,
             std::vector<Interval>& out)
{
    if (count == 0)
        return;
    if (count == 1) {
        out.push_back({a, b});
        return;
    }
    Rational mid = non_root_near(p, a, b, (a + b) / 2);
    int left = sc.count_roots(a, mid);
    isolate(p, sc, a, mid, left, out);
    isolate(p, sc, mid, b, count - left, out);
}

Interval bisect_once(const QPoly& p, const Interval& iv)
{
    if (iv.lo == iv.hi)
        return iv;
    Rational mid = (iv.lo + iv.hi) / 2;
    int sm = sgn(p.eval(mid));
    if (sm == 0)
        return {mid, mid};
    int slo = sgn(p.eval(iv.lo));
    if (slo != 0 && slo != sm)
        return {iv.lo, mid};
    return {mid, iv.hi};
}

Interval refine_to(const QPoly& p, Interval iv, const Rational& width)
{
    while (iv.width() > width)
        iv = bisect_once(p, iv);
    return iv;
}

}  // namespace

NumberField::NumberField(const std::vector<Rational>& min_poly)
{
    QPoly p(min_poly);
    if (p.degree() < 1)
        throw Error(Errc::InvalidField, "defining polynomial must have positive degree");
    if (p.leading() != 1)
        throw Error(Errc::InvalidField, "defining polynomial must be monic");
    for (const auto& c : p.coeffs())
        if (c.get_den() != 1)
            throw Error(Errc::InvalidField, "defining polynomial must have integer coefficients");
    if (QPoly::gcd(p, p.derivative()).degree() != 0)
        throw Error(Errc::InvalidField, "defining polynomial " + p.to_string() + " is not squarefree");

    auto impl = std::make_shared<Impl>();
    impl->p = p;
    SturmChain sc(p);
    Rational bound = root_bound(p);
    int real = sc.count_roots(-bound, bound);
    isolate(p, sc, -bound, bound, real, impl->roots);
    for (auto& iv : impl->roots)
        iv = refine_to(p, iv, two_pow_neg(kDefaultPrecisionBits));
    impl->complex_pairs = (p.degree() - real) / 2;
    impl_ = std::move(impl);
}

NumberField NumberField::rationals()
{
    static const NumberField q(std::vector<Rational>{0, 1});
    return q;
}

int NumberField::degree() const { return impl_->p.degree(); }
const QPoly& NumberField::min_poly() const { return impl_->p; }
int NumberField::real_root_count() const { return static_cast<int>(impl_->roots.size()); }
int NumberField::complex_pair_count() const { return impl_->complex_pairs; }
const std::vector<Interval>& NumberField::root_intervals() const { return impl_->roots; }

FieldElement NumberField::zero() const { return from_rational(0); }
FieldElement NumberField::one() const { return from_rational(1); }

FieldElement NumberField::gen() const
{
    if (degree() == 1)
        return from_rational(-impl_->p.coeff(0));
    std::vector<Rational> c(degree());
    c[1] = 1;
    return FieldElement(*this, std::move(c));
}

FieldElement NumberField::from_rational(const Rational& q) const
{
    std::vector<Rational> c(degree());
    c[0] = q;
    return FieldElement(*this, std::move(c));
}

FieldElement NumberField::element(std::vector<Rational> coeffs) const
{
    if (static_cast<int>(coeffs.size()) > degree()) {
        QPoly r = QPoly(std::move(coeffs)) % impl_->p;
        coeffs = r.coeffs();
    }
    coeffs.resize(degree());
    return FieldElement(*this, std::move(coeffs));
}

bool operator==(const NumberField& a, const NumberField& b)
{
    return a.impl_ == b.impl_ || a.impl_->p == b.impl_->p;
}

FieldElement::FieldElement(NumberField field, std::vector<Rational> coeffs)
    : field_(std::move(field)), coeffs_(std::move(coeffs))
{
    if (static_cast<int>(coeffs_.size()) != field_.degree())
        throw Error(Errc::InternalError, "coefficient vector length does not match field degree");
}

bool FieldElement::is_zero() const
{
    for (const auto& c : coeffs_)
        if (c != 0)
            return false;
    return true;
}

bool FieldElement::is_rational() const
{
    for (size_t i = 1; i < coeffs_.size(); ++i)
        if (coeffs_[i] != 0)
            return false;
    return true;
}

Rational FieldElement::rational_value() const
{
    if (!is_rational())
        throw Error(Errc::InternalError, "element is not rational");
    return coeffs_[0];
}

static void check_same(const FieldElement& x, const FieldElement& y)
{
    if (x.field() != y.field())
        throw Error(Errc::FieldMismatch, "operands live in different number fields");
}

FieldElement FieldElement::inv() const
{
    if (is_zero())
        throw Error(Errc::DivisionByZero, "inverse of zero");
    QPoly s, t;
    QPoly g = QPoly::ext_gcd(poly(), field_.min_poly(), s, t);
    if (g.degree() != 0)
        throw Error(Errc::ZeroDivisor, to_string() + " is a zero divisor; the defining polynomial is reducible");
    return field_.element((s % field_.min_poly()).coeffs());
}

FieldElement FieldElement::operator-() const
{
    std::vector<Rational> c = coeffs_;
    for (auto& x : c)
        x = -x;
    return FieldElement(field_, std::move(c));
}

FieldElement operator+(const FieldElement& x, const FieldElement& y)
{
    check_same(x, y);
    std::vector<Rational> c = x.coeffs_;
    for (size_t i = 0; i < c.size(); ++i)
        c[i] += y.coeffs_[i];
    return FieldElement(x.field_, std::move(c));
}

FieldElement operator-(const FieldElement& x, const FieldElement& y)
{
    check_same(x, y);
    std::vector<Rational> c = x.coeffs_;
    for (size_t i = 0; i < c.size(); ++i)
        c[i] -= y.coeffs_[i];
    return FieldElement(x.field_, std::move(c));
}

FieldElement operator*(const FieldElement& x, const FieldElement& y)
{
    check_same(x, y);
    if (x.field_.degree() == 1)
        return x.field_.from_rational(x.coeffs_[0] * y.coeffs_[0]);
    return x.field_.element((x.poly() * y.poly() % x.field_.min_poly()).coeffs());
}

FieldElement operator*(const Rational& c, const FieldElement& x)
{
    std::vector<Rational> v = x.coeffs_;
    for (auto& a : v)
        a *= c;
    return FieldElement(x.field_, std::move(v));
}

bool operator==(const FieldElement& x, const FieldElement& y)
{
    return x.field_ == y.field_ && x.coeffs_ == y.coeffs_;
}

std::string FieldElement::to_string() const
{
    return poly().to_string();
}

RealEmbedding::RealEmbedding(NumberField field, int index, Interval root)
    : field_(std::move(field)), index_(index), root_(std::move(root))
{
}

Interval RealEmbedding::enclose(const FieldElement& e, int bits) const
{
    if (e.field() != field_)
        throw Error(Errc::FieldMismatch, "embedding applied to an element of another field");
    QPoly ep = e.poly();
    Rational target = two_pow_neg(bits);
    Interval iv = root_;
    Interval val = ep.eval(iv);
    while (val.width() > target) {
        iv = bisect_once(field_.min_poly(), iv);
        val = ep.eval(iv);
    }
    return val;
}

int RealEmbedding::sign(const FieldElement& e) const
{
    if (e.is_zero())
        return 0;
    if (e.is_rational())
        return sgn(e.coeffs()[0]);
    const QPoly& p = field_.min_poly();
    QPoly g = QPoly::gcd(e.poly(), p);
    if (g.degree() > 0) {
        // v(e) = 0 exactly when the root lies on a common factor.
        bool vanishes = root_.lo == root_.hi ? g.eval(root_.lo) == 0
                                             : SturmChain(g).count_roots(root_.lo, root_.hi) > 0;
        if (vanishes)
            return 0;
    }
    QPoly ep = e.poly();
    Interval iv = root_;
    for (;;) {
        Interval val = ep.eval(iv);
        if (val.lo > 0)
            return 1;
        if (val.hi < 0)
            return -1;
        iv = bisect_once(p, iv);
    }
}

double RealEmbedding::value(const FieldElement& e) const
{
    Interval iv = enclose(e, 64);
    Rational mid = (iv.lo + iv.hi) / 2;
    return mid.get_d();
}

std::vector<RealEmbedding> real_embeddings(const NumberField& field, int precision_bits)
{
    if (!field.totally_real())
        throw Error(Errc::NotTotallyReal, "field " + field.min_poly().to_string() + " has complex embeddings");
    std::vector<RealEmbedding> out;
    Rational width = two_pow_neg(precision_bits);
    int idx = 0;
    for (const auto& iv : field.root_intervals())
        out.emplace_back(field, idx++, refine_to(field.min_poly(), iv, width));
    return out;
}

bool totality_check(const NumberField& field, const FieldElement& e, TotalityMode mode)
{
    if (mode == TotalityMode::TotallyRealField)
        return field.totally_real();
    if (!field.totally_real())
        throw Error(Errc::NotTotallyReal, "sign conditions need a totally real field");
    int want = mode == TotalityMode::TotallyNegative ? -1 : 1;
    for (const auto& v : real_embeddings(field))
        if (v.sign(e) != want)
            return false;
    return true;
}

}  // namespace sdk
