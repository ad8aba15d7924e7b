#include "sdk/descent.hpp"

#include "sdk/errors.hpp"

#include <gmp.h>

#include <cmath>
#include <numbers>
#include <set>
#include <sstream>

namespace sdk {

namespace {

bool rational_square(const Rational& x)
{
    if (x < 0)
        return false;
    return mpz_perfect_square_p(x.get_num_mpz_t()) != 0 && mpz_perfect_square_p(x.get_den_mpz_t()) != 0;
}

std::string show(const FieldElement& x) { return x.to_string(); }

std::string show(const KElement& x)
{
    if (x.in_base())
        return show(x.a());
    return "(" + show(x.a()) + ") + (" + show(x.b()) + ")*sqrt(" + show(x.d()) + ")";
}

template <class S>
std::string show(const Quaternion<S>& x)
{
    static const char* names[] = {"", "*l", "*m", "*lm"};
    std::string out;
    for (int k = 0; k < 4; ++k) {
        if (is_zero(x.coeffs()[k]))
            continue;
        if (!out.empty())
            out += " + ";
        out += "(" + show(x.coeffs()[k]) + ")" + names[k];
    }
    return out.empty() ? "0" : out;
}

template <class T>
std::string show(const Mat<T>& m)
{
    std::ostringstream os;
    os << "[";
    for (int i = 0; i < m.rows(); ++i) {
        os << (i ? "; " : "");
        for (int j = 0; j < m.cols(); ++j)
            os << (j ? ", " : "") << show(m(i, j));
    }
    os << "]";
    return os.str();
}

double rel(const CMat& x, const CMat& y) { return (x - y).norm() / std::max(1.0, y.norm()); }

std::vector<int> closure_mod(const std::vector<int>& gens, int n)
{
    std::set<int> seen{0};
    std::vector<int> frontier{0};
    while (!frontier.empty()) {
        int a = frontier.back();
        frontier.pop_back();
        for (int g : gens) {
            int b = ((a + g) % n + n) % n;
            if (seen.insert(b).second)
                frontier.push_back(b);
        }
    }
    return {seen.begin(), seen.end()};
}

// Integer coefficients of the n-th cyclotomic polynomial, low degree first.
std::vector<long> cyclotomic(int n)
{
    std::vector<long> p(n + 1, 0);
    p[0] = -1;
    p[n] = 1;
    for (int d = 1; d < n; ++d) {
        if (n % d)
            continue;
        std::vector<long> q = cyclotomic(d);
        // exact division by a monic divisor
        int dq = static_cast<int>(q.size()) - 1;
        std::vector<long> quot(p.size() - dq, 0);
        for (int k = static_cast<int>(p.size()) - 1; k >= dq; --k) {
            long c = p[k];
            quot[k - dq] = c;
            for (int j = 0; j <= dq; ++j)
                p[k - dq + j] -= c * q[j];
        }
        p = quot;
    }
    return p;
}

FieldElement power(const FieldElement& x, int k)
{
    FieldElement out = x.field().one();
    for (int i = 0; i < k; ++i)
        out = out * x;
    return out;
}

// The automorphism zeta -> zeta^e of Q(zeta_n), applied by substitution.
FieldElement galois_act(const FieldElement& x, const FieldElement& zeta_e)
{
    FieldElement out = x.field().zero();
    FieldElement pw = x.field().one();
    for (const Rational& c : x.coeffs()) {
        out = out + c * pw;
        pw = pw * zeta_e;
    }
    return out;
}

const NumberField& base_of(const InvolutionBundle& b)
{
    return b.kind() == InvolutionBundle::Kind::TypeA ? b.hermitian().base() : b.skew().base();
}

bool kernel_numeric(const InvolutionBundle& b, const std::vector<int>& points, int order, bool& inverted)
{
    int size = b.model_size();
    CMat id = CMat::Identity(size, size);
    bool ok = true;
    inverted = true;
    for (const RealEmbedding& v : real_embeddings(base_of(b))) {
        if (b.profile().places.at(v.index()).compact)
            continue;
        for (int k : points) {
            Complex zeta = std::polar(1.0, 2 * std::numbers::pi * k / order);
            CMat lhs = theta_at_place(b, v, CMat(id * std::conj(zeta))) * std::conj(zeta);
            ok = ok && rel(lhs, id) < 1e-12;
            CMat inv = theta_at_place(b, v, CMat(id * zeta));
            Complex expect = b.kind() == InvolutionBundle::Kind::TypeA ? std::conj(zeta) : zeta;
            inverted = inverted && rel(inv, CMat(id * expect)) < 1e-12;
        }
    }
    return ok;
}

}  // namespace

FactorClass classify_factor(const FactorSpec& f)
{
    FactorClass out;
    if (f.kind == FactorSpec::Kind::Other) {
        out.label = f.other_type + std::to_string(f.other_rank);
        out.reason = "type " + f.other_type + " is neither A nor D^H";
        return out;
    }
    if (f.kind == FactorSpec::Kind::TypeA) {
        if (!f.base || !f.delta)
            throw Error(Errc::ParseError, "type A factor needs a base field and delta");
        int m = f.d0 ? 2 : 1;
        out.label = "A" + std::to_string(static_cast<int>(f.gram.size()) * m - 1);
        if (!f.base->totally_real()) {
            out.reason = "F must be totally real";
            return out;
        }
        if (f.delta->is_rational() && rational_square(f.delta->rational_value())) {
            out.reason = "K must be a field: delta is a square in F";
            return out;
        }
        if (!totality_check(*f.base, *f.delta, TotalityMode::TotallyNegative)) {
            out.reason = "K/F must be a CM extension: delta is not totally negative";
            return out;
        }
        if (f.degree != 1 && f.degree != 2) {
            out.reason = "D must be K or a quaternion algebra over K";
            return out;
        }
        if ((f.degree == 2) != f.d0.has_value()) {
            out.reason = "degree 2 needs quaternion data and degree 1 forbids it";
            return out;
        }
    } else if (!f.skew) {
        throw Error(Errc::ParseError, "type D factor needs a skew-hermitian space");
    } else {
        out.label = "D" + std::to_string(f.skew->n());
    }
    try {
        InvolutionBundle b = bundle_of(f);
        if (b.profile().noncompact().empty()) {
            out.reason = "no non-compact place: the factor is compact everywhere";
            return out;
        }
        if (b.kind() == InvolutionBundle::Kind::TypeD && b.profile().nonsplit().empty()) {
            out.reason = "no quaternion-nonsplit place carries an SO* model";
            return out;
        }
    } catch (const Error& e) {
        if (e.code() == Errc::ParseError || e.code() == Errc::InternalError)
            throw;
        out.reason = e.what();
        return out;
    }
    out.admissible = true;
    return out;
}

bool center_is_cm_split(const DatumSpec& spec, std::string* why)
{
    if (!spec.center)
        return true;
    try {
        (void)character_conjugation(spec.center->rank, spec.center->galois, spec.center->c);
        return true;
    } catch (const Error& e) {
        if (e.code() != Errc::NotCMSplit && e.code() != Errc::InvalidType)
            throw;
        if (why)
            *why = e.what();
        return false;
    }
}

bool is_strongly_ADH(const DatumSpec& spec)
{
    if (spec.factors.empty())
        return false;
    for (const FactorSpec& f : spec.factors)
        if (!classify_factor(f).admissible)
            return false;
    return center_is_cm_split(spec);
}

HermitianSpace hermitian_space_of(const FactorSpec& f)
{
    if (f.kind != FactorSpec::Kind::TypeA || !f.base || !f.delta)
        throw Error(Errc::WrongModel, "hermitian space needs type A data");
    CMExtension k(*f.base, *f.delta);
    return HermitianSpace(SecondKindData(k, f.d0, f.degree), f.gram);
}

InvolutionBundle bundle_of(const FactorSpec& f)
{
    switch (f.kind) {
    case FactorSpec::Kind::TypeA:
        return InvolutionBundle::type_a(hermitian_space_of(f));
    case FactorSpec::Kind::TypeD:
        if (!f.skew)
            throw Error(Errc::ParseError, "type D factor needs a skew-hermitian space");
        return InvolutionBundle::type_d(*f.skew);
    default:
        throw Error(Errc::NotAdmissible, "type " + f.other_type + " is not covered");
    }
}

double GroupInvolution::nu(const CMat& g) const
{
    CMat s = g.adjoint() * form * g;
    Eigen::Index r = 0, c = 0;
    form.cwiseAbs().maxCoeff(&r, &c);
    return (s(r, c) / form(r, c)).real();
}

CMat GroupInvolution::operator()(const CMat& g) const
{
    CMat t = theta_prime(g);
    if (nu_exponent == 0)
        return t;
    return std::pow(nu(g), nu_exponent) * t;
}

GroupInvolution corrupted(const GroupInvolution& theta)
{
    GroupInvolution bad = theta;
    bad.nu_exponent = theta.nu_exponent == 0 ? 1 : -theta.nu_exponent;
    return bad;
}

std::vector<Complex> descent_grid()
{
    std::vector<Complex> out;
    for (double r : {1.0, 2.0})
        for (int k = 0; k < 16; ++k)
            out.push_back(std::polar(r, 2 * std::numbers::pi * (k + 0.5) / 16));
    return out;
}

bool conjugate_point_check(const GroupInvolution& theta, double tol)
{
    for (Complex z : descent_grid())
        if (rel(theta(theta.x.at(z)), theta.x.at(std::conj(z))) > tol)
            return false;
    return true;
}

bool cocycle_check(const GroupInvolution& theta, double tol)
{
    // Phi(x)(z) = theta(x(conj z)); Phi(Phi(x))(z) = theta(theta(x(z))).
    auto phi = [&theta](std::function<CMat(Complex)> x) {
        return std::function<CMat(Complex)>([&theta, x](Complex z) { return theta(x(std::conj(z))); });
    };
    auto twice = phi(phi(theta.x.at));
    for (Complex z : descent_grid())
        if (rel(twice(z), theta.x.at(z)) > tol)
            return false;
    return true;
}

bool cyclotomic_center_identities(int n, const std::vector<Rational>& gram)
{
    if (n < 1 || gram.empty())
        throw Error(Errc::InvalidType, "cyclotomic check needs n >= 1 and a nonempty gram");
    std::vector<Rational> poly;
    for (long c : cyclotomic(n))
        poly.emplace_back(c);
    NumberField f(poly);
    FieldElement zeta = f.degree() == 1 ? f.from_rational(-poly[0]) : f.gen();
    FieldElement zeta_bar = power(zeta, n - 1);
    int size = static_cast<int>(gram.size());
    std::vector<FieldElement> qd;
    for (const Rational& g : gram)
        qd.push_back(f.from_rational(g));
    Mat<FieldElement> q = Mat<FieldElement>::diagonal(qd);
    Mat<FieldElement> qi = q.inverse();
    auto theta = [&](const Mat<FieldElement>& x) { return qi * x.inverse().transpose() * q; };
    Mat<FieldElement> id = Mat<FieldElement>::identity(size, f.one());
    for (int k = 0; k < n; ++k) {
        FieldElement z = power(zeta, k);
        FieldElement iz = galois_act(z, zeta_bar);
        if (!(iz * z == f.one()))
            return false;
        if (!(theta(z * id) == iz * id))
            return false;
        if (!(iz * theta(iz * id) == id))
            return false;
    }
    return true;
}

KernelCheck kernel_pair_check(const InvolutionBundle& b, const std::vector<int>& generators)
{
    KernelCheck kc;
    kc.generators = generators.empty() ? std::vector<int>{1} : generators;
    kc.order = b.kind() == InvolutionBundle::Kind::TypeA ? b.model_size() : 2;
    kc.points = closure_mod(kc.generators, kc.order);
    bool inverted = false;
    kc.numeric_ok = kernel_numeric(b, kc.points, kc.order, inverted);
    if (b.kind() == InvolutionBundle::Kind::TypeA) {
        std::vector<Rational> gram;
        bool rational = true;
        for (const FieldElement& g : b.hermitian().gram())
            rational = rational && g.is_rational();
        for (int copy = 0; copy < b.m(); ++copy)
            for (const FieldElement& g : b.hermitian().gram())
                gram.push_back(rational ? g.rational_value() : Rational(1));
        kc.exact_ok = cyclotomic_center_identities(kc.order, gram);
        kc.center_inverted = inverted && kc.exact_ok;
    } else {
        const FQuatAlgebra& d = b.skew().algebra();
        Mat<FQuat> minus = Mat<FQuat>::identity(b.n(), d.one());
        minus = -minus;
        Mat<FQuat> lhs = d.scalar(-d.a().field().one()) * b.theta(minus);
        kc.exact_ok = lhs == Mat<FQuat>::identity(b.n(), d.one());
        // inner on the derived group: the centre is fixed, and -1 = (-1)^-1
        kc.center_inverted = inverted && b.theta(minus) == minus;
    }
    return kc;
}

Extension extend_involution(const DatumSpec& spec, const std::vector<InvolutionBundle>& bundles)
{
    if (bundles.size() != spec.factors.size())
        throw Error(Errc::InternalError, "one bundle per factor is required");
    for (const FactorSpec& f : spec.factors) {
        FactorClass fc = classify_factor(f);
        if (!fc.admissible)
            throw Error(Errc::NotAdmissible, fc.label + ": " + fc.reason);
    }
    std::string why;
    if (!center_is_cm_split(spec, &why))
        throw Error(Errc::NotAdmissible, "centre: " + why);

    Extension ext;
    for (size_t i = 0; i < bundles.size(); ++i) {
        const InvolutionBundle& b = bundles[i];
        KernelCheck kc = kernel_pair_check(b, spec.kernel_generators);
        if (!kc.numeric_ok || !kc.exact_ok || !kc.center_inverted)
            throw Error(Errc::NotExtendable, "kernel pair check failed for factor " + std::to_string(i + 1) +
                                                 " (" + b.label() + ")");
        ext.kernels.push_back(kc);
        for (const RealEmbedding& v : real_embeddings(base_of(b))) {
            if (b.profile().places.at(v.index()).compact)
                continue;
            GroupInvolution g;
            g.factor = static_cast<int>(i);
            g.place = v.index();
            try {
                g.x = build_y(b, v);
            } catch (const Error& e) {
                if (e.code() != Errc::NoHodgeMap)
                    throw;
                ext.diagnostics.push_back("factor " + std::to_string(i + 1) + ", place " +
                                          std::to_string(v.index() + 1) + ": " + e.what());
                continue;
            }
            g.form = g.x.form;
            if (b.kind() == InvolutionBundle::Kind::TypeA) {
                g.model = b.m() == 1 ? "GU" : "GU(L)";
                g.nu_exponent = 1;
            } else {
                g.model = "GO*";
                g.nu_exponent = 0;
            }
            g.theta_prime = [b, v](const CMat& x) { return theta_at_place(b, v, x); };
            ext.pieces.push_back(std::move(g));
        }
    }
    if (spec.center)
        ext.diagnostics.push_back("centre: X*(Z0) of rank " + std::to_string(spec.center->rank) +
                                  " with c acting as the given conjugation");
    ext.extension_ok = !ext.pieces.empty();
    if (ext.pieces.empty())
        ext.diagnostics.push_back("no place carries a Hodge map");
    return ext;
}

HeckeResult hecke_descent_condition(const InvolutionBundle& b, const Mat<KElement>& q)
{
    if (b.kind() != InvolutionBundle::Kind::TypeA || b.m() != 1)
        throw Error(Errc::WrongModel, "K-matrices belong to type A with D = K");
    Mat<KElement> t = q.map([](const KElement& x) { return x.conj(); });
    return {t == q, show(t)};
}

HeckeResult hecke_descent_condition(const InvolutionBundle& b, const Mat<QK>& q)
{
    if (b.kind() != InvolutionBundle::Kind::TypeA || b.m() != 2)
        throw Error(Errc::WrongModel, "D-matrices over K belong to type A with m = 2");
    Mat<QK> t = q.map([&b](const QK& x) { return b.hermitian().algebra().alpha(x); });
    return {t == q, show(t)};
}

HeckeResult hecke_descent_condition(const InvolutionBundle& b, const Mat<FQuat>& q)
{
    if (b.kind() != InvolutionBundle::Kind::TypeD)
        throw Error(Errc::WrongModel, "D-matrices over F belong to type D");
    Mat<FQuat> t = b.theta(q);
    return {t == q, show(t)};
}

DescentReport run_descent(const DatumSpec& spec, std::uint64_t seed, int samples)
{
    DescentReport rep;
    rep.seed = seed;
    for (const FactorSpec& f : spec.factors)
        rep.factors.push_back(classify_factor(f));
    std::string why;
    rep.center_ok = center_is_cm_split(spec, &why);
    if (!rep.center_ok)
        rep.diagnostics.push_back("centre: " + why);
    rep.strongly_ADH = is_strongly_ADH(spec);
    for (size_t i = 0; i < rep.factors.size(); ++i)
        if (!rep.factors[i].admissible)
            rep.diagnostics.push_back("factor " + std::to_string(i + 1) + " (" + rep.factors[i].label +
                                      "): " + rep.factors[i].reason);
    if (!rep.strongly_ADH)
        return rep;

    std::vector<InvolutionBundle> bundles;
    for (const FactorSpec& f : spec.factors) {
        bundles.push_back(bundle_of(f));
        rep.bundles.push_back(verify_bundle(bundles.back(), seed, samples));
    }
    Extension ext;
    try {
        ext = extend_involution(spec, bundles);
    } catch (const Error& e) {
        if (e.code() != Errc::NotExtendable)
            throw;
        rep.diagnostics.push_back(e.what());
        return rep;
    }
    for (auto& d : ext.diagnostics)
        rep.diagnostics.push_back(d);
    rep.extension_ok = ext.extension_ok;
    rep.conjugate_point_ok = rep.extension_ok;
    rep.cocycle_ok = rep.extension_ok;
    rep.negative_control_rejected = rep.extension_ok;
    for (const GroupInvolution& g : ext.pieces) {
        bool cp = conjugate_point_check(g);
        bool cc = cocycle_check(g);
        bool neg = !cocycle_check(corrupted(g));
        rep.conjugate_point_ok = rep.conjugate_point_ok && cp;
        rep.cocycle_ok = rep.cocycle_ok && cc;
        rep.negative_control_rejected = rep.negative_control_rejected && neg;
        if (!cp || !cc || !neg)
            rep.diagnostics.push_back("factor " + std::to_string(g.factor + 1) + ", place " +
                                      std::to_string(g.place + 1) + " (" + g.model + "): conjugate point " +
                                      (cp ? "ok" : "FAILED") + ", cocycle " + (cc ? "ok" : "FAILED") +
                                      ", corrupted " + (neg ? "rejected" : "ACCEPTED"));
    }
    return rep;
}

}  // namespace sdk
