#include "doctest.h"

#include "oracles.hpp"
#include "sdk/descent.hpp"
#include "sdk/errors.hpp"

#include <random>

using namespace sdk;

namespace {

NumberField Q() { return NumberField::rationals(); }
FieldElement q(long n, long d = 1)
{
    Rational r(n, d);
    r.canonicalize();
    return Q().from_rational(r);
}

FactorSpec type_a(long delta, const std::vector<long>& gram, int degree = 1)
{
    FactorSpec f;
    f.kind = FactorSpec::Kind::TypeA;
    f.base = Q();
    f.delta = q(delta);
    f.degree = degree;
    for (long g : gram)
        f.gram.push_back(q(g));
    return f;
}

FactorSpec d5()
{
    FQuatAlgebra d(q(-1), q(-1));
    FactorSpec f;
    f.kind = FactorSpec::Kind::TypeD;
    f.skew = SkewHermitianSpace(d, {d.mu(), d.lambda_mu(), d.mu(), q(2) * d.mu(), d.lambda_mu()}, d.lambda());
    return f;
}

FactorSpec quaternionic()
{
    NumberField f({Rational(-2), Rational(0), Rational(1)});
    FactorSpec s;
    s.kind = FactorSpec::Kind::TypeA;
    s.base = f;
    s.delta = f.from_rational(-1);
    s.d0 = FQuatAlgebra(f.from_rational(3), f.from_rational(5));
    s.degree = 2;
    s.gram = {f.one(), f.one() + f.gen()};
    return s;
}

IntMat swap2()
{
    IntMat c(2, 2);
    c << 0, 1, 1, 0;
    return c;
}

DatumSpec gu21()
{
    DatumSpec s;
    s.name = "GU(2,1)";
    s.factors = {type_a(-1, {1, 1, -1})};
    s.center = CenterSpec{2, {swap2()}, swap2()};
    return s;
}

KElement k_of(const CMExtension& k, long a, long b) { return k.element(q(a), q(b)); }

// Exact unitary for diag(gram) by a Cayley transform, checked here before use.
Mat<KElement> exact_unitary(const CMExtension& k, const std::vector<long>& gram, std::mt19937_64& rng)
{
    int n = static_cast<int>(gram.size());
    std::uniform_int_distribution<int> d(-3, 3);
    for (;;) {
        Mat<KElement> h = Mat<KElement>::zeros(n, n, k.zero());
        for (int i = 0; i < n; ++i) {
            h(i, i) = k_of(k, 0, d(rng));
            for (int j = i + 1; j < n; ++j) {
                h(i, j) = k_of(k, d(rng), d(rng));
                h(j, i) = -h(i, j).conj();
            }
        }
        std::vector<KElement> qinv;
        for (long g : gram)
            qinv.push_back(k.from_base(q(1, g)));
        Mat<KElement> a = Mat<KElement>::diagonal(qinv) * h;
        Mat<KElement> id = Mat<KElement>::identity(n, k.one());
        try {
            Mat<KElement> u = (id - a) * (id + a).inverse();
            return u;
        } catch (const Error&) {
        }
    }
}

Mat<KElement> bar(const Mat<KElement>& x)
{
    return x.map([](const KElement& z) { return z.conj(); });
}

Mat<KElement> star(const Mat<KElement>& x) { return bar(x).transpose(); }

}  // namespace

TEST_CASE("classification of factors")
{
    auto ok = classify_factor(type_a(-1, {1, 1, -1}));
    CHECK(ok.admissible);
    CHECK(ok.label == "A2");
    CHECK(ok.reason.empty());

    auto split = classify_factor(type_a(4, {1, 1, -1}));
    CHECK_FALSE(split.admissible);
    CHECK(split.reason.find("K must be a field") != std::string::npos);

    auto real = classify_factor(type_a(2, {1, 1, -1}));
    CHECK_FALSE(real.admissible);
    CHECK(real.reason.find("CM") != std::string::npos);

    auto cubic = classify_factor(type_a(-1, {1, 1, -1}, 3));
    CHECK_FALSE(cubic.admissible);
    CHECK(cubic.reason == "D must be K or a quaternion algebra over K");

    FactorSpec c3;
    c3.kind = FactorSpec::Kind::Other;
    c3.other_type = "C";
    c3.other_rank = 3;
    auto cc = classify_factor(c3);
    CHECK_FALSE(cc.admissible);
    CHECK(cc.label == "C3");

    auto definite = classify_factor(type_a(-1, {1, 2, 3}));
    CHECK_FALSE(definite.admissible);

    CHECK(classify_factor(d5()).admissible);
    CHECK(classify_factor(d5()).label == "D5");
    FactorSpec d4 = d5();
    FQuatAlgebra d(q(-1), q(-1));
    d4.skew = SkewHermitianSpace(d, {d.mu(), d.lambda_mu(), d.mu(), d.mu()}, d.lambda());
    auto even = classify_factor(d4);
    CHECK_FALSE(even.admissible);
    CHECK(even.reason.find("odd") != std::string::npos);

    CHECK(classify_factor(quaternionic()).admissible);
    // (-1, -1) is nonsplit at the real place, where the form (1, -1) is indefinite.
    FactorSpec hq = type_a(-1, {1, -1}, 2);
    hq.d0 = FQuatAlgebra(q(-1), q(-1));
    auto nonsplit = classify_factor(hq);
    CHECK_FALSE(nonsplit.admissible);
    CHECK(nonsplit.reason.find("strongly hermitian") != std::string::npos);

    FactorSpec broken;
    broken.kind = FactorSpec::Kind::TypeA;
    CHECK_THROWS_AS_CODE(classify_factor(broken), Errc::ParseError);
}

TEST_CASE("strongly ADH data and the centre")
{
    DatumSpec s = gu21();
    CHECK(is_strongly_ADH(s));
    std::string why;
    CHECK(center_is_cm_split(s, &why));

    IntMat rot(2, 2);
    rot << 0, -1, 1, 0;
    s.center = CenterSpec{2, {rot}, swap2()};
    CHECK_FALSE(center_is_cm_split(s, &why));
    CHECK_FALSE(why.empty());
    CHECK_FALSE(is_strongly_ADH(s));

    DatumSpec mixed = gu21();
    mixed.factors.push_back(type_a(2, {1, 1, -1}));
    CHECK_FALSE(is_strongly_ADH(mixed));

    DatumSpec empty;
    CHECK_FALSE(is_strongly_ADH(empty));

    std::vector<InvolutionBundle> bundles{bundle_of(mixed.factors[0]), bundle_of(mixed.factors[0])};
    CHECK_THROWS_AS_CODE(extend_involution(mixed, bundles), Errc::NotAdmissible);
}

TEST_CASE("GU similitudes: theta_G is entrywise conjugation on rational points")
{
    CMExtension k(Q(), q(-1));
    std::vector<long> gram{1, 1, -1};
    InvolutionBundle b = bundle_of(type_a(-1, gram));
    std::vector<KElement> qd;
    for (long g : gram)
        qd.push_back(k.from_rational(g));
    Mat<KElement> qm = Mat<KElement>::diagonal(qd);
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<int> d(-4, 4);
    for (int trial = 0; trial < 12; ++trial) {
        Mat<KElement> u = exact_unitary(k, gram, rng);
        REQUIRE(star(u) * qm * u == qm);
        KElement a = k_of(k, d(rng), d(rng));
        if (a.is_zero())
            a = k.one();
        Mat<KElement> g = a * u;
        KElement nu = (star(g) * qm * g)(0, 0) * qd[0].inv();
        REQUIRE(star(g) * qm * g == nu * qm);
        Mat<KElement> theta_g = nu * b.theta(g);
        CHECK(theta_g == bar(g));
        // an involution on the similitude group
        KElement nu2 = (star(theta_g) * qm * theta_g)(0, 0) * qd[0].inv();
        CHECK(nu2 * b.theta(theta_g) == g);
    }
}

TEST_CASE("kernel pairs: two generating sets, exact and numeric")
{
    InvolutionBundle b = bundle_of(type_a(-1, {1, 1, -1}));
    KernelCheck one = kernel_pair_check(b, {1});
    KernelCheck two = kernel_pair_check(b, {2});
    CHECK(one.order == 3);
    CHECK(one.points == std::vector<int>{0, 1, 2});
    CHECK(two.points == one.points);
    for (const KernelCheck& k : {one, two}) {
        CHECK(k.numeric_ok);
        CHECK(k.exact_ok);
        CHECK(k.center_inverted);
    }

    InvolutionBundle b4 = bundle_of(type_a(-1, {1, 1, -1, 2}));
    KernelCheck sub = kernel_pair_check(b4, {2});
    CHECK(sub.order == 4);
    CHECK(sub.points == std::vector<int>{0, 2});
    CHECK(sub.exact_ok);
    CHECK(kernel_pair_check(b4, {3, 2}).points.size() == 4);

    InvolutionBundle bd = bundle_of(d5());
    KernelCheck kd = kernel_pair_check(bd, {});
    CHECK(kd.order == 2);
    CHECK(kd.numeric_ok);
    CHECK(kd.exact_ok);
    CHECK(kd.center_inverted);

    InvolutionBundle bq = bundle_of(quaternionic());
    KernelCheck kq = kernel_pair_check(bq, {1});
    CHECK(kq.order == 4);
    CHECK(kq.numeric_ok);
    CHECK(kq.exact_ok);
}

TEST_CASE("cyclotomic centre identities for n <= 6")
{
    for (int n = 1; n <= 6; ++n) {
        CAPTURE(n);
        CHECK(cyclotomic_center_identities(n, {Rational(1), Rational(2), Rational(-3)}));
        CHECK(cyclotomic_center_identities(n, {Rational(1, 2)}));
    }
    CHECK_THROWS_AS_CODE(cyclotomic_center_identities(0, {Rational(1)}), Errc::InvalidType);
}

TEST_CASE("conjugate points and the cocycle on the sampling grid")
{
    auto grid = descent_grid();
    CHECK(grid.size() == 32);
    int big = 0;
    for (Complex z : grid)
        big += std::abs(std::abs(z) - 2) < 1e-12;
    CHECK(big == 16);

    DatumSpec s = gu21();
    std::vector<InvolutionBundle> bundles{bundle_of(s.factors[0])};
    Extension ext = extend_involution(s, bundles);
    REQUIRE(ext.extension_ok);
    REQUIRE(ext.pieces.size() == 1);
    const GroupInvolution& g = ext.pieces[0];
    CHECK(g.model == "GU");
    CHECK(conjugate_point_check(g));
    CHECK(cocycle_check(g));
    GroupInvolution bad = corrupted(g);
    CHECK(bad.nu_exponent == -1);
    CHECK_FALSE(cocycle_check(bad));
    CHECK_FALSE(conjugate_point_check(bad));

    // nu of y(z) is |z|^2 in the hermitian model
    Complex z(1.5, -0.5);
    CHECK(g.nu(g.x.at(z)) == doctest::Approx(std::norm(z)));

    DatumSpec sd;
    sd.factors = {d5()};
    std::vector<InvolutionBundle> bd{bundle_of(d5())};
    Extension ed = extend_involution(sd, bd);
    REQUIRE(ed.extension_ok);
    for (const GroupInvolution& p : ed.pieces) {
        CHECK(p.model == "GO*");
        CHECK(conjugate_point_check(p));
        CHECK(cocycle_check(p));
        CHECK_FALSE(cocycle_check(corrupted(p)));
    }
}

TEST_CASE("Hecke descent condition")
{
    CMExtension k(Q(), q(-1));
    InvolutionBundle b = bundle_of(type_a(-1, {1, 1, -1}));
    Mat<KElement> rational = Mat<KElement>::identity(3, k.one());
    rational(0, 1) = k.from_rational(Rational(2, 3));
    auto r1 = hecke_descent_condition(b, rational);
    CHECK(r1.descends_if_equal);

    Mat<KElement> di = Mat<KElement>::identity(3, k.one());
    di(0, 0) = k.sqrt_delta();
    auto r2 = hecke_descent_condition(b, di);
    CHECK_FALSE(r2.descends_if_equal);
    CHECK(r2.theta_q.find("-1") != std::string::npos);

    InvolutionBundle bd = bundle_of(d5());
    FQuatAlgebra d(q(-1), q(-1));
    Mat<FQuat> scal = d.scalar(q(3)) * Mat<FQuat>::identity(5, d.one());
    CHECK(hecke_descent_condition(bd, scal).descends_if_equal);
    Mat<FQuat> lam = Mat<FQuat>::identity(5, d.one());
    lam(2, 2) = d.lambda();
    CHECK(hecke_descent_condition(bd, lam).descends_if_equal);
    Mat<FQuat> mu = Mat<FQuat>::identity(5, d.one());
    mu(1, 1) = d.mu();
    CHECK_FALSE(hecke_descent_condition(bd, mu).descends_if_equal);

    InvolutionBundle bq = bundle_of(quaternionic());
    const auto& dk = bq.algebra_k();
    const CMExtension& kq = bq.hermitian().algebra().cm();
    Mat<QK> qs = Mat<QK>::identity(2, dk.one());
    qs(0, 1) = dk.lambda();
    CHECK(hecke_descent_condition(bq, qs).descends_if_equal);
    Mat<QK> qi = dk.scalar(kq.sqrt_delta()) * Mat<QK>::identity(2, dk.one());
    CHECK_FALSE(hecke_descent_condition(bq, qi).descends_if_equal);

    CHECK_THROWS_AS_CODE(hecke_descent_condition(bd, rational), Errc::WrongModel);
}

TEST_CASE("full descent runs")
{
    DescentReport r = run_descent(gu21(), 11, 10);
    CHECK(r.strongly_ADH);
    CHECK(r.extension_ok);
    CHECK(r.conjugate_point_ok);
    CHECK(r.cocycle_ok);
    CHECK(r.negative_control_rejected);
    CHECK(r.all_ok());
    REQUIRE(r.bundles.size() == 1);
    CHECK(r.bundles[0].all_ok());

    DatumSpec sd;
    sd.factors = {d5()};
    DescentReport rd = run_descent(sd, 11, 4);
    CHECK(rd.all_ok());

    DatumSpec sq;
    sq.factors = {quaternionic()};
    DescentReport rq = run_descent(sq, 11, 4);
    CHECK(rq.conjugate_point_ok);
    CHECK(rq.cocycle_ok);
    CHECK(rq.negative_control_rejected);

    DatumSpec bad = gu21();
    bad.factors[0] = type_a(2, {1, 1, -1});
    DescentReport rb = run_descent(bad, 11, 4);
    CHECK_FALSE(rb.strongly_ADH);
    CHECK_FALSE(rb.all_ok());
    CHECK_FALSE(rb.diagnostics.empty());
}
