#include "doctest.h"

#include "oracles.hpp"
#include "sdk/errors.hpp"
#include "sdk/hermitian.hpp"

#include <algorithm>
#include <random>

using namespace sdk;

namespace {

NumberField Q() { return NumberField::rationals(); }
FieldElement q(long n, long d = 1) { return Q().from_rational(Rational(n, d)); }

CMExtension gauss() { return CMExtension(Q(), q(-1)); }

HermitianSpace herm(const std::vector<long>& g)
{
    std::vector<FieldElement> gram;
    for (long x : g)
        gram.push_back(q(x));
    return HermitianSpace(SecondKindData(gauss(), std::nullopt), gram);
}

HermitianSpace herm2(long a, long b, const std::vector<long>& g)
{
    std::vector<FieldElement> gram;
    for (long x : g)
        gram.push_back(q(x));
    return HermitianSpace(SecondKindData(gauss(), FQuatAlgebra(q(a), q(b))), gram);
}

}  // namespace

TEST_CASE("signature at the real place of Q")
{
    auto v = real_embeddings(Q())[0];
    auto s = signature_at_place(herm({1, 1, -1}), v);
    CHECK(s.p == 2);
    CHECK(s.q == 1);
    CHECK_FALSE(s.compact);
    auto d = signature_at_place(herm({1, 1}), v);
    CHECK(d.p == 2);
    CHECK(d.q == 0);
    CHECK(d.compact);
    auto s2 = signature_at_place(herm2(-1, 2, {1, 1}), v);
    CHECK(s2.p == 2);
    CHECK(s2.q == 2);
    CHECK_FALSE(s2.compact);
    auto s3 = signature_at_place(herm2(-1, -1, {1, -1}), v);
    CHECK(s3.nonsplit_marker);
    CHECK_FALSE(s3.compact);
}

TEST_CASE("K-valued gram entries are flagged, not rejected")
{
    auto K = gauss();
    HermitianSpace V(SecondKindData(K, std::nullopt), std::vector<KElement>{K.one(), K.element(q(2), q(1))});
    CHECK(V.warnings().size() == 1);
    CHECK(V.gram()[1] == q(2));
    CHECK_THROWS_AS(herm({1, 0}), Error);
}

TEST_CASE("place profiles")
{
    auto p1 = place_profile(herm({1, -1}));
    CHECK(p1.compact().empty());
    CHECK(p1.noncompact() == std::vector<int>{0});

    NumberField f({-2, 0, 1});
    CMExtension K(f, f.from_rational(-1));
    HermitianSpace V(SecondKindData(K, std::nullopt), std::vector<FieldElement>{f.one(), f.one()});
    CHECK(place_profile(V).compact() == std::vector<int>{0, 1});

    FQuatAlgebra H(q(-1), q(-1));
    SkewHermitianSpace L(H, {H.mu(), H.lambda_mu(), H.mu(), q(2) * H.mu(), H.lambda_mu()}, H.lambda());
    auto p = place_profile(L);
    CHECK(p.split().empty());
    CHECK(p.compact().empty());
    CHECK(p.noncompact() == std::vector<int>{0});
}

TEST_CASE("associated bilinear form examples")
{
    auto v = real_embeddings(Q())[0];
    FQuatAlgebra D(q(-1), q(2));
    SkewHermitianSpace L(D, {D.mu()}, D.lambda());
    auto b = associated_bilinear_form(L, v);
    CHECK(b.diagonal_from_r);
    CHECK(b.matrix.rows() == 2);
    CHECK(b.matrix(0, 0) == doctest::Approx(1.0));
    CHECK(b.matrix(1, 1) == doctest::Approx(-2.0));
    CHECK(b.matrix(0, 1) == doctest::Approx(0.0));
    CHECK_FALSE(b.definite);

    FQuatAlgebra E(q(3), q(-1));
    SkewHermitianSpace M(E, {E.mu(), E.mu(), E.mu()}, E.lambda());
    auto c = associated_bilinear_form(M, v);
    CHECK(c.definite);
    CHECK(c.matrix(0, 0) == doctest::Approx(1.0));
    CHECK(c.matrix(3, 3) == doctest::Approx(1.0));

    FQuatAlgebra H(q(-1), q(-1));
    SkewHermitianSpace N(H, {H.mu()}, H.lambda());
    CHECK_THROWS_AS(associated_bilinear_form(N, v), Error);
}

TEST_CASE("strongly hermitian")
{
    CHECK(is_strongly_hermitian(herm({1, -1, 3, -7})).ok);
    auto t = is_strongly_hermitian(herm2(-1, -1, {1, -1}));
    CHECK_FALSE(t.ok);
    CHECK_FALSE(t.reasons.empty());
    CHECK(is_strongly_hermitian(herm2(-1, -1, {1, 2})).ok);
    CHECK(is_strongly_hermitian(herm2(3, 5, {1, -1})).ok);
    CHECK(is_strongly_hermitian(herm2(-1, 2, {-1, -1, 1})).ok);
}

TEST_CASE("strongly skew-hermitian")
{
    FQuatAlgebra H(q(-1), q(-1));
    auto mu = H.mu(), lm = H.lambda_mu(), l = H.lambda();
    CHECK(is_strongly_skew_hermitian(SkewHermitianSpace(H, {mu, lm, mu, q(2) * mu, lm}, l)).ok);
    auto bad = is_strongly_skew_hermitian(SkewHermitianSpace(H, {l, lm, mu, mu, lm}, l));
    CHECK_FALSE(bad.ok);
    CHECK_FALSE(is_strongly_skew_hermitian(SkewHermitianSpace(H, {mu, lm, mu, lm}, l)).ok);
    CHECK_THROWS_AS(SkewHermitianSpace(H, {H.one()}, l), Error);
}

TEST_CASE("property: signatures add up and profiles ignore totally positive rescaling")
{
    std::mt19937_64 rng(11);
    NumberField f({-2, 0, 1});
    CMExtension K(f, f.gen() - f.from_rational(2));
    auto places = real_embeddings(f);
    FieldElement pos = f.from_rational(2) + f.gen();  // 2 + sqrt 2, totally positive
    for (int t = 0; t < 20; ++t) {
        int n = 2 + t % 4;
        std::vector<FieldElement> g, g2;
        for (int i = 0; i < n; ++i) {
            g.push_back(oracle::random_nonzero(f, rng));
            g2.push_back(i == t % n ? g.back() * pos * pos * f.from_rational(3) : g.back());
        }
        HermitianSpace V(SecondKindData(K, std::nullopt), g), W(SecondKindData(K, std::nullopt), g2);
        for (const auto& v : places) {
            auto s = signature_at_place(V, v);
            CHECK(s.p + s.q == n);
            // Oracle: count signs from the double values.
            int p = 0;
            for (const auto& x : g)
                p += v.value(x) > 0;
            CHECK(s.p == p);
        }
        auto a = place_profile(V), b = place_profile(W);
        CHECK(a.compact() == b.compact());
        // Reordering the basis leaves the profile unchanged.
        std::reverse(g.begin(), g.end());
        HermitianSpace R(SecondKindData(K, std::nullopt), g);
        CHECK(place_profile(R).compact() == a.compact());
    }
}

TEST_CASE("property: bilinear-form definiteness agrees with an eigenvalue oracle")
{
    std::mt19937_64 rng(12);
    NumberField f({-2, 0, 1});
    auto places = real_embeddings(f);
    int checked = 0;
    for (int t = 0; t < 40; ++t) {
        FQuatAlgebra D(oracle::random_nonzero(f, rng), oracle::random_nonzero(f, rng));
        auto r = D.lambda();
        auto s = anticommuting_complement(r);
        std::vector<FQuat> gram;
        for (int i = 0; i < 3; ++i) {
            auto x = oracle::random_element(f, rng), y = oracle::random_element(f, rng);
            auto g = x * s + y * (r * s);
            if (g.nrd().is_zero())
                g = s;
            gram.push_back(g);
        }
        SkewHermitianSpace L(D, gram, r);
        for (const auto& v : places) {
            if (real_place_splitting(D, v) == Splitting::NonSplit)
                continue;
            auto b = associated_bilinear_form(L, v);
            CHECK((b.matrix - b.matrix.transpose()).norm() < 1e-9);
            Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(b.matrix);
            auto ev = es.eigenvalues();
            bool definite = ev.minCoeff() > 0 || ev.maxCoeff() < 0;
            CHECK(definite == b.definite);
            ++checked;
        }
    }
    CHECK(checked > 20);
}

TEST_CASE("diagonalization of a hermitian matrix over Q(i)")
{
    auto K = gauss();
    auto bar = [](const KElement& x) { return x.conj(); };
    std::vector<KElement> cands = {K.one(), K.sqrt_delta()};
    std::mt19937_64 rng(13);
    for (int t = 0; t < 15; ++t) {
        int n = 3;
        Mat<KElement> h(n, n, K.zero());
        for (int i = 0; i < n; ++i) {
            h(i, i) = t % 3 == 0 ? K.zero() : K.from_rational(oracle::random_rational(rng));
            for (int j = i + 1; j < n; ++j) {
                h(i, j) = K.element(q(0) + Q().from_rational(oracle::random_rational(rng)),
                                    Q().from_rational(oracle::random_rational(rng)));
                h(j, i) = h(i, j).conj();
            }
        }
        Diagonalization<KElement> d;
        try {
            d = diagonalize_form(h, bar, cands);
        } catch (const Error& e) {
            CHECK(e.code() == Errc::Singular);
            continue;
        }
        Mat<KElement> pstar = d.basis.transpose().map(bar);
        Mat<KElement> out = pstar * h * d.basis;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                CHECK(out(i, j) == (i == j ? d.diagonal[i] : K.zero()));
        for (const auto& x : d.diagonal)
            CHECK(x.in_base());
    }
    Mat<KElement> hyp(2, 2, K.zero());
    hyp(0, 1) = K.sqrt_delta();
    hyp(1, 0) = -K.sqrt_delta();
    auto d = diagonalize_form(hyp, bar, cands);
    CHECK_FALSE(d.diagonal[0].is_zero());
    Mat<KElement> zero(2, 2, K.zero());
    CHECK_THROWS_AS(diagonalize_form(zero, bar, cands), Error);
}

TEST_CASE("diagonalization of a skew-hermitian quaternion matrix")
{
    FQuatAlgebra H(q(-1), q(-3));
    auto bar = [](const FQuat& x) { return x.sigma(); };
    std::vector<FQuat> cands = {H.one(), H.lambda(), H.mu(), H.lambda_mu()};
    Mat<FQuat> h(2, 2, H.zero());
    h(0, 1) = H.element(q(1), q(2), q(0), q(1));
    h(1, 0) = -h(0, 1).sigma();
    auto d = diagonalize_form(h, bar, cands);
    Mat<FQuat> out = d.basis.transpose().map(bar) * h * d.basis;
    CHECK(out(0, 1).is_zero());
    CHECK(out(1, 0).is_zero());
    for (const auto& x : d.diagonal) {
        CHECK(x.is_pure());
        CHECK_FALSE(x.is_zero());
    }
}
