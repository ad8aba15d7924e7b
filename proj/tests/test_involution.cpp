#include "doctest.h"

#include "oracles.hpp"
#include "sdk/errors.hpp"
#include "sdk/involution.hpp"

#include <random>

using namespace sdk;

namespace {

NumberField Q() { return NumberField::rationals(); }
FieldElement q(long n, long d = 1) { return Q().from_rational(Rational(n, d)); }
NumberField Qsqrt2() { return NumberField({Rational(-2), Rational(0), Rational(1)}); }

CMExtension gauss() { return CMExtension(Q(), q(-1)); }

HermitianSpace herm(const std::vector<long>& g)
{
    std::vector<FieldElement> gram;
    for (long x : g)
        gram.push_back(q(x));
    return HermitianSpace(SecondKindData(gauss(), std::nullopt), gram);
}

HermitianSpace herm2_over(const NumberField& f, long a, long b, const std::vector<FieldElement>& gram)
{
    CMExtension k(f, f.from_rational(-1));
    return HermitianSpace(SecondKindData(k, FQuatAlgebra(f.from_rational(a), f.from_rational(b))), gram);
}

// F = Q(sqrt 2), D0 = (3, 5), gram (1, 1 + sqrt 2).
InvolutionBundle quaternionic_a()
{
    NumberField f = Qsqrt2();
    return InvolutionBundle::type_a(herm2_over(f, 3, 5, {f.one(), f.one() + f.gen()}));
}

// D = (-1, -1)/Q, r = lambda, gram (mu, lambda mu, mu, 2 mu, lambda mu).
SkewHermitianSpace d5_space()
{
    FQuatAlgebra d(q(-1), q(-1));
    return SkewHermitianSpace(d, {d.mu(), d.lambda_mu(), d.mu(), q(2) * d.mu(), d.lambda_mu()}, d.lambda());
}

double dist(const CMat& x, const CMat& y) { return (x - y).norm() / std::max(1.0, y.norm()); }

CMat random_complex(int n, std::mt19937_64& rng)
{
    std::normal_distribution<double> g;
    CMat m(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            m(i, j) = Complex(g(rng), g(rng));
    return m;
}

KElement random_k(const CMExtension& k, std::mt19937_64& rng)
{
    return k.element(oracle::random_element(k.base(), rng), oracle::random_element(k.base(), rng));
}

}  // namespace

TEST_CASE("admissibility and scope of the builders")
{
    CHECK_THROWS_AS_CODE(build_theta_A(herm({1})), Errc::OutOfScope);
    CHECK_THROWS_AS_CODE(build_theta_A(herm({1, -1})), Errc::OutOfScope);
    CHECK_NOTHROW(build_theta_A(herm({1, 1, -1})));
    // (-1, -1) is nonsplit at infinity and the form is indefinite there.
    CHECK_THROWS_AS_CODE(build_theta_A(herm2_over(Q(), -1, -1, {q(1), q(-1)})), Errc::NotAdmissible);
    FQuatAlgebra d(q(-1), q(-1));
    CHECK_THROWS_AS_CODE(build_theta_D(SkewHermitianSpace(d, {d.mu(), d.mu(), d.mu()}, d.lambda())),
                         Errc::NotAdmissible);
    CHECK(build_theta_D(d5_space()).label() == "D5");
}

TEST_CASE("type A, D = K: exact identities")
{
    std::mt19937_64 rng(11);
    auto b = build_theta_A(herm({1, 1, -1}));
    auto K = gauss();
    CHECK(b.label() == "A2");
    for (int k = 0; k < 20; ++k) {
        Mat<KElement> x(3, 3, K.zero()), y(3, 3, K.zero());
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) {
                x(i, j) = random_k(K, rng);
                y(i, j) = random_k(K, rng);
            }
        try {
            CHECK(b.theta(b.theta(x)) == x);
            CHECK(b.theta(x * y) == b.theta(x) * b.theta(y));
        } catch (const Error& e) {
            CHECK(e.code() == Errc::Singular);
        }
    }
    // Unitary elements: theta agrees with entrywise conjugation.
    Mat<KElement> qm = Mat<KElement>::diagonal({K.one(), K.one(), K.from_rational(-1)});
    for (int k = 0; k < 10; ++k) {
        Mat<KElement> s(3, 3, K.zero());
        for (int i = 0; i < 3; ++i) {
            s(i, i) = K.element(q(0), oracle::random_element(Q(), rng));
            for (int j = i + 1; j < 3; ++j) {
                s(i, j) = random_k(K, rng);
                s(j, i) = -s(i, j).conj();
            }
        }
        Mat<KElement> g;
        try {
            g = cayley_transform(qm.inverse() * s);
        } catch (const Error&) {
            continue;
        }
        Mat<KElement> gstar = g.transpose().map([](const KElement& e) { return e.conj(); });
        REQUIRE(gstar * qm * g == qm);
        CHECK(b.theta(g) == b.semilinear(g));
    }
    IntMat minus = -IntMat::Identity(3, 3);
    CHECK(theta_on_characters(b) == minus);
}

TEST_CASE("type A, D = K: numeric model at the real place")
{
    std::mt19937_64 rng(12);
    auto b = build_theta_A(herm({1, 1, -1}));
    auto v = real_embeddings(Q())[0];
    for (int k = 0; k < 50; ++k) {
        CMat x = random_complex(3, rng);
        CHECK(dist(theta_at_place(b, v, theta_at_place(b, v, x)), x) < 1e-9);
    }
    auto pm = model_at_place(b, v);
    CHECK(pm.p == 2);
    CHECK(pm.q == 1);
    auto act = conjugation_action_at_place(b, v);
    for (int k = 0; k < 20; ++k) {
        CMat x = random_complex(3, rng);
        CHECK(dist(act.formula(x), act.intrinsic(x)) < 1e-9);
    }
    auto cc = theta_vs_character_conjugation(b, v);
    CHECK(cc.ok);
    CHECK(cc.c_star == -IntMat::Identity(3, 3));
}

TEST_CASE("induced based map equals the opposition involution")
{
    auto a2 = induced_based_map(build_theta_A(herm({1, 1, -1})));
    CHECK(a2.equals_star);
    CHECK(a2.theta_reverses_borel);
    CHECK(a2.diagram == std::vector<int>{1, 0});
    CHECK(a2.word.size() == 3);

    auto a3 = induced_based_map(build_theta_A(herm({1, -1, 1, 2})));
    CHECK(a3.equals_star);
    CHECK(a3.word.size() == 6);

    auto d5 = induced_based_map(build_theta_D(d5_space()));
    CHECK(d5.equals_star);
    IntMat expect = IntMat::Identity(5, 5);
    expect(4, 4) = -1;
    CHECK(d5.psi0 == expect);
    CHECK(d5.theta_star == -IntMat::Identity(5, 5));
}

TEST_CASE("quaternionic type A: split model and torus action")
{
    auto b = quaternionic_a();
    CHECK(b.m() == 2);
    CHECK(b.label() == "A3");
    // theta on characters is (a, b) -> (-b, -a).
    IntMat expect = IntMat::Zero(4, 4);
    for (int j = 0; j < 2; ++j) {
        expect(2 + j, j) = -1;
        expect(j, 2 + j) = -1;
    }
    CHECK(theta_on_characters(b) == expect);
    for (const auto& v : real_embeddings(Qsqrt2())) {
        auto pm = model_at_place(b, v);
        CHECK(pm.p == 2);
        CHECK(pm.q == 2);
        CHECK(theta_vs_character_conjugation(b, v).ok);
    }
    CHECK(induced_based_map(b).equals_star);

    std::mt19937_64 rng(13);
    const auto& alg = b.algebra_k();
    const auto& K = b.hermitian().algebra().cm();
    for (int k = 0; k < 4; ++k) {
        Mat<QK> x(2, 2, alg.zero()), y(2, 2, alg.zero());
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) {
                x(i, j) = alg.element(random_k(K, rng), random_k(K, rng), random_k(K, rng), random_k(K, rng));
                y(i, j) = alg.element(random_k(K, rng), random_k(K, rng), random_k(K, rng), random_k(K, rng));
            }
        CHECK(b.theta(b.theta(x)) == x);
        CHECK(b.phi(b.theta(x)) == b.theta_split(b.phi(x)));
        Mat<LK> px = b.phi(x), py = b.phi(y);
        CHECK(b.theta_split(px * py) == b.theta_split(px) * b.theta_split(py));
        // The closed display without the inverse reverses products instead.
        CHECK(b.theta_split_display(px * py) == b.theta_split_display(py) * b.theta_split_display(px));
        CHECK(b.theta_split_display(px) != b.theta_split(px));
    }
}

TEST_CASE("quaternionic type A: conjugation sign depends on lambda^2")
{
    // v(lambda^2) < 0 at the unique place: the intrinsic conjugation maps chi to -chi.
    auto b = InvolutionBundle::type_a(herm2_over(Q(), -1, 2, {q(1), q(1)}));
    auto v = real_embeddings(Q())[0];
    auto cc = theta_vs_character_conjugation(b, v);
    CHECK(cc.c_star == -IntMat::Identity(4, 4));
    CHECK_FALSE(cc.ok);
    auto act = conjugation_action_at_place(b, v);
    std::mt19937_64 rng(14);
    for (int k = 0; k < 10; ++k) {
        CMat x = random_complex(4, rng);
        CHECK(dist(act.formula(x), act.intrinsic(x)) < 1e-9);
    }
}

TEST_CASE("type D: exact identities and the transport to SO_2n")
{
    auto b = build_theta_D(d5_space());
    auto rep = check_transport_symbolic(b);
    CHECK(rep.form_ok);
    CHECK(rep.conjugation_ok);

    const auto& alg = b.skew().algebra();
    std::mt19937_64 rng(15);
    for (int k = 0; k < 3; ++k) {
        Mat<FQuat> x(5, 5, alg.zero()), y(5, 5, alg.zero());
        for (int i = 0; i < 5; ++i)
            for (int j = 0; j < 5; ++j) {
                auto e = [&] { return oracle::random_element(Q(), rng); };
                x(i, j) = alg.element(e(), e(), e(), e());
                y(i, j) = alg.element(e(), e(), e(), e());
            }
        CHECK(b.theta(b.theta(x)) == x);
        CHECK(b.theta(x * y) == b.theta(x) * b.theta(y));
        Mat<LF> px = b.phi(x);
        CHECK(b.phi(b.theta(x)) == b.theta_block(px));
        CHECK(b.theta_split(px) == b.theta_block(px));
    }
}

TEST_CASE("type D: numeric transport and the tci identity")
{
    auto b = build_theta_D(d5_space());
    auto v = real_embeddings(Q())[0];
    auto d = type_d_place_data(b, v);
    int n = 5;
    CMat j2 = CMat::Zero(2 * n, 2 * n);
    for (int i = 0; i < 2 * n; ++i)
        j2(i, 2 * n - 1 - i) = 1;
    CHECK(dist(d.delta.transpose() * j2 * d.delta, d.q_tilde_prime) < 1e-12);
    CMat gamma = CMat::Zero(2 * n, 2 * n);
    for (int i = 0; i < n; ++i) {
        gamma(i, i) = d.root;
        gamma(n + i, n + i) = -d.root;
    }
    CHECK(dist(d.delta * gamma * d.delta.inverse(), d.m_transport) < 1e-12);

    auto act = conjugation_action_at_place(b, v);
    CHECK(act.tci_ok);
    CHECK(act.tci_residual < 1e-12);

    // The displayed value of delta c'(delta)^-1.
    CMat expected = CMat::Zero(2 * n, 2 * n);
    for (int i = 0; i < n; ++i) {
        expected(i, n - 1 - i) = 2.0 * d.e[n - 1 - i] / std::conj(d.f[n - 1 - i]);
        expected(n + i, 2 * n - 1 - i) = 0.5 * d.f[i] / std::conj(d.e[i]);
    }
    CHECK(dist(d.delta * act.formula(d.delta).inverse(), expected) < 1e-12);

    // c on the diagonal torus of SO_2n.
    std::vector<Complex> xs = {{2, 1}, {0.5, -0.3}, {1, 1}, {-1, 2}, {3, 0}};
    CMat t = CMat::Zero(2 * n, 2 * n);
    for (int i = 0; i < n; ++i) {
        t(i, i) = xs[i];
        t(2 * n - 1 - i, 2 * n - 1 - i) = 1.0 / xs[i];
    }
    CMat ct = act.on_so(t);
    for (int i = 0; i < n; ++i) {
        CHECK(std::abs(ct(i, i) - 1.0 / std::conj(xs[i])) < 1e-12);
        CHECK(std::abs(ct(2 * n - 1 - i, 2 * n - 1 - i) - std::conj(xs[i])) < 1e-12);
    }
    CHECK(theta_vs_character_conjugation(b, v).ok);
}

TEST_CASE("tci on a single entry")
{
    // q_1 = mu in (-1, -1): b_1 = -1, c_1 = 1, t = -1, e_1 = 1, f_1 = i.
    FQuatAlgebra d(q(-1), q(-1));
    SkewHermitianSpace s(d, {d.mu(), d.mu(), d.mu(), d.mu(), d.mu()}, d.lambda());
    auto b = build_theta_D(s);
    auto data = type_d_place_data(b, real_embeddings(Q())[0]);
    CHECK(data.t == doctest::Approx(-1));
    CHECK(std::abs(data.e[0] - Complex(1, 0)) < 1e-15);
    CHECK(std::abs(data.f[0] - Complex(0, 1)) < 1e-15);
    Complex lhs = data.t * data.e[0] / std::conj(data.f[0]);
    Complex rhs = -data.f[0] / std::conj(data.e[0]);
    CHECK(std::abs(lhs - Complex(0, -1)) < 1e-15);
    CHECK(std::abs(rhs - Complex(0, -1)) < 1e-15);
}

TEST_CASE("Hodge maps and Deligne's axioms")
{
    CMat h = CMat::Zero(3, 3);
    h(0, 0) = 1;
    h(1, 1) = 1;
    h(2, 2) = -1;
    auto y = diagonal_hodge_map(h, {1, 1, -1});
    CMat y2 = y.at(Complex(2, 1));
    CHECK(std::abs(y2(0, 0) - Complex(2, 1)) < 1e-15);
    CHECK(std::abs(y2(2, 2) - Complex(2, -1)) < 1e-15);
    auto rep = deligne_check(y);
    CHECK(rep.lie_dimension == 8);
    CHECK(rep.in_group);
    CHECK(rep.weight_central);
    CHECK(rep.hodge_types_ok);
    CHECK(rep.cartan_ok);
    CHECK(special_node_of_y(y) == 2);
    CHECK(special_node_of_y(y.conjugate()) == 1);

    // Wrong pattern: still a homomorphism into GU, but int(y(i)) is not a Cartan involution.
    auto bad = deligne_check(diagonal_hodge_map(h, {1, -1, 1}));
    CHECK(bad.in_group);
    CHECK_FALSE(bad.cartan_ok);

    CMat h11 = CMat::Zero(2, 2);
    h11(0, 0) = 1;
    h11(1, 1) = -1;
    CHECK(special_node_of_y(diagonal_hodge_map(h11, {1, -1})) == 1);
    CHECK(deligne_check(diagonal_hodge_map(h11, {1, -1})).lie_dimension == 3);
}

TEST_CASE("Hodge maps built from bundles")
{
    auto a2 = build_theta_A(herm({1, 1, -1}));
    auto v = real_embeddings(Q())[0];
    auto y = build_y(a2, v);
    CHECK(deligne_check(y).all());
    CHECK(special_node_of_y(y) == 2);

    auto compact = build_theta_A(herm({1, 1, 1}));
    CHECK_THROWS_AS_CODE(build_y(compact, v), Errc::NoHodgeMap);
    CHECK_THROWS_AS_CODE(conjugation_action_at_place(compact, v), Errc::NoModel);

    auto d5 = build_theta_D(d5_space());
    auto yd = build_y(d5, v);
    auto rd = deligne_check(yd);
    CHECK(rd.lie_dimension == 45);
    CHECK(rd.all());
    CMat yi = yd.at(Complex(0, 1));
    CMat sq = yi * yi;
    CHECK(dist(sq, sq(0, 0) * CMat::Identity(10, 10)) < 1e-12);
    CHECK_THROWS_AS_CODE(special_node_of_y(yd), Errc::Unsupported);
}

TEST_CASE("full bundle verification")
{
    auto a2 = verify_bundle(build_theta_A(herm({1, 1, -1})), 7, 50);
    CHECK(a2.theta_squared);
    CHECK(a2.dual_route);
    CHECK(a2.torus_preserved);
    CHECK(a2.center_inverted);
    CHECK(a2.equals_star);
    REQUIRE(a2.places.size() == 1);
    CHECK(a2.places[0].char_conj);
    CHECK(a2.places[0].c_routes_agree);
    CHECK(a2.places[0].borel_ok);
    CHECK(a2.places[0].in_model);
    CHECK(a2.places[0].deligne.all());
    CHECK(a2.all_ok());

    auto qa = verify_bundle(quaternionic_a(), 7, 20);
    CHECK(qa.theta_squared);
    CHECK(qa.dual_route);
    CHECK(qa.torus_preserved);
    CHECK(qa.equals_star);
    for (const auto& p : qa.places) {
        CHECK(p.char_conj);
        CHECK(p.c_routes_agree);
        CHECK(p.borel_ok);
        CHECK(p.in_model);
        CHECK(p.deligne.in_group);
        CHECK(p.deligne.hodge_types_ok);
    }

    auto d5 = verify_bundle(build_theta_D(d5_space()), 7, 20);
    CHECK(d5.theta_squared);
    CHECK(d5.dual_route);
    CHECK(d5.torus_preserved);
    CHECK(d5.transport_ok);
    CHECK(d5.equals_star);
    REQUIRE(d5.places.size() == 1);
    CHECK(d5.places[0].tci_ok);
    CHECK(d5.places[0].c_routes_agree);
    CHECK(d5.places[0].in_model);
    CHECK(d5.places[0].borel_ok);
    CHECK(d5.all_ok());
}
