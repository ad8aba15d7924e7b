#include "sdk/involution.hpp"

#include <cmath>
#include <random>

namespace sdk {

namespace {

struct Sampler {
    std::mt19937_64 rng;

    Rational rational(int span = 4, int den = 3)
    {
        std::uniform_int_distribution<int> num(-span, span);
        std::uniform_int_distribution<int> d(1, den);
        Rational q(num(rng), d(rng));
        q.canonicalize();
        return q;
    }
    FieldElement field(const NumberField& f)
    {
        std::vector<Rational> c(f.degree());
        for (auto& x : c)
            x = rational();
        return f.element(c);
    }
    KElement k(const CMExtension& cm) { return cm.element(field(cm.base()), field(cm.base())); }
    QK qk(const QuaternionAlgebra<KElement>& alg, const CMExtension& cm)
    {
        return alg.element(k(cm), k(cm), k(cm), k(cm));
    }
    FQuat fq(const FQuatAlgebra& alg)
    {
        const NumberField& f = alg.a().field();
        return alg.element(field(f), field(f), field(f), field(f));
    }
    CMat complex_matrix(int n)
    {
        std::normal_distribution<double> g;
        CMat m(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                m(i, j) = Complex(g(rng), g(rng));
        return m;
    }
};

template <class T, class Gen>
Mat<T> invertible(int n, Gen gen)
{
    for (int attempt = 0; attempt < 100; ++attempt) {
        Mat<T> m(n, n, gen());
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                m(i, j) = gen();
        try {
            (void)m.inverse();
            return m;
        } catch (const Error& e) {
            if (e.code() != Errc::Singular)
                throw;
        }
    }
    throw Error(Errc::InternalError, "could not sample an invertible matrix");
}

template <class T>
std::optional<Mat<T>> try_cayley(const Mat<T>& a)
{
    try {
        return cayley_transform(a);
    } catch (const Error& e) {
        if (e.code() != Errc::Singular)
            throw;
        return std::nullopt;
    }
}

double rel(const CMat& x, const CMat& y) { return (x - y).norm() / std::max(1.0, y.norm()); }

// Exact unitary elements of G(F), built by the Cayley transform of Q^-1 S.
Mat<KElement> unitary_k(const InvolutionBundle& b, Sampler& s)
{
    const CMExtension& cm = b.hermitian().algebra().cm();
    int n = b.n();
    for (;;) {
        Mat<KElement> a(n, n, cm.zero());
        for (int i = 0; i < n; ++i) {
            a(i, i) = cm.element(cm.base().zero(), s.field(cm.base()));
            for (int j = i + 1; j < n; ++j) {
                a(i, j) = s.k(cm);
                a(j, i) = -a(i, j).conj();
            }
        }
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                a(i, j) = b.hermitian().gram()[i].inv() * a(i, j);
        if (auto g = try_cayley(a))
            return *g;
    }
}

Mat<QK> unitary_qk(const InvolutionBundle& b, Sampler& s)
{
    const auto& sk = b.hermitian().algebra();
    const CMExtension& cm = sk.cm();
    const auto& alg = b.algebra_k();
    int n = b.n();
    for (;;) {
        Mat<QK> a(n, n, alg.zero());
        for (int i = 0; i < n; ++i) {
            QK x = s.qk(alg, cm);
            a(i, i) = x - sk.J(x);
            for (int j = i + 1; j < n; ++j) {
                a(i, j) = s.qk(alg, cm);
                a(j, i) = -sk.J(a(i, j));
            }
        }
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                a(i, j) = cm.from_base(b.hermitian().gram()[i].inv()) * a(i, j);
        if (auto g = try_cayley(a))
            return *g;
    }
}

Mat<FQuat> orthogonal_d(const InvolutionBundle& b, Sampler& s)
{
    const auto& alg = b.skew().algebra();
    const NumberField& f = alg.a().field();
    int n = b.n();
    for (;;) {
        Mat<FQuat> m(n, n, alg.zero());
        for (int i = 0; i < n; ++i) {
            m(i, i) = alg.scalar(s.field(f));
            for (int j = i + 1; j < n; ++j) {
                m(i, j) = s.fq(alg);
                m(j, i) = m(i, j).sigma();
            }
        }
        for (int i = 0; i < n; ++i) {
            FQuat qi = b.skew().gram()[i].inv();
            for (int j = 0; j < n; ++j)
                m(i, j) = qi * m(i, j);
        }
        if (auto g = try_cayley(m))
            return *g;
    }
}

Complex embed_lk(const LK& x, const CMExtension& cm, const RealEmbedding& v, Complex rho)
{
    return cm.embed(x.a(), v) + cm.embed(x.b(), v) * rho;
}

Complex embed_lf(const LF& x, const RealEmbedding& v, Complex rho)
{
    return v.value(x.a()) + v.value(x.b()) * rho;
}

Complex root_at(double x) { return x >= 0 ? Complex(std::sqrt(x), 0) : Complex(0, std::sqrt(-x)); }

CMat upper_triangular(int n, Sampler& s)
{
    CMat u = s.complex_matrix(n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < i; ++j)
            u(i, j) = 0;
        u(i, i) += Complex(3, 0);
    }
    return u;
}

bool same_support(const CMat& x, const CMat& y)
{
    double tol = 1e-9 * std::max(x.norm(), y.norm());
    for (int i = 0; i < x.rows(); ++i)
        for (int j = 0; j < x.cols(); ++j)
            if ((std::abs(x(i, j)) > tol) != (std::abs(y(i, j)) > tol))
                return false;
    return true;
}

// Model of an exact element at v: the matrix in which theta_at_place and the conjugation act.
template <class M>
CMat to_model(const InvolutionBundle& b, const RealEmbedding& v, const M& g);

template <>
CMat to_model(const InvolutionBundle& b, const RealEmbedding& v, const Mat<KElement>& g)
{
    const CMExtension& cm = b.hermitian().algebra().cm();
    CMat out(g.rows(), g.cols());
    for (int i = 0; i < g.rows(); ++i)
        for (int j = 0; j < g.cols(); ++j)
            out(i, j) = cm.embed(g(i, j), v);
    return out;
}

template <>
CMat to_model(const InvolutionBundle& b, const RealEmbedding& v, const Mat<QK>& g)
{
    const CMExtension& cm = b.hermitian().algebra().cm();
    Complex rho = root_at(v.value(b.hermitian().algebra().d0()->a()));
    Mat<LK> l = b.phi(g);
    CMat out(l.rows(), l.cols());
    for (int i = 0; i < l.rows(); ++i)
        for (int j = 0; j < l.cols(); ++j)
            out(i, j) = embed_lk(l(i, j), cm, v, rho);
    return out;
}

template <>
CMat to_model(const InvolutionBundle& b, const RealEmbedding& v, const Mat<FQuat>& g)
{
    Complex rho = root_at(v.value(pure_square(b.skew().r())));
    Mat<LF> l = b.phi(g);
    CMat out(l.rows(), l.cols());
    for (int i = 0; i < l.rows(); ++i)
        for (int j = 0; j < l.cols(); ++j)
            out(i, j) = embed_lf(l(i, j), v, rho);
    return out;
}

}  // namespace

bool BundleReport::all_ok() const
{
    bool ok = theta_squared && torus_preserved && dual_route && center_inverted && transport_ok && equals_star;
    for (const auto& p : places) {
        if (!p.checked)
            continue;
        ok = ok && p.char_conj && p.c_routes_agree && p.borel_ok && p.in_model && p.tci_ok && p.deligne.all();
    }
    return ok;
}

BundleReport verify_bundle(const InvolutionBundle& b, std::uint64_t seed, int samples)
{
    BundleReport rep;
    rep.seed = seed;
    rep.kind = b.kind() == InvolutionBundle::Kind::TypeA ? "A" : "D";
    rep.label = b.label();
    Sampler s{std::mt19937_64(seed)};
    int n = b.n();
    int exact_samples = std::max(1, std::min(samples, b.kind() == InvolutionBundle::Kind::TypeD ? 6 : 20));

    rep.theta_squared_exact = true;
    rep.torus_preserved = true;
    rep.dual_route = true;
    rep.center_inverted = true;

    // Exact group elements, reused for the per-place checks below.
    std::vector<std::function<CMat(const RealEmbedding&)>> group_points;

    if (b.kind() == InvolutionBundle::Kind::TypeA && b.m() == 1) {
        const CMExtension& cm = b.hermitian().algebra().cm();
        for (int k = 0; k < exact_samples; ++k) {
            Mat<KElement> x = invertible<KElement>(n, [&] { return s.k(cm); });
            rep.theta_squared_exact = rep.theta_squared_exact && b.theta(b.theta(x)) == x;
            Mat<KElement> g = unitary_k(b, s);
            rep.dual_route = rep.dual_route && b.theta(g) == b.semilinear(g);
            group_points.push_back([&b, g](const RealEmbedding& v) { return to_model(b, v, g); });
            std::vector<KElement> d;
            for (int i = 0; i < n; ++i) {
                KElement e = s.k(cm);
                d.push_back(e.is_zero() ? cm.one() : e);
            }
            rep.torus_preserved = rep.torus_preserved && b.theta(Mat<KElement>::diagonal(d)).is_diagonal();
            KElement z = s.k(cm);
            if (!z.is_zero()) {
                KElement zeta = z * z.conj().inv();
                Mat<KElement> c = Mat<KElement>::identity(n, cm.one());
                rep.center_inverted = rep.center_inverted &&
                                      b.theta(zeta * c) == zeta.inv() * c;
            }
        }
    } else if (b.kind() == InvolutionBundle::Kind::TypeA) {
        const CMExtension& cm = b.hermitian().algebra().cm();
        const auto& alg = b.algebra_k();
        for (int k = 0; k < exact_samples; ++k) {
            Mat<QK> x = invertible<QK>(n, [&] { return s.qk(alg, cm); });
            rep.theta_squared_exact = rep.theta_squared_exact && b.theta(b.theta(x)) == x;
            rep.dual_route = rep.dual_route && b.phi(b.theta(x)) == b.theta_split(b.phi(x));
            Mat<QK> g = unitary_qk(b, s);
            rep.dual_route = rep.dual_route && b.theta(g) == b.semilinear(g);
            group_points.push_back([&b, g](const RealEmbedding& v) { return to_model(b, v, g); });
            std::vector<QK> d;
            for (int i = 0; i < n; ++i)
                d.push_back(alg.scalar(s.k(cm)) + s.k(cm) * alg.lambda());
            bool invertible_d = true;
            for (const auto& e : d)
                invertible_d = invertible_d && !e.nrd().is_zero();
            if (invertible_d) {
                Mat<QK> t = b.theta(Mat<QK>::diagonal(d));
                bool ok = t.is_diagonal();
                for (int i = 0; i < n && ok; ++i)
                    ok = t(i, i)[2].is_zero() && t(i, i)[3].is_zero();
                rep.torus_preserved = rep.torus_preserved && ok;
            }
            KElement z = s.k(cm);
            if (!z.is_zero()) {
                KElement zeta = z * z.conj().inv();
                Mat<QK> c = Mat<QK>::identity(n, alg.one());
                rep.center_inverted =
                    rep.center_inverted && b.theta(alg.scalar(zeta) * c) == alg.scalar(zeta.inv()) * c;
            }
        }
    } else {
        const auto& alg = b.skew().algebra();
        Mat<LF> qp = b.q_tilde_prime();
        Mat<LF> qt = b.q_tilde();
        for (int k = 0; k < exact_samples; ++k) {
            Mat<FQuat> x = invertible<FQuat>(n, [&] { return s.fq(alg); });
            rep.theta_squared_exact = rep.theta_squared_exact && b.theta(b.theta(x)) == x;
            Mat<LF> px = b.phi(x);
            Mat<LF> tx = b.phi(b.theta(x));
            rep.dual_route = rep.dual_route && tx == b.theta_split(px) && tx == b.theta_block(px);
            Mat<FQuat> g = orthogonal_d(b, s);
            Mat<LF> pg = b.phi(g);
            // Group condition in both displayed forms.
            Mat<LF> adj = pg;
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) {
                    adj(i, j) = pg(n + j, n + i);
                    adj(i, n + j) = -pg(j, n + i);
                    adj(n + i, j) = -pg(n + j, i);
                    adj(n + i, n + j) = pg(j, i);
                }
            rep.dual_route = rep.dual_route && pg.transpose() * qp * pg == qp && adj * qt * pg == qt;
            Mat<LF> tg = b.phi(b.theta(g));
            rep.dual_route = rep.dual_route && tg.transpose() * qp * tg == qp;
            group_points.push_back([&b, g](const RealEmbedding& v) { return to_model(b, v, g); });
            // Torus S': x_i = a_i + c_i q_i.
            std::vector<FQuat> d;
            for (int i = 0; i < n; ++i)
                d.push_back(alg.scalar(s.field(alg.a().field())) + s.field(alg.a().field()) * b.skew().gram()[i]);
            Mat<FQuat> t = b.theta(Mat<FQuat>::diagonal(d));
            bool ok = t.is_diagonal();
            for (int i = 0; i < n && ok; ++i) {
                // t_i must commute with q_i, i.e. lie in F(q_i).
                ok = t(i, i) * b.skew().gram()[i] == b.skew().gram()[i] * t(i, i);
            }
            rep.torus_preserved = rep.torus_preserved && ok;
        }
        Mat<FQuat> minus = Mat<FQuat>::identity(n, alg.one());
        minus = alg.scalar(-alg.a().field().one()) * minus;
        rep.center_inverted = b.theta(minus) == minus.inverse();
        SymbolicTransportReport st = check_transport_symbolic(b);
        rep.transport_ok = st.form_ok && st.conjugation_ok;
    }

    // Numeric theta^2 and center checks in each complex model.
    rep.theta_squared_numeric = true;
    int size = b.model_size();
    for (const auto& v : real_embeddings(b.kind() == InvolutionBundle::Kind::TypeA ? b.hermitian().base()
                                                                                   : b.skew().base())) {
        for (int k = 0; k < samples; ++k) {
            CMat x = s.complex_matrix(size);
            if (rel(theta_at_place(b, v, theta_at_place(b, v, x)), x) > 1e-9)
                rep.theta_squared_numeric = false;
        }
        if (b.kind() == InvolutionBundle::Kind::TypeA) {
            int N = size;
            for (int k = 0; k < N; ++k) {
                Complex w = std::polar(1.0, 2 * M_PI * k / N);
                CMat z = w * CMat::Identity(N, N);
                if (rel(theta_at_place(b, v, z), (1.0 / w) * CMat::Identity(N, N)) > 1e-12)
                    rep.center_inverted = false;
            }
        }
    }
    rep.theta_squared = rep.theta_squared_exact && rep.theta_squared_numeric;

    rep.induced = induced_based_map(b);
    rep.equals_star = rep.induced.equals_star;

    for (const auto& info : b.profile().places) {
        PlaceReport pr;
        pr.place = info.index;
        pr.compact = info.compact;
        RealEmbedding v = real_embeddings(b.kind() == InvolutionBundle::Kind::TypeA ? b.hermitian().base()
                                                                                    : b.skew().base())[info.index];
        PlaceModel pm = model_at_place(b, v);
        pr.p = pm.p;
        pr.q = pm.q;
        if (info.compact) {
            rep.places.push_back(pr);
            continue;
        }
        pr.checked = true;
        ConjugationAction act = conjugation_action_at_place(b, v);
        pr.tci_residual = act.tci_residual;
        pr.tci_ok = act.tci_ok;

        pr.c_routes_agree = true;
        for (int k = 0; k < samples; ++k) {
            CMat x = s.complex_matrix(size);
            if (rel(act.formula(x), act.intrinsic(x)) > 1e-9)
                pr.c_routes_agree = false;
            if (act.on_so) {
                const TypeDPlaceData d = type_d_place_data(b, v);
                CMat alt = d.delta * act.formula(d.delta.inverse() * x * d.delta) * d.delta.inverse();
                if (rel(act.on_so(x), alt) > 1e-9)
                    pr.c_routes_agree = false;
            }
        }

        // Real points are fixed by complex conjugation in every model.
        pr.in_model = true;
        std::optional<TypeDPlaceData> dd;
        if (b.kind() == InvolutionBundle::Kind::TypeD)
            dd = type_d_place_data(b, v);
        for (const auto& gp : group_points) {
            CMat g = gp(v);
            if (rel(act.formula(g), g) > 1e-9 || rel(act.intrinsic(g), g) > 1e-9)
                pr.in_model = false;
            if (dd) {
                CMat y = dd->delta * g * dd->delta.inverse();
                if (rel(act.on_so(y), y) > 1e-9)
                    pr.in_model = false;
            }
        }

        CharacterCheck cc = theta_vs_character_conjugation(b, v);
        pr.char_conj = cc.ok;

        pr.borel_ok = true;
        for (int k = 0; k < 5; ++k) {
            CMat u = upper_triangular(size, s);
            CMat th, cu;
            if (dd) {
                th = dd->m_transport * u * dd->m_transport.inverse();
                cu = act.on_so(u);
            } else {
                th = theta_at_place(b, v, u);
                cu = act.intrinsic(u);
            }
            pr.borel_ok = pr.borel_ok && same_support(th, cu);
        }

        HodgeMap y = build_y(b, v);
        pr.deligne = deligne_check(y);
        if (y.model == HodgeMap::Model::GU) {
            try {
                pr.special_node = special_node_of_y(y);
            } catch (const Error& e) {
                if (e.code() != Errc::NoHodgeMap)
                    throw;
            }
        }
        rep.places.push_back(pr);
    }
    return rep;
}

}  // namespace sdk
