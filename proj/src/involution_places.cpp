#include "sdk/involution.hpp"

#include <cmath>

namespace sdk {

namespace {

const Complex I1(0, 1);

Complex sqrt_signed(double x) { return x >= 0 ? Complex(std::sqrt(x), 0) : Complex(0, std::sqrt(-x)); }

CMat gamma_swap(int n)
{
    // [[0, I], [-I, 0]]
    CMat g = CMat::Zero(2 * n, 2 * n);
    for (int i = 0; i < n; ++i) {
        g(i, n + i) = 1;
        g(n + i, i) = -1;
    }
    return g;
}

CMat antidiag_ones(int n)
{
    CMat j = CMat::Zero(n, n);
    for (int i = 0; i < n; ++i)
        j(i, n - 1 - i) = 1;
    return j;
}

std::vector<double> gram_values(const InvolutionBundle& b, const RealEmbedding& v)
{
    std::vector<double> out;
    for (const auto& q : b.hermitian().gram())
        out.push_back(v.value(q));
    return out;
}

CMat diag_of(const std::vector<double>& d, int copies)
{
    int n = static_cast<int>(d.size());
    CMat m = CMat::Zero(n * copies, n * copies);
    for (int k = 0; k < n * copies; ++k)
        m(k, k) = d[k % n];
    return m;
}

const PlaceInfo& place_info(const InvolutionBundle& b, const RealEmbedding& v)
{
    for (const auto& p : b.profile().places)
        if (p.index == v.index())
            return p;
    throw Error(Errc::InternalError, "place not in profile");
}

// Type A, m = 2: tau(lambda) and v(mu^2).
struct QuatPlace {
    Complex rho;
    double b = 0;
};

QuatPlace quat_place(const InvolutionBundle& b, const RealEmbedding& v)
{
    const auto& d0 = *b.hermitian().algebra().d0();
    return {sqrt_signed(v.value(d0.a())), v.value(d0.b())};
}

// Coefficients (x0, x1, x2, x3) in 1, r, s, rs of a 2x2 complex matrix in the model
// r -> diag(rho, -rho), s -> [[0, s2], [1, 0]].
std::array<Complex, 4> split_coeffs(const Eigen::Matrix2cd& y, Complex rho, double s2)
{
    return {(y(0, 0) + y(1, 1)) / 2.0, (y(0, 0) - y(1, 1)) / (2.0 * rho), (y(0, 1) / s2 + y(1, 0)) / 2.0,
            (y(0, 1) / s2 - y(1, 0)) / (2.0 * rho)};
}

Eigen::Matrix2cd split_matrix(const std::array<Complex, 4>& x, Complex rho, double s2)
{
    Eigen::Matrix2cd m;
    m << x[0] + x[1] * rho, s2 * (x[2] + x[3] * rho), x[2] - x[3] * rho, x[0] - x[1] * rho;
    return m;
}

// Conjugate the coefficients of every 2x2 block (block layout p * n + i).
CMat conj_coefficients(const CMat& y, Complex rho, double s2)
{
    int n = static_cast<int>(y.rows()) / 2;
    CMat out(2 * n, 2 * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            Eigen::Matrix2cd blk;
            blk << y(i, j), y(i, n + j), y(n + i, j), y(n + i, n + j);
            auto c = split_coeffs(blk, rho, s2);
            for (auto& x : c)
                x = std::conj(x);
            Eigen::Matrix2cd r = split_matrix(c, rho, s2);
            out(i, j) = r(0, 0);
            out(i, n + j) = r(0, 1);
            out(n + i, j) = r(1, 0);
            out(n + i, n + j) = r(1, 1);
        }
    return out;
}

}  // namespace

PlaceModel model_at_place(const InvolutionBundle& b, const RealEmbedding& v)
{
    PlaceModel pm;
    pm.place = v.index();
    pm.compact = place_info(b, v).compact;
    int n = b.n();
    if (b.kind() == InvolutionBundle::Kind::TypeA) {
        auto q = gram_values(b, v);
        if (b.m() == 1) {
            pm.form = diag_of(q, 1);
        } else {
            QuatPlace qp = quat_place(b, v);
            CMat gamma = CMat::Zero(2 * n, 2 * n);
            if (qp.rho.imag() == 0) {
                for (int i = 0; i < n; ++i) {
                    gamma(i, n + i) = I1;
                    gamma(n + i, i) = -I1;
                }
            } else {
                for (int i = 0; i < n; ++i) {
                    gamma(i, i) = -qp.b;
                    gamma(n + i, n + i) = 1;
                }
            }
            pm.form = gamma.inverse() * diag_of(q, 2);
        }
        Eigen::SelfAdjointEigenSolver<CMat> es(pm.form);
        for (int k = 0; k < es.eigenvalues().size(); ++k)
            (es.eigenvalues()(k) > 0 ? pm.p : pm.q)++;
        pm.group = "SU(" + std::to_string(pm.p) + "," + std::to_string(pm.q) + ")";
        return pm;
    }
    if (pm.compact) {
        pm.form = associated_bilinear_form(b.skew(), v).matrix.cast<Complex>();
        pm.group = "SO(" + std::to_string(2 * n) + ") compact";
        return pm;
    }
    TypeDPlaceData d = type_d_place_data(b, v);
    if (d.y.empty()) {
        // Split but non-compact: the real form is SO of an indefinite real form.
        pm.form = associated_bilinear_form(b.skew(), v).matrix.cast<Complex>();
        pm.group = "SO(indefinite)";
        return pm;
    }
    pm.form = CMat::Zero(2 * n, 2 * n);
    for (int i = 0; i < n; ++i) {
        pm.form(i, n + i) = d.y[i];
        pm.form(n + i, i) = -std::conj(d.y[i]);
    }
    pm.group = "SO*(" + std::to_string(2 * n) + ")";
    return pm;
}

CMat theta_at_place(const InvolutionBundle& b, const RealEmbedding& v, const CMat& x)
{
    int n = b.n();
    if (b.kind() == InvolutionBundle::Kind::TypeA) {
        auto q = gram_values(b, v);
        if (b.m() == 1) {
            CMat qm = diag_of(q, 1);
            return qm.inverse() * x.inverse().transpose() * qm;
        }
        CMat qt = diag_of(q, 2);
        CMat g = gamma_swap(n);
        return qt.inverse() * g * x.inverse().transpose() * g.inverse() * qt;
    }
    TypeDPlaceData d = type_d_place_data(b, v);
    CMat g = CMat::Zero(2 * n, 2 * n);
    for (int i = 0; i < n; ++i) {
        g(i, i) = d.root;
        g(n + i, n + i) = -d.root;
    }
    return g * x * g.inverse();
}

TypeDPlaceData type_d_place_data(const InvolutionBundle& b, const RealEmbedding& v)
{
    if (b.kind() != InvolutionBundle::Kind::TypeD)
        throw Error(Errc::WrongModel, "type D place data needs a type D bundle");
    TypeDPlaceData d;
    int n = b.n();
    d.u = v.value(pure_square(b.skew().r()));
    d.t = v.value(pure_square(b.s()));
    d.root = sqrt_signed(d.u);
    auto ev = [&](const LF& x) { return v.value(x.a()) + v.value(x.b()) * d.root; };
    Mat<LF> qt = b.q_tilde();
    for (int i = 0; i < n; ++i) {
        d.b.push_back(ev(qt(i, n + i)));
        d.c.push_back(ev(qt(n + i, i)));
        d.e.push_back(std::sqrt(d.c.back()));
        d.f.push_back(std::sqrt(d.b.back()));
    }
    if (d.u < 0 && d.t < 0) {
        PsiMap psi(b.skew().r(), b.s(), v);
        for (int i = 0; i < n; ++i)
            d.y.push_back(psi(b.skew().gram()[i])(0, 1));
    }
    d.delta = CMat::Zero(2 * n, 2 * n);
    d.m_transport = CMat::Zero(2 * n, 2 * n);
    d.q_tilde_prime = CMat::Zero(2 * n, 2 * n);
    for (int i = 0; i < n; ++i) {
        d.delta(i, n - 1 - i) = d.e[n - 1 - i];
        d.delta(i, 2 * n - 1 - i) = -d.f[n - 1 - i];
        d.delta(n + i, i) = d.e[i] / 2.0;
        d.delta(n + i, n + i) = d.f[i] / 2.0;
        d.m_transport(i, 2 * n - 1 - i) = 2.0 * d.root;
        d.m_transport(n + i, n - 1 - i) = d.root / 2.0;
        d.q_tilde_prime(i, i) = d.c[i];
        d.q_tilde_prime(n + i, n + i) = -d.b[i];
    }
    return d;
}

ConjugationAction conjugation_action_at_place(const InvolutionBundle& b, const RealEmbedding& v)
{
    if (place_info(b, v).compact)
        throw Error(Errc::NoModel, "complex conjugation model is only built at non-compact places");
    ConjugationAction act;
    int n = b.n();
    if (b.kind() == InvolutionBundle::Kind::TypeA) {
        CMat h = model_at_place(b, v).form;
        act.formula = [h](const CMat& x) -> CMat { return h.inverse() * x.adjoint().inverse() * h; };
        if (b.m() == 1) {
            CMat qm = diag_of(gram_values(b, v), 1);
            act.intrinsic = [qm](const CMat& x) -> CMat {
                return (qm.inverse() * x.inverse().transpose() * qm).conjugate();
            };
        } else {
            CMat qt = diag_of(gram_values(b, v), 2);
            CMat g = gamma_swap(n);
            QuatPlace qp = quat_place(b, v);
            act.intrinsic = [qt, g, qp](const CMat& x) -> CMat {
                CMat partner = qt.inverse() * g * x.inverse().transpose() * g.inverse() * qt;
                return conj_coefficients(partner, qp.rho, qp.b);
            };
        }
        return act;
    }
    TypeDPlaceData d = type_d_place_data(b, v);
    double t = d.t;
    auto cprime = [t, n](const CMat& x) -> CMat {
        CMat out(2 * n, 2 * n);
        out.topLeftCorner(n, n) = x.bottomRightCorner(n, n).conjugate();
        out.topRightCorner(n, n) = t * x.bottomLeftCorner(n, n).conjugate();
        out.bottomLeftCorner(n, n) = x.topRightCorner(n, n).conjugate() / t;
        out.bottomRightCorner(n, n) = x.topLeftCorner(n, n).conjugate();
        return out;
    };
    act.formula = cprime;
    Complex rho = d.root;
    act.intrinsic = [rho, t](const CMat& x) -> CMat { return conj_coefficients(x, rho, t); };
    CMat p = d.delta * cprime(d.delta).inverse();
    CMat pinv = p.inverse();
    act.on_so = [p, pinv, cprime](const CMat& y) -> CMat { return p * cprime(y) * pinv; };
    double res = 0;
    for (int i = 0; i < n; ++i) {
        Complex lhs = t * d.e[i] / std::conj(d.f[i]);
        Complex rhs = -d.f[i] / std::conj(d.e[i]);
        res = std::max(res, std::abs(lhs - rhs));
    }
    act.tci_residual = res;
    act.tci_ok = res < 1e-12;
    return act;
}

namespace {

IntMat c_star_from(const std::function<CMat(const CMat&)>& c, int size, int rank, bool so_torus)
{
    IntMat e(rank, rank);
    for (int col = 0; col < rank; ++col) {
        CMat t = CMat::Identity(size, size);
        t(col, col) = 2;
        if (so_torus)
            t(size - 1 - col, size - 1 - col) = 0.5;
        CMat ct = c(t);
        for (int j = 0; j < rank; ++j) {
            Complex val = std::conj(ct(j, j));
            double k = std::log2(std::abs(val));
            long rk = std::lround(k);
            if (std::abs(val - std::pow(2.0, static_cast<double>(rk))) > 1e-8)
                throw Error(Errc::InternalError, "conjugation does not act monomially on the torus");
            e(j, col) = rk;
        }
    }
    return e.transpose();
}

}  // namespace

CharacterCheck theta_vs_character_conjugation(const InvolutionBundle& b, const RealEmbedding& v)
{
    CharacterCheck cc;
    cc.theta_star = theta_on_characters(b);
    ConjugationAction act = conjugation_action_at_place(b, v);
    bool type_d = b.kind() == InvolutionBundle::Kind::TypeD;
    cc.c_star = c_star_from(type_d ? act.on_so : act.intrinsic, b.model_size(), b.character_rank(), type_d);
    cc.ok = true;
    for (int i = 0; i < b.character_rank(); ++i) {
        CharacterClass x{cc.theta_star.col(i), !type_d}, y{cc.c_star.col(i), !type_d};
        cc.ok = cc.ok && x == y;
    }
    return cc;
}

HodgeMap HodgeMap::conjugate() const
{
    HodgeMap out = *this;
    auto f = at;
    out.at = [f](Complex z) { return f(std::conj(z)); };
    for (auto& p : out.pattern)
        p = -p;
    return out;
}

HodgeMap diagonal_hodge_map(const CMat& form, const std::vector<int>& pattern, int place)
{
    HodgeMap y;
    y.model = HodgeMap::Model::GU;
    y.place = place;
    y.form = form;
    y.pattern = pattern;
    y.at = [pattern](Complex z) {
        int n = static_cast<int>(pattern.size());
        CMat m = CMat::Zero(n, n);
        for (int i = 0; i < n; ++i)
            m(i, i) = pattern[i] > 0 ? z : std::conj(z);
        return m;
    };
    return y;
}

HodgeMap build_y(const InvolutionBundle& b, const RealEmbedding& v)
{
    if (place_info(b, v).compact)
        throw Error(Errc::NoHodgeMap, "no Hodge map is built at compact places");
    if (b.kind() == InvolutionBundle::Kind::TypeA) {
        std::vector<int> pattern;
        for (int copy = 0; copy < b.m(); ++copy)
            for (const auto& q : b.hermitian().gram())
                pattern.push_back(v.sign(q) > 0 ? 1 : -1);
        return diagonal_hodge_map(model_at_place(b, v).form, pattern, v.index());
    }
    TypeDPlaceData d = type_d_place_data(b, v);
    if (d.y.empty())
        throw Error(Errc::NoHodgeMap, "type D Hodge map needs a quaternion-nonsplit place");
    int n = b.n();
    HodgeMap y;
    y.model = HodgeMap::Model::GOStar;
    y.place = v.index();
    y.form = model_at_place(b, v).form;
    std::vector<Complex> ys = d.y;
    y.at = [ys, n](Complex z) {
        CMat m = CMat::Zero(2 * n, 2 * n);
        for (int i = 0; i < n; ++i) {
            m(i, i) = z.real();
            m(n + i, n + i) = z.real();
            m(i, n + i) = z.imag() / std::abs(ys[i]) * ys[i];
            m(n + i, i) = -z.imag() / std::abs(ys[i]) * std::conj(ys[i]);
        }
        return m;
    };
    return y;
}

std::vector<CMat> real_lie_algebra(const CMat& form, bool quaternionic_blocks)
{
    int n = static_cast<int>(form.rows());
    int vars = 2 * n * n;
    int h = n / 2;
    int rows = 2 * n * n + 2 + (quaternionic_blocks ? 4 * h * h * 2 : 0);
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(rows, vars);
    auto basis = [&](int k) {
        CMat x = CMat::Zero(n, n);
        int e = k / 2;
        x(e / n, e % n) = (k % 2 == 0) ? Complex(1, 0) : I1;
        return x;
    };
    for (int k = 0; k < vars; ++k) {
        CMat x = basis(k);
        CMat c = x.adjoint() * form + form * x;
        int r = 0;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                a(r++, k) = c(i, j).real();
                a(r++, k) = c(i, j).imag();
            }
        Complex tr = x.trace();
        a(r++, k) = tr.real();
        a(r++, k) = tr.imag();
        if (quaternionic_blocks) {
            for (int i = 0; i < h; ++i)
                for (int j = 0; j < h; ++j) {
                    Complex c1 = x(h + i, j) + std::conj(x(i, h + j));
                    Complex c2 = x(h + i, h + j) - std::conj(x(i, j));
                    a(r++, k) = c1.real();
                    a(r++, k) = c1.imag();
                    a(r++, k) = c2.real();
                    a(r++, k) = c2.imag();
                }
        }
    }
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(a, Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    double scale = sv.size() ? std::max(1.0, sv(0)) : 1.0;
    std::vector<CMat> out;
    for (int k = 0; k < vars; ++k) {
        double s = k < sv.size() ? sv(k) : 0.0;
        if (s > 1e-10 * scale)
            continue;
        Eigen::VectorXd col = svd.matrixV().col(k);
        CMat x = CMat::Zero(n, n);
        for (int m = 0; m < vars; ++m)
            x += col(m) * basis(m);
        out.push_back(x);
    }
    return out;
}

DeligneReport deligne_check(const HodgeMap& y)
{
    DeligneReport rep;
    const CMat& f = y.form;
    double fnorm = f.norm();
    bool quaternionic = y.model == HodgeMap::Model::GOStar;

    rep.in_group = true;
    for (Complex z : {Complex(2, 1), Complex(0.3, -1.7), std::polar(1.0, M_PI / 5)}) {
        CMat m = y.at(z);
        double nu = std::norm(z);
        if ((m.adjoint() * f * m - nu * f).norm() > 1e-9 * nu * fnorm)
            rep.in_group = false;
        if (quaternionic) {
            int h = static_cast<int>(m.rows()) / 2;
            if ((m.bottomLeftCorner(h, h) + m.topRightCorner(h, h).conjugate()).norm() > 1e-12 * m.norm() ||
                (m.bottomRightCorner(h, h) - m.topLeftCorner(h, h).conjugate()).norm() > 1e-12 * m.norm())
                rep.in_group = false;
        }
    }

    rep.weight_central = true;
    for (double r : {2.0, -0.7}) {
        CMat m = y.at(Complex(r, 0));
        CMat s = m(0, 0) * CMat::Identity(m.rows(), m.cols());
        if ((m - s).norm() > 1e-12 * m.norm())
            rep.weight_central = false;
    }

    std::vector<CMat> g = real_lie_algebra(f, quaternionic);
    rep.lie_dimension = static_cast<int>(g.size());

    Complex z(2, 1);
    Complex w = z / std::conj(z);
    CMat yz = y.at(z), yzi = yz.inverse();
    auto ad = [&](const CMat& x) -> CMat { return yz * x * yzi; };
    double res = 0;
    for (const auto& x : g) {
        CMat x1 = ad(x) - std::conj(w) * x;
        CMat x2 = ad(x1) - w * x1;
        CMat x3 = ad(x2) - x2;
        res = std::max(res, x3.norm() / std::max(1e-300, x.norm()));
    }
    rep.hodge_residual = res;
    rep.hodge_types_ok = res < 1e-8;

    CMat yi = y.at(I1), yii = yi.inverse();
    int d = rep.lie_dimension;
    Eigen::MatrixXd gram(d, d);
    double asym = 0;
    for (int k = 0; k < d; ++k)
        for (int l = 0; l < d; ++l)
            gram(k, l) = (g[k] * yi * g[l] * yii).trace().real();
    asym = (gram - gram.transpose()).norm();
    Eigen::MatrixXd sym = 0.5 * (gram + gram.transpose());
    if (d > 0) {
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(sym);
        rep.cartan_max_eigenvalue = es.eigenvalues().maxCoeff();
        rep.cartan_ok = rep.cartan_max_eigenvalue < -1e-9 && asym < 1e-8 * std::max(1.0, sym.norm());
    }
    return rep;
}

int special_node_of_y(const HodgeMap& y)
{
    if (y.model != HodgeMap::Model::GU)
        throw Error(Errc::Unsupported, "special node readout is implemented for GU models only");
    int n = static_cast<int>(y.pattern.size());
    int p = 0;
    for (int s : y.pattern)
        if (s > 0)
            ++p;
    if (p == 0 || p == n)
        throw Error(Errc::NoHodgeMap, "a constant pattern gives a trivial Hodge map");
    return p;
}

}  // namespace sdk
