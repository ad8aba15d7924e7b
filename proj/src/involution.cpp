#include "sdk/involution.hpp"

#include <algorithm>
#include <iterator>
#include <map>
#include <memory>
#include <queue>
#include <set>

namespace sdk {

bool operator==(const CharacterClass& x, const CharacterClass& y)
{
    if (x.vector.size() != y.vector.size() || x.mod_all_ones != y.mod_all_ones)
        return false;
    IntVec d = x.vector - y.vector;
    if (!x.mod_all_ones)
        return d.isZero();
    for (int i = 1; i < d.size(); ++i)
        if (d(i) != d(0))
            return false;
    return true;
}

int exact_log2(const Rational& x)
{
    if (x <= 0)
        throw Error(Errc::InternalError, "torus pullback produced a non-positive entry");
    mpz_class num = x.get_num(), den = x.get_den();
    auto pow2 = [](mpz_class v, int& k) {
        k = 0;
        while (v > 1 && mpz_even_p(v.get_mpz_t())) {
            v /= 2;
            ++k;
        }
        return v == 1;
    };
    int a = 0, b = 0;
    if (!pow2(num, a) || !pow2(den, b))
        throw Error(Errc::InternalError, "torus pullback is not a monomial map");
    return a - b;
}

namespace {

template <class T>
Mat<T> scale_by_gram(const Mat<T>& y, const std::vector<FieldElement>& q, int copies,
                     std::function<T(const FieldElement&, const T&)> mul)
{
    // Q^-1 Y Q for Q = diag(q repeated `copies` times).
    int n = static_cast<int>(q.size());
    Mat<T> out = y;
    for (int i = 0; i < y.rows(); ++i)
        for (int j = 0; j < y.cols(); ++j)
            out(i, j) = mul(q[j % n] / q[i % n], y(i, j));
    return out;
}

// Gamma Y Gamma^-1 for Gamma = [[0, I], [-I, 0]].
template <class T>
Mat<T> gamma_conjugate(const Mat<T>& y)
{
    int n = y.rows() / 2;
    Mat<T> out = y;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            out(i, j) = y(n + i, n + j);
            out(i, n + j) = -y(n + i, j);
            out(n + i, j) = -y(i, n + j);
            out(n + i, n + j) = y(i, j);
        }
    return out;
}

}  // namespace

InvolutionBundle InvolutionBundle::type_a(const HermitianSpace& space)
{
    StrongTest st = is_strongly_hermitian(space);
    if (!st.ok)
        throw Error(Errc::NotAdmissible, "space is not strongly hermitian: " + st.reasons.front());
    if (space.n() * space.m() < 3)
        throw Error(Errc::OutOfScope, "type A_l needs l >= 2, i.e. nm >= 3");
    InvolutionBundle b;
    b.kind_ = Kind::TypeA;
    b.hspace_ = space;
    if (space.m() == 2) {
        b.dk_ = space.algebra().algebra();
        b.phi_a_ = SplittingMap<KElement>(b.dk_->lambda(), b.dk_->mu());
    }
    b.profile_ = place_profile(space);
    return b;
}

InvolutionBundle InvolutionBundle::type_d(const SkewHermitianSpace& space)
{
    StrongTest st = is_strongly_skew_hermitian(space);
    if (!st.ok)
        throw Error(Errc::NotAdmissible, "space is not strongly skew-hermitian: " + st.reasons.front());
    InvolutionBundle b;
    b.kind_ = Kind::TypeD;
    b.sspace_ = space;
    b.phi_d_ = SplittingMap<FieldElement>(space.r());
    b.s_ = b.phi_d_->s();
    b.profile_ = place_profile(space);
    return b;
}

InvolutionBundle build_theta_A(const HermitianSpace& space) { return InvolutionBundle::type_a(space); }
InvolutionBundle build_theta_D(const SkewHermitianSpace& space) { return InvolutionBundle::type_d(space); }

int InvolutionBundle::n() const { return kind_ == Kind::TypeA ? hspace_->n() : sspace_->n(); }
int InvolutionBundle::m() const { return kind_ == Kind::TypeA ? hspace_->m() : 2; }
int InvolutionBundle::model_size() const { return kind_ == Kind::TypeA ? n() * m() : 2 * n(); }
int InvolutionBundle::character_rank() const { return kind_ == Kind::TypeA ? n() * m() : n(); }

std::string InvolutionBundle::label() const
{
    return kind_ == Kind::TypeA ? "A" + std::to_string(n() * m() - 1) : "D" + std::to_string(n());
}

std::string InvolutionBundle::torus_description() const
{
    if (kind_ == Kind::TypeA)
        return m() == 1 ? "S_{K,beta}: diagonal matrices in the basis beta"
                        : "S_{L,beta}: diagonal matrices with entries in L = K(lambda)";
    return "S': v_i -> v_i * x_i with x_i in F(q_i)";
}

Mat<KElement> InvolutionBundle::theta(const Mat<KElement>& x) const
{
    if (kind_ != Kind::TypeA || m() != 1)
        throw Error(Errc::WrongModel, "K-matrix theta is for type A with D = K");
    Mat<KElement> y = x.inverse().transpose();
    return scale_by_gram<KElement>(y, hspace_->gram(), 1,
                                   [](const FieldElement& c, const KElement& e) { return c * e; });
}

Mat<KElement> InvolutionBundle::semilinear(const Mat<KElement>& x) const
{
    return x.map([](const KElement& e) { return e.conj(); });
}

Mat<QK> InvolutionBundle::theta(const Mat<QK>& x) const
{
    if (kind_ != Kind::TypeA || m() != 2)
        throw Error(Errc::WrongModel, "quaternion theta is for type A with m = 2");
    Mat<QK> y = x.inverse().transpose().map([](const QK& e) { return e.sigma(); });
    const CMExtension& k = hspace_->algebra().cm();
    return scale_by_gram<QK>(y, hspace_->gram(), 1,
                             [&](const FieldElement& c, const QK& e) { return k.from_base(c) * e; });
}

Mat<QK> InvolutionBundle::semilinear(const Mat<QK>& x) const
{
    return x.map([&](const QK& e) { return hspace_->algebra().alpha(e); });
}

Mat<LK> InvolutionBundle::phi(const Mat<QK>& x) const { return phi_a_->on_matrix(x); }

Mat<LK> InvolutionBundle::theta_split(const Mat<LK>& x) const
{
    Mat<LK> y = gamma_conjugate(x.inverse().transpose());
    const CMExtension& k = hspace_->algebra().cm();
    return scale_by_gram<LK>(y, hspace_->gram(), 2, [&](const FieldElement& c, const LK& e) {
        return phi_a_->lift(k.from_base(c)) * e;
    });
}

Mat<LK> InvolutionBundle::theta_split_display(const Mat<LK>& x) const
{
    Mat<LK> y = gamma_conjugate(x.transpose());
    const CMExtension& k = hspace_->algebra().cm();
    return scale_by_gram<LK>(y, hspace_->gram(), 2, [&](const FieldElement& c, const LK& e) {
        return phi_a_->lift(k.from_base(c)) * e;
    });
}

Mat<FQuat> InvolutionBundle::theta(const Mat<FQuat>& x) const
{
    if (kind_ != Kind::TypeD)
        throw Error(Errc::WrongModel, "quaternion theta over F is for type D");
    const FQuat& r = sspace_->r();
    FQuat ri = r.inv();
    return x.map([&](const FQuat& e) { return r * e * ri; });
}

Mat<LF> InvolutionBundle::phi(const Mat<FQuat>& x) const { return phi_d_->on_matrix(x); }

Mat<LF> InvolutionBundle::theta_split(const Mat<LF>& x) const
{
    int n2 = x.rows();
    std::vector<LF> g;
    for (int i = 0; i < n2; ++i)
        g.push_back(i < n2 / 2 ? phi_d_->root() : -phi_d_->root());
    Mat<LF> gamma = Mat<LF>::diagonal(g);
    return gamma * x * gamma.inverse();
}

Mat<LF> InvolutionBundle::theta_block(const Mat<LF>& x) const
{
    int n = x.rows() / 2;
    Mat<LF> out = x;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            out(i, n + j) = -x(i, n + j);
            out(n + i, j) = -x(n + i, j);
        }
    return out;
}

Mat<LF> InvolutionBundle::q_tilde() const
{
    int n = this->n();
    const auto& alg = sspace_->algebra();
    Mat<FQuat> qm(n, n, alg.zero());
    for (int i = 0; i < n; ++i)
        qm(i, i) = sspace_->gram()[i];
    return phi(qm);
}

Mat<LF> InvolutionBundle::q_tilde_prime() const
{
    int n = this->n();
    Mat<LF> qt = q_tilde();
    Mat<LF> out(2 * n, 2 * n, qt(0, 0) - qt(0, 0));
    for (int i = 0; i < n; ++i) {
        out(i, i) = qt(n + i, i);            // c_i
        out(n + i, n + i) = -qt(i, n + i);   // -b_i
    }
    return out;
}

Mat<LF> InvolutionBundle::transported_theta() const
{
    int n = this->n();
    LF r = phi_d_->root();
    LF zero = r - r;
    Mat<LF> out(2 * n, 2 * n, zero);
    FieldElement two = r.a().field().from_rational(2);
    FieldElement half = r.a().field().from_rational(Rational(1, 2));
    for (int i = 0; i < n; ++i) {
        out(i, n + (n - 1 - i)) = two * r;
        out(n + i, n - 1 - i) = half * r;
    }
    return out;
}

IntMat theta_on_characters(const InvolutionBundle& b)
{
    int r = b.character_rank();
    IntMat e(r, r);
    if (b.kind() == InvolutionBundle::Kind::TypeA && b.m() == 1) {
        const CMExtension& k = b.hermitian().algebra().cm();
        for (int col = 0; col < r; ++col) {
            std::vector<KElement> d(r, k.one());
            d[col] = k.from_rational(2);
            Mat<KElement> t = b.theta(Mat<KElement>::diagonal(d));
            for (int j = 0; j < r; ++j) {
                if (!t(j, j).in_base() || !t(j, j).a().is_rational())
                    throw Error(Errc::InternalError, "torus pullback left Q");
                e(j, col) = exact_log2(t(j, j).a().rational_value());
            }
        }
    } else if (b.kind() == InvolutionBundle::Kind::TypeA) {
        const CMExtension& k = b.hermitian().algebra().cm();
        const auto& alg = b.algebra_k();
        LK one = LK::from_base(k.one(), alg.a());
        for (int col = 0; col < r; ++col) {
            std::vector<LK> d(r, one);
            d[col] = LK::from_base(k.from_rational(2), alg.a());
            Mat<LK> t = b.theta_split(Mat<LK>::diagonal(d));
            for (int j = 0; j < r; ++j) {
                const LK& x = t(j, j);
                if (!x.in_base() || !x.a().in_base() || !x.a().a().is_rational())
                    throw Error(Errc::InternalError, "torus pullback left Q");
                e(j, col) = exact_log2(x.a().a().rational_value());
            }
        }
    } else {
        Mat<LF> m = b.transported_theta();
        Mat<LF> mi = m.inverse();
        int n = b.n();
        LF one = m(0, 2 * n - 1) * m(0, 2 * n - 1).inv();
        for (int col = 0; col < n; ++col) {
            std::vector<LF> d(2 * n, one);
            d[col] = Rational(2) * one.a() * one;
            d[2 * n - 1 - col] = Rational(1, 2) * one.a() * one;
            Mat<LF> t = m * Mat<LF>::diagonal(d) * mi;
            for (int j = 0; j < n; ++j) {
                const LF& x = t(j, j);
                if (!x.in_base() || !x.a().is_rational())
                    throw Error(Errc::InternalError, "torus pullback left Q");
                e(j, col) = exact_log2(x.a().rational_value());
            }
        }
    }
    // Column j of the result is chi_j o theta, i.e. row j of e.
    return e.transpose();
}

namespace {

/// Polynomials in the symbols e_i, f_i over L, reduced by e_i^2 = c_i, f_i^2 = b_i.
struct SymContext {
    std::vector<LF> squares;
    LF zero;
    LF one;
};

class SymPoly {
public:
    SymPoly() = default;
    SymPoly(std::shared_ptr<const SymContext> ctx) : ctx_(std::move(ctx)) {}
    static SymPoly constant(std::shared_ptr<const SymContext> ctx, const LF& c)
    {
        SymPoly p(ctx);
        if (!c.is_zero())
            p.terms_[{}] = c;
        return p;
    }
    static SymPoly symbol(std::shared_ptr<const SymContext> ctx, int s, const LF& c)
    {
        SymPoly p(ctx);
        if (!c.is_zero())
            p.terms_[{s}] = c;
        return p;
    }
    const std::shared_ptr<const SymContext>& ctx() const { return ctx_; }
    bool is_zero() const { return terms_.empty(); }

    friend SymPoly operator+(const SymPoly& x, const SymPoly& y)
    {
        SymPoly out = x;
        if (!out.ctx_)
            out.ctx_ = y.ctx_;
        for (const auto& [k, v] : y.terms_)
            out.add(k, v);
        return out;
    }
    SymPoly operator-() const
    {
        SymPoly out = *this;
        for (auto& kv : out.terms_)
            kv.second = -kv.second;
        return out;
    }
    friend SymPoly operator-(const SymPoly& x, const SymPoly& y) { return x + (-y); }
    friend SymPoly operator*(const SymPoly& x, const SymPoly& y)
    {
        SymPoly out(x.ctx_ ? x.ctx_ : y.ctx_);
        for (const auto& [kx, vx] : x.terms_)
            for (const auto& [ky, vy] : y.terms_) {
                std::vector<int> mono;
                std::merge(kx.begin(), kx.end(), ky.begin(), ky.end(), std::back_inserter(mono));
                LF coeff = vx * vy;
                std::vector<int> reduced;
                for (size_t i = 0; i < mono.size(); ++i) {
                    if (i + 1 < mono.size() && mono[i] == mono[i + 1]) {
                        coeff = coeff * out.ctx_->squares[mono[i]];
                        ++i;
                    } else {
                        reduced.push_back(mono[i]);
                    }
                }
                out.add(reduced, coeff);
            }
        return out;
    }
    friend bool operator==(const SymPoly& x, const SymPoly& y) { return (x - y).is_zero(); }

private:
    void add(const std::vector<int>& k, const LF& v)
    {
        auto it = terms_.find(k);
        if (it == terms_.end()) {
            if (!v.is_zero())
                terms_[k] = v;
            return;
        }
        it->second = it->second + v;
        if (it->second.is_zero())
            terms_.erase(it);
    }

    std::shared_ptr<const SymContext> ctx_;
    std::map<std::vector<int>, LF> terms_;
};

SymPoly zero_of(const SymPoly& x) { return SymPoly(x.ctx()); }
SymPoly one_of(const SymPoly& x) { return SymPoly::constant(x.ctx(), x.ctx()->one); }
bool is_zero(const SymPoly& x) { return x.is_zero(); }

}  // namespace

SymbolicTransportReport check_transport_symbolic(const InvolutionBundle& b)
{
    if (b.kind() != InvolutionBundle::Kind::TypeD)
        throw Error(Errc::WrongModel, "transport to SO_2n is a type D construction");
    int n = b.n();
    Mat<LF> qt = b.q_tilde();
    auto ctx = std::make_shared<SymContext>();
    LF one = b.transported_theta()(0, n + n - 1);
    one = one * one.inv();
    ctx->zero = one - one;
    ctx->one = one;
    // Symbols 0..n-1 are e_i, n..2n-1 are f_i.
    for (int i = 0; i < n; ++i)
        ctx->squares.push_back(qt(n + i, i));  // c_i
    for (int i = 0; i < n; ++i)
        ctx->squares.push_back(qt(i, n + i));  // b_i
    std::shared_ptr<const SymContext> c = ctx;
    SymPoly zero(c);
    FieldElement half = one.a().field().from_rational(Rational(1, 2));

    Mat<SymPoly> delta(2 * n, 2 * n, zero);
    for (int i = 0; i < n; ++i) {
        delta(i, n - 1 - i) = SymPoly::symbol(c, n - 1 - i, one);
        delta(i, n + n - 1 - i) = SymPoly::symbol(c, n + n - 1 - i, -one);
        delta(n + i, i) = SymPoly::symbol(c, i, half * one);
        delta(n + i, n + i) = SymPoly::symbol(c, n + i, half * one);
    }
    auto lift = [&](const Mat<LF>& m) { return m.map([&](const LF& x) { return SymPoly::constant(c, x); }); };
    Mat<LF> j2(2 * n, 2 * n, ctx->zero);
    for (int i = 0; i < 2 * n; ++i)
        j2(i, 2 * n - 1 - i) = one;
    std::vector<LF> g;
    LF root = b.transported_theta()(0, 2 * n - 1) * (Rational(1, 2) * one.a().field().one() * one);
    for (int i = 0; i < 2 * n; ++i)
        g.push_back(i < n ? root : -root);

    SymbolicTransportReport rep;
    rep.form_ok = delta.transpose() * lift(j2) * delta == lift(b.q_tilde_prime());
    rep.conjugation_ok = delta * lift(Mat<LF>::diagonal(g)) == lift(b.transported_theta()) * delta;
    return rep;
}

bool weyl_restore(const IntMat& p, const std::vector<IntVec>& positive_roots, const std::vector<IntMat>& reflections,
                  IntMat& w, std::vector<int>& word)
{
    std::set<std::vector<std::int64_t>> pos;
    for (const auto& r : positive_roots)
        pos.insert(std::vector<std::int64_t>(r.data(), r.data() + r.size()));
    auto good = [&](const IntMat& m) {
        for (const auto& r : positive_roots) {
            IntVec img = m * r;
            if (!pos.count(std::vector<std::int64_t>(img.data(), img.data() + img.size())))
                return false;
        }
        return true;
    };
    auto key = [](const IntMat& m) { return std::vector<std::int64_t>(m.data(), m.data() + m.size()); };
    int r = static_cast<int>(p.rows());
    std::queue<std::pair<IntMat, std::vector<int>>> queue;
    std::set<std::vector<std::int64_t>> seen;
    queue.push({IntMat::Identity(r, r), {}});
    seen.insert(key(IntMat::Identity(r, r)));
    while (!queue.empty()) {
        auto [cur, wd] = queue.front();
        queue.pop();
        if (good(cur * p)) {
            w = cur;
            word = wd;
            return true;
        }
        if (seen.size() > 4000000)
            break;
        for (size_t i = 0; i < reflections.size(); ++i) {
            IntMat nxt = reflections[i] * cur;
            if (seen.insert(key(nxt)).second) {
                auto nw = wd;
                nw.insert(nw.begin(), static_cast<int>(i) + 1);
                queue.push({nxt, nw});
            }
        }
    }
    return false;
}

InducedMap induced_based_map(const InvolutionBundle& b)
{
    InducedMap out;
    int r = b.character_rank();
    bool type_a = b.kind() == InvolutionBundle::Kind::TypeA;
    if ((type_a && r < 3) || (!type_a && r < 4))
        throw Error(Errc::OutOfScope, "rank too small for an opposition involution check");
    out.theta_star = theta_on_characters(b);

    auto unit = [&](int i) {
        IntVec v = IntVec::Zero(r);
        v(i) = 1;
        return v;
    };
    std::vector<IntVec> positive, simple;
    std::vector<IntMat> refl;
    if (type_a) {
        for (int i = 0; i < r; ++i)
            for (int j = i + 1; j < r; ++j)
                positive.push_back(unit(i) - unit(j));
        for (int i = 0; i + 1 < r; ++i) {
            simple.push_back(unit(i) - unit(i + 1));
            IntMat s = IntMat::Identity(r, r);
            s(i, i) = s(i + 1, i + 1) = 0;
            s(i, i + 1) = s(i + 1, i) = 1;
            refl.push_back(s);
        }
    } else {
        for (int i = 0; i < r; ++i)
            for (int j = i + 1; j < r; ++j) {
                positive.push_back(unit(i) - unit(j));
                positive.push_back(unit(i) + unit(j));
            }
        for (int i = 0; i + 1 < r; ++i) {
            simple.push_back(unit(i) - unit(i + 1));
            IntMat s = IntMat::Identity(r, r);
            s(i, i) = s(i + 1, i + 1) = 0;
            s(i, i + 1) = s(i + 1, i) = 1;
            refl.push_back(s);
        }
        simple.push_back(unit(r - 2) + unit(r - 1));
        IntMat s = IntMat::Identity(r, r);
        s(r - 2, r - 2) = s(r - 1, r - 1) = 0;
        s(r - 2, r - 1) = s(r - 1, r - 2) = -1;
        refl.push_back(s);
    }

    out.theta_reverses_borel = true;
    std::set<std::vector<std::int64_t>> pos;
    for (const auto& v : positive)
        pos.insert(std::vector<std::int64_t>(v.data(), v.data() + v.size()));
    for (const auto& v : positive) {
        IntVec img = -(out.theta_star * v);
        if (!pos.count(std::vector<std::int64_t>(img.data(), img.data() + img.size())))
            out.theta_reverses_borel = false;
    }

    if (!weyl_restore(out.theta_star, positive, refl, out.weyl, out.word))
        throw Error(Errc::InternalError, "no Weyl representative restores the Borel pair");
    out.psi0 = out.weyl * out.theta_star;

    out.expected = IntMat::Zero(r, r);
    if (type_a) {
        for (int i = 0; i < r; ++i)
            out.expected(r - 1 - i, i) = -1;
    } else {
        out.expected = IntMat::Identity(r, r);
        if (r % 2 == 1)
            out.expected(r - 1, r - 1) = -1;
    }

    // Diagram action compared with the opposition involution of the abstract datum.
    char type = type_a ? 'A' : 'D';
    int rank = type_a ? r - 1 : r;
    BasedRootDatum datum = build_root_datum(type, rank, Flavor::SimplyConnected);
    std::vector<int> star_perm = induced_diagram_map(datum, opposition_involution(datum));
    bool diagram_ok = true;
    out.diagram.assign(simple.size(), -1);
    for (size_t i = 0; i < simple.size(); ++i) {
        IntVec img = out.psi0 * simple[i];
        for (size_t j = 0; j < simple.size(); ++j)
            if (img == simple[j])
                out.diagram[i] = static_cast<int>(j);
        diagram_ok = diagram_ok && out.diagram[i] == star_perm[i];
    }
    bool lattice_ok = true;
    for (int i = 0; i < r; ++i) {
        CharacterClass a{out.psi0.col(i), type_a}, e{out.expected.col(i), type_a};
        lattice_ok = lattice_ok && a == e;
    }
    out.equals_star = diagram_ok && lattice_ok;
    return out;
}

}  // namespace sdk
