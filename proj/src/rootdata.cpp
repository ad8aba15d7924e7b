#include "sdk/rootdata.hpp"

#include "sdk/errors.hpp"

#include <deque>
#include <map>
#include <sstream>

namespace sdk {

namespace {

std::vector<std::int64_t> key(const IntVec& v)
{
    return std::vector<std::int64_t>(v.data(), v.data() + v.size());
}

std::int64_t pair(const IntVec& x, const IntVec& y)
{
    return x.dot(y);
}

// Gram matrix of the simple roots in a standard realization, scaled to integers.
IntMat simple_gram(char type, int l)
{
    IntMat g = IntMat::Zero(l, l);
    auto edge = [&](int i, int j, std::int64_t v) {
        g(i - 1, j - 1) = v;
        g(j - 1, i - 1) = v;
    };
    for (int i = 0; i < l; ++i)
        g(i, i) = 2;
    switch (type) {
    case 'A':
        for (int i = 1; i < l; ++i)
            edge(i, i + 1, -1);
        break;
    case 'B':
        for (int i = 1; i < l; ++i)
            edge(i, i + 1, -1);
        g(l - 1, l - 1) = 1;
        break;
    case 'C':
        for (int i = 1; i < l - 1; ++i)
            edge(i, i + 1, -1);
        edge(l - 1, l, -2);
        g(l - 1, l - 1) = 4;
        break;
    case 'D':
        for (int i = 1; i < l - 1; ++i)
            edge(i, i + 1, -1);
        edge(l - 2, l, -1);
        break;
    case 'E':
        edge(1, 3, -1);
        edge(2, 4, -1);
        for (int i = 3; i < l; ++i)
            edge(i, i + 1, -1);
        break;
    case 'F':
        g(0, 0) = g(1, 1) = 4;
        edge(1, 2, -2);
        edge(2, 3, -2);
        edge(3, 4, -1);
        break;
    case 'G':
        g(1, 1) = 6;
        edge(1, 2, -3);
        break;
    default:
        break;
    }
    return g;
}

void check_rank(char type, int l)
{
    bool ok = false;
    switch (type) {
    case 'A': ok = l >= 1; break;
    case 'B': ok = l >= 2; break;
    case 'C': ok = l >= 2; break;
    case 'D': ok = l >= 4; break;
    case 'E': ok = l >= 6 && l <= 8; break;
    case 'F': ok = l == 4; break;
    case 'G': ok = l == 2; break;
    default:
        throw Error(Errc::InvalidType, std::string("unknown Dynkin type '") + type + "'");
    }
    if (!ok)
        throw Error(Errc::InvalidType, std::string("illegal rank for type ") + type + std::to_string(l));
}

}  // namespace

std::string flavor_name(Flavor f)
{
    return f == Flavor::Adjoint ? "adjoint" : "simply_connected";
}

Flavor parse_flavor(const std::string& s)
{
    if (s == "adjoint" || s == "ad")
        return Flavor::Adjoint;
    if (s == "simply_connected" || s == "sc")
        return Flavor::SimplyConnected;
    throw Error(Errc::ParseError, "unknown isogeny flavor '" + s + "'");
}

IntMat cartan_matrix(char type, int l)
{
    check_rank(type, l);
    IntMat g = simple_gram(type, l);
    IntMat c(l, l);
    for (int i = 0; i < l; ++i)
        for (int j = 0; j < l; ++j)
            c(i, j) = 2 * g(i, j) / g(j, j);
    return c;
}

BasedRootDatum::BasedRootDatum(IntMat simple_roots, IntMat simple_coroots, std::vector<Component> components,
                               Flavor flavor)
    : simple_roots_(std::move(simple_roots)),
      simple_coroots_(std::move(simple_coroots)),
      components_(std::move(components)),
      flavor_(flavor)
{
    if (simple_roots_.rows() != simple_coroots_.rows() || simple_roots_.cols() != simple_coroots_.cols())
        throw Error(Errc::InvalidType, "simple roots and coroots have different shapes");
    int l = semisimple_rank();
    cartan_ = simple_roots_.transpose() * simple_coroots_;
    for (int i = 0; i < l; ++i)
        if (cartan_(i, i) != 2)
            throw Error(Errc::InvalidType, "simple root paired with its coroot is not 2");

    std::map<std::vector<std::int64_t>, int> seen;
    std::deque<int> queue;
    auto add = [&](const IntVec& r, const IntVec& rc, const IntVec& coeff) {
        auto k = key(r);
        if (seen.count(k))
            return;
        seen[k] = static_cast<int>(roots_.size());
        roots_.push_back(r);
        coroots_.push_back(rc);
        coefficients_.push_back(coeff);
        bool pos = true;
        for (int i = 0; i < coeff.size(); ++i)
            pos = pos && coeff(i) >= 0;
        positive_.push_back(pos);
        queue.push_back(static_cast<int>(roots_.size()) - 1);
    };
    for (int i = 0; i < l; ++i)
        add(simple_roots_.col(i), simple_coroots_.col(i), IntVec::Unit(l, i));
    while (!queue.empty()) {
        int k = queue.front();
        queue.pop_front();
        for (int j = 0; j < l; ++j) {
            IntVec r = roots_[k], rc = coroots_[k], cf = coefficients_[k];
            std::int64_t p = pair(r, simple_coroots_.col(j));
            std::int64_t pc = pair(simple_roots_.col(j), rc);
            IntVec r2 = r - p * IntVec(simple_roots_.col(j));
            IntVec rc2 = rc - pc * IntVec(simple_coroots_.col(j));
            IntVec cf2 = cf;
            cf2(j) -= p;
            add(r2, rc2, cf2);
        }
        if (roots_.size() > 100000)
            throw Error(Errc::InvalidType, "root system is not finite");
    }
}

std::string BasedRootDatum::type_label() const
{
    std::ostringstream out;
    for (size_t i = 0; i < components_.size(); ++i) {
        if (i)
            out << "x";
        out << components_[i].type << components_[i].rank;
    }
    return out.str();
}

IntMat BasedRootDatum::reflection(int i) const
{
    IntMat s = IntMat::Identity(rank(), rank());
    s -= simple_roots_.col(i) * simple_coroots_.col(i).transpose();
    return s;
}

int BasedRootDatum::find_root(const IntVec& v) const
{
    for (size_t k = 0; k < roots_.size(); ++k)
        if (roots_[k] == v)
            return static_cast<int>(k);
    return -1;
}

BasedRootDatum build_root_datum(char type, int l, Flavor flavor)
{
    if (type == 'T')
        return toral_datum(l);
    IntMat c = cartan_matrix(type, l);
    IntMat roots, coroots;
    if (flavor == Flavor::SimplyConnected) {
        // X = weight lattice: alpha_i has coordinates <alpha_i, alpha_j^vee>.
        roots = c.transpose();
        coroots = IntMat::Identity(l, l);
    } else {
        roots = IntMat::Identity(l, l);
        coroots = c;
    }
    return BasedRootDatum(roots, coroots, {{type, l, 0, 0}}, flavor);
}

BasedRootDatum toral_datum(int rank)
{
    if (rank < 0)
        throw Error(Errc::InvalidType, "negative torus rank");
    return BasedRootDatum(IntMat::Zero(rank, 0), IntMat::Zero(rank, 0), {{'T', rank, 0, 0}},
                          Flavor::SimplyConnected);
}

BasedRootDatum product(const std::vector<BasedRootDatum>& factors)
{
    int n = 0, l = 0;
    for (const auto& f : factors) {
        n += f.rank();
        l += f.semisimple_rank();
    }
    IntMat roots = IntMat::Zero(n, l), coroots = IntMat::Zero(n, l);
    std::vector<Component> comps;
    int xo = 0, no = 0;
    Flavor flavor = factors.empty() ? Flavor::SimplyConnected : factors.front().flavor();
    for (const auto& f : factors) {
        roots.block(xo, no, f.rank(), f.semisimple_rank()) = f.simple_roots();
        coroots.block(xo, no, f.rank(), f.semisimple_rank()) = f.simple_coroots();
        for (auto c : f.components()) {
            c.node_offset += no;
            c.x_offset += xo;
            comps.push_back(c);
        }
        xo += f.rank();
        no += f.semisimple_rank();
    }
    return BasedRootDatum(roots, coroots, comps, flavor);
}

BasedRootDatum build_root_datum(const std::string& label, Flavor flavor)
{
    std::vector<BasedRootDatum> parts;
    std::stringstream ss(label);
    std::string item;
    while (std::getline(ss, item, 'x')) {
        if (item.size() < 2)
            throw Error(Errc::InvalidType, "cannot parse type label '" + label + "'");
        char t = item[0];
        int r = 0;
        try {
            r = std::stoi(item.substr(1));
        } catch (...) {
            throw Error(Errc::InvalidType, "cannot parse type label '" + label + "'");
        }
        parts.push_back(build_root_datum(t, r, flavor));
    }
    if (parts.empty())
        throw Error(Errc::InvalidType, "empty type label");
    return parts.size() == 1 ? parts.front() : product(parts);
}

WeylWord longest_element(const BasedRootDatum& datum)
{
    if (datum.is_toral())
        throw Error(Errc::NoWeylGroup, "toral datum has trivial Weyl group and no longest element");
    int l = datum.semisimple_rank();
    const IntMat& c = datum.cartan();
    // y holds <lambda, alpha_j^vee>, starting at rho and walking down to -rho.
    IntVec y = IntVec::Ones(l);
    WeylWord w;
    w.matrix = IntMat::Identity(datum.rank(), datum.rank());
    for (;;) {
        int i = -1;
        for (int k = 0; k < l; ++k)
            if (y(k) > 0) {
                i = k;
                break;
            }
        if (i < 0)
            break;
        std::int64_t yi = y(i);
        for (int j = 0; j < l; ++j)
            y(j) -= yi * c(i, j);
        w.word.push_back(i + 1);
        w.matrix = datum.reflection(i) * w.matrix;
    }
    return w;
}

IntMat opposition_involution(const BasedRootDatum& datum)
{
    if (datum.is_toral())
        return -IntMat::Identity(datum.rank(), datum.rank());
    return -longest_element(datum).matrix;
}

std::vector<int> special_nodes(char type, int l)
{
    check_rank(type, l);
    std::vector<int> out;
    switch (type) {
    case 'A':
        for (int i = 1; i <= l; ++i)
            out.push_back(i);
        break;
    case 'B': out = {1}; break;
    case 'C': out = {l}; break;
    case 'D': out = {1, l - 1, l}; break;
    case 'E':
        if (l == 6)
            out = {1, 6};
        else if (l == 7)
            out = {7};
        break;
    default:
        break;
    }
    return out;
}

std::vector<int> induced_diagram_map(const BasedRootDatum& datum, const IntMat& f)
{
    int n = datum.rank(), l = datum.semisimple_rank();
    if (f.rows() != n || f.cols() != n)
        throw Error(Errc::NotBasedAutomorphism, "lattice map has the wrong size");
    std::int64_t det = integer_determinant(f);
    if (det != 1 && det != -1)
        throw Error(Errc::NotBasedAutomorphism, "lattice map is not invertible over the integers");
    std::vector<int> perm(l, -1);
    std::vector<bool> hit(l, false);
    for (int i = 0; i < l; ++i) {
        IntVec img = f * datum.simple_roots().col(i);
        for (int j = 0; j < l; ++j)
            if (img == datum.simple_roots().col(j)) {
                perm[i] = j;
                break;
            }
        if (perm[i] < 0 || hit[perm[i]])
            throw Error(Errc::NotBasedAutomorphism,
                        "image of simple root " + std::to_string(i + 1) + " is not a simple root");
        hit[perm[i]] = true;
        IntVec back = f.transpose() * datum.simple_coroots().col(perm[i]);
        if (back != datum.simple_coroots().col(i))
            throw Error(Errc::NotBasedAutomorphism,
                        "coroot compatibility fails at simple root " + std::to_string(i + 1));
    }
    return perm;
}

IntMat character_conjugation(int rank, const std::vector<IntMat>& generators, const IntMat& c)
{
    if (c.rows() != rank || c.cols() != rank)
        throw Error(Errc::NotCMSplit, "conjugation matrix has the wrong size");
    if (c * c != IntMat::Identity(rank, rank))
        throw Error(Errc::NotCMSplit, "conjugation matrix is not an involution");
    for (size_t k = 0; k < generators.size(); ++k)
        if (generators[k] * c != c * generators[k])
            throw Error(Errc::NotCMSplit, "conjugation does not commute with Galois generator " + std::to_string(k));
    return c;
}

std::int64_t integer_determinant(const IntMat& m)
{
    // Bareiss fraction-free elimination.
    int n = static_cast<int>(m.rows());
    if (n == 0)
        return 1;
    std::vector<std::vector<__int128>> a(n, std::vector<__int128>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            a[i][j] = m(i, j);
    int sign = 1;
    __int128 prev = 1;
    for (int k = 0; k < n - 1; ++k) {
        if (a[k][k] == 0) {
            int p = k + 1;
            while (p < n && a[p][k] == 0)
                ++p;
            if (p == n)
                return 0;
            std::swap(a[p], a[k]);
            sign = -sign;
        }
        for (int i = k + 1; i < n; ++i)
            for (int j = k + 1; j < n; ++j)
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
        prev = a[k][k];
    }
    return static_cast<std::int64_t>(sign * a[n - 1][n - 1]);
}

}  // namespace sdk
