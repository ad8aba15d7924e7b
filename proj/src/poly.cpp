#include "sdk/poly.hpp"

#include "sdk/errors.hpp"

#include <algorithm>
#include <sstream>

namespace sdk {

Rational parse_rational(const std::string& text)
{
    std::string s;
    for (char ch : text)
        if (ch != ' ')
            s.push_back(ch);
    if (s.empty())
        throw Error(Errc::ParseError, "empty rational");
    auto slash = s.find('/');
    auto digits_ok = [](const std::string& part) {
        if (part.empty())
            return false;
        size_t i = (part[0] == '-' || part[0] == '+') ? 1 : 0;
        if (i == part.size())
            return false;
        for (; i < part.size(); ++i)
            if (part[i] < '0' || part[i] > '9')
                return false;
        return true;
    };
    std::string num = s.substr(0, slash);
    std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
    if (!num.empty() && num[0] == '+')
        num = num.substr(1);
    if (!digits_ok(num) || !digits_ok(den) || den[0] == '-' || den[0] == '+')
        throw Error(Errc::ParseError, "malformed rational '" + text + "'");
    Integer n(num), d(den);
    if (d == 0)
        throw Error(Errc::ParseError, "zero denominator in '" + text + "'");
    Rational q(n, d);
    q.canonicalize();
    return q;
}

std::string format_rational(const Rational& q)
{
    return q.get_str();
}

Interval operator+(const Interval& x, const Interval& y)
{
    return {x.lo + y.lo, x.hi + y.hi};
}

Interval operator*(const Interval& x, const Interval& y)
{
    Rational c[4] = {x.lo * y.lo, x.lo * y.hi, x.hi * y.lo, x.hi * y.hi};
    return {*std::min_element(c, c + 4), *std::max_element(c, c + 4)};
}

QPoly::QPoly(std::vector<Rational> coeffs) : coeffs_(std::move(coeffs))
{
    trim();
}

QPoly QPoly::constant(const Rational& c)
{
    return QPoly(std::vector<Rational>{c});
}

QPoly QPoly::monomial(const Rational& c, int degree)
{
    std::vector<Rational> v(degree + 1);
    v[degree] = c;
    return QPoly(std::move(v));
}

void QPoly::trim()
{
    while (!coeffs_.empty() && coeffs_.back() == 0)
        coeffs_.pop_back();
}

Rational QPoly::coeff(int i) const
{
    if (i < 0 || i > degree())
        return 0;
    return coeffs_[i];
}

Rational QPoly::eval(const Rational& x) const
{
    Rational acc = 0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it)
        acc = acc * x + *it;
    return acc;
}

Interval QPoly::eval(const Interval& x) const
{
    Interval acc{0, 0};
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it)
        acc = acc * x + Interval{*it, *it};
    return acc;
}

double QPoly::eval(double x) const
{
    double acc = 0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it)
        acc = acc * x + it->get_d();
    return acc;
}

QPoly QPoly::derivative() const
{
    if (coeffs_.size() <= 1)
        return {};
    std::vector<Rational> d(coeffs_.size() - 1);
    for (size_t i = 1; i < coeffs_.size(); ++i)
        d[i - 1] = coeffs_[i] * static_cast<long>(i);
    return QPoly(std::move(d));
}

QPoly QPoly::monic() const
{
    if (is_zero())
        return {};
    Rational lc = leading();
    std::vector<Rational> v = coeffs_;
    for (auto& c : v)
        c /= lc;
    return QPoly(std::move(v));
}

QPoly operator+(const QPoly& p, const QPoly& q)
{
    std::vector<Rational> v(std::max(p.coeffs_.size(), q.coeffs_.size()));
    for (size_t i = 0; i < v.size(); ++i)
        v[i] = p.coeff(static_cast<int>(i)) + q.coeff(static_cast<int>(i));
    return QPoly(std::move(v));
}

QPoly operator-(const QPoly& p, const QPoly& q)
{
    std::vector<Rational> v(std::max(p.coeffs_.size(), q.coeffs_.size()));
    for (size_t i = 0; i < v.size(); ++i)
        v[i] = p.coeff(static_cast<int>(i)) - q.coeff(static_cast<int>(i));
    return QPoly(std::move(v));
}

QPoly operator*(const QPoly& p, const QPoly& q)
{
    if (p.is_zero() || q.is_zero())
        return {};
    std::vector<Rational> v(p.coeffs_.size() + q.coeffs_.size() - 1);
    for (size_t i = 0; i < p.coeffs_.size(); ++i)
        for (size_t j = 0; j < q.coeffs_.size(); ++j)
            v[i + j] += p.coeffs_[i] * q.coeffs_[j];
    return QPoly(std::move(v));
}

QPoly operator*(const Rational& c, const QPoly& p)
{
    std::vector<Rational> v = p.coeffs_;
    for (auto& x : v)
        x *= c;
    return QPoly(std::move(v));
}

void QPoly::divmod(const QPoly& num, const QPoly& den, QPoly& quot, QPoly& rem)
{
    if (den.is_zero())
        throw Error(Errc::DivisionByZero, "polynomial division by zero");
    std::vector<Rational> r = num.coeffs_;
    int dd = den.degree();
    std::vector<Rational> q(std::max(0, num.degree() - dd + 1));
    for (int k = num.degree(); k >= dd; --k) {
        if (r[k] == 0)
            continue;
        Rational f = r[k] / den.leading();
        q[k - dd] = f;
        for (int j = 0; j <= dd; ++j)
            r[k - dd + j] -= f * den.coeffs_[j];
    }
    quot = QPoly(std::move(q));
    rem = QPoly(std::move(r));
}

QPoly operator%(const QPoly& p, const QPoly& q)
{
    QPoly quot, rem;
    QPoly::divmod(p, q, quot, rem);
    return rem;
}

QPoly QPoly::gcd(const QPoly& p, const QPoly& q)
{
    QPoly a = p, b = q;
    while (!b.is_zero()) {
        QPoly r = a % b;
        a = std::move(b);
        b = std::move(r);
    }
    return a.monic();
}

QPoly QPoly::ext_gcd(const QPoly& p, const QPoly& q, QPoly& s, QPoly& t)
{
    QPoly r0 = p, r1 = q;
    QPoly s0 = constant(1), s1;
    QPoly t0, t1 = constant(1);
    while (!r1.is_zero()) {
        QPoly quot, rem;
        divmod(r0, r1, quot, rem);
        r0 = std::move(r1);
        r1 = std::move(rem);
        QPoly s2 = s0 - quot * s1;
        QPoly t2 = t0 - quot * t1;
        s0 = std::move(s1);
        s1 = std::move(s2);
        t0 = std::move(t1);
        t1 = std::move(t2);
    }
    if (r0.is_zero()) {
        s = {};
        t = {};
        return {};
    }
    Rational lc = r0.leading();
    s = Rational(1) / lc * s0;
    t = Rational(1) / lc * t0;
    return r0.monic();
}

std::string QPoly::to_string() const
{
    if (is_zero())
        return "0";
    std::ostringstream out;
    bool first = true;
    for (int i = degree(); i >= 0; --i) {
        const Rational& c = coeffs_[i];
        if (c == 0)
            continue;
        if (!first)
            out << (c < 0 ? " - " : " + ");
        else if (c < 0)
            out << "-";
        Rational a = abs(c);
        if (a != 1 || i == 0)
            out << a.get_str();
        if (i > 0)
            out << "x" << (i > 1 ? "^" + std::to_string(i) : "");
        first = false;
    }
    return out.str();
}

SturmChain::SturmChain(const QPoly& p)
{
    chain_.push_back(p);
    chain_.push_back(p.derivative());
    while (!chain_.back().is_zero()) {
        QPoly r = chain_[chain_.size() - 2] % chain_.back();
        chain_.push_back(Rational(-1) * r);
    }
    chain_.pop_back();
}

int SturmChain::variations(const Rational& x) const
{
    int count = 0;
    int last = 0;
    for (const auto& q : chain_) {
        int s = sgn(q.eval(x));
        if (s == 0)
            continue;
        if (last != 0 && s != last)
            ++count;
        last = s;
    }
    return count;
}

int SturmChain::count_roots(const Rational& a, const Rational& b) const
{
    return variations(a) - variations(b);
}

Rational root_bound(const QPoly& p)
{
    Rational m = 0;
    for (int i = 0; i < p.degree(); ++i)
        m = std::max(m, Rational(abs(p.coeff(i) / p.leading())));
    return m + 1;
}

}  // namespace sdk
