#pragma once

#include "sdk/errors.hpp"

#include <functional>
#include <utility>
#include <vector>

namespace sdk {

namespace detail {
template <class T>
T scalar_inverse(const T& x)
{
    return inverse(x);
}
}  // namespace detail

/// Dense row-major matrix over an exact scalar ring T.
///
/// T supplies zero_of, one_of, is_zero and inverse through ADL. Products keep
/// the order of factors, so T may be noncommutative (quaternions).
template <class T>
class Mat {
public:
    Mat() = default;
    Mat(int rows, int cols, const T& fill) : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

    static Mat zeros(int rows, int cols, const T& proto) { return Mat(rows, cols, zero_of(proto)); }
    static Mat identity(int n, const T& proto)
    {
        Mat m = zeros(n, n, proto);
        for (int i = 0; i < n; ++i)
            m(i, i) = one_of(proto);
        return m;
    }
    static Mat diagonal(const std::vector<T>& d)
    {
        Mat m = zeros(static_cast<int>(d.size()), static_cast<int>(d.size()), d.at(0));
        for (size_t i = 0; i < d.size(); ++i)
            m(i, i) = d[i];
        return m;
    }

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    T& operator()(int i, int j) { return data_[i * cols_ + j]; }
    const T& operator()(int i, int j) const { return data_[i * cols_ + j]; }

    template <class F>
    auto map(F&& f) const
    {
        using U = decltype(f(data_[0]));
        Mat<U> out(rows_, cols_, f(data_[0]));
        for (int i = 0; i < rows_; ++i)
            for (int j = 0; j < cols_; ++j)
                out(i, j) = f((*this)(i, j));
        return out;
    }

    Mat transpose() const
    {
        Mat t(cols_, rows_, data_.at(0));
        for (int i = 0; i < rows_; ++i)
            for (int j = 0; j < cols_; ++j)
                t(j, i) = (*this)(i, j);
        return t;
    }

    Mat block(int r0, int c0, int nr, int nc) const
    {
        Mat b(nr, nc, data_.at(0));
        for (int i = 0; i < nr; ++i)
            for (int j = 0; j < nc; ++j)
                b(i, j) = (*this)(r0 + i, c0 + j);
        return b;
    }

    void set_block(int r0, int c0, const Mat& b)
    {
        for (int i = 0; i < b.rows(); ++i)
            for (int j = 0; j < b.cols(); ++j)
                (*this)(r0 + i, c0 + j) = b(i, j);
    }

    bool is_diagonal() const
    {
        for (int i = 0; i < rows_; ++i)
            for (int j = 0; j < cols_; ++j)
                if (i != j && !is_zero((*this)(i, j)))
                    return false;
        return true;
    }

    friend Mat operator+(const Mat& x, const Mat& y)
    {
        Mat z = x;
        for (size_t k = 0; k < z.data_.size(); ++k)
            z.data_[k] = x.data_[k] + y.data_[k];
        return z;
    }
    friend Mat operator-(const Mat& x, const Mat& y)
    {
        Mat z = x;
        for (size_t k = 0; k < z.data_.size(); ++k)
            z.data_[k] = x.data_[k] - y.data_[k];
        return z;
    }
    Mat operator-() const
    {
        Mat z = *this;
        for (auto& v : z.data_)
            v = -v;
        return z;
    }
    friend Mat operator*(const Mat& x, const Mat& y)
    {
        if (x.cols_ != y.rows_)
            throw Error(Errc::InternalError, "matrix shape mismatch");
        Mat z(x.rows_, y.cols_, zero_of(x.data_.at(0)));
        for (int i = 0; i < x.rows_; ++i)
            for (int k = 0; k < x.cols_; ++k) {
                const T& xik = x(i, k);
                if (is_zero(xik))
                    continue;
                for (int j = 0; j < y.cols_; ++j)
                    z(i, j) = z(i, j) + xik * y(k, j);
            }
        return z;
    }
    friend Mat operator*(const T& c, const Mat& x)
    {
        Mat z = x;
        for (auto& v : z.data_)
            v = c * v;
        return z;
    }
    friend bool operator==(const Mat& x, const Mat& y)
    {
        return x.rows_ == y.rows_ && x.cols_ == y.cols_ && x.data_ == y.data_;
    }
    friend bool operator!=(const Mat& x, const Mat& y) { return !(x == y); }

    // Gauss-Jordan with left row operations only; valid over division rings.
    Mat inverse() const
    {
        if (rows_ != cols_)
            throw Error(Errc::Singular, "non-square matrix has no inverse");
        int n = rows_;
        Mat a = *this;
        Mat inv = identity(n, data_.at(0));
        for (int col = 0; col < n; ++col) {
            int piv = -1;
            T s = a(col, col);
            for (int r = col; r < n && piv < 0; ++r) {
                if (is_zero(a(r, col)))
                    continue;
                try {
                    s = detail::scalar_inverse(a(r, col));
                    piv = r;
                } catch (const Error& e) {
                    // Nonzero non-units occur in split algebras; keep looking.
                    if (e.code() != Errc::ZeroDivisor)
                        throw;
                }
            }
            if (piv < 0)
                throw Error(Errc::Singular, "matrix is singular");
            if (piv != col)
                for (int j = 0; j < n; ++j) {
                    std::swap(a(piv, j), a(col, j));
                    std::swap(inv(piv, j), inv(col, j));
                }
            for (int j = 0; j < n; ++j) {
                a(col, j) = s * a(col, j);
                inv(col, j) = s * inv(col, j);
            }
            for (int r = 0; r < n; ++r) {
                if (r == col || is_zero(a(r, col)))
                    continue;
                T f = a(r, col);
                for (int j = 0; j < n; ++j) {
                    a(r, j) = a(r, j) - f * a(col, j);
                    inv(r, j) = inv(r, j) - f * inv(col, j);
                }
            }
        }
        return inv;
    }

private:
    int rows_ = 0;
    int cols_ = 0;
    std::vector<T> data_;
};

}  // namespace sdk
