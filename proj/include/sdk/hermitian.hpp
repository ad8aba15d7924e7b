#pragma once

#include "sdk/numfield.hpp"
#include "sdk/quadext.hpp"
#include "sdk/quat.hpp"

#include <Eigen/Dense>

#include <optional>
#include <string>
#include <vector>

namespace sdk {

using FQuat = Quaternion<FieldElement>;
using FQuatAlgebra = QuaternionAlgebra<FieldElement>;

/// Diagonal hermitian space over D = K or D = D0 (x)_F K.
///
/// Gram entries are given in K; hermitian symmetry puts them in F, so only the
/// F part is kept and a warning is recorded when the sqrt(delta) part is nonzero.
class HermitianSpace {
public:
    HermitianSpace(SecondKindData algebra, const std::vector<KElement>& gram, std::string basis_label = "beta");
    HermitianSpace(SecondKindData algebra, const std::vector<FieldElement>& gram, std::string basis_label = "beta");

    const SecondKindData& algebra() const { return algebra_; }
    const NumberField& base() const { return algebra_.cm().base(); }
    int n() const { return static_cast<int>(gram_.size()); }
    int m() const { return algebra_.m(); }
    const std::vector<FieldElement>& gram() const { return gram_; }
    const std::string& basis_label() const { return label_; }
    const std::vector<std::string>& warnings() const { return warnings_; }

private:
    SecondKindData algebra_;
    std::vector<FieldElement> gram_;
    std::string label_;
    std::vector<std::string> warnings_;
};

/// Diagonal skew-hermitian space over a quaternion algebra D/F with alpha = int(r).
class SkewHermitianSpace {
public:
    SkewHermitianSpace(FQuatAlgebra algebra, std::vector<FQuat> gram, FQuat r);

    const FQuatAlgebra& algebra() const { return algebra_; }
    const NumberField& base() const { return algebra_.a().field(); }
    int n() const { return static_cast<int>(gram_.size()); }
    const std::vector<FQuat>& gram() const { return gram_; }
    const FQuat& r() const { return r_; }

private:
    FQuatAlgebra algebra_;
    std::vector<FQuat> gram_;
    FQuat r_;
};

struct Signature {
    int p = 0;
    int q = 0;
    bool compact = false;
    // True at quaternion-nonsplit places of an m = 2 space; (p, q) then counts
    // the complex model, which is (2 * #positive, 2 * #negative).
    bool nonsplit_marker = false;
};

Signature signature_at_place(const HermitianSpace& space, const RealEmbedding& v);

struct PlaceInfo {
    int index = 0;
    bool split = true;
    bool compact = false;
    std::optional<Signature> signature;
};

struct PlaceProfile {
    std::vector<PlaceInfo> places;

    std::vector<int> compact() const;
    std::vector<int> noncompact() const;
    std::vector<int> split() const;
    std::vector<int> nonsplit() const;
};

PlaceProfile place_profile(const HermitianSpace& space);
PlaceProfile place_profile(const SkewHermitianSpace& space);

struct BilinearForm {
    Eigen::MatrixXd matrix;   // 2n x 2n, index p * n + i
    bool definite = false;
    int sign = 0;             // +1 / -1 when definite
    bool diagonal_from_r = false;  // true when built from phi on F(r), i.e. diag(c, -b)
};

// The symmetric form with blocks eps * phi(q_i), eps = [[0, 1], [-1, 0]], for a real
// splitting phi of D at v. Throws WrongModel at nonsplit places.
BilinearForm associated_bilinear_form(const SkewHermitianSpace& space, const RealEmbedding& v);

struct StrongTest {
    bool ok = false;
    std::vector<std::string> reasons;
};

StrongTest is_strongly_hermitian(const HermitianSpace& space);
StrongTest is_strongly_skew_hermitian(const SkewHermitianSpace& space);

// Exact sign of x + y * sqrt(d) at v, for v(d) > 0 and the positive root.
int sign_with_root(const RealEmbedding& v, const FieldElement& x, const FieldElement& y, const FieldElement& d);

/// Result of diagonalizing a full (skew-)hermitian Gram matrix.
template <class T>
struct Diagonalization {
    std::vector<T> diagonal;
    Mat<T> basis;  // columns are the new basis vectors: P^bar-t H P is diagonal
};

// Gram-Schmidt on h(x, y) = bar(x)^t H y. When every remaining diagonal entry
// vanishes, tries v_k + v_j * c for the given candidates c before giving up.
template <class T, class Bar>
Diagonalization<T> diagonalize_form(Mat<T> h, Bar bar, const std::vector<T>& candidates)
{
    int n = h.rows();
    T proto = h(0, 0);
    Mat<T> p = Mat<T>::identity(n, proto);
    auto form = [&](int r, int c) { return h(r, c); };
    auto transform_col = [&](int j, int k, const T& c) {
        // v_j <- v_j + v_k * c
        for (int i = 0; i < n; ++i)
            p(i, j) = p(i, j) + p(i, k) * c;
        for (int i = 0; i < n; ++i)
            h(i, j) = h(i, j) + h(i, k) * c;
        for (int i = 0; i < n; ++i)
            h(j, i) = h(j, i) + bar(c) * h(k, i);
    };
    auto swap = [&](int j, int k) {
        for (int i = 0; i < n; ++i) {
            std::swap(p(i, j), p(i, k));
            std::swap(h(i, j), h(i, k));
        }
        for (int i = 0; i < n; ++i)
            std::swap(h(j, i), h(k, i));
    };
    Diagonalization<T> out;
    for (int k = 0; k < n; ++k) {
        if (is_zero(form(k, k))) {
            int found = -1;
            for (int j = k + 1; j < n && found < 0; ++j)
                if (!is_zero(form(j, j)))
                    found = j;
            if (found >= 0) {
                swap(k, found);
            } else {
                bool fixed = false;
                for (int j = k + 1; j < n && !fixed; ++j) {
                    if (is_zero(form(k, j)))
                        continue;
                    for (const T& c : candidates) {
                        T val = form(k, k) + form(k, j) * c + bar(c) * form(j, k) + bar(c) * form(j, j) * c;
                        if (!is_zero(val)) {
                            transform_col(k, j, c);
                            fixed = true;
                            break;
                        }
                    }
                }
                if (!fixed)
                    throw Error(Errc::Singular, "form is degenerate: no anisotropic pivot");
            }
        }
        T pinv = inverse(form(k, k));
        for (int j = k + 1; j < n; ++j) {
            if (is_zero(form(k, j)))
                continue;
            transform_col(j, k, -(pinv * form(k, j)));
        }
    }
    for (int k = 0; k < n; ++k)
        out.diagonal.push_back(h(k, k));
    out.basis = p;
    return out;
}

}  // namespace sdk
