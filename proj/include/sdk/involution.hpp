#pragma once

#include "sdk/hermitian.hpp"
#include "sdk/rootdata.hpp"

#include <Eigen/Dense>

#include <complex>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace sdk {

using CMat = Eigen::MatrixXcd;
using Complex = std::complex<double>;
using QK = Quaternion<KElement>;     // element of D = D0 (x)_F K
using LK = QuadElem<KElement>;       // element of L = K(lambda)
using LF = QuadElem<FieldElement>;   // element of L = F(r)

template <class T>
Mat<T> cayley_transform(const Mat<T>& a)
{
    T proto = a(0, 0);
    Mat<T> id = Mat<T>::identity(a.rows(), proto);
    return (id - a) * (id + a).inverse();
}

/// Characters of the designated torus, optionally modulo the all-ones vector.
struct CharacterClass {
    IntVec vector;
    bool mod_all_ones = false;
    friend bool operator==(const CharacterClass& x, const CharacterClass& y);
};

/// theta built from a strongly (skew-)hermitian space, with its torus and models.
class InvolutionBundle {
public:
    enum class Kind { TypeA, TypeD };

    static InvolutionBundle type_a(const HermitianSpace& space);
    static InvolutionBundle type_d(const SkewHermitianSpace& space);

    Kind kind() const { return kind_; }
    const HermitianSpace& hermitian() const { return *hspace_; }
    const SkewHermitianSpace& skew() const { return *sspace_; }
    const PlaceProfile& profile() const { return profile_; }
    int n() const;
    int m() const;                    // 1 or 2 for type A, 2 for type D (quaternionic)
    int model_size() const;           // nm for type A, 2n for type D
    int character_rank() const;       // nm for type A, n for type D
    bool characters_mod_all_ones() const { return kind_ == Kind::TypeA; }
    std::string torus_description() const;
    std::string label() const;        // e.g. "A2", "D5"

    // Type A, m = 1: matrices over K.
    Mat<KElement> theta(const Mat<KElement>& x) const;
    Mat<KElement> semilinear(const Mat<KElement>& x) const;
    // Type A, m = 2: matrices over D = D0 (x) K.
    Mat<QK> theta(const Mat<QK>& x) const;
    Mat<QK> semilinear(const Mat<QK>& x) const;
    Mat<LK> phi(const Mat<QK>& x) const;
    Mat<LK> theta_split(const Mat<LK>& x) const;
    // The closed display without the inverse: Qt^-1 [[tD, -tB], [-tC, tA]] Qt.
    Mat<LK> theta_split_display(const Mat<LK>& x) const;
    // Type D: matrices over D, and the phi-model over L = F(r).
    Mat<FQuat> theta(const Mat<FQuat>& x) const;
    Mat<LF> phi(const Mat<FQuat>& x) const;
    Mat<LF> theta_split(const Mat<LF>& x) const;
    Mat<LF> theta_block(const Mat<LF>& x) const;
    Mat<LF> q_tilde() const;          // [[0, diag b], [diag c, 0]]
    Mat<LF> q_tilde_prime() const;    // diag(c, -b)
    Mat<LF> transported_theta() const;  // [[0, 2 r J], [(r/2) J, 0]]

    const QuaternionAlgebra<KElement>& algebra_k() const { return *dk_; }
    const FQuat& s() const { return *s_; }

private:
    Kind kind_ = Kind::TypeA;
    std::optional<HermitianSpace> hspace_;
    std::optional<SkewHermitianSpace> sspace_;
    std::optional<QuaternionAlgebra<KElement>> dk_;
    std::optional<SplittingMap<KElement>> phi_a_;
    std::optional<SplittingMap<FieldElement>> phi_d_;
    std::optional<FQuat> s_;
    PlaceProfile profile_;
};

// Throws NotAdmissible or OutOfScope.
InvolutionBundle build_theta_A(const HermitianSpace& space);
InvolutionBundle build_theta_D(const SkewHermitianSpace& space);

/// Exact pullbacks to the character lattice: column k is the image of e_k.
IntMat theta_on_characters(const InvolutionBundle& b);

struct SymbolicTransportReport {
    bool form_ok = false;       // t(delta) J_2n delta = Q~'
    bool conjugation_ok = false;  // delta gamma = M delta
};
// Symbolic in e_i, f_i with e_i^2 = c_i and f_i^2 = b_i.
SymbolicTransportReport check_transport_symbolic(const InvolutionBundle& b);

struct InducedMap {
    IntMat theta_star;    // theta on characters
    IntMat weyl;          // representative w with w * theta_star preserving the positive roots
    std::vector<int> word;  // 1-based simple reflections, shortest first
    IntMat psi0;          // w * theta_star
    IntMat expected;      // opposition involution in the same coordinates
    std::vector<int> diagram;  // induced permutation of simple roots (0-based)
    bool equals_star = false;
    bool theta_reverses_borel = false;  // theta_star sends every positive root to a negative one
};

// Throws OutOfScope for rank-deficient inputs and InternalError if the search fails.
InducedMap induced_based_map(const InvolutionBundle& b);

/// Per-place complex data.
struct PlaceModel {
    int place = 0;
    bool compact = false;
    CMat form;          // type A: hermitian gamma^-1 Q'; type D: T of the psi-model
    int p = 0, q = 0;   // signature of the hermitian form (type A)
    std::string group;
};

PlaceModel model_at_place(const InvolutionBundle& b, const RealEmbedding& v);
CMat theta_at_place(const InvolutionBundle& b, const RealEmbedding& v, const CMat& x);

struct TypeDPlaceData {
    double u = 0, t = 0;
    Complex root;  // tau(r)
    std::vector<Complex> b, c, e, f, y;
    CMat delta, m_transport, q_tilde_prime;
};
TypeDPlaceData type_d_place_data(const InvolutionBundle& b, const RealEmbedding& v);

struct ConjugationAction {
    std::function<CMat(const CMat&)> formula;    // the explicit display
    std::function<CMat(const CMat&)> intrinsic;  // coefficientwise conjugation through the algebra
    std::function<CMat(const CMat&)> on_so;      // type D: on the SO_2n(J) model
    double tci_residual = 0;
    bool tci_ok = true;
};

// Throws NoModel at compact places.
ConjugationAction conjugation_action_at_place(const InvolutionBundle& b, const RealEmbedding& v);

struct CharacterCheck {
    bool ok = false;
    IntMat theta_star;
    IntMat c_star;
};
CharacterCheck theta_vs_character_conjugation(const InvolutionBundle& b, const RealEmbedding& v);

/// A morphism S -> G'_v given on complex points.
struct HodgeMap {
    enum class Model { GU, GOStar };
    Model model = Model::GU;
    int place = 0;
    CMat form;                 // X^* form X = nu form
    std::vector<int> pattern;  // GU: +1 where the entry is z, -1 where it is conj(z)
    std::function<CMat(Complex)> at;

    HodgeMap conjugate() const;  // z -> y(conj z)
};

// Type A model GU(H) with diagonal y given by a sign pattern.
HodgeMap diagonal_hodge_map(const CMat& form, const std::vector<int>& pattern, int place = 0);

// Throws NoHodgeMap at compact places.
HodgeMap build_y(const InvolutionBundle& b, const RealEmbedding& v);

struct DeligneReport {
    bool in_group = false;
    bool weight_central = false;
    bool hodge_types_ok = false;
    bool cartan_ok = false;
    int lie_dimension = 0;
    double hodge_residual = 0;
    double cartan_max_eigenvalue = 0;
    bool all() const { return in_group && weight_central && hodge_types_ok && cartan_ok; }
};

// Real Lie algebra {X : X^* F + F X = 0, tr X = 0}, optionally with quaternionic block shape.
std::vector<CMat> real_lie_algebra(const CMat& form, bool quaternionic_blocks);
DeligneReport deligne_check(const HodgeMap& y);

// 1-based node alpha_p of A_{N-1}, p = number of z entries. Throws Unsupported for GO* models.
int special_node_of_y(const HodgeMap& y);

struct PlaceReport {
    int place = 0;
    bool compact = false;
    bool checked = false;
    bool char_conj = false;
    bool c_routes_agree = false;
    bool borel_ok = false;
    bool in_model = false;      // sampled group elements land in the model group
    double tci_residual = 0;
    bool tci_ok = true;
    DeligneReport deligne;
    int special_node = 0;
    int p = 0, q = 0;
};

struct BundleReport {
    std::string kind;
    std::string label;
    bool theta_squared = false;          // exact and numeric
    bool theta_squared_exact = false;
    bool theta_squared_numeric = false;
    bool torus_preserved = false;
    bool dual_route = false;             // closed formula vs semilinear I g I, and split-model agreement
    bool center_inverted = false;
    bool transport_ok = true;            // type D only
    bool equals_star = false;
    InducedMap induced;
    std::vector<PlaceReport> places;
    std::uint64_t seed = 0;
    bool all_ok() const;
};

BundleReport verify_bundle(const InvolutionBundle& b, std::uint64_t seed = 20240611, int samples = 50);

// Exponent k with x = 2^k; throws InternalError otherwise.
int exact_log2(const Rational& x);

// Shortest word w (BFS over simple reflections) with w * p mapping positive roots to positive roots.
bool weyl_restore(const IntMat& p, const std::vector<IntVec>& positive_roots, const std::vector<IntMat>& reflections,
                  IntMat& w, std::vector<int>& word);

}  // namespace sdk
