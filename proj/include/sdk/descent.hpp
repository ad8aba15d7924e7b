#pragma once

#include "sdk/involution.hpp"

#include <optional>
#include <string>
#include <vector>

namespace sdk {

/// One simple factor of G^der, as read from a datum description.
///
/// The raw algebra data is kept next to the constructed space so that a factor
/// can be classified (and rejected with a reason) even when no space exists.
struct FactorSpec {
    enum class Kind { TypeA, TypeD, Other };
    Kind kind = Kind::TypeA;
    std::string other_type;  // Dynkin letter for Kind::Other
    int other_rank = 0;

    // Type A raw data.
    std::optional<NumberField> base;
    std::optional<FieldElement> delta;
    std::optional<FQuatAlgebra> d0;
    int degree = 1;  // deg_K D
    std::vector<FieldElement> gram;

    // Type D.
    std::optional<SkewHermitianSpace> skew;

    std::vector<std::string> warnings;
};

struct CenterSpec {
    int rank = 0;
    std::vector<IntMat> galois;  // generators of the Galois action on X*(Z0)
    IntMat c;                    // complex conjugation
};

struct DatumSpec {
    std::string name;
    std::vector<FactorSpec> factors;
    std::optional<CenterSpec> center;
    std::vector<int> kernel_generators;  // exponents k of exp(2 pi i k / N); empty means {1}
};

struct FactorClass {
    bool admissible = false;
    std::string reason;  // empty when admissible
    std::string label;   // e.g. "A2", "D5", "C3"
};

// Throws ParseError for malformed algebra data.
FactorClass classify_factor(const FactorSpec& f);
bool center_is_cm_split(const DatumSpec& spec, std::string* why = nullptr);
bool is_strongly_ADH(const DatumSpec& spec);

HermitianSpace hermitian_space_of(const FactorSpec& f);
InvolutionBundle bundle_of(const FactorSpec& f);

/// theta on the complex points of one factor's model at one non-compact place.
struct GroupInvolution {
    int factor = 0;
    int place = 0;
    std::string model;  // "GU", "GU(L)", "GO*"
    CMat form;          // X^* form X = nu(X) form
    int nu_exponent = 1;  // theta(X) = nu^e * theta'(X) on the similitude group
    std::function<CMat(const CMat&)> theta_prime;  // the involution on the derived group
    HodgeMap x;         // special point through the designated torus

    double nu(const CMat& g) const;
    CMat operator()(const CMat& g) const;
};

struct KernelCheck {
    int order = 0;                 // N, the kernel is mu_N
    std::vector<int> generators;   // as given
    std::vector<int> points;       // closure of the generators
    bool numeric_ok = false;       // theta'(zeta^-1 I) c(zeta) = I to 1e-12
    bool exact_ok = false;         // the same identity over Q(zeta_N)
    bool center_inverted = false;  // theta'(zeta I) = zeta^-1 I, exactly and numerically
};

struct Extension {
    std::vector<GroupInvolution> pieces;
    std::vector<KernelCheck> kernels;
    bool extension_ok = false;
    std::vector<std::string> diagnostics;
};

// Throws NotAdmissible if a factor is not admissible and NotExtendable if a kernel check fails.
Extension extend_involution(const DatumSpec& spec, const std::vector<InvolutionBundle>& bundles);

// Both exact (cyclotomic) and numeric kernel-pair checks for the type A model of size N.
KernelCheck kernel_pair_check(const InvolutionBundle& b, const std::vector<int>& generators);

// Exact theta'(zeta I) = zeta^-1 I and theta'(zeta^-1 I) iota(zeta) = I in Q(zeta_n), gram diagonal.
bool cyclotomic_center_identities(int n, const std::vector<Rational>& gram);

/// Sampling grid: |z| in {1, 2}, 16 angles each.
std::vector<Complex> descent_grid();

bool conjugate_point_check(const GroupInvolution& theta, double tol = 1e-9);
bool cocycle_check(const GroupInvolution& theta, double tol = 1e-9);

// The same involution with the similitude exponent flipped; fails the cocycle check.
GroupInvolution corrupted(const GroupInvolution& theta);

struct HeckeResult {
    bool descends_if_equal = false;  // theta(q) = q, a sufficient condition only
    std::string theta_q;             // printable form of theta(q)
};

HeckeResult hecke_descent_condition(const InvolutionBundle& b, const Mat<KElement>& q);
HeckeResult hecke_descent_condition(const InvolutionBundle& b, const Mat<QK>& q);
HeckeResult hecke_descent_condition(const InvolutionBundle& b, const Mat<FQuat>& q);

struct HeckeEntry {
    std::string q;  // the input matrix as compact JSON
    std::string theta_q;
    bool descends_if_equal = false;
};

struct DescentReport {
    std::vector<FactorClass> factors;
    bool center_ok = true;
    bool strongly_ADH = false;
    bool extension_ok = false;
    bool conjugate_point_ok = false;
    bool cocycle_ok = false;
    bool negative_control_rejected = false;
    std::vector<BundleReport> bundles;
    std::vector<HeckeEntry> hecke;
    std::vector<std::string> diagnostics;
    std::uint64_t seed = 0;
    bool all_ok() const
    {
        return strongly_ADH && extension_ok && conjugate_point_ok && cocycle_ok && negative_control_rejected;
    }
};

DescentReport run_descent(const DatumSpec& spec, std::uint64_t seed = 20240611, int samples = 50);

}  // namespace sdk
