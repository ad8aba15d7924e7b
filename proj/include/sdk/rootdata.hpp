#pragma once

#include <Eigen/Core>

#include <cstdint>
#include <string>
#include <vector>

namespace sdk {

using IntMat = Eigen::Matrix<std::int64_t, Eigen::Dynamic, Eigen::Dynamic>;
using IntVec = Eigen::Matrix<std::int64_t, Eigen::Dynamic, 1>;

enum class Flavor { SimplyConnected, Adjoint };

std::string flavor_name(Flavor f);
Flavor parse_flavor(const std::string& s);

struct Component {
    char type;       // 'A'..'G', or 'T' for a toral block
    int rank;        // number of simple roots, or torus dimension for 'T'
    int node_offset; // index of its first simple root in the datum
    int x_offset;    // first coordinate of its block in X
};

/// Based root datum with Bourbaki-numbered simple roots.
///
/// Vectors in X are columns. Cartan entries are C(i,j) = <alpha_i, alpha_j^vee>.
class BasedRootDatum {
public:
    // Generic constructor: columns of simple_roots live in X, columns of
    // simple_coroots in the dual lattice. Roots are generated by reflection.
    BasedRootDatum(IntMat simple_roots, IntMat simple_coroots, std::vector<Component> components,
                   Flavor flavor);

    int rank() const { return static_cast<int>(simple_roots_.rows()); }
    int semisimple_rank() const { return static_cast<int>(simple_roots_.cols()); }
    bool is_toral() const { return semisimple_rank() == 0; }

    const IntMat& simple_roots() const { return simple_roots_; }
    const IntMat& simple_coroots() const { return simple_coroots_; }
    const IntMat& cartan() const { return cartan_; }

    // All roots with matching coroots; positive[k] says whether roots[k] is positive.
    const std::vector<IntVec>& roots() const { return roots_; }
    const std::vector<IntVec>& coroots() const { return coroots_; }
    const std::vector<IntVec>& root_coefficients() const { return coefficients_; }
    const std::vector<bool>& positive() const { return positive_; }
    int positive_root_count() const { return static_cast<int>(roots_.size()) / 2; }

    const std::vector<Component>& components() const { return components_; }
    Flavor flavor() const { return flavor_; }
    std::string type_label() const;

    // s_i on X for a 0-based simple root index.
    IntMat reflection(int i) const;
    // Index of v among the roots, or -1.
    int find_root(const IntVec& v) const;

private:
    IntMat simple_roots_;
    IntMat simple_coroots_;
    IntMat cartan_;
    std::vector<IntVec> roots_;
    std::vector<IntVec> coroots_;
    std::vector<IntVec> coefficients_;
    std::vector<bool> positive_;
    std::vector<Component> components_;
    Flavor flavor_;
};

// Cartan matrix of a connected Dynkin type in Bourbaki numbering.
IntMat cartan_matrix(char type, int rank);

// Throws InvalidType for illegal ranks such as D3 or E5.
BasedRootDatum build_root_datum(char type, int rank, Flavor flavor);
BasedRootDatum toral_datum(int rank);
BasedRootDatum product(const std::vector<BasedRootDatum>& factors);
// Parses labels such as "A2", "D5", "A2xD5xT1".
BasedRootDatum build_root_datum(const std::string& label, Flavor flavor);

struct WeylWord {
    std::vector<int> word;  // 1-based simple reflection indices, applied right to left
    IntMat matrix;
};

// Greedy reduced word for w0. Throws NoWeylGroup on toral data.
WeylWord longest_element(const BasedRootDatum& datum);

// -w0, or -1 for toral data.
IntMat opposition_involution(const BasedRootDatum& datum);

// 1-based node numbers; empty for E8, F4, G2.
std::vector<int> special_nodes(char type, int rank);

// perm[i] = j when f(alpha_i) = alpha_j (0-based). Throws NotBasedAutomorphism.
std::vector<int> induced_diagram_map(const BasedRootDatum& datum, const IntMat& f);

// Returns c after checking c^2 = 1 and that c commutes with every generator.
IntMat character_conjugation(int rank, const std::vector<IntMat>& generators, const IntMat& c);

std::int64_t integer_determinant(const IntMat& m);

}  // namespace sdk
