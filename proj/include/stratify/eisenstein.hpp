#pragma once

#include "stratify/invariants.hpp"

namespace stratify {

using IntVector = std::vector<long>;
using IntegerMatrix = std::vector<std::vector<Integer>>;

// Hermitian lattice over Z[omega]; the form is linear in the second slot:
// <x, y> = x^* gram y.
struct EisLattice {
    std::string name;
    EisMatrix gram;
    int rank() const { return gram.n; }
};

// E1..E4 and H with the Gram matrices of the standard Eisenstein models.
EisLattice eis_lattice(const std::string& name);
EisLattice eis_direct_sum(const std::vector<EisLattice>& parts);
EisInt hermitian(const EisLattice& L, const std::vector<EisInt>& x, const std::vector<EisInt>& y);

struct ZLattice {
    std::string name;
    IntegerMatrix gram;
    int rank() const { return static_cast<int>(gram.size()); }
};

// A2(-1), D4(-1), E6(-1), E8(-1) (negated Cartan matrices) and U.
ZLattice z_lattice(const std::string& name);
ZLattice z_direct_sum(const std::vector<ZLattice>& parts);
Integer z_determinant(const ZLattice& L);
bool is_even(const ZLattice& L);
Integer z_pair(const ZLattice& L, const IntVector& x, const IntVector& y);
Rational z_pair(const ZLattice& L, const RationalVector& x, const RationalVector& y);

enum class Definiteness { positive, negative, indefinite, degenerate };
Definiteness definiteness(const ZLattice& L);

// Integral form (x, y) = -(2/3) Re <x, y> on the basis e1, w e1, e2, w e2, ...
ZLattice z_form(const EisLattice& L);
std::vector<EisInt> to_eisenstein(const IntVector& v);
IntVector from_eisenstein(const std::vector<EisInt>& x);

// All vectors v of a definite lattice with |(v,v)| == norm, sorted.
std::vector<IntVector> vectors_of_norm(const ZLattice& L, long norm);
// Vectors with (v,v) = -2 (negative definite) or +2 (positive definite).
std::vector<IntVector> enumerate_roots(const ZLattice& L);

// Vectors r with <r,r> = 3, found as the -2 roots of the integral form.
std::vector<std::vector<EisInt>> eisenstein_roots(const EisLattice& L);
// x -> x - (1 - w) (<r,x>/<r,r>) r as a matrix acting on coordinate columns.
EisMatrix triflection(const EisLattice& L, const std::vector<EisInt>& r);
// Distinct triflections of all Eisenstein roots.
std::vector<EisMatrix> triflections(const EisLattice& L);
EisGroup weyl_group(const EisLattice& L, size_t cap = default_group_cap, const GroupCache& cache = {});
// O(n E1): coordinate permutations and sixth roots of unity on each coordinate.
EisGroup unit_monomial_group(int n);

struct DiscriminantGroup {
    std::vector<Integer> invariant_factors;  // nontrivial factors only
    std::vector<Rational> q_values;          // in [0, 2)
    std::vector<RationalVector> generators;  // lattice coordinates
    Integer order() const;
};

DiscriminantGroup discriminant_form(const ZLattice& L);
Rational mod2(const Rational& q);
Integer divisibility(const IntVector& v, const ZLattice& L);
Integer divisibility(const RationalVector& v, const ZLattice& L);  // v in the rational span, pairing integral

struct Overlattice {
    ZLattice lattice;
    std::vector<RationalVector> basis;  // rows, coordinates in the original lattice
    Integer index;
    DiscriminantGroup discriminant;
    // Coordinates of an original-lattice vector in the new basis.
    RationalVector coordinates_of(const RationalVector& v) const;
};

Overlattice glue_overlattice(const ZLattice& L, const std::vector<RationalVector>& glue);

// Factors of a toroidal boundary divisor: a group acting on E^k, repeated and
// symmetrised over identical copies.
struct BoundaryFactor {
    std::string label;
    EisGroup group;
    std::optional<EisMatrix> gram;
    int copies = 1;
};

struct DeclaredSymmetry {
    std::string name;
    std::string citation;
};

struct BoundarySpec {
    std::vector<BoundaryFactor> factors;
    std::vector<BettiTable> extra_factors;
    std::vector<DeclaredSymmetry> trivial_symmetries;
};

struct BoundaryResult {
    BettiTable table;
    std::vector<BettiTable> factor_tables;
    std::vector<std::string> notes;
};

BoundaryResult boundary_betti(const BoundarySpec& spec);

// The glued lattice of three E6(-1) copies and the norm-3, divisibility-3 vector
// w = (v1 - v2) + theta u in the glued lattice plus H.
struct SplittingVectorCheck {
    IntVector z;               // norm -12, divisibility 3 in E6(-1)
    Integer z_norm;
    Integer z_div;
    Overlattice glued;         // 3 E6(-1) with (z1+z2+z3)/3
    Integer z12_norm;          // (z1 - z2)^2
    Integer z12_div;           // in the glued lattice
    bool z_theta_divisible = false;
    std::vector<EisInt> w;     // Eisenstein coordinates in 3 E3 + H
    EisInt w_norm;             // <w, w>
    EisInt w_div;              // generator of the ideal <w, glued + H>
    bool ok = false;
};

SplittingVectorCheck check_splitting_vector();

}  // namespace stratify
