#pragma once

#include "stratify/strata.hpp"

#include <map>
#include <optional>

namespace stratify {

// Sparse homogeneous-or-not polynomial in x0..x_{vars-1} with rational coefficients.
class MultiPoly {
public:
    explicit MultiPoly(int vars = 0) : vars_(vars) {}

    // Parses e.g. "x0*x1*x2 + x3^3 - 1/2*x4^3" or "2 x0^2 x1".
    static MultiPoly parse(const std::string& text, int vars);
    static MultiPoly monomial(const Exponent& e, const Rational& c = 1);

    int vars() const { return vars_; }
    const std::map<Exponent, Rational>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    void add_term(const Exponent& e, const Rational& c);

    std::optional<int> degree() const;  // nullopt for the zero polynomial; error if not homogeneous
    MultiPoly derivative(int var) const;
    MultiPoly times_variable(int var) const;
    // F(g x) where (g x)_i = sum_j g_ij x_j.
    MultiPoly substitute(const std::vector<RationalVector>& g) const;

    std::string str() const;

    friend MultiPoly operator+(const MultiPoly& a, const MultiPoly& b);
    friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b);
    friend MultiPoly operator*(const Rational& c, const MultiPoly& a);
    friend bool operator==(const MultiPoly& a, const MultiPoly& b) { return a.vars_ == b.vars_ && a.terms_ == b.terms_; }

private:
    int vars_;
    std::map<Exponent, Rational> terms_;
};

using PolyMatrix = std::vector<std::vector<MultiPoly>>;

// Entry (i,j) is x_j * dF/dx_i.
PolyMatrix df_matrix(const MultiPoly& F);

// Number of independent linear relations among the (n+1)^2 entries of the DF matrix.
int df_relation_count(const MultiPoly& F);

// Weight of x^I under a torus acting on coordinate j with weight tw[j].
RationalVector torus_weight(const Exponent& I, const std::vector<RationalVector>& tw);

struct TangentNormal {
    std::vector<RationalVector> tangent;  // sorted
    NormalRep normal;                     // weights sorted
};

TangentNormal normal_rep_of(const MultiPoly& F, const std::vector<RationalVector>& torus_weights_on_coords,
                            const std::vector<MultiPoly>& extra_tangents = {});

// Full weight multiset of degree-d monomials under the torus, sorted.
std::vector<RationalVector> sym_weights(int vars, int d, const std::vector<RationalVector>& tw);

struct SemiInvariance {
    bool ok = false;
    Rational lambda;
    std::string message;
};

SemiInvariance check_semiinvariant(const MultiPoly& F, const std::vector<RationalVector>& g);

// Orthogonal projection of the coordinate vectors e_j onto the span of the
// cocharacters: the weights of coordinate j for the subtorus they generate,
// written in ambient Cartan coordinates.
std::vector<RationalVector> subtorus_projection_weights(const std::vector<RationalVector>& cocharacters);
std::vector<RationalVector> line_projection_weights(const RationalVector& u);

// Integer weights of w against each cocharacter.
RationalVector cocharacter_pairing(const RationalVector& w, const std::vector<RationalVector>& cocharacters);

}  // namespace stratify
