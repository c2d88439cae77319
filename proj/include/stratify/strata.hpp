#pragma once

#include "stratify/weights.hpp"

#include <functional>
#include <optional>

namespace stratify {

// How the Weyl group of the acting group moves beta to its chamber representative.
enum class WeylAction {
    symmetric,  // S_m by coordinate permutation: sort entries decreasingly
    trivial,    // tori: beta is its own representative
    negation,   // 1-dim torus of a PGL2-like group: pick the lexicographically positive sign
};

// How dim G/P_beta is computed.
enum class ParabolicRule {
    special_linear,  // #{i<j : beta_i > beta_j} on the sorted representative
    torus,           // always 0
    pgl2,            // 1 for beta != 0, else 0
};

enum class Nonemptiness { undeclared, declared_nonempty, declared_empty };

struct BetaStratum {
    RationalVector beta;
    Rational norm2;
    std::vector<int> support;  // indices with alpha . beta == |beta|^2
    int n_beta = 0;            // #{alpha . beta < |beta|^2}
    int r_beta = 0;            // #{alpha . beta >= |beta|^2}
    int dim_g_mod_p = 0;
    int codim_expected = 0;
    Nonemptiness nonemptiness = Nonemptiness::undeclared;
    bool is_zero() const { return norm2 == 0; }
};

struct StrataOptions {
    WeylAction weyl = WeylAction::symmetric;
    ParabolicRule parabolic = ParabolicRule::special_linear;
    long long budget = 10'000'000;  // max number of candidate subsets
};

constexpr long long default_subset_budget = 10'000'000;

// Closest-point candidates over all affinely independent subsets of size <= rank+1.
std::vector<BetaStratum> index_set(const std::vector<RationalVector>& weights, const StrataOptions& opts);

enum class WeylGroupChoice { full_symmetric, trivial };

std::vector<BetaStratum> instability_index_set(const WeightSystem& ws, WeylGroupChoice weyl,
                                               long long budget = default_subset_budget);

// Exact closest point of conv(points) to the origin by exhaustive minimisation
// over affinely independent subsets (slow reference implementation).
RationalVector closest_point(const std::vector<RationalVector>& points);

// Stratum data of a weight on a given beta (shared by index_set and callers that
// already know beta).
BetaStratum describe_beta(const RationalVector& beta, const std::vector<RationalVector>& weights,
                          ParabolicRule parabolic);

RationalVector chamber_representative(const RationalVector& beta, WeylAction weyl);

// Representation of a stabiliser torus on a normal slice; weights are stored in
// ambient Cartan coordinates so the induced metric is the ambient dot product.
struct NormalRep {
    std::vector<RationalVector> weights;
    int dim() const { return static_cast<int>(weights.size()); }
};

enum class RepGroup { torus, pgl2 };

std::vector<BetaStratum> normal_rep_strata(const NormalRep& rep, RepGroup group,
                                           long long budget = default_subset_budget);

// Number of elements of rep_index_set in the S_m coordinate-permutation orbit of
// beta_prime. When wr_canonical is given, elements related by W(R) are counted once.
int weyl_fiber_count(const RationalVector& beta_prime, int m, const std::vector<RationalVector>& rep_index_set,
                     const std::function<RationalVector(const RationalVector&)>& wr_canonical = {});

// Linear rank of a set of rational vectors.
int linear_rank(const std::vector<RationalVector>& vectors);

}  // namespace stratify
