#pragma once

#include "stratify/core.hpp"

namespace stratify {

using Exponent = std::vector<int>;

// Weights of the maximal torus of SL(n+1) on degree-d forms, in the
// (n+1)-coordinate model of the Cartan subalgebra (sum-zero vectors).
struct WeightSystem {
    int n = 0;
    int d = 0;
    std::vector<Exponent> monomials;  // lexicographically decreasing: x0^d first
    std::vector<RationalVector> weights;
    int rank() const { return n; }
    size_t size() const { return weights.size(); }
};

// All exponent vectors of length vars with entries summing to d, x0^d first.
std::vector<Exponent> monomial_exponents(int vars, int d);

// alpha_I = I - d/(n+1) (1,...,1)
RationalVector monomial_weight(const Exponent& I, int d);

WeightSystem hypersurface_weights(int n, int d);

std::string monomial_name(const Exponent& I);

}  // namespace stratify
