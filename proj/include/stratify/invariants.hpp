#pragma once

#include "stratify/eisint.hpp"
#include "stratify/series.hpp"

#include <filesystem>
#include <optional>

namespace stratify {

// Dense square matrix over Rational or EisInt, row-major.
template <typename S>
struct SquareMatrix {
    int n = 0;
    std::vector<S> a;

    SquareMatrix() = default;
    explicit SquareMatrix(int n_) : n(n_), a(static_cast<size_t>(n_) * n_, S(0)) {}
    static SquareMatrix identity(int n);
    static SquareMatrix from_rows(const std::vector<std::vector<S>>& rows);

    S& operator()(int i, int j) { return a[static_cast<size_t>(i) * n + j]; }
    const S& operator()(int i, int j) const { return a[static_cast<size_t>(i) * n + j]; }

    friend bool operator==(const SquareMatrix& x, const SquareMatrix& y) { return x.n == y.n && x.a == y.a; }
    friend bool operator<(const SquareMatrix& x, const SquareMatrix& y) {
        if (x.n != y.n) return x.n < y.n;
        return std::lexicographical_compare(x.a.begin(), x.a.end(), y.a.begin(), y.a.end());
    }
    std::string str() const;
};

template <typename S>
SquareMatrix<S> operator*(const SquareMatrix<S>& x, const SquareMatrix<S>& y);

using RationalMatrix = SquareMatrix<Rational>;
using EisMatrix = SquareMatrix<EisInt>;

EisMatrix conj_transpose(const EisMatrix& m);

// e_k(M) for k = 0..n: sums of principal k x k minors (division-free).
template <typename S>
std::vector<S> elementary_symmetric(const SquareMatrix<S>& m);

template <typename S>
struct FiniteMatrixGroup {
    int dim = 0;
    std::vector<SquareMatrix<S>> elements;  // canonical (sorted) order
    size_t order() const { return elements.size(); }
};

using RationalGroup = FiniteMatrixGroup<Rational>;
using EisGroup = FiniteMatrixGroup<EisInt>;

constexpr size_t default_group_cap = 1'000'000;

struct GroupCache {
    std::optional<std::filesystem::path> dir;  // disabled when empty
    // Reads STRATIFY_CACHE from the environment.
    static GroupCache from_env();
};

template <typename S>
FiniteMatrixGroup<S> close_group(const std::vector<SquareMatrix<S>>& generators, size_t cap = default_group_cap,
                                 const GroupCache& cache = {});

// Invariant Poincare series of the symmetric algebra with generators in degree g.
template <typename S>
TruncatedSeries molien(const FiniteMatrixGroup<S>& group, int generator_degree, int order);

// Betti table of E^k / G where E is the elliptic curve with an order-3 automorphism
// and G acts through the given Eisenstein matrices. Unitarity is checked against
// hermitian_gram (identity when not given).
BettiTable abelian_quotient_betti(const EisGroup& group, const std::optional<EisMatrix>& hermitian_gram = {});

// Hodge numbers h^{p,q} of the invariant part; index [p][q].
std::vector<std::vector<long>> abelian_quotient_hodge(const EisGroup& group,
                                                      const std::optional<EisMatrix>& hermitian_gram = {});

TruncatedSeries wreath_symmetrize(const TruncatedSeries& p, int n);
BettiTable wreath_symmetrize(const BettiTable& p, int n);

}  // namespace stratify
