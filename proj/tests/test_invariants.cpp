#include "oracles.hpp"
#include "stratify/eisenstein.hpp"
#include "stratify/invariants.hpp"

#include <doctest.h>

#include <filesystem>
#include <set>

using namespace stratify;

namespace {

RationalMatrix qmat(std::vector<std::vector<long>> rows) {
    std::vector<std::vector<Rational>> q;
    for (const auto& r : rows) q.emplace_back(r.begin(), r.end());
    return RationalMatrix::from_rows(q);
}

std::vector<RationalMatrix> permutation_matrices(int n, const std::vector<std::vector<int>>& perms) {
    std::vector<RationalMatrix> out;
    for (const auto& p : perms) {
        RationalMatrix m(n);
        for (int i = 0; i < n; ++i) m(p[i], i) = 1;
        out.push_back(m);
    }
    return out;
}

// Orbits of a permutation group (given by all its elements) on degree-k monomials.
long monomial_orbits(const std::vector<std::vector<int>>& elements, int vars, int k) {
    std::set<std::vector<int>> seen;
    long orbits = 0;
    for (const auto& e : oracle::monomials(vars, k)) {
        if (seen.count(e)) continue;
        ++orbits;
        for (const auto& p : elements) {
            std::vector<int> img(vars);
            for (int i = 0; i < vars; ++i) img[p[i]] = e[i];
            seen.insert(img);
        }
    }
    return orbits;
}

void check_molien_integral(const TruncatedSeries& s) {
    CHECK(s[0] == 1);
    CHECK(s.has_integer_coeffs());
    for (int k = 0; k <= s.order(); ++k) CHECK(s[k] >= 0);
}

EisMatrix diag1(EisInt x) { return EisMatrix::from_rows({{x}}); }

}  // namespace

TEST_CASE("dihedral S3 closure and Molien series") {
    const auto g = close_group<Rational>({qmat({{0, 1}, {1, 0}}), qmat({{-1, 1}, {-1, 0}})});
    CHECK(g.order() == 6);
    const auto m = molien(g, 2, 24);
    check_molien_integral(m);
    CHECK(m == gf_expand({{4, 1}, {6, 1}}, 24));
}

TEST_CASE("S3 permuting three coordinates") {
    // symmetric functions: generators in degrees 1, 2, 3, doubled by the grading
    const auto g = close_group<Rational>(permutation_matrices(3, {{1, 0, 2}, {1, 2, 0}}));
    CHECK(g.order() == 6);
    CHECK(molien(g, 2, 20) == gf_expand({{2, 1}, {4, 1}, {6, 1}}, 20));
}

TEST_CASE("Molien series of permutation groups counts monomial orbits") {
    const std::vector<std::vector<std::vector<int>>> groups = {
        {{0, 1, 2, 3}, {1, 2, 3, 0}, {2, 3, 0, 1}, {3, 0, 1, 2}},  // cyclic of order 4
        {{0, 1, 2, 3}, {1, 0, 2, 3}, {0, 1, 3, 2}, {1, 0, 3, 2}},  // Klein four acting by two swaps
    };
    for (const auto& elems : groups) {
        const auto g = close_group<Rational>(permutation_matrices(4, elems));
        CHECK(g.order() == elems.size());
        const auto m = molien(g, 1, 12);
        check_molien_integral(m);
        for (int k = 0; k <= 12; ++k) CHECK(m[k] == monomial_orbits(elems, 4, k));
    }
}

TEST_CASE("trivial group Molien series is gf_expand") {
    for (int dim = 1; dim <= 4; ++dim) {
        const auto g = close_group<Rational>({RationalMatrix::identity(dim)});
        CHECK(g.order() == 1);
        CHECK(molien(g, 2, 16) == gf_expand({{2, dim}}, 16));
    }
}

TEST_CASE("a central subgroup acting trivially factors out of the Molien series") {
    // G = S3 (permutations) x {+-1} acting on C^3 + C, the sign acting only on the last line
    auto gens = permutation_matrices(4, {{1, 0, 2, 3}, {1, 2, 0, 3}});
    gens.push_back(qmat({{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, -1}}));
    const auto g = close_group<Rational>(gens);
    CHECK(g.order() == 12);
    const auto sym = close_group<Rational>(permutation_matrices(3, {{1, 0, 2}, {1, 2, 0}}));
    const auto sign = close_group<Rational>({qmat({{-1}})});
    CHECK(molien(g, 2, 18) == molien(sym, 2, 18) * molien(sign, 2, 18));
    CHECK(molien(sign, 2, 18) == gf_expand({{4, 1}}, 18));
}

TEST_CASE("closure respects the cap") {
    const auto gens = permutation_matrices(5, {{1, 0, 2, 3, 4}, {1, 2, 3, 4, 0}});
    CHECK(close_group<Rational>(gens).order() == 120);
    CHECK_THROWS_AS(close_group<Rational>(gens, 50), Error);
}

TEST_CASE("group closure is cached on disk and reloaded identically") {
    const auto dir = std::filesystem::temp_directory_path() / "stratify_test_cache";
    std::filesystem::remove_all(dir);
    GroupCache cache{dir};
    const auto gens = permutation_matrices(4, {{1, 0, 2, 3}, {1, 2, 3, 0}});
    const auto first = close_group<Rational>(gens, default_group_cap, cache);
    CHECK(std::filesystem::exists(dir));
    const auto second = close_group<Rational>(gens, default_group_cap, cache);
    CHECK(first.elements == second.elements);
    CHECK(first.order() == 24);
    std::filesystem::remove_all(dir);
}

TEST_CASE("abelian quotients of a single elliptic curve") {
    const auto trivial = close_group<EisInt>({diag1(1)});
    CHECK(abelian_quotient_betti(trivial).betti == std::vector<long>{1, 2, 1});
    // E / (+-1) and E / mu_3 are both P^1
    CHECK(abelian_quotient_betti(close_group<EisInt>({diag1(-1)})).betti == std::vector<long>{1, 0, 1});
    CHECK(abelian_quotient_betti(close_group<EisInt>({diag1(EisInt::omega())})).betti == std::vector<long>{1, 0, 1});
    CHECK(abelian_quotient_betti(close_group<EisInt>({diag1(-EisInt::omega())})).betti == std::vector<long>{1, 0, 1});
}

TEST_CASE("symmetric square of an elliptic curve") {
    const auto swap = close_group<EisInt>({EisMatrix::from_rows({{0, 1}, {1, 0}})});
    CHECK(swap.order() == 2);
    CHECK(abelian_quotient_betti(swap).betti == std::vector<long>{1, 2, 2, 2, 1});
    const auto hodge = abelian_quotient_hodge(swap);
    CHECK(hodge[1][0] == 1);
    CHECK(hodge[0][1] == 1);
    CHECK(hodge[1][1] == 2);
}

TEST_CASE("non-unitary matrices are rejected") {
    const auto g = close_group<EisInt>({diag1(-1)});
    const auto gram = EisMatrix::from_rows({{2}});
    CHECK(abelian_quotient_betti(g, gram).betti == std::vector<long>{1, 0, 1});
    EisGroup bad;
    bad.dim = 2;
    bad.elements = {EisMatrix::identity(2), EisMatrix::from_rows({{1, 1}, {0, 1}})};
    CHECK_THROWS_AS(abelian_quotient_betti(bad), Error);
}

TEST_CASE("wreath symmetrization") {
    const auto p4 = BettiTable::from_even(4, {1, 1, 1, 1, 1});
    CHECK(wreath_symmetrize(p4, 2) == BettiTable::from_even(8, {1, 1, 2, 2, 3, 2, 2, 1, 1}));
    CHECK(wreath_symmetrize(BettiTable::from_even(3, {1, 1, 1, 1}), 3) ==
          BettiTable::from_even(9, {1, 1, 2, 3, 3, 3, 3, 2, 1, 1}));

    // a truncated series only determines its square to the same order
    const auto s4 = TruncatedSeries::from_ints({1, 0, 1, 0, 1, 0, 1, 0, 1}, 8);
    CHECK(wreath_symmetrize(s4, 2) == TruncatedSeries::from_ints({1, 0, 1, 0, 2, 0, 2, 0, 3}, 8));
    CHECK(wreath_symmetrize(TruncatedSeries::constant(1, 0), 3) == TruncatedSeries::constant(1, 0));

    // (P^1)^3 / S3 = P^3
    const auto p1 = BettiTable::from_even(1, {1, 1});
    CHECK(wreath_symmetrize(p1, 3) == BettiTable::from_even(3, {1, 1, 1, 1}));

    const auto odd = TruncatedSeries::from_ints({1, 2, 1}, 2);
    CHECK_THROWS_AS(wreath_symmetrize(odd, 2), Error);
}

TEST_CASE("Weyl groups of the Eisenstein lattices give weighted projective quotients") {
    const auto w3 = weyl_group(eis_lattice("E3"));
    CHECK(w3.order() == 648);
    CHECK(51840 % w3.order() == 0);
    const auto b3 = abelian_quotient_betti(w3, eis_lattice("E3").gram);
    CHECK(b3 == BettiTable::from_even(3, {1, 1, 1, 1}));
    CHECK(duality_check(b3).pass);

    const auto w1 = weyl_group(eis_lattice("E1"));
    CHECK(w1.order() == 3);
    CHECK(abelian_quotient_betti(w1, eis_lattice("E1").gram) == BettiTable::from_even(1, {1, 1}));
}
