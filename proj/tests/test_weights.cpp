#include "oracles.hpp"
#include "stratify/weights.hpp"

#include <doctest.h>

#include <algorithm>
#include <functional>
#include <numeric>
#include <set>

using namespace stratify;

TEST_CASE("monomial counts are binomial coefficients") {
    for (int n = 1; n <= 4; ++n)
        for (int d = 1; d <= 5; ++d) {
            const auto ws = hypersurface_weights(n, d);
            CHECK(static_cast<long>(ws.size()) == oracle::binomial(n + d, d));
            CHECK(ws.monomials.size() == ws.weights.size());
            CHECK(ws.rank() == n);
        }
}

TEST_CASE("cubic threefold weights") {
    const auto ws = hypersurface_weights(4, 3);
    REQUIRE(ws.size() == 35);
    CHECK(ws.monomials.front() == Exponent{3, 0, 0, 0, 0});
    const RationalVector x0_cubed = {make_rational(12, 5), make_rational(-3, 5), make_rational(-3, 5),
                                     make_rational(-3, 5), make_rational(-3, 5)};
    CHECK(ws.weights.front() == x0_cubed);
    CHECK(ws.monomials.back() == Exponent{0, 0, 0, 0, 3});
}

TEST_CASE("binary forms of degree 12 form a ladder") {
    const auto ws = hypersurface_weights(1, 12);
    REQUIRE(ws.size() == 13);
    for (int j = 0; j <= 12; ++j) {
        // x0^{12-j} x1^j has weight (6-j, j-6)
        CHECK(ws.weights[j] == RationalVector{Rational(6 - j), Rational(j - 6)});
    }
}

TEST_CASE("each weight lies in the sum-zero hyperplane and the weights sum to zero") {
    for (auto [n, d] : std::vector<std::pair<int, int>>{{2, 3}, {3, 3}, {4, 3}, {2, 4}, {1, 7}}) {
        const auto ws = hypersurface_weights(n, d);
        RationalVector total(n + 1, 0);
        for (size_t k = 0; k < ws.size(); ++k) {
            Rational s = 0;
            for (const auto& x : ws.weights[k]) s += x;
            CHECK(s == 0);
            // alpha_I = I - d/(n+1) computed independently
            for (int i = 0; i <= n; ++i) {
                CHECK(ws.weights[k][i] == Rational(ws.monomials[k][i]) - make_rational(d, n + 1));
                total[i] += ws.weights[k][i];
            }
        }
        CHECK(std::all_of(total.begin(), total.end(), [](const Rational& x) { return x == 0; }));
    }
}

TEST_CASE("the weight multiset is permutation invariant") {
    const auto ws = hypersurface_weights(3, 3);
    std::multiset<RationalVector> base(ws.weights.begin(), ws.weights.end());
    std::vector<int> perm = {0, 1, 2, 3};
    while (std::next_permutation(perm.begin(), perm.end())) {
        std::multiset<RationalVector> moved;
        for (const auto& w : ws.weights) {
            RationalVector p(4);
            for (int i = 0; i < 4; ++i) p[i] = w[perm[i]];
            moved.insert(p);
        }
        CHECK(moved == base);
    }
}

TEST_CASE("monomial enumeration matches an independent enumeration") {
    auto mine = monomial_exponents(4, 3);
    auto ref = oracle::monomials(4, 3);
    std::sort(mine.begin(), mine.end());
    std::sort(ref.begin(), ref.end());
    CHECK(mine == ref);
    const auto ordered = monomial_exponents(3, 4);
    CHECK(std::is_sorted(ordered.begin(), ordered.end(), std::greater<>()));
}

TEST_CASE("monomial names") {
    CHECK(monomial_name({3, 0, 0}) == "x0^3");
    CHECK(monomial_name({1, 1, 1}) == "x0*x1*x2");
}
