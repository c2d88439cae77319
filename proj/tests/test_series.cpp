#include "stratify/series.hpp"

#include <doctest.h>

#include <functional>

using namespace stratify;

namespace {

// Number of ways to write k as sum_i m_i * period_i, each factor with its multiplicity
// treated as distinct parts; direct enumeration.
long count_representations(const std::vector<int>& parts, int k) {
    std::function<long(size_t, int)> go = [&](size_t i, int rest) -> long {
        if (i == parts.size()) return rest == 0 ? 1 : 0;
        long total = 0;
        for (int used = 0; used * parts[i] <= rest; ++used) total += go(i + 1, rest - used * parts[i]);
        return total;
    };
    return go(0, k);
}

TruncatedSeries series_of(std::vector<long> c) {
    const int order = static_cast<int>(c.size()) - 1;
    return TruncatedSeries::from_ints(c, order);
}

}  // namespace

TEST_CASE("gf_expand agrees with counting representations") {
    const std::vector<std::pair<int, int>> factors = {{2, 1}, {4, 2}, {6, 1}, {3, 1}};
    const std::vector<int> parts = {2, 4, 4, 6, 3};
    const auto s = gf_expand(factors, 30);
    for (int k = 0; k <= 30; ++k) CHECK(s[k] == count_representations(parts, k));
}

TEST_CASE("gf_expand of one factor is geometric") {
    const auto s = gf_expand({{2, 1}}, 10);
    CHECK(s == series_of({1, 0, 1, 0, 1, 0, 1, 0, 1, 0, 1}));
    CHECK(gf_expand({}, 4) == TruncatedSeries::constant(1, 4));
    CHECK_THROWS_AS(gf_expand({{0, 1}}, 4), Error);
}

TEST_CASE("multiplication, inverse and shift") {
    const auto a = series_of({1, 2, 0, -1, 3});
    const auto inv = a.inverse();
    CHECK(a * inv == TruncatedSeries::constant(1, 4));
    CHECK(a.shift(2) == series_of({0, 0, 1, 2, 0}));
    CHECK(a.substitute_power(2) == series_of({1, 0, 2, 0, 0}));
    CHECK(a.truncate(2) == series_of({1, 2, 0}));
    CHECK_THROWS_AS(a.truncate(5), Error);
    CHECK_THROWS_AS(series_of({0, 1}).inverse(), Error);

    // mixed orders keep the smaller one
    const auto b = series_of({1, 1});
    CHECK((a * b).order() == 1);
    CHECK((a + b) == series_of({2, 3}));
}

TEST_CASE("inverse of 1 - t^2 is the geometric series") {
    const auto one_minus = series_of({1, 0, -1, 0, 0, 0, 0});
    CHECK(one_minus.inverse() == gf_expand({{2, 1}}, 6));
}

TEST_CASE("rational coefficients stay exact") {
    auto s = TruncatedSeries(3);
    s.set(1, make_rational(1, 3));
    s.set(2, make_rational(2, 6));
    CHECK(s[1] == s[2]);
    CHECK_FALSE(s.has_integer_coeffs());
    CHECK((s.scale(3)).has_integer_coeffs());
    CHECK(s.str() == "1/3t+1/3t^2 mod t^4");
}

TEST_CASE("lincomb applies coefficients and shifts") {
    const auto p = series_of({1, 0, 1, 0, 1, 0});
    const auto q = series_of({1, 1, 1, 1});
    const auto r = lincomb({{2, 0, p}, {-1, 2, q}});
    CHECK(r.order() == 3);
    CHECK(r == series_of({2, 0, 1, -1}));
    CHECK_THROWS_AS(lincomb({}), Error);
}

TEST_CASE("duality completion mirrors the prefix") {
    const auto prefix = series_of({1, 0, 1, 0, 2, 0});
    const auto t = duality_complete(prefix, 5);
    CHECK(t.complex_dim == 5);
    CHECK(t.even() == std::vector<long>{1, 1, 2, 2, 1, 1});
    CHECK(t.odd() == std::vector<long>{0, 0, 0, 0, 0});
    CHECK(duality_check(t).pass);

    CHECK_THROWS_AS(duality_complete(series_of({1, 0}), 3), Error);
    CHECK_THROWS_AS(duality_complete(series_of({1, 0, -1}), 2), Error);
}

TEST_CASE("duality_check names the first offending pair") {
    BettiTable t;
    t.complex_dim = 2;
    t.betti = {1, 0, 2, 0, 3};
    const auto rep = duality_check(t);
    CHECK_FALSE(rep.pass);
    REQUIRE(rep.offending);
    CHECK(rep.offending->first == 0);
    CHECK(rep.offending->second == 4);

    t.betti = {1, 0, -1, 0, 1};
    const auto neg = duality_check(t);
    CHECK_FALSE(neg.pass);
    REQUIRE(neg.negative_degree);
    CHECK(*neg.negative_degree == 2);
}

TEST_CASE("kunneth of projective spaces") {
    const auto p1 = BettiTable::from_even(1, {1, 1});
    const auto p2 = BettiTable::from_even(2, {1, 1, 1});
    const auto prod = kunneth(p1, p2);
    CHECK(prod.complex_dim == 3);
    CHECK(prod.even() == std::vector<long>{1, 2, 2, 1});
    CHECK(duality_check(prod).pass);

    // odd classes: an elliptic curve squared
    BettiTable e;
    e.complex_dim = 1;
    e.betti = {1, 2, 1};
    CHECK(kunneth(e, e).betti == std::vector<long>{1, 4, 6, 4, 1});
}

TEST_CASE("BettiTable round trips through its series") {
    const auto t = BettiTable::from_even(3, {1, 2, 2, 1});
    CHECK(BettiTable::from_series(t.as_series(), 3) == t);
    auto bad = t.as_series();
    bad.set(2, make_rational(1, 2));
    CHECK_THROWS_AS(BettiTable::from_series(bad, 3), Error);
}
