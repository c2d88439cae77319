#pragma once

#include "stratify/core.hpp"

#include <optional>
#include <utility>

namespace stratify {

// Power series with exact rational coefficients in degrees 0..order.
class TruncatedSeries {
public:
    explicit TruncatedSeries(int order);
    TruncatedSeries(std::vector<Rational> coeffs, int order);

    static TruncatedSeries constant(const Rational& c, int order);
    static TruncatedSeries from_ints(const std::vector<long>& coeffs, int order);
    // Sparse constructor: (degree, coefficient) pairs; degrees above order are dropped.
    static TruncatedSeries from_terms(const std::vector<std::pair<int, Rational>>& terms, int order);

    int order() const { return order_; }
    const std::vector<Rational>& coeffs() const { return coeffs_; }
    // Coefficient at degree k; zero outside 0..order.
    Rational operator[](int k) const;
    void set(int k, const Rational& c);

    TruncatedSeries truncate(int order) const;
    TruncatedSeries shift(int k) const;  // multiply by t^k, same order
    TruncatedSeries scale(const Rational& c) const;
    // Substitute t -> t^k.
    TruncatedSeries substitute_power(int k) const;
    // Multiplicative inverse; the constant term must be nonzero.
    TruncatedSeries inverse() const;

    bool is_zero() const;
    bool has_integer_coeffs() const;
    bool odd_part_zero() const;

    friend TruncatedSeries operator+(const TruncatedSeries& a, const TruncatedSeries& b);
    friend TruncatedSeries operator-(const TruncatedSeries& a, const TruncatedSeries& b);
    friend TruncatedSeries operator*(const TruncatedSeries& a, const TruncatedSeries& b);
    friend bool operator==(const TruncatedSeries& a, const TruncatedSeries& b) {
        return a.order_ == b.order_ && a.coeffs_ == b.coeffs_;
    }

    // Human-readable form such as "1+t^2+2t^4 mod t^11".
    std::string str() const;

private:
    int order_;
    std::vector<Rational> coeffs_;
};

// Betti numbers b_0..b_{2n} of a space of complex dimension n.
struct BettiTable {
    int complex_dim = 0;
    std::vector<long> betti;

    std::vector<long> even() const;
    std::vector<long> odd() const;
    static BettiTable from_even(int complex_dim, const std::vector<long>& even);
    TruncatedSeries as_series() const;
    // Series of the table to degree 2n; coefficients must be nonnegative integers.
    static BettiTable from_series(const TruncatedSeries& s, int complex_dim);
    friend bool operator==(const BettiTable& a, const BettiTable& b) {
        return a.complex_dim == b.complex_dim && a.betti == b.betti;
    }
};

struct DualityReport {
    bool pass = true;
    bool connected = true;  // betti[0] == 1; advisory only
    std::optional<std::pair<int, int>> offending;  // first (j, 2n-j) mismatch
    std::optional<int> negative_degree;
    std::string message;
};

// prod_i (1 - t^{k_i})^{-e_i} truncated at order.
TruncatedSeries gf_expand(const std::vector<std::pair<int, int>>& factors, int order);

struct LinTerm {
    Rational coefficient;
    int shift = 0;
    TruncatedSeries series;
};

// sum c_i t^{s_i} S_i; the result order is min(order(S_i)).
TruncatedSeries lincomb(const std::vector<LinTerm>& terms);

BettiTable duality_complete(const TruncatedSeries& prefix, int complex_dim);
DualityReport duality_check(const BettiTable& table);

// Product of Betti tables (Kuenneth).
BettiTable kunneth(const BettiTable& a, const BettiTable& b);

}  // namespace stratify
