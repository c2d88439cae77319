#include "stratify/series.hpp"

#include <algorithm>
#include <sstream>

namespace stratify {

std::string to_string(const RationalVector& v) {
    std::string out = "(";
    for (size_t i = 0; i < v.size(); ++i) {
        if (i) out += ",";
        out += v[i].get_str();
    }
    return out + ")";
}

Rational dot(const RationalVector& a, const RationalVector& b) {
    require(a.size() == b.size(), "dot: length mismatch");
    Rational s = 0;
    for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

bool is_integer(const Rational& q) { return q.get_den() == 1; }

TruncatedSeries::TruncatedSeries(int order) : order_(order) {
    require(order >= 0, "series order must be nonnegative");
    coeffs_.assign(order + 1, Rational(0));
}

TruncatedSeries::TruncatedSeries(std::vector<Rational> coeffs, int order) : TruncatedSeries(order) {
    for (size_t k = 0; k < coeffs.size() && static_cast<int>(k) <= order; ++k) coeffs_[k] = coeffs[k];
}

TruncatedSeries TruncatedSeries::constant(const Rational& c, int order) {
    TruncatedSeries s(order);
    s.coeffs_[0] = c;
    return s;
}

TruncatedSeries TruncatedSeries::from_ints(const std::vector<long>& coeffs, int order) {
    TruncatedSeries s(order);
    for (size_t k = 0; k < coeffs.size() && static_cast<int>(k) <= order; ++k) s.coeffs_[k] = coeffs[k];
    return s;
}

TruncatedSeries TruncatedSeries::from_terms(const std::vector<std::pair<int, Rational>>& terms, int order) {
    TruncatedSeries s(order);
    for (const auto& [deg, c] : terms) {
        require(deg >= 0, "negative degree in series term");
        if (deg <= order) s.coeffs_[deg] += c;
    }
    return s;
}

Rational TruncatedSeries::operator[](int k) const {
    if (k < 0 || k > order_) return 0;
    return coeffs_[k];
}

void TruncatedSeries::set(int k, const Rational& c) {
    require(k >= 0 && k <= order_, "series degree out of range");
    coeffs_[k] = c;
}

TruncatedSeries TruncatedSeries::truncate(int order) const {
    require(order <= order_, "truncate cannot raise the order");
    return TruncatedSeries(std::vector<Rational>(coeffs_.begin(), coeffs_.begin() + order + 1), order);
}

TruncatedSeries TruncatedSeries::shift(int k) const {
    require(k >= 0, "negative shift");
    TruncatedSeries s(order_);
    for (int i = 0; i + k <= order_; ++i) s.coeffs_[i + k] = coeffs_[i];
    return s;
}

TruncatedSeries TruncatedSeries::scale(const Rational& c) const {
    TruncatedSeries s(*this);
    for (auto& x : s.coeffs_) x *= c;
    return s;
}

TruncatedSeries TruncatedSeries::substitute_power(int k) const {
    require(k >= 1, "substitution power must be positive");
    TruncatedSeries s(order_);
    for (int i = 0; i * k <= order_; ++i) s.coeffs_[i * k] = coeffs_[i];
    return s;
}

TruncatedSeries TruncatedSeries::inverse() const {
    require(coeffs_[0] != 0, "series inverse needs a nonzero constant term");
    TruncatedSeries inv(order_);
    Rational c0inv = 1 / coeffs_[0];
    inv.coeffs_[0] = c0inv;
    for (int n = 1; n <= order_; ++n) {
        Rational acc = 0;
        for (int k = 1; k <= n; ++k)
            if (coeffs_[k] != 0) acc += coeffs_[k] * inv.coeffs_[n - k];
        inv.coeffs_[n] = -acc * c0inv;
    }
    return inv;
}

bool TruncatedSeries::is_zero() const {
    return std::all_of(coeffs_.begin(), coeffs_.end(), [](const Rational& c) { return c == 0; });
}

bool TruncatedSeries::has_integer_coeffs() const {
    return std::all_of(coeffs_.begin(), coeffs_.end(), [](const Rational& c) { return is_integer(c); });
}

bool TruncatedSeries::odd_part_zero() const {
    for (int k = 1; k <= order_; k += 2)
        if (coeffs_[k] != 0) return false;
    return true;
}

TruncatedSeries operator+(const TruncatedSeries& a, const TruncatedSeries& b) {
    TruncatedSeries s(std::min(a.order_, b.order_));
    for (int k = 0; k <= s.order_; ++k) s.coeffs_[k] = a.coeffs_[k] + b.coeffs_[k];
    return s;
}

TruncatedSeries operator-(const TruncatedSeries& a, const TruncatedSeries& b) {
    TruncatedSeries s(std::min(a.order_, b.order_));
    for (int k = 0; k <= s.order_; ++k) s.coeffs_[k] = a.coeffs_[k] - b.coeffs_[k];
    return s;
}

TruncatedSeries operator*(const TruncatedSeries& a, const TruncatedSeries& b) {
    TruncatedSeries s(std::min(a.order_, b.order_));
    for (int i = 0; i <= s.order_; ++i) {
        if (a.coeffs_[i] == 0) continue;
        for (int j = 0; i + j <= s.order_; ++j)
            if (b.coeffs_[j] != 0) s.coeffs_[i + j] += a.coeffs_[i] * b.coeffs_[j];
    }
    return s;
}

std::string TruncatedSeries::str() const {
    std::ostringstream out;
    bool first = true;
    for (int k = 0; k <= order_; ++k) {
        const Rational& c = coeffs_[k];
        if (c == 0) continue;
        Rational mag = abs(c);
        if (c < 0) out << "-";
        else if (!first) out << "+";
        if (k == 0 || mag != 1) out << mag.get_str();
        if (k == 1) out << "t";
        else if (k > 1) out << "t^" << k;
        first = false;
    }
    if (first) out << "0";
    out << " mod t^" << (order_ + 1);
    return out.str();
}

std::vector<long> BettiTable::even() const {
    std::vector<long> out;
    for (size_t j = 0; j < betti.size(); j += 2) out.push_back(betti[j]);
    return out;
}

std::vector<long> BettiTable::odd() const {
    std::vector<long> out;
    for (size_t j = 1; j < betti.size(); j += 2) out.push_back(betti[j]);
    return out;
}

BettiTable BettiTable::from_even(int complex_dim, const std::vector<long>& even) {
    require(static_cast<int>(even.size()) == complex_dim + 1, "even Betti list must have complex_dim+1 entries");
    BettiTable t;
    t.complex_dim = complex_dim;
    t.betti.assign(2 * complex_dim + 1, 0);
    for (int j = 0; j <= complex_dim; ++j) t.betti[2 * j] = even[j];
    return t;
}

TruncatedSeries BettiTable::as_series() const {
    TruncatedSeries s(2 * complex_dim);
    for (int j = 0; j <= 2 * complex_dim; ++j) s.set(j, betti[j]);
    return s;
}

namespace {
long to_count(const Rational& c, int degree) {
    if (!is_integer(c))
        fail(ErrorKind::check_failure, "non-integral Betti number at degree " + std::to_string(degree) + ": " + c.get_str());
    if (!c.get_num().fits_slong_p())
        fail(ErrorKind::check_failure, "Betti number out of range at degree " + std::to_string(degree));
    if (c < 0) fail(ErrorKind::check_failure, "negative Betti number at degree " + std::to_string(degree) + ": " + c.get_str());
    return c.get_num().get_si();
}
}  // namespace

BettiTable BettiTable::from_series(const TruncatedSeries& s, int complex_dim) {
    require(s.order() >= 2 * complex_dim, "series too short for a Betti table");
    BettiTable t;
    t.complex_dim = complex_dim;
    for (int j = 0; j <= 2 * complex_dim; ++j) t.betti.push_back(to_count(s[j], j));
    return t;
}

TruncatedSeries gf_expand(const std::vector<std::pair<int, int>>& factors, int order) {
    TruncatedSeries s = TruncatedSeries::constant(1, order);
    for (const auto& [k, e] : factors) {
        require(k >= 1 && e >= 1, "gf_expand factors need period >= 1 and multiplicity >= 1");
        for (int rep = 0; rep < e; ++rep) {
            // Multiplying by 1/(1-t^k) is a running sum with stride k.
            std::vector<Rational> c = s.coeffs();
            for (int n = k; n <= order; ++n) c[n] += c[n - k];
            s = TruncatedSeries(std::move(c), order);
        }
    }
    return s;
}

TruncatedSeries lincomb(const std::vector<LinTerm>& terms) {
    require(!terms.empty(), "lincomb needs at least one term");
    int order = terms.front().series.order();
    for (const auto& t : terms) order = std::min(order, t.series.order());
    TruncatedSeries acc(order);
    for (const auto& t : terms) acc = acc + t.series.truncate(order).shift(t.shift).scale(t.coefficient);
    return acc;
}

BettiTable duality_complete(const TruncatedSeries& prefix, int n) {
    require(n >= 0, "complex dimension must be nonnegative");
    require(prefix.order() >= n, "prefix order must reach the complex dimension");
    BettiTable t;
    t.complex_dim = n;
    t.betti.assign(2 * n + 1, 0);
    for (int j = 0; j <= n; ++j) {
        long v = to_count(prefix[j], j);
        t.betti[j] = v;
        t.betti[2 * n - j] = v;
    }
    for (int j = n + 1; j <= std::min(prefix.order(), 2 * n); ++j) {
        if (prefix[j] != t.betti[j])
            fail(ErrorKind::check_failure, "duality_complete: coefficient at degree " + std::to_string(j) + " is " +
                                               prefix[j].get_str() + " but its mirror degree " +
                                               std::to_string(2 * n - j) + " forces " + std::to_string(t.betti[j]));
    }
    for (int j = 2 * n + 1; j <= prefix.order(); ++j)
        if (prefix[j] != 0)
            fail(ErrorKind::check_failure, "duality_complete: nonzero coefficient beyond degree 2n at " + std::to_string(j));
    return t;
}

DualityReport duality_check(const BettiTable& table) {
    DualityReport r;
    const int top = 2 * table.complex_dim;
    if (static_cast<int>(table.betti.size()) != top + 1) {
        r.pass = false;
        r.message = "table length " + std::to_string(table.betti.size()) + " does not match 2n+1 = " + std::to_string(top + 1);
        return r;
    }
    for (int j = 0; j <= top; ++j) {
        if (table.betti[j] < 0 && !r.negative_degree) r.negative_degree = j;
    }
    for (int j = 0; j <= table.complex_dim; ++j) {
        if (table.betti[j] != table.betti[top - j]) {
            r.offending = std::make_pair(j, top - j);
            break;
        }
    }
    r.connected = !table.betti.empty() && table.betti[0] == 1;
    r.pass = !r.offending && !r.negative_degree;
    if (r.offending)
        r.message = "b_" + std::to_string(r.offending->first) + " != b_" + std::to_string(r.offending->second);
    else if (r.negative_degree)
        r.message = "negative Betti number at degree " + std::to_string(*r.negative_degree);
    else
        r.message = r.connected ? "ok" : "ok (b_0 != 1)";
    return r;
}

BettiTable kunneth(const BettiTable& a, const BettiTable& b) {
    BettiTable t;
    t.complex_dim = a.complex_dim + b.complex_dim;
    t.betti.assign(2 * t.complex_dim + 1, 0);
    for (size_t i = 0; i < a.betti.size(); ++i)
        for (size_t j = 0; j < b.betti.size(); ++j) t.betti[i + j] += a.betti[i] * b.betti[j];
    return t;
}

}  // namespace stratify
