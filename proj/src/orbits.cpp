#include "stratify/orbits.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace stratify {

namespace {

class PolyParser {
public:
    PolyParser(const std::string& text, int vars) : s_(text), vars_(vars) {}

    MultiPoly run() {
        MultiPoly p(vars_);
        skip();
        if (pos_ == s_.size()) fail(ErrorKind::parse_error, "empty polynomial");
        bool first = true;
        while (pos_ < s_.size()) {
            Rational sign = 1;
            if (peek() == '+' || peek() == '-') {
                if (peek() == '-') sign = -1;
                ++pos_;
                skip();
            } else if (!first) {
                error("expected '+' or '-'");
            }
            auto [e, c] = term();
            p.add_term(e, sign * c);
            first = false;
            skip();
        }
        return p;
    }

private:
    const std::string& s_;
    size_t pos_ = 0;
    int vars_;

    char peek() const { return pos_ < s_.size() ? s_[pos_] : '\0'; }
    void skip() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }
    [[noreturn]] void error(const std::string& what) const {
        fail(ErrorKind::parse_error, "polynomial parse error at offset " + std::to_string(pos_) + ": " + what);
    }
    long number() {
        size_t start = pos_;
        while (std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
        if (start == pos_) error("expected a number");
        return std::stol(s_.substr(start, pos_ - start));
    }

    std::pair<Exponent, Rational> term() {
        Exponent e(vars_, 0);
        Rational c = 1;
        bool any = false;
        while (true) {
            skip();
            char ch = peek();
            if (std::isdigit(static_cast<unsigned char>(ch))) {
                long num = number();
                long den = 1;
                if (peek() == '/') {
                    ++pos_;
                    den = number();
                    if (den == 0) error("zero denominator");
                }
                c *= make_rational(num, den);
            } else if (ch == 'x') {
                ++pos_;
                long v = number();
                if (v < 0 || v >= vars_) error("variable index out of range");
                long power = 1;
                skip();
                if (peek() == '^') {
                    ++pos_;
                    skip();
                    power = number();
                }
                e[v] += static_cast<int>(power);
            } else {
                error(std::string("unexpected character '") + ch + "'");
            }
            any = true;
            skip();
            if (peek() == '*') {
                ++pos_;
                continue;
            }
            ch = peek();
            if (ch == '\0' || ch == '+' || ch == '-') break;
        }
        if (!any) error("empty term");
        return {e, c};
    }
};

}  // namespace

MultiPoly MultiPoly::parse(const std::string& text, int vars) {
    require(vars >= 1, "polynomial needs at least one variable");
    return PolyParser(text, vars).run();
}

MultiPoly MultiPoly::monomial(const Exponent& e, const Rational& c) {
    MultiPoly p(static_cast<int>(e.size()));
    p.add_term(e, c);
    return p;
}

void MultiPoly::add_term(const Exponent& e, const Rational& c) {
    require(static_cast<int>(e.size()) == vars_, "monomial length does not match the variable count");
    if (c == 0) return;
    auto [it, inserted] = terms_.emplace(e, c);
    if (!inserted) {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

std::optional<int> MultiPoly::degree() const {
    std::optional<int> deg;
    for (const auto& [e, c] : terms_) {
        int d = 0;
        for (int x : e) d += x;
        if (deg && *deg != d) fail(ErrorKind::invalid_argument, "polynomial is not homogeneous: " + str());
        deg = d;
    }
    return deg;
}

MultiPoly MultiPoly::derivative(int var) const {
    MultiPoly out(vars_);
    for (const auto& [e, c] : terms_) {
        if (e[var] == 0) continue;
        Exponent f = e;
        --f[var];
        out.add_term(f, c * e[var]);
    }
    return out;
}

MultiPoly MultiPoly::times_variable(int var) const {
    MultiPoly out(vars_);
    for (const auto& [e, c] : terms_) {
        Exponent f = e;
        ++f[var];
        out.add_term(f, c);
    }
    return out;
}

MultiPoly MultiPoly::substitute(const std::vector<RationalVector>& g) const {
    require(static_cast<int>(g.size()) == vars_, "substitution matrix has the wrong size");
    std::vector<MultiPoly> images;
    for (int i = 0; i < vars_; ++i) {
        require(static_cast<int>(g[i].size()) == vars_, "substitution matrix must be square");
        MultiPoly li(vars_);
        for (int j = 0; j < vars_; ++j) {
            Exponent e(vars_, 0);
            e[j] = 1;
            li.add_term(e, g[i][j]);
        }
        images.push_back(std::move(li));
    }
    MultiPoly out(vars_);
    for (const auto& [e, c] : terms_) {
        MultiPoly prod = MultiPoly::monomial(Exponent(vars_, 0), c);
        for (int i = 0; i < vars_; ++i)
            for (int k = 0; k < e[i]; ++k) prod = prod * images[i];
        out = out + prod;
    }
    return out;
}

std::string MultiPoly::str() const {
    if (terms_.empty()) return "0";
    std::ostringstream out;
    bool first = true;
    // Print in decreasing lexicographic order, matching the monomial enumeration.
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        const auto& [e, c] = *it;
        Rational mag = abs(c);
        if (c < 0) out << (first ? "-" : " - ");
        else if (!first) out << " + ";
        std::string mono = monomial_name(e);
        if (mono == "1") out << mag.get_str();
        else if (mag == 1) out << mono;
        else out << mag.get_str() << "*" << mono;
        first = false;
    }
    return out.str();
}

MultiPoly operator+(const MultiPoly& a, const MultiPoly& b) {
    require(a.vars_ == b.vars_, "polynomials in different variable counts");
    MultiPoly out = a;
    for (const auto& [e, c] : b.terms_) out.add_term(e, c);
    return out;
}

MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
    require(a.vars_ == b.vars_, "polynomials in different variable counts");
    MultiPoly out(a.vars_);
    for (const auto& [ea, ca] : a.terms_)
        for (const auto& [eb, cb] : b.terms_) {
            Exponent e(a.vars_);
            for (int i = 0; i < a.vars_; ++i) e[i] = ea[i] + eb[i];
            out.add_term(e, ca * cb);
        }
    return out;
}

MultiPoly operator*(const Rational& c, const MultiPoly& a) {
    MultiPoly out(a.vars_);
    for (const auto& [e, x] : a.terms_) out.add_term(e, c * x);
    return out;
}

PolyMatrix df_matrix(const MultiPoly& F) {
    require(F.degree().has_value(), "df_matrix: zero polynomial");
    const int m = F.vars();
    PolyMatrix M(m, std::vector<MultiPoly>(m, MultiPoly(m)));
    for (int i = 0; i < m; ++i) {
        MultiPoly di = F.derivative(i);
        for (int j = 0; j < m; ++j) M[i][j] = di.times_variable(j);
    }
    return M;
}

namespace {

// Coefficient vectors of polys against a shared monomial index.
std::vector<RationalVector> coefficient_rows(const std::vector<MultiPoly>& polys) {
    std::map<Exponent, size_t> index;
    for (const auto& p : polys)
        for (const auto& [e, c] : p.terms()) index.emplace(e, 0);
    size_t k = 0;
    for (auto& [e, i] : index) i = k++;
    std::vector<RationalVector> rows;
    for (const auto& p : polys) {
        RationalVector r(index.size(), 0);
        for (const auto& [e, c] : p.terms()) r[index[e]] = c;
        rows.push_back(std::move(r));
    }
    return rows;
}

bool rv_less(const RationalVector& a, const RationalVector& b) {
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

}  // namespace

int df_relation_count(const MultiPoly& F) {
    PolyMatrix M = df_matrix(F);
    std::vector<MultiPoly> entries;
    for (const auto& row : M)
        for (const auto& p : row) entries.push_back(p);
    auto rows = coefficient_rows(entries);
    if (rows.empty() || rows[0].empty()) return static_cast<int>(entries.size());
    return static_cast<int>(entries.size()) - linear_rank(rows);
}

RationalVector torus_weight(const Exponent& I, const std::vector<RationalVector>& tw) {
    require(I.size() == tw.size(), "torus weight list does not match the variable count");
    RationalVector w(tw.empty() ? 0 : tw[0].size(), 0);
    for (size_t j = 0; j < I.size(); ++j)
        for (size_t c = 0; c < w.size(); ++c) w[c] += I[j] * tw[j][c];
    return w;
}

std::vector<RationalVector> sym_weights(int vars, int d, const std::vector<RationalVector>& tw) {
    std::vector<RationalVector> out;
    for (const auto& I : monomial_exponents(vars, d)) out.push_back(torus_weight(I, tw));
    std::sort(out.begin(), out.end(), rv_less);
    return out;
}

TangentNormal normal_rep_of(const MultiPoly& F, const std::vector<RationalVector>& tw,
                            const std::vector<MultiPoly>& extra_tangents) {
    const int m = F.vars();
    require(static_cast<int>(tw.size()) == m, "normal_rep_of: one torus weight per coordinate is required");
    auto deg = F.degree();
    require(deg.has_value(), "normal_rep_of: zero polynomial");

    auto eigen_weight = [&](const MultiPoly& p, const std::string& what) -> RationalVector {
        std::optional<RationalVector> w;
        for (const auto& [e, c] : p.terms()) {
            RationalVector we = torus_weight(e, tw);
            if (w && *w != we) fail(ErrorKind::invalid_argument, what + " is not an eigenvector of the declared torus");
            w = we;
        }
        return *w;
    };
    eigen_weight(F, "F");

    std::map<RationalVector, std::vector<MultiPoly>, decltype(&rv_less)> blocks(&rv_less);
    PolyMatrix M = df_matrix(F);
    for (const auto& row : M)
        for (const auto& p : row)
            if (!p.is_zero()) blocks[eigen_weight(p, "DF entry " + p.str())].push_back(p);
    for (const auto& p : extra_tangents) {
        if (p.is_zero()) continue;
        require(p.vars() == m && p.degree() == deg, "extra tangent must be homogeneous of the same degree as F");
        blocks[eigen_weight(p, "extra tangent " + p.str())].push_back(p);
    }

    std::map<RationalVector, int, decltype(&rv_less)> ambient(&rv_less);
    for (const auto& w : sym_weights(m, *deg, tw)) ++ambient[w];

    TangentNormal out;
    for (const auto& [w, polys] : blocks) {
        int r = linear_rank(coefficient_rows(polys));
        for (int k = 0; k < r; ++k) out.tangent.push_back(w);
        ambient[w] -= r;
        if (ambient[w] < 0) fail(ErrorKind::check_failure, "tangent block exceeds the ambient block at " + to_string(w));
    }
    for (const auto& [w, count] : ambient)
        for (int k = 0; k < count; ++k) out.normal.weights.push_back(w);
    std::sort(out.tangent.begin(), out.tangent.end(), rv_less);
    return out;
}

SemiInvariance check_semiinvariant(const MultiPoly& F, const std::vector<RationalVector>& g) {
    SemiInvariance r;
    require(!F.is_zero(), "check_semiinvariant: zero polynomial");
    MultiPoly G = F.substitute(g);
    const auto& [e0, c0] = *F.terms().begin();
    auto it = G.terms().find(e0);
    if (it == G.terms().end()) {
        r.message = "F(gx) lacks the monomial " + monomial_name(e0);
        return r;
    }
    Rational lambda = it->second / c0;
    if (!(G == lambda * F)) {
        r.message = "F(gx) is not a multiple of F: F(gx) = " + G.str();
        return r;
    }
    r.ok = true;
    r.lambda = lambda;
    r.message = "F(gx) = " + lambda.get_str() + " F";
    return r;
}

std::vector<RationalVector> subtorus_projection_weights(const std::vector<RationalVector>& cocharacters) {
    require(!cocharacters.empty(), "subtorus_projection_weights: no cocharacters");
    const size_t m = cocharacters[0].size();
    // Orthogonal basis of the span (exact Gram-Schmidt).
    std::vector<RationalVector> basis;
    for (const auto& u : cocharacters) {
        require(u.size() == m, "subtorus_projection_weights: length mismatch");
        RationalVector v = u;
        for (const auto& b : basis) {
            Rational c = dot(v, b) / dot(b, b);
            for (size_t k = 0; k < m; ++k) v[k] -= c * b[k];
        }
        if (dot(v, v) != 0) basis.push_back(std::move(v));
    }
    require(!basis.empty(), "subtorus_projection_weights: zero cocharacters");
    std::vector<RationalVector> tw(m, RationalVector(m, Rational(0)));
    for (size_t j = 0; j < m; ++j)
        for (const auto& b : basis) {
            Rational c = b[j] / dot(b, b);
            for (size_t k = 0; k < m; ++k) tw[j][k] += c * b[k];
        }
    return tw;
}

std::vector<RationalVector> line_projection_weights(const RationalVector& u) { return subtorus_projection_weights({u}); }

RationalVector cocharacter_pairing(const RationalVector& w, const std::vector<RationalVector>& cocharacters) {
    RationalVector out;
    for (const auto& u : cocharacters) out.push_back(dot(w, u));
    return out;
}

}  // namespace stratify
