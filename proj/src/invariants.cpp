#include "stratify/invariants.hpp"

#include <algorithm>
#include <cstdlib>
#include <functional>
#include <fstream>
#include <map>
#include <sstream>
#include <unordered_set>

namespace stratify {

namespace {

std::string scalar_str(const Rational& x) { return x.get_str(); }
std::string scalar_str(const EisInt& x) { return std::to_string(x.a) + "," + std::to_string(x.b); }

void scalar_parse(const std::string& s, Rational& out) {
    out = Rational(s);
    out.canonicalize();
}
void scalar_parse(const std::string& s, EisInt& out) {
    auto comma = s.find(',');
    if (comma == std::string::npos) fail(ErrorKind::parse_error, "bad Eisenstein entry '" + s + "' in group cache");
    out = EisInt(std::stoll(s.substr(0, comma)), std::stoll(s.substr(comma + 1)));
}

size_t scalar_hash(const Rational& x) { return std::hash<std::string>()(x.get_str()); }
size_t scalar_hash(const EisInt& x) { return EisIntHash()(x); }

template <typename S>
struct MatrixHash {
    size_t operator()(const SquareMatrix<S>& m) const {
        size_t h = 1469598103934665603ULL;
        for (const auto& x : m.a) h = (h ^ scalar_hash(x)) * 1099511628211ULL;
        return h;
    }
};

std::uint64_t fnv1a(const std::string& s) {
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : s) h = (h ^ c) * 1099511628211ULL;
    return h;
}

template <typename S>
std::string serialize(const SquareMatrix<S>& m) {
    std::string out;
    for (size_t i = 0; i < m.a.size(); ++i) {
        if (i) out += ' ';
        out += scalar_str(m.a[i]);
    }
    return out;
}

template <typename S>
S determinant(const SquareMatrix<S>& m, const std::vector<int>& idx) {
    // Laplace expansion along the first row of the principal submatrix on idx.
    const size_t k = idx.size();
    if (k == 0) return S(1);
    if (k == 1) return m(idx[0], idx[0]);
    std::vector<std::vector<S>> sub(k, std::vector<S>(k));
    for (size_t i = 0; i < k; ++i)
        for (size_t j = 0; j < k; ++j) sub[i][j] = m(idx[i], idx[j]);
    std::function<S(const std::vector<std::vector<S>>&)> det = [&](const std::vector<std::vector<S>>& a) -> S {
        const size_t n = a.size();
        if (n == 1) return a[0][0];
        if (n == 2) return a[0][0] * a[1][1] - a[0][1] * a[1][0];
        S total(0);
        for (size_t c = 0; c < n; ++c) {
            if (a[0][c] == S(0)) continue;
            std::vector<std::vector<S>> minor;
            for (size_t r = 1; r < n; ++r) {
                std::vector<S> row;
                for (size_t j = 0; j < n; ++j)
                    if (j != c) row.push_back(a[r][j]);
                minor.push_back(std::move(row));
            }
            S term = a[0][c] * det(minor);
            if (c % 2) total = total - term;
            else total = total + term;
        }
        return total;
    };
    return det(sub);
}

}  // namespace

template <typename S>
SquareMatrix<S> SquareMatrix<S>::identity(int n) {
    SquareMatrix m(n);
    for (int i = 0; i < n; ++i) m(i, i) = S(1);
    return m;
}

template <typename S>
SquareMatrix<S> SquareMatrix<S>::from_rows(const std::vector<std::vector<S>>& rows) {
    SquareMatrix m(static_cast<int>(rows.size()));
    for (int i = 0; i < m.n; ++i) {
        require(static_cast<int>(rows[i].size()) == m.n, "matrix must be square");
        for (int j = 0; j < m.n; ++j) m(i, j) = rows[i][j];
    }
    return m;
}

template <typename S>
std::string SquareMatrix<S>::str() const {
    std::string out = "[";
    for (int i = 0; i < n; ++i) {
        out += i ? ",[" : "[";
        for (int j = 0; j < n; ++j) {
            if (j) out += ",";
            if constexpr (std::is_same_v<S, EisInt>) out += (*this)(i, j).str();
            else out += (*this)(i, j).get_str();
        }
        out += "]";
    }
    return out + "]";
}

template <typename S>
SquareMatrix<S> operator*(const SquareMatrix<S>& x, const SquareMatrix<S>& y) {
    require(x.n == y.n, "matrix size mismatch");
    SquareMatrix<S> z(x.n);
    for (int i = 0; i < x.n; ++i)
        for (int k = 0; k < x.n; ++k) {
            const S& xik = x(i, k);
            if (xik == S(0)) continue;
            for (int j = 0; j < x.n; ++j) z(i, j) += xik * y(k, j);
        }
    return z;
}

EisMatrix conj_transpose(const EisMatrix& m) {
    EisMatrix t(m.n);
    for (int i = 0; i < m.n; ++i)
        for (int j = 0; j < m.n; ++j) t(j, i) = m(i, j).conj();
    return t;
}

template <typename S>
std::vector<S> elementary_symmetric(const SquareMatrix<S>& m) {
    std::vector<S> e(m.n + 1, S(0));
    for (unsigned mask = 0; mask < (1u << m.n); ++mask) {
        std::vector<int> idx;
        for (int i = 0; i < m.n; ++i)
            if (mask & (1u << i)) idx.push_back(i);
        e[idx.size()] += determinant(m, idx);
    }
    return e;
}

GroupCache GroupCache::from_env() {
    GroupCache c;
    if (const char* env = std::getenv("STRATIFY_CACHE"); env && *env) c.dir = std::filesystem::path(env);
    return c;
}

template <typename S>
FiniteMatrixGroup<S> close_group(const std::vector<SquareMatrix<S>>& generators, size_t cap, const GroupCache& cache) {
    require(!generators.empty(), "close_group needs at least one generator");
    const int dim = generators.front().n;
    for (const auto& g : generators) require(g.n == dim, "generators must have the same size");

    std::optional<std::filesystem::path> cache_file;
    if (cache.dir) {
        std::string key = std::to_string(dim);
        for (const auto& g : generators) key += "|" + serialize(g);
        std::ostringstream name;
        name << "group-" << std::hex << fnv1a(key) << ".txt";
        cache_file = *cache.dir / name.str();
        std::ifstream in(*cache_file);
        if (in) {
            FiniteMatrixGroup<S> group;
            group.dim = dim;
            size_t count = 0;
            std::string header;
            std::getline(in, header);
            std::istringstream hs(header);
            hs >> count;
            std::string line;
            while (std::getline(in, line) && group.elements.size() < count) {
                std::istringstream ls(line);
                SquareMatrix<S> m(dim);
                for (auto& x : m.a) {
                    std::string tok;
                    ls >> tok;
                    scalar_parse(tok, x);
                }
                group.elements.push_back(std::move(m));
            }
            if (group.elements.size() == count && count > 0) return group;
        }
    }

    std::unordered_set<SquareMatrix<S>, MatrixHash<S>> seen;
    std::vector<SquareMatrix<S>> frontier{SquareMatrix<S>::identity(dim)};
    seen.insert(frontier.front());
    // Right multiplication by generators reaches every product of generators;
    // for a finite group this is the whole group.
    while (!frontier.empty()) {
        std::vector<SquareMatrix<S>> next;
        for (const auto& x : frontier)
            for (const auto& g : generators) {
                SquareMatrix<S> y = x * g;
                if (seen.insert(y).second) {
                    if (seen.size() > cap)
                        fail(ErrorKind::resource_cap,
                             "group closure exceeded the cap of " + std::to_string(cap) + " elements");
                    next.push_back(std::move(y));
                }
            }
        frontier = std::move(next);
    }
    FiniteMatrixGroup<S> group;
    group.dim = dim;
    group.elements.assign(seen.begin(), seen.end());
    std::sort(group.elements.begin(), group.elements.end());

    if (cache_file) {
        std::error_code ec;
        std::filesystem::create_directories(*cache.dir, ec);
        std::ofstream out(*cache_file);
        if (out) {
            out << group.elements.size() << "\n";
            for (const auto& m : group.elements) out << serialize(m) << "\n";
        }
    }
    return group;
}

template <typename S>
TruncatedSeries molien(const FiniteMatrixGroup<S>& group, int generator_degree, int order) {
    require(generator_degree >= 1, "molien: generator degree must be positive");
    require(group.order() > 0, "molien: empty group");
    const int K = order / generator_degree;
    std::map<std::vector<S>, long> classes;
    for (const auto& m : group.elements) ++classes[elementary_symmetric(m)];

    // Sum over classes of count * 1/det(1 - sM), s = t^g.
    std::vector<S> total(K + 1, S(0));
    for (const auto& [e, count] : classes) {
        std::vector<S> c(e.size());
        for (size_t k = 0; k < e.size(); ++k) c[k] = (k % 2) ? S(0) - e[k] : e[k];
        std::vector<S> inv(K + 1, S(0));
        inv[0] = S(1);
        for (int n = 1; n <= K; ++n) {
            S acc(0);
            for (int k = 1; k <= n && k < static_cast<int>(c.size()); ++k) acc += c[k] * inv[n - k];
            inv[n] = S(0) - acc;
        }
        for (int n = 0; n <= K; ++n) total[n] += S(count) * inv[n];
    }

    TruncatedSeries out(order);
    const Integer g_order(static_cast<unsigned long>(group.order()));
    for (int n = 0; n <= K; ++n) {
        Rational coeff;
        if constexpr (std::is_same_v<S, EisInt>) {
            if (total[n].b != 0)
                fail(ErrorKind::check_failure, "molien: non-real character sum at degree " + std::to_string(n * generator_degree));
            coeff = Rational(Integer(static_cast<long>(total[n].a)), g_order);
        } else {
            coeff = total[n] / g_order;
        }
        coeff.canonicalize();
        if (!is_integer(coeff))
            fail(ErrorKind::check_failure,
                 "molien: non-integral coefficient " + coeff.get_str() + " at degree " + std::to_string(n * generator_degree));
        out.set(n * generator_degree, coeff);
    }
    if (out[0] != 1) fail(ErrorKind::check_failure, "molien: constant term is not 1");
    return out;
}

std::vector<std::vector<long>> abelian_quotient_hodge(const EisGroup& group, const std::optional<EisMatrix>& gram) {
    require(group.order() > 0, "abelian_quotient_betti: empty group");
    const int k = group.dim;
    const EisMatrix G = gram ? *gram : EisMatrix::identity(k);
    require(G.n == k, "hermitian form has the wrong size");
    std::map<std::vector<EisInt>, long> classes;
    for (const auto& m : group.elements) {
        if (!(conj_transpose(m) * G * m == G))
            fail(ErrorKind::check_failure, "matrix " + m.str() + " does not preserve the hermitian form");
        ++classes[elementary_symmetric(m)];
    }
    std::vector<std::vector<long>> h(k + 1, std::vector<long>(k + 1, 0));
    const long order = static_cast<long>(group.order());
    for (int p = 0; p <= k; ++p)
        for (int q = 0; q <= k; ++q) {
            EisInt sum(0);
            for (const auto& [e, count] : classes) sum += EisInt(count) * e[p] * e[q].conj();
            if (sum.b != 0 || sum.a % order != 0)
                fail(ErrorKind::check_failure, "character average for h^{" + std::to_string(p) + "," +
                                                   std::to_string(q) + "} is not an integer: " + sum.str());
            h[p][q] = sum.a / order;
        }
    return h;
}

BettiTable abelian_quotient_betti(const EisGroup& group, const std::optional<EisMatrix>& gram) {
    auto h = abelian_quotient_hodge(group, gram);
    const int k = group.dim;
    BettiTable t;
    t.complex_dim = k;
    t.betti.assign(2 * k + 1, 0);
    for (int p = 0; p <= k; ++p)
        for (int q = 0; q <= k; ++q) t.betti[p + q] += h[p][q];
    return t;
}

TruncatedSeries wreath_symmetrize(const TruncatedSeries& p, int n) {
    require(n == 2 || n == 3, "wreath_symmetrize supports n = 2 or 3");
    if (!p.odd_part_zero()) fail(ErrorKind::check_failure, "wreath_symmetrize: input has odd-degree classes");
    TruncatedSeries out(p.order());
    if (n == 2) {
        out = (p * p + p.substitute_power(2)).scale(Rational(1, 2));
    } else {
        out = (p * p * p + (p * p.substitute_power(2)).scale(3) + p.substitute_power(3).scale(2)).scale(Rational(1, 6));
    }
    if (!out.has_integer_coeffs()) fail(ErrorKind::check_failure, "wreath_symmetrize: non-integral result");
    return out;
}

BettiTable wreath_symmetrize(const BettiTable& p, int n) {
    require(n == 2 || n == 3, "wreath_symmetrize supports n = 2 or 3");
    const int dim = n * p.complex_dim;
    TruncatedSeries s(2 * dim);
    for (int j = 0; j <= 2 * p.complex_dim; ++j) s.set(j, p.betti[j]);
    return BettiTable::from_series(wreath_symmetrize(s, n), dim);
}

template struct SquareMatrix<Rational>;
template struct SquareMatrix<EisInt>;
template SquareMatrix<Rational> operator*(const SquareMatrix<Rational>&, const SquareMatrix<Rational>&);
template SquareMatrix<EisInt> operator*(const SquareMatrix<EisInt>&, const SquareMatrix<EisInt>&);
template std::vector<Rational> elementary_symmetric(const SquareMatrix<Rational>&);
template std::vector<EisInt> elementary_symmetric(const SquareMatrix<EisInt>&);
template RationalGroup close_group(const std::vector<RationalMatrix>&, size_t, const GroupCache&);
template EisGroup close_group(const std::vector<EisMatrix>&, size_t, const GroupCache&);
template TruncatedSeries molien(const RationalGroup&, int, int);
template TruncatedSeries molien(const EisGroup&, int, int);

}  // namespace stratify
