#include "stratify/eisenstein.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

namespace stratify {

namespace {

const EisInt kTheta = EisInt::theta();
const EisInt kThetaBar = EisInt::theta().conj();

EisLattice tridiagonal(const std::string& name, int k) {
    EisLattice L{name, EisMatrix(k)};
    for (int i = 0; i < k; ++i) {
        L.gram(i, i) = 3;
        if (i + 1 < k) {
            L.gram(i, i + 1) = kTheta;
            L.gram(i + 1, i) = kThetaBar;
        }
    }
    return L;
}

IntegerMatrix cartan(const std::vector<std::pair<int, int>>& edges, int n) {
    IntegerMatrix g(n, std::vector<Integer>(n, 0));
    for (int i = 0; i < n; ++i) g[i][i] = 2;
    for (auto [a, b] : edges) g[a][b] = g[b][a] = -1;
    return g;
}

ZLattice negated(const std::string& name, IntegerMatrix g) {
    for (auto& row : g)
        for (auto& x : row) x = -x;
    return {name, g};
}

// Rational upper-triangular decomposition Q(x) = sum_i D_i (x_i + sum_{j>i} mu_ij x_j)^2.
struct Ldl {
    std::vector<Rational> d;
    std::vector<RationalVector> mu;
    bool degenerate = false;
};

Ldl ldl(const IntegerMatrix& g) {
    const int n = static_cast<int>(g.size());
    Ldl r;
    r.d.assign(n, 0);
    r.mu.assign(n, RationalVector(n, 0));
    for (int i = 0; i < n; ++i) {
        Rational di = g[i][i];
        for (int k = 0; k < i; ++k) di -= r.mu[k][i] * r.mu[k][i] * r.d[k];
        r.d[i] = di;
        if (di == 0) {
            r.degenerate = true;
            return r;
        }
        for (int j = i + 1; j < n; ++j) {
            Rational s = g[i][j];
            for (int k = 0; k < i; ++k) s -= r.mu[k][i] * r.mu[k][j] * r.d[k];
            r.mu[i][j] = s / di;
        }
    }
    return r;
}

bool rv_less(const IntVector& a, const IntVector& b) { return a < b; }

// Smith normal form D = U A V; only V is tracked.
struct Smith {
    IntegerMatrix d;
    IntegerMatrix v;
};

Smith smith(IntegerMatrix a) {
    const int n = static_cast<int>(a.size());
    IntegerMatrix v(n, std::vector<Integer>(n, 0));
    for (int i = 0; i < n; ++i) v[i][i] = 1;
    auto swap_cols = [&](int i, int j) {
        for (int r = 0; r < n; ++r) {
            std::swap(a[r][i], a[r][j]);
            std::swap(v[r][i], v[r][j]);
        }
    };
    auto add_col = [&](int dst, int src, const Integer& f) {  // col_dst += f * col_src
        for (int r = 0; r < n; ++r) {
            a[r][dst] += f * a[r][src];
            v[r][dst] += f * v[r][src];
        }
    };
    auto add_row = [&](int dst, int src, const Integer& f) {
        for (int c = 0; c < n; ++c) a[dst][c] += f * a[src][c];
    };
    for (int t = 0; t < n; ++t) {
        while (true) {
            int pr = -1, pc = -1;
            for (int r = t; r < n; ++r)
                for (int c = t; c < n; ++c)
                    if (a[r][c] != 0 && (pr < 0 || abs(a[r][c]) < abs(a[pr][pc]))) {
                        pr = r;
                        pc = c;
                    }
            if (pr < 0) return {a, v};
            std::swap(a[t], a[pr]);
            swap_cols(t, pc);
            bool clean = true;
            for (int r = t + 1; r < n; ++r) {
                Integer q;
                mpz_fdiv_q(q.get_mpz_t(), a[r][t].get_mpz_t(), a[t][t].get_mpz_t());
                if (q != 0) add_row(r, t, -q);
                if (a[r][t] != 0) clean = false;
            }
            for (int c = t + 1; c < n; ++c) {
                Integer q;
                mpz_fdiv_q(q.get_mpz_t(), a[t][c].get_mpz_t(), a[t][t].get_mpz_t());
                if (q != 0) add_col(c, t, -q);
                if (a[t][c] != 0) clean = false;
            }
            if (!clean) continue;
            bool divides = true;
            for (int r = t + 1; r < n && divides; ++r)
                for (int c = t + 1; c < n; ++c)
                    if (a[r][c] % a[t][t] != 0) {
                        add_row(t, r, 1);
                        divides = false;
                        break;
                    }
            if (divides) break;
        }
    }
    return {a, v};
}

// Row echelon (Hermite-style) basis of the integer row span.
IntegerMatrix row_basis(IntegerMatrix rows, int cols) {
    int r = 0;
    for (int c = 0; c < cols && r < static_cast<int>(rows.size()); ++c) {
        while (true) {
            int p = -1;
            for (int i = r; i < static_cast<int>(rows.size()); ++i)
                if (rows[i][c] != 0 && (p < 0 || abs(rows[i][c]) < abs(rows[p][c]))) p = i;
            if (p < 0) break;
            std::swap(rows[r], rows[p]);
            bool done = true;
            for (int i = r + 1; i < static_cast<int>(rows.size()); ++i) {
                if (rows[i][c] == 0) continue;
                Integer q;
                mpz_fdiv_q(q.get_mpz_t(), rows[i][c].get_mpz_t(), rows[r][c].get_mpz_t());
                for (int j = 0; j < cols; ++j) rows[i][j] -= q * rows[r][j];
                if (rows[i][c] != 0) done = false;
            }
            if (done) break;
        }
        if (rows[r][c] != 0) {
            if (rows[r][c] < 0)
                for (auto& x : rows[r]) x = -x;
            ++r;
        }
    }
    rows.resize(r);
    return rows;
}

Integer integer_det(IntegerMatrix a) {
    const int n = static_cast<int>(a.size());
    Integer prev = 1;
    int sign = 1;
    for (int k = 0; k + 1 < n; ++k) {
        if (a[k][k] == 0) {
            int p = k + 1;
            while (p < n && a[p][k] == 0) ++p;
            if (p == n) return 0;
            std::swap(a[k], a[p]);
            sign = -sign;
        }
        for (int i = k + 1; i < n; ++i)
            for (int j = k + 1; j < n; ++j) a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
        prev = a[k][k];
    }
    if (n == 0) return 1;
    return sign * a[n - 1][n - 1];
}

}  // namespace

EisLattice eis_lattice(const std::string& name) {
    if (name == "E1") return tridiagonal("E1", 1);
    if (name == "E2") return tridiagonal("E2", 2);
    if (name == "E3") return tridiagonal("E3", 3);
    if (name == "E4") return tridiagonal("E4", 4);
    if (name == "H") {
        EisLattice L{"H", EisMatrix(2)};
        L.gram(0, 1) = kTheta;
        L.gram(1, 0) = kThetaBar;
        return L;
    }
    fail(ErrorKind::invalid_argument, "unknown Eisenstein lattice '" + name + "'");
}

EisLattice eis_direct_sum(const std::vector<EisLattice>& parts) {
    int n = 0;
    std::string name;
    for (const auto& p : parts) {
        n += p.rank();
        name += (name.empty() ? "" : "+") + p.name;
    }
    EisLattice L{name, EisMatrix(n)};
    int off = 0;
    for (const auto& p : parts) {
        for (int i = 0; i < p.rank(); ++i)
            for (int j = 0; j < p.rank(); ++j) L.gram(off + i, off + j) = p.gram(i, j);
        off += p.rank();
    }
    return L;
}

EisInt hermitian(const EisLattice& L, const std::vector<EisInt>& x, const std::vector<EisInt>& y) {
    require(static_cast<int>(x.size()) == L.rank() && static_cast<int>(y.size()) == L.rank(),
            "hermitian: vector length differs from the lattice rank");
    EisInt s(0);
    for (int i = 0; i < L.rank(); ++i)
        for (int j = 0; j < L.rank(); ++j) s += x[i].conj() * L.gram(i, j) * y[j];
    return s;
}

ZLattice z_lattice(const std::string& name) {
    if (name == "A2(-1)") return negated(name, cartan({{0, 1}}, 2));
    if (name == "D4(-1)") return negated(name, cartan({{0, 1}, {1, 2}, {1, 3}}, 4));
    // Bourbaki labelling: 1-3-4-5-6 with 2 attached to 4.
    if (name == "E6(-1)") return negated(name, cartan({{0, 2}, {2, 3}, {3, 4}, {4, 5}, {1, 3}}, 6));
    if (name == "E8(-1)")
        return negated(name, cartan({{0, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 6}, {6, 7}, {1, 3}}, 8));
    if (name == "U") return {"U", {{0, 1}, {1, 0}}};
    fail(ErrorKind::invalid_argument, "unknown integral lattice '" + name + "'");
}

ZLattice z_direct_sum(const std::vector<ZLattice>& parts) {
    int n = 0;
    std::string name;
    for (const auto& p : parts) {
        n += p.rank();
        name += (name.empty() ? "" : "+") + p.name;
    }
    ZLattice L{name, IntegerMatrix(n, std::vector<Integer>(n, 0))};
    int off = 0;
    for (const auto& p : parts) {
        for (int i = 0; i < p.rank(); ++i)
            for (int j = 0; j < p.rank(); ++j) L.gram[off + i][off + j] = p.gram[i][j];
        off += p.rank();
    }
    return L;
}

Integer z_determinant(const ZLattice& L) { return integer_det(L.gram); }

bool is_even(const ZLattice& L) {
    for (int i = 0; i < L.rank(); ++i)
        if (L.gram[i][i] % 2 != 0) return false;
    return true;
}

Integer z_pair(const ZLattice& L, const IntVector& x, const IntVector& y) {
    Integer s = 0;
    for (int i = 0; i < L.rank(); ++i) {
        if (x[i] == 0) continue;
        for (int j = 0; j < L.rank(); ++j)
            if (y[j] != 0) s += L.gram[i][j] * x[i] * y[j];
    }
    return s;
}

Rational z_pair(const ZLattice& L, const RationalVector& x, const RationalVector& y) {
    Rational s = 0;
    for (int i = 0; i < L.rank(); ++i) {
        if (x[i] == 0) continue;
        for (int j = 0; j < L.rank(); ++j)
            if (y[j] != 0) s += Rational(L.gram[i][j]) * x[i] * y[j];
    }
    return s;
}

Definiteness definiteness(const ZLattice& L) {
    Ldl pos = ldl(L.gram);
    if (pos.degenerate) {
        // A zero pivot can come from the ordering; detect genuine degeneracy by the determinant.
        if (z_determinant(L) == 0) return Definiteness::degenerate;
        return Definiteness::indefinite;
    }
    bool all_pos = std::all_of(pos.d.begin(), pos.d.end(), [](const Rational& x) { return x > 0; });
    bool all_neg = std::all_of(pos.d.begin(), pos.d.end(), [](const Rational& x) { return x < 0; });
    if (all_pos) return Definiteness::positive;
    if (all_neg) return Definiteness::negative;
    return Definiteness::indefinite;
}

ZLattice z_form(const EisLattice& L) {
    const int k = L.rank();
    const EisInt powers[2] = {EisInt(1), EisInt::omega()};
    ZLattice Z{L.name + "_Z", IntegerMatrix(2 * k, std::vector<Integer>(2 * k, 0))};
    for (int i = 0; i < k; ++i)
        for (int s = 0; s < 2; ++s)
            for (int j = 0; j < k; ++j)
                for (int t = 0; t < 2; ++t) {
                    EisInt h = powers[s].conj() * powers[t] * L.gram(i, j);
                    // -(2/3)(a - b/2) = (b - 2a)/3
                    std::int64_t num = h.b - 2 * h.a;
                    if (num % 3 != 0)
                        fail(ErrorKind::check_failure, "z_form: hermitian form does not take values in theta*E");
                    Z.gram[2 * i + s][2 * j + t] = num / 3;
                }
    return Z;
}

std::vector<EisInt> to_eisenstein(const IntVector& v) {
    require(v.size() % 2 == 0, "to_eisenstein: odd length");
    std::vector<EisInt> x;
    for (size_t i = 0; i < v.size(); i += 2) x.emplace_back(v[i], v[i + 1]);
    return x;
}

IntVector from_eisenstein(const std::vector<EisInt>& x) {
    IntVector v;
    for (const auto& e : x) {
        v.push_back(e.a);
        v.push_back(e.b);
    }
    return v;
}

std::vector<IntVector> vectors_of_norm(const ZLattice& L, long norm) {
    Definiteness def = definiteness(L);
    if (def != Definiteness::positive && def != Definiteness::negative)
        fail(ErrorKind::invalid_argument, "short-vector enumeration needs a definite lattice");
    const int n = L.rank();
    IntegerMatrix g = L.gram;
    if (def == Definiteness::negative)
        for (auto& row : g)
            for (auto& x : row) x = -x;
    Ldl r = ldl(g);
    std::vector<double> d(n);
    std::vector<std::vector<double>> mu(n, std::vector<double>(n, 0.0));
    for (int i = 0; i < n; ++i) {
        d[i] = r.d[i].get_d();
        for (int j = i + 1; j < n; ++j) mu[i][j] = r.mu[i][j].get_d();
    }
    const double bound = static_cast<double>(norm) * (1 + 1e-9) + 1e-9;
    std::vector<IntVector> out;
    IntVector x(n, 0);
    ZLattice pos{L.name, g};
    // Depth-first over coordinates n-1 .. 0 with the remaining budget.
    std::function<void(int, double)> rec = [&](int i, double remaining) {
        if (i < 0) {
            if (z_pair(pos, x, x) == norm) out.push_back(x);
            return;
        }
        double c = 0;
        for (int j = i + 1; j < n; ++j) c += mu[i][j] * x[j];
        double rad = std::sqrt(std::max(0.0, remaining / d[i])) + 1e-9;
        long lo = static_cast<long>(std::ceil(-c - rad));
        long hi = static_cast<long>(std::floor(-c + rad));
        for (long xi = lo; xi <= hi; ++xi) {
            x[i] = xi;
            double t = xi + c;
            double left = remaining - d[i] * t * t;
            if (left < -1e-7) continue;
            rec(i - 1, left);
        }
        x[i] = 0;
    };
    rec(n - 1, bound);
    std::sort(out.begin(), out.end(), rv_less);
    return out;
}

std::vector<IntVector> enumerate_roots(const ZLattice& L) { return vectors_of_norm(L, 2); }

std::vector<std::vector<EisInt>> eisenstein_roots(const EisLattice& L) {
    std::vector<std::vector<EisInt>> out;
    for (const auto& v : enumerate_roots(z_form(L))) {
        auto r = to_eisenstein(v);
        if (hermitian(L, r, r) != EisInt(3))
            fail(ErrorKind::check_failure, "a -2 vector of the integral form is not an Eisenstein root");
        out.push_back(std::move(r));
    }
    return out;
}

EisMatrix triflection(const EisLattice& L, const std::vector<EisInt>& r) {
    const int k = L.rank();
    EisInt rr = hermitian(L, r, r);
    require(!rr.is_zero(), "triflection: isotropic vector");
    EisMatrix m = EisMatrix::identity(k);
    const EisInt one_minus_omega = EisInt(1) - EisInt::omega();
    for (int j = 0; j < k; ++j) {
        EisInt rej(0);
        for (int i = 0; i < k; ++i) rej += r[i].conj() * L.gram(i, j);
        EisInt c = eis_exact_div(one_minus_omega * rej, rr);
        for (int i = 0; i < k; ++i) m(i, j) -= c * r[i];
    }
    EisMatrix cube = m * m * m;
    if (!(cube == EisMatrix::identity(k))) fail(ErrorKind::check_failure, "triflection does not have order 3");
    if (!(conj_transpose(m) * L.gram * m == L.gram))
        fail(ErrorKind::check_failure, "triflection does not preserve the hermitian form");
    return m;
}

std::vector<EisMatrix> triflections(const EisLattice& L) {
    std::set<EisMatrix> seen;
    for (const auto& r : eisenstein_roots(L)) seen.insert(triflection(L, r));
    return {seen.begin(), seen.end()};
}

EisGroup weyl_group(const EisLattice& L, size_t cap, const GroupCache& cache) {
    return close_group(triflections(L), cap, cache);
}

EisGroup unit_monomial_group(int n) {
    std::vector<EisMatrix> gens;
    for (int i = 0; i < n; ++i) {
        EisMatrix w = EisMatrix::identity(n);
        w(i, i) = EisInt::omega();
        gens.push_back(w);
        EisMatrix m = EisMatrix::identity(n);
        m(i, i) = -1;
        gens.push_back(m);
    }
    for (int i = 0; i + 1 < n; ++i) {
        EisMatrix p(n);
        for (int j = 0; j < n; ++j) p(j, j) = 1;
        p(i, i) = 0;
        p(i + 1, i + 1) = 0;
        p(i, i + 1) = 1;
        p(i + 1, i) = 1;
        gens.push_back(p);
    }
    return close_group(gens);
}

Integer DiscriminantGroup::order() const {
    Integer o = 1;
    for (const auto& f : invariant_factors) o *= f;
    return o;
}

Rational mod2(const Rational& q) {
    Rational r = q;
    Integer fl;
    Rational half = r / 2;
    mpz_fdiv_q(fl.get_mpz_t(), half.get_num_mpz_t(), half.get_den_mpz_t());
    r -= 2 * Rational(fl);
    r.canonicalize();
    return r;
}

DiscriminantGroup discriminant_form(const ZLattice& L) {
    if (z_determinant(L) == 0) fail(ErrorKind::invalid_argument, "discriminant_form: degenerate lattice");
    Smith s = smith(L.gram);
    DiscriminantGroup out;
    const int n = L.rank();
    for (int i = 0; i < n; ++i) {
        Integer di = abs(s.d[i][i]);
        if (di == 1) continue;
        RationalVector g(n);
        for (int r = 0; r < n; ++r) {
            g[r] = Rational(s.v[r][i], di);
            g[r].canonicalize();
        }
        out.invariant_factors.push_back(di);
        out.q_values.push_back(mod2(z_pair(L, g, g)));
        out.generators.push_back(std::move(g));
    }
    return out;
}

Integer divisibility(const IntVector& v, const ZLattice& L) {
    require(static_cast<int>(v.size()) == L.rank(), "divisibility: length mismatch");
    Integer g = 0;
    for (int i = 0; i < L.rank(); ++i) {
        Integer s = 0;
        for (int j = 0; j < L.rank(); ++j) s += L.gram[i][j] * v[j];
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), s.get_mpz_t());
    }
    require(g != 0, "divisibility of the zero vector");
    return g;
}

Integer divisibility(const RationalVector& v, const ZLattice& L) {
    require(static_cast<int>(v.size()) == L.rank(), "divisibility: length mismatch");
    Integer g = 0;
    for (int i = 0; i < L.rank(); ++i) {
        Rational s = 0;
        for (int j = 0; j < L.rank(); ++j) s += Rational(L.gram[i][j]) * v[j];
        if (!is_integer(s)) fail(ErrorKind::check_failure, "divisibility: vector pairs non-integrally with the lattice");
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), s.get_num_mpz_t());
    }
    require(g != 0, "divisibility of the zero vector");
    return g;
}

RationalVector Overlattice::coordinates_of(const RationalVector& v) const {
    // Solve x B = v for the row basis B.
    const int n = static_cast<int>(basis.size());
    std::vector<RationalVector> a(n, RationalVector(n + 1));
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) a[i][j] = basis[j][i];
        a[i][n] = v[i];
    }
    for (int c = 0; c < n; ++c) {
        int p = c;
        while (a[p][c] == 0) ++p;
        std::swap(a[c], a[p]);
        for (int r = 0; r < n; ++r) {
            if (r == c || a[r][c] == 0) continue;
            Rational f = a[r][c] / a[c][c];
            for (int j = c; j <= n; ++j) a[r][j] -= f * a[c][j];
        }
    }
    RationalVector x(n);
    for (int i = 0; i < n; ++i) x[i] = a[i][n] / a[i][i];
    return x;
}

Overlattice glue_overlattice(const ZLattice& L, const std::vector<RationalVector>& glue) {
    const int n = L.rank();
    if (z_determinant(L) == 0) fail(ErrorKind::invalid_argument, "glue_overlattice: degenerate lattice");
    for (size_t a = 0; a < glue.size(); ++a) {
        require(static_cast<int>(glue[a].size()) == n, "glue vector has the wrong length");
        for (int i = 0; i < n; ++i) {
            RationalVector e(n, 0);
            e[i] = 1;
            if (!is_integer(z_pair(L, glue[a], e)))
                fail(ErrorKind::check_failure, "glue vector " + to_string(glue[a]) + " is not in the dual lattice");
        }
        Rational q = z_pair(L, glue[a], glue[a]);
        if (mod2(q) != 0)
            fail(ErrorKind::check_failure, "glue vector " + to_string(glue[a]) + " is not isotropic: q = " +
                                               mod2(q).get_str() + " mod 2");
        for (size_t b = a + 1; b < glue.size(); ++b)
            if (!is_integer(z_pair(L, glue[a], glue[b])))
                fail(ErrorKind::check_failure, "glue vectors pair non-integrally");
    }
    Integer den = 1;
    for (const auto& g : glue)
        for (const auto& x : g) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), x.get_den_mpz_t());
    IntegerMatrix rows;
    for (int i = 0; i < n; ++i) {
        std::vector<Integer> r(n, 0);
        r[i] = den;
        rows.push_back(r);
    }
    for (const auto& g : glue) {
        std::vector<Integer> r(n);
        for (int i = 0; i < n; ++i) r[i] = Rational(g[i] * den).get_num();
        rows.push_back(r);
    }
    IntegerMatrix H = row_basis(rows, n);
    Overlattice out;
    Integer detH = abs(integer_det(H));
    Integer denn = 1;
    for (int i = 0; i < n; ++i) denn *= den;
    out.index = denn / detH;
    for (const auto& row : H) {
        RationalVector b(n);
        for (int i = 0; i < n; ++i) {
            b[i] = Rational(row[i], den);
            b[i].canonicalize();
        }
        out.basis.push_back(std::move(b));
    }
    out.lattice.name = L.name + "~";
    out.lattice.gram.assign(n, std::vector<Integer>(n, 0));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            Rational p = z_pair(L, out.basis[i], out.basis[j]);
            if (!is_integer(p)) fail(ErrorKind::check_failure, "glued lattice is not integral");
            out.lattice.gram[i][j] = p.get_num();
        }
    if (!is_even(out.lattice)) fail(ErrorKind::check_failure, "glued lattice is not even");
    out.discriminant = discriminant_form(out.lattice);
    return out;
}

BoundaryResult boundary_betti(const BoundarySpec& spec) {
    BoundaryResult res;
    BettiTable acc = BettiTable::from_even(0, {1});
    for (const auto& f : spec.factors) {
        BettiTable t = abelian_quotient_betti(f.group, f.gram);
        if (!t.as_series().odd_part_zero())
            fail(ErrorKind::check_failure, "factor " + f.label + " has odd cohomology; symmetrisation is not supported");
        res.factor_tables.push_back(t);
        if (f.copies > 1) t = wreath_symmetrize(t, f.copies);
        res.notes.push_back(f.label + ": |G| = " + std::to_string(f.group.order()) +
                            (f.copies > 1 ? ", symmetrised over " + std::to_string(f.copies) + " copies" : ""));
        acc = kunneth(acc, t);
    }
    for (const auto& e : spec.extra_factors) acc = kunneth(acc, e);
    for (const auto& s : spec.trivial_symmetries) {
        if (s.citation.empty())
            fail(ErrorKind::check_failure, "declared trivial symmetry '" + s.name + "' has no citation");
        res.notes.push_back(s.name + " acts trivially on cohomology (" + s.citation + ")");
    }
    res.table = acc;
    return res;
}

SplittingVectorCheck check_splitting_vector() {
    SplittingVectorCheck c;
    const EisLattice E3 = eis_lattice("E3");
    const ZLattice E6 = z_form(E3);
    const int m = E6.rank();

    for (const auto& v : vectors_of_norm(E6, 12)) {
        if (divisibility(v, E6) != 3) continue;
        c.z = v;
        break;
    }
    if (c.z.empty()) fail(ErrorKind::check_failure, "no norm -12 vector of divisibility 3 found");
    c.z_norm = z_pair(E6, c.z, c.z);
    c.z_div = divisibility(c.z, E6);

    // z = -theta v inside E3.
    std::vector<EisInt> ze = to_eisenstein(c.z);
    std::vector<EisInt> v;
    c.z_theta_divisible = true;
    for (const auto& x : ze) {
        if (!eis_divides(-kTheta, x)) {
            c.z_theta_divisible = false;
            break;
        }
        v.push_back(eis_exact_div(x, -kTheta));
    }

    const ZLattice L3 = z_direct_sum({E6, E6, E6});
    RationalVector glue(3 * m);
    for (int k = 0; k < 3; ++k)
        for (int i = 0; i < m; ++i) glue[k * m + i] = Rational(c.z[i], 3);
    for (auto& x : glue) x.canonicalize();
    c.glued = glue_overlattice(L3, {glue});

    IntVector z12(3 * m, 0);
    for (int i = 0; i < m; ++i) {
        z12[i] = c.z[i];
        z12[m + i] = -c.z[i];
    }
    c.z12_norm = z_pair(L3, z12, z12);
    {
        RationalVector z12q(z12.begin(), z12.end());
        Integer g = 0;
        for (const auto& b : c.glued.basis) {
            Rational p = z_pair(L3, b, z12q);
            if (!is_integer(p)) fail(ErrorKind::check_failure, "z1 - z2 pairs non-integrally with the glued lattice");
            mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), p.get_num_mpz_t());
        }
        c.z12_div = g;
    }
    if (!c.z_theta_divisible) return c;

    // w = (v, -v, 0) + theta (1, w) in 3 E3 + H.
    const EisLattice M = eis_direct_sum({E3, E3, E3, eis_lattice("H")});
    c.w.assign(M.rank(), EisInt(0));
    for (int i = 0; i < 3; ++i) {
        c.w[i] = v[i];
        c.w[3 + i] = -v[i];
    }
    c.w[9] = kTheta;
    c.w[10] = kTheta * EisInt::omega();
    c.w_norm = hermitian(M, c.w, c.w);

    // Ideal generated by <b, w> over an E-basis of the glued lattice plus H.
    EisInt g(0);
    for (const auto& b : c.glued.basis) {
        IntVector b3;
        for (const auto& x : b) {
            Rational y = x * 3;
            if (!is_integer(y)) fail(ErrorKind::check_failure, "glued basis has denominators other than 3");
            b3.push_back(y.get_num().get_si());
        }
        std::vector<EisInt> be = to_eisenstein(b3);
        be.resize(M.rank(), EisInt(0));
        g = eis_gcd(g, eis_exact_div(hermitian(M, be, c.w), EisInt(3)));
    }
    for (int k = 9; k < 11; ++k) {
        std::vector<EisInt> e(M.rank(), EisInt(0));
        e[k] = 1;
        g = eis_gcd(g, hermitian(M, e, c.w));
    }
    c.w_div = g;
    c.ok = c.z_norm == -12 && c.z_div == 3 && c.glued.index == 3 && c.glued.discriminant.order() == 3 &&
           c.z12_norm == -24 && c.z12_div == 3 && c.w_norm == EisInt(3) && c.w_div.norm() == 9;
    return c;
}

}  // namespace stratify
