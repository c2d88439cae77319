#include "stratify/strata.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace stratify {

namespace {

using i128 = __int128;

Integer lcm_of_denominators(const std::vector<RationalVector>& vs) {
    Integer l = 1;
    for (const auto& v : vs)
        for (const auto& x : v) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.get_den_mpz_t());
    return l;
}

// Bareiss fraction-free determinant; T is an exact integer type.
template <typename T>
T bareiss_det(std::vector<std::vector<T>> a) {
    const size_t n = a.size();
    T prev = 1;
    int sign = 1;
    for (size_t k = 0; k + 1 < n; ++k) {
        if (a[k][k] == 0) {
            size_t p = k + 1;
            while (p < n && a[p][k] == 0) ++p;
            if (p == n) return 0;
            std::swap(a[k], a[p]);
            sign = -sign;
        }
        for (size_t i = k + 1; i < n; ++i)
            for (size_t j = k + 1; j < n; ++j) a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
        prev = a[k][k];
    }
    return sign > 0 ? a[n - 1][n - 1] : T(-a[n - 1][n - 1]);
}

template <typename T>
T abs_val(const T& x) {
    return x < 0 ? T(-x) : x;
}

template <typename T>
T gcd_val(T a, T b) {
    a = abs_val(a);
    b = abs_val(b);
    while (b != 0) {
        T r = a % b;
        a = b;
        b = r;
    }
    return a;
}

template <>
Integer gcd_val<Integer>(Integer a, Integer b) {
    Integer g;
    mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return g;
}

template <typename T>
Integer to_integer(const T& x) {
    if constexpr (std::is_same_v<T, Integer>) {
        return x;
    } else {
        // Split a 128-bit value into two 64-bit halves.
        bool neg = x < 0;
        unsigned __int128 u = neg ? static_cast<unsigned __int128>(-x) : static_cast<unsigned __int128>(x);
        Integer hi(static_cast<unsigned long>(u >> 64));
        Integer lo(static_cast<unsigned long>(u & 0xFFFFFFFFFFFFFFFFULL));
        Integer r = (hi << 64) + lo;
        return neg ? Integer(-r) : r;
    }
}

// Enumerate closest-point candidates. Points are integer vectors (already scaled).
// Returns the set of distinct candidates as reduced (numerators, denominator) tuples
// with the denominator last and positive.
template <typename T>
std::set<std::vector<T>> enumerate_candidates(const std::vector<std::vector<T>>& pts, int max_size) {
    const int N = static_cast<int>(pts.size());
    const size_t dim = pts.empty() ? 0 : pts[0].size();
    std::vector<std::vector<T>> gram(N, std::vector<T>(N, 0));
    for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j) {
            T s = 0;
            for (size_t c = 0; c < dim; ++c) s += pts[i][c] * pts[j][c];
            gram[i][j] = s;
        }
    std::set<std::vector<T>> out;
    for (int k = 1; k <= std::min(max_size, N); ++k) {
        std::vector<int> idx(k);
        for (int i = 0; i < k; ++i) idx[i] = i;
        std::vector<std::vector<T>> A(k + 1, std::vector<T>(k + 1, 0));
        while (true) {
            for (int i = 0; i < k; ++i) {
                for (int j = 0; j < k; ++j) A[i][j] = gram[idx[i]][idx[j]];
                A[i][k] = 1;
                A[k][i] = 1;
            }
            A[k][k] = 0;
            T det = bareiss_det(A);
            if (det != 0) {
                // lambda_i = det(A with column i replaced by e_k) / det
                std::vector<T> num(k);
                bool inside = true;
                for (int i = 0; i < k && inside; ++i) {
                    auto Ai = A;
                    for (int r = 0; r <= k; ++r) Ai[r][i] = (r == k) ? 1 : 0;
                    num[i] = bareiss_det(Ai);
                    if ((num[i] < 0 && det > 0) || (num[i] > 0 && det < 0)) inside = false;
                }
                if (inside) {
                    std::vector<T> beta(dim + 1, 0);
                    for (size_t c = 0; c < dim; ++c) {
                        T s = 0;
                        for (int i = 0; i < k; ++i) s += num[i] * pts[idx[i]][c];
                        beta[c] = s;
                    }
                    T den = det;
                    if (den < 0) {
                        den = -den;
                        for (size_t c = 0; c < dim; ++c) beta[c] = -beta[c];
                    }
                    T g = den;
                    for (size_t c = 0; c < dim; ++c) g = gcd_val(g, beta[c]);
                    for (size_t c = 0; c < dim; ++c) beta[c] /= g;
                    beta[dim] = den / g;
                    out.insert(std::move(beta));
                }
            }
            int p = k - 1;
            while (p >= 0 && idx[p] == N - k + p) --p;
            if (p < 0) break;
            ++idx[p];
            for (int q = p + 1; q < k; ++q) idx[q] = idx[q - 1] + 1;
        }
    }
    return out;
}

long long binomial_sum(int N, int max_size, long long cap) {
    long long total = 0;
    for (int k = 1; k <= std::min(max_size, N); ++k) {
        long double c = 1;
        for (int i = 0; i < k; ++i) c = c * (N - i) / (i + 1);
        total += static_cast<long long>(c + 0.5L);
        if (total > cap) return total;
    }
    return total;
}

bool lex_less(const RationalVector& a, const RationalVector& b) {
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

}  // namespace

int linear_rank(const std::vector<RationalVector>& vectors) {
    if (vectors.empty()) return 0;
    std::vector<RationalVector> m = vectors;
    const size_t cols = m[0].size();
    int rank = 0;
    for (size_t c = 0; c < cols && rank < static_cast<int>(m.size()); ++c) {
        size_t p = rank;
        while (p < m.size() && m[p][c] == 0) ++p;
        if (p == m.size()) continue;
        std::swap(m[rank], m[p]);
        for (size_t i = 0; i < m.size(); ++i) {
            if (static_cast<int>(i) == rank || m[i][c] == 0) continue;
            Rational f = m[i][c] / m[rank][c];
            for (size_t j = c; j < cols; ++j) m[i][j] -= f * m[rank][j];
        }
        ++rank;
    }
    return rank;
}

RationalVector chamber_representative(const RationalVector& beta, WeylAction weyl) {
    RationalVector b = beta;
    switch (weyl) {
        case WeylAction::symmetric:
            std::sort(b.begin(), b.end(), [](const Rational& x, const Rational& y) { return x > y; });
            break;
        case WeylAction::trivial:
            break;
        case WeylAction::negation: {
            auto it = std::find_if(b.begin(), b.end(), [](const Rational& x) { return x != 0; });
            if (it != b.end() && *it < 0)
                for (auto& x : b) x = -x;
            break;
        }
    }
    return b;
}

BetaStratum describe_beta(const RationalVector& beta, const std::vector<RationalVector>& weights,
                          ParabolicRule parabolic) {
    BetaStratum s;
    s.beta = beta;
    s.norm2 = dot(beta, beta);
    for (size_t i = 0; i < weights.size(); ++i) {
        Rational d = dot(weights[i], beta);
        if (d < s.norm2) ++s.n_beta;
        else ++s.r_beta;
        if (d == s.norm2) s.support.push_back(static_cast<int>(i));
    }
    if (s.norm2 == 0) {
        // The semistable stratum: no weights strictly below the wall and codim 0.
        s.n_beta = 0;
        s.dim_g_mod_p = 0;
        s.codim_expected = 0;
        return s;
    }
    switch (parabolic) {
        case ParabolicRule::special_linear:
            for (size_t i = 0; i < beta.size(); ++i)
                for (size_t j = i + 1; j < beta.size(); ++j)
                    if (beta[i] > beta[j]) ++s.dim_g_mod_p;
            break;
        case ParabolicRule::torus:
            s.dim_g_mod_p = 0;
            break;
        case ParabolicRule::pgl2:
            s.dim_g_mod_p = 1;
            break;
    }
    s.codim_expected = s.n_beta - s.dim_g_mod_p;
    return s;
}

std::vector<BetaStratum> index_set(const std::vector<RationalVector>& weights, const StrataOptions& opts) {
    require(!weights.empty(), "index_set: weight list is empty");
    const size_t dim = weights[0].size();
    for (const auto& w : weights) require(w.size() == dim, "index_set: weights of different lengths");

    const int rank = linear_rank(weights);
    const int max_size = rank + 1;
    const int N = static_cast<int>(weights.size());
    long long subsets = binomial_sum(N, max_size, opts.budget);
    if (subsets > opts.budget)
        fail(ErrorKind::resource_cap, "instability enumeration needs more than " + std::to_string(opts.budget) +
                                          " candidate subsets");

    const Integer L = lcm_of_denominators(weights);
    std::vector<std::vector<Integer>> ipts;
    Integer maxabs = 0;
    for (const auto& w : weights) {
        std::vector<Integer> v;
        for (const auto& x : w) {
            Rational y = x * L;
            v.push_back(y.get_num());
            if (abs(y.get_num()) > maxabs) maxabs = abs(y.get_num());
        }
        ipts.push_back(std::move(v));
    }

    // Hadamard-type bound for all minors: (k+1) x (k+1) bordered Gram matrices
    // with entries at most dim*maxabs^2, times the coordinate sums.
    Integer entry = maxabs * maxabs * static_cast<unsigned long>(dim) + 1;
    Integer bound = 1;
    for (int i = 0; i <= max_size; ++i) bound *= entry * static_cast<unsigned long>(max_size + 1);
    bound *= maxabs * static_cast<unsigned long>(max_size + 1) + 1;
    const bool fast = mpz_sizeinbase(bound.get_mpz_t(), 2) < 120;

    std::vector<RationalVector> candidates;
    auto collect = [&](const auto& raw) {
        for (const auto& t : raw) {
            RationalVector b(dim);
            Integer den = to_integer(t[dim]) * L;
            for (size_t c = 0; c < dim; ++c) {
                b[c] = Rational(to_integer(t[c]), den);
                b[c].canonicalize();
            }
            candidates.push_back(std::move(b));
        }
    };
    if (fast) {
        std::vector<std::vector<i128>> p128;
        for (const auto& v : ipts) {
            std::vector<i128> w;
            for (const auto& x : v) w.push_back(static_cast<i128>(x.get_si()));
            p128.push_back(std::move(w));
        }
        collect(enumerate_candidates<i128>(p128, max_size));
    } else {
        collect(enumerate_candidates<Integer>(ipts, max_size));
    }

    std::set<RationalVector, decltype(&lex_less)> reps(&lex_less);
    for (const auto& b : candidates) reps.insert(chamber_representative(b, opts.weyl));

    std::vector<BetaStratum> out;
    for (const auto& b : reps) {
        BetaStratum s = describe_beta(b, weights, opts.parabolic);
        if (s.codim_expected < 0)
            fail(ErrorKind::check_failure, "negative expected codimension at beta = " + to_string(b));
        out.push_back(std::move(s));
    }
    std::sort(out.begin(), out.end(), [](const BetaStratum& a, const BetaStratum& b) {
        if (a.norm2 != b.norm2) return a.norm2 < b.norm2;
        return lex_less(a.beta, b.beta);
    });
    return out;
}

std::vector<BetaStratum> instability_index_set(const WeightSystem& ws, WeylGroupChoice weyl, long long budget) {
    StrataOptions opts;
    opts.budget = budget;
    if (weyl == WeylGroupChoice::full_symmetric) {
        opts.weyl = WeylAction::symmetric;
        opts.parabolic = ParabolicRule::special_linear;
    } else {
        opts.weyl = WeylAction::trivial;
        opts.parabolic = ParabolicRule::special_linear;
    }
    return index_set(ws.weights, opts);
}

std::vector<BetaStratum> normal_rep_strata(const NormalRep& rep, RepGroup group, long long budget) {
    StrataOptions opts;
    opts.budget = budget;
    if (group == RepGroup::torus) {
        opts.weyl = WeylAction::trivial;
        opts.parabolic = ParabolicRule::torus;
    } else {
        require(linear_rank(rep.weights) <= 1, "PGL2 mode needs weights on a line");
        opts.weyl = WeylAction::negation;
        opts.parabolic = ParabolicRule::pgl2;
    }
    return index_set(rep.weights, opts);
}

RationalVector closest_point(const std::vector<RationalVector>& points) {
    require(!points.empty(), "closest_point: empty point list");
    const size_t dim = points[0].size();
    const int N = static_cast<int>(points.size());
    const int max_size = std::min(N, linear_rank(points) + 1);

    std::optional<RationalVector> best;
    Rational best_norm;
    for (int k = 1; k <= max_size; ++k) {
        std::vector<int> idx(k);
        for (int i = 0; i < k; ++i) idx[i] = i;
        while (true) {
            // KKT system of min |sum l_i p_i|^2 subject to sum l_i = 1, solved by
            // Gauss-Jordan elimination over the rationals.
            const int m = k + 1;
            std::vector<RationalVector> a(m, RationalVector(m + 1, 0));
            for (int i = 0; i < k; ++i) {
                for (int j = 0; j < k; ++j) a[i][j] = dot(points[idx[i]], points[idx[j]]);
                a[i][k] = -1;
                a[k][i] = 1;
            }
            a[k][m] = 1;
            bool singular = false;
            for (int c = 0; c < m && !singular; ++c) {
                int p = c;
                while (p < m && a[p][c] == 0) ++p;
                if (p == m) {
                    singular = true;
                    break;
                }
                std::swap(a[c], a[p]);
                for (int r = 0; r < m; ++r) {
                    if (r == c || a[r][c] == 0) continue;
                    Rational f = a[r][c] / a[c][c];
                    for (int j = c; j <= m; ++j) a[r][j] -= f * a[c][j];
                }
            }
            if (!singular) {
                bool inside = true;
                RationalVector point(dim, 0);
                for (int i = 0; i < k; ++i) {
                    Rational lambda = a[i][m] / a[i][i];
                    if (lambda < 0) {
                        inside = false;
                        break;
                    }
                    for (size_t c = 0; c < dim; ++c) point[c] += lambda * points[idx[i]][c];
                }
                if (inside) {
                    Rational nrm = dot(point, point);
                    if (!best || nrm < best_norm) {
                        best = point;
                        best_norm = nrm;
                    }
                }
            }
            int p = k - 1;
            while (p >= 0 && idx[p] == N - k + p) --p;
            if (p < 0) break;
            ++idx[p];
            for (int q = p + 1; q < k; ++q) idx[q] = idx[q - 1] + 1;
        }
    }
    return *best;
}

int weyl_fiber_count(const RationalVector& beta_prime, int m, const std::vector<RationalVector>& rep_index_set,
                     const std::function<RationalVector(const RationalVector&)>& wr_canonical) {
    require(static_cast<int>(beta_prime.size()) == m, "weyl_fiber_count: beta' length differs from m");
    if (std::find(rep_index_set.begin(), rep_index_set.end(), beta_prime) == rep_index_set.end())
        fail(ErrorKind::invalid_argument, "weyl_fiber_count: beta' " + to_string(beta_prime) +
                                              " is not in the representation index set");
    auto sorted = [](RationalVector v) {
        std::sort(v.begin(), v.end());
        return v;
    };
    const RationalVector key = sorted(beta_prime);
    std::set<RationalVector, decltype(&lex_less)> hits(&lex_less);
    for (const auto& b : rep_index_set) {
        if (static_cast<int>(b.size()) != m || sorted(b) != key) continue;
        hits.insert(wr_canonical ? wr_canonical(b) : b);
    }
    return static_cast<int>(hits.size());
}

}  // namespace stratify
