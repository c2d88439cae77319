#pragma once

// Independent reference computations used by the unit tests and the acceptance
// binary. Nothing here calls the library's own algorithms.

#include "stratify/core.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <vector>

namespace oracle {

using stratify::Rational;
using stratify::RationalVector;

inline Rational dot(const RationalVector& a, const RationalVector& b) {
    Rational s = 0;
    for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

// Solves A x = b by Gaussian elimination; A must be invertible.
inline RationalVector solve(std::vector<RationalVector> a, RationalVector b) {
    const size_t n = a.size();
    for (size_t col = 0; col < n; ++col) {
        size_t piv = col;
        while (piv < n && a[piv][col] == 0) ++piv;
        if (piv == n) return {};
        std::swap(a[piv], a[col]);
        std::swap(b[piv], b[col]);
        for (size_t r = 0; r < n; ++r) {
            if (r == col || a[r][col] == 0) continue;
            const Rational f = a[r][col] / a[col][col];
            for (size_t c = col; c < n; ++c) a[r][c] -= f * a[col][c];
            b[r] -= f * b[col];
        }
    }
    RationalVector x(n);
    for (size_t i = 0; i < n; ++i) x[i] = b[i] / a[i][i];
    return x;
}

// Minimum-norm point of conv(points) by Wolfe's active-set method in exact arithmetic.
inline RationalVector min_norm_point(const std::vector<RationalVector>& points) {
    const size_t dim = points.at(0).size();
    size_t start = 0;
    for (size_t i = 1; i < points.size(); ++i)
        if (dot(points[i], points[i]) < dot(points[start], points[start])) start = i;
    std::vector<size_t> active = {start};
    std::vector<Rational> lambda = {1};
    RationalVector x = points[start];

    auto combine = [&](const std::vector<Rational>& coef) {
        RationalVector y(dim, 0);
        for (size_t k = 0; k < active.size(); ++k)
            for (size_t i = 0; i < dim; ++i) y[i] += coef[k] * points[active[k]][i];
        return y;
    };

    for (;;) {
        size_t best = 0;
        for (size_t i = 1; i < points.size(); ++i)
            if (dot(x, points[i]) < dot(x, points[best])) best = i;
        if (dot(x, points[best]) >= dot(x, x)) return x;
        if (std::find(active.begin(), active.end(), best) != active.end()) return x;
        active.push_back(best);
        lambda.push_back(0);

        for (;;) {
            // affine minimiser: [G 1; 1^T 0] [mu; nu] = [0; 1]
            const size_t m = active.size();
            std::vector<RationalVector> sys(m + 1, RationalVector(m + 1, 0));
            RationalVector rhs(m + 1, 0);
            for (size_t i = 0; i < m; ++i) {
                for (size_t j = 0; j < m; ++j) sys[i][j] = dot(points[active[i]], points[active[j]]);
                sys[i][m] = 1;
                sys[m][i] = 1;
            }
            rhs[m] = 1;
            const auto sol = solve(sys, rhs);
            std::vector<Rational> mu(sol.begin(), sol.begin() + static_cast<long>(m));
            if (std::all_of(mu.begin(), mu.end(), [](const Rational& v) { return v > 0; })) {
                lambda = mu;
                x = combine(lambda);
                break;
            }
            Rational theta = 1;
            for (size_t k = 0; k < m; ++k)
                if (mu[k] <= 0 && lambda[k] - mu[k] != 0) theta = std::min(theta, Rational(lambda[k] / (lambda[k] - mu[k])));
            for (size_t k = 0; k < m; ++k) lambda[k] = (1 - theta) * lambda[k] + theta * mu[k];
            std::vector<size_t> keep_idx;
            std::vector<Rational> keep_lambda;
            for (size_t k = 0; k < m; ++k)
                if (lambda[k] > 0) {
                    keep_idx.push_back(active[k]);
                    keep_lambda.push_back(lambda[k]);
                }
            active = keep_idx;
            lambda = keep_lambda;
            x = combine(lambda);
        }
    }
}

// Sorted decreasingly: the representative of beta in the closed positive chamber of S_m.
inline RationalVector sorted_desc(RationalVector v) {
    std::sort(v.begin(), v.end(), [](const Rational& a, const Rational& b) { return a > b; });
    return v;
}

// Exponent vectors of degree-d monomials in `vars` variables, any order.
inline std::vector<std::vector<int>> monomials(int vars, int d) {
    std::vector<std::vector<int>> out;
    std::vector<int> e(vars, 0);
    std::function<void(int, int)> go = [&](int i, int rest) {
        if (i == vars - 1) {
            e[i] = rest;
            out.push_back(e);
            return;
        }
        for (int k = rest; k >= 0; --k) {
            e[i] = k;
            go(i + 1, rest - k);
        }
    };
    go(0, d);
    return out;
}

inline long binomial(long n, long k) {
    long r = 1;
    for (long i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

// Number of integer vectors v with v^T gram v == norm for a positive-definite
// integral Gram matrix. Fincke-Pohst enumeration: floating-point bounds widened
// by one, exact integer test at the leaves.
inline long count_vectors_of_norm(const std::vector<std::vector<long>>& gram, long norm) {
    const int n = static_cast<int>(gram.size());
    // Q(x) = sum_i q[i][i] (x_i + sum_{j>i} q[i][j] x_j)^2
    std::vector<std::vector<double>> q(n, std::vector<double>(n, 0.0));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) q[i][j] = static_cast<double>(gram[i][j]);
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            q[j][i] = q[i][j];
            q[i][j] /= q[i][i];
        }
        for (int k = i + 1; k < n; ++k)
            for (int l = k; l < n; ++l) q[k][l] -= q[k][i] * q[i][l];
    }
    std::vector<long> x(n, 0);
    long count = 0;
    std::function<void(int, double)> go = [&](int i, double remaining) {
        if (i < 0) {
            long value = 0;
            for (int a = 0; a < n; ++a)
                for (int b = 0; b < n; ++b) value += x[a] * gram[a][b] * x[b];
            count += value == norm;
            return;
        }
        double centre = 0;
        for (int j = i + 1; j < n; ++j) centre += q[i][j] * static_cast<double>(x[j]);
        const double radius = std::sqrt(std::max(0.0, remaining / q[i][i]));
        const long lo = static_cast<long>(std::floor(-centre - radius)) - 1;
        const long hi = static_cast<long>(std::ceil(-centre + radius)) + 1;
        for (long v = lo; v <= hi; ++v) {
            x[i] = v;
            const double t = static_cast<double>(v) + centre;
            const double used = q[i][i] * t * t;
            if (used <= remaining + 1e-6) go(i - 1, remaining - used);
        }
        x[i] = 0;
    };
    go(n - 1, static_cast<double>(norm));
    return count;
}

}  // namespace oracle
