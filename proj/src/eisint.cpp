#include "stratify/eisint.hpp"

#include <cmath>

namespace stratify {

std::string EisInt::str() const {
    if (b == 0) return std::to_string(a);
    std::string bw = (b == 1) ? "w" : (b == -1) ? "-w" : std::to_string(b) + "w";
    if (a == 0) return bw;
    return std::to_string(a) + (b > 0 ? "+" : "") + bw;
}

bool eis_divides(EisInt y, EisInt x) {
    require(!y.is_zero(), "division by zero Eisenstein integer");
    EisInt p = x * y.conj();
    std::int64_t n = y.norm();
    return p.a % n == 0 && p.b % n == 0;
}

EisInt eis_exact_div(EisInt x, EisInt y) {
    if (!eis_divides(y, x)) fail(ErrorKind::check_failure, x.str() + " is not divisible by " + y.str());
    EisInt p = x * y.conj();
    std::int64_t n = y.norm();
    return {p.a / n, p.b / n};
}

EisInt eis_round_div(EisInt x, EisInt y) {
    require(!y.is_zero(), "division by zero Eisenstein integer");
    EisInt p = x * y.conj();
    const double n = static_cast<double>(y.norm());
    const double qa = p.a / n;
    const double qb = p.b / n;
    // Try the nearby lattice points and keep the one with the smallest remainder.
    EisInt best{static_cast<std::int64_t>(std::llround(qa)), static_cast<std::int64_t>(std::llround(qb))};
    std::int64_t best_norm = (x - best * y).norm();
    for (std::int64_t da = -1; da <= 1; ++da)
        for (std::int64_t db = -1; db <= 1; ++db) {
            EisInt q{static_cast<std::int64_t>(std::floor(qa)) + da, static_cast<std::int64_t>(std::floor(qb)) + db};
            std::int64_t r = (x - q * y).norm();
            if (r < best_norm) {
                best = q;
                best_norm = r;
            }
        }
    return best;
}

EisInt eis_gcd(EisInt x, EisInt y) {
    while (!y.is_zero()) {
        EisInt r = x - eis_round_div(x, y) * y;
        x = y;
        y = r;
    }
    return eis_normalize_unit(x);
}

Rational eis_real_part(EisInt x) { return Rational(x.a) - Rational(x.b, 2); }

EisInt eis_normalize_unit(EisInt x) {
    if (x.is_zero()) return x;
    const EisInt units[6] = {{1, 0}, {0, 1}, {-1, -1}, {-1, 0}, {0, -1}, {1, 1}};
    // The sector a > 0, b >= 0 holds two of the six associates; take the smaller.
    bool found = false;
    EisInt best;
    for (const auto& u : units) {
        EisInt y = x * u;
        if (y.a > 0 && y.b >= 0 && (!found || y < best)) {
            best = y;
            found = true;
        }
    }
    return best;
}

}  // namespace stratify
