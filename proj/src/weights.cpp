#include "stratify/weights.hpp"

namespace stratify {

namespace {
void fill(int var, int vars, int left, Exponent& cur, std::vector<Exponent>& out) {
    if (var == vars - 1) {
        cur[var] = left;
        out.push_back(cur);
        return;
    }
    for (int e = left; e >= 0; --e) {
        cur[var] = e;
        fill(var + 1, vars, left - e, cur, out);
    }
}
}  // namespace

std::vector<Exponent> monomial_exponents(int vars, int d) {
    require(vars >= 1 && d >= 0, "monomial_exponents: bad arguments");
    std::vector<Exponent> out;
    Exponent cur(vars, 0);
    fill(0, vars, d, cur, out);
    return out;
}

RationalVector monomial_weight(const Exponent& I, int d) {
    Rational shift(d, static_cast<long>(I.size()));
    shift.canonicalize();
    RationalVector w;
    w.reserve(I.size());
    for (int e : I) w.push_back(Rational(e) - shift);
    return w;
}

WeightSystem hypersurface_weights(int n, int d) {
    require(n >= 1 && d >= 1, "hypersurface_weights needs n >= 1 and d >= 1");
    WeightSystem ws;
    ws.n = n;
    ws.d = d;
    ws.monomials = monomial_exponents(n + 1, d);
    for (const auto& I : ws.monomials) ws.weights.push_back(monomial_weight(I, d));
    return ws;
}

std::string monomial_name(const Exponent& I) {
    std::string out;
    for (size_t i = 0; i < I.size(); ++i) {
        if (I[i] == 0) continue;
        if (!out.empty()) out += "*";
        out += "x" + std::to_string(i);
        if (I[i] > 1) out += "^" + std::to_string(I[i]);
    }
    return out.empty() ? "1" : out;
}

}  // namespace stratify
