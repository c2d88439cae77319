#include "stratify/assembly.hpp"

namespace stratify {

TruncatedSeries semistable_series(int ambient_dim, const std::vector<int>& bsl_exponents,
                                  const std::vector<StratumContribution>& strata, int order) {
    require(ambient_dim >= 0, "semistable_series: negative ambient dimension");
    require(order >= 0, "semistable_series: negative order");
    TruncatedSeries projective(order);
    for (int k = 0; k <= ambient_dim && 2 * k <= order; ++k) projective.set(2 * k, 1);
    std::vector<std::pair<int, int>> factors;
    for (int i : bsl_exponents) {
        require(i >= 1, "semistable_series: exponents must be positive");
        factors.emplace_back(2 * i, 1);
    }
    TruncatedSeries out = projective * gf_expand(factors, order);
    for (const auto& s : strata) {
        require(s.codim >= 1 && s.weyl_share >= 1, "semistable_series: stratum needs codim >= 1 and weyl_share >= 1");
        if (2 * s.codim > order) continue;
        out = out - s.series.truncate(order).scale(Rational(1, s.weyl_share)).shift(2 * s.codim);
    }
    return out;
}

TruncatedSeries main_term(const TruncatedSeries& p_n_z, int normal_rank, int order) {
    require(normal_rank >= 2, "main_term: normal rank must be at least 2");
    TruncatedSeries ladder(order);
    for (int k = 1; k <= normal_rank - 1 && 2 * k <= order; ++k) ladder.set(2 * k, 1);
    return p_n_z.truncate(std::min(order, p_n_z.order())) * ladder.truncate(std::min(order, p_n_z.order()));
}

TruncatedSeries extra_term(const std::vector<StratumContribution>& items, int order) {
    TruncatedSeries out(order);
    for (const auto& s : items) {
        require(s.codim >= 1 && s.weyl_share >= 1, "extra_term: item needs codim >= 1 and weyl_share >= 1");
        if (2 * s.codim > order) continue;
        require(s.series.order() >= order - 2 * s.codim,
                "extra_term: series of a codim " + std::to_string(s.codim) + " item is truncated too early");
        out = out + s.series.truncate(order).scale(Rational(1, s.weyl_share)).shift(2 * s.codim);
    }
    if (!out.has_integer_coeffs())
        fail(ErrorKind::check_failure, "extra term " + out.str() + " is not integral; a Weyl orbit is incomplete");
    return out;
}

TruncatedSeries b_shift(const BettiTable& ip, int c, int order) {
    require(c == ip.complex_dim, "b_shift: table dimension " + std::to_string(ip.complex_dim) +
                                     " does not match c = " + std::to_string(c));
    const DualityReport rep = duality_check(ip);
    if (!rep.pass) fail(ErrorKind::check_failure, "b_shift: input table is not duality-symmetric: " + rep.message);
    TruncatedSeries out(order);
    auto at = [&](int j) { return (j >= 0 && j < static_cast<int>(ip.betti.size())) ? ip.betti[j] : 0L; };
    for (int q = 2; q <= order; ++q) out.set(q, Rational(q <= c ? at(q - 2) : at(q)));
    return out;
}

TruncatedSeries blowup_correction(const BettiTable& exceptional, int n) {
    require(n >= 1, "blowup_correction: dimension must be positive");
    require(exceptional.complex_dim == n - 1, "blowup_correction: exceptional divisor must have dimension n - 1");
    auto e = [&](int j) { return (j >= 0 && j < static_cast<int>(exceptional.betti.size())) ? exceptional.betti[j] : 0L; };
    TruncatedSeries out(2 * n);
    for (int q = 2; q < n; ++q) out.set(q, Rational(e(2 * n - q)));
    for (int q = n; q <= 2 * n - 2; ++q) out.set(q, Rational(e(q)));
    return out;
}

std::vector<StratumContribution> normal_rep_items(
    const std::vector<BetaStratum>& rep_strata, int ambient_coords,
    const std::function<std::optional<TruncatedSeries>(int codim)>& series_for_codim, int order,
    const std::string& provenance) {
    std::vector<RationalVector> betas;
    for (const auto& b : rep_strata)
        if (!b.is_zero()) betas.push_back(b.beta);
    std::vector<StratumContribution> items;
    for (const auto& b : rep_strata) {
        if (b.is_zero() || 2 * b.codim_expected > order) continue;
        if (b.codim_expected < 1)
            fail(ErrorKind::check_failure, "normal representation stratum " + to_string(b.beta) + " has codim " +
                                               std::to_string(b.codim_expected));
        auto series = series_for_codim(b.codim_expected);
        if (!series)
            fail(ErrorKind::check_failure,
                 "no declared series for normal-representation strata of codim " + std::to_string(b.codim_expected));
        StratumContribution item;
        item.codim = b.codim_expected;
        item.weyl_share = weyl_fiber_count(b.beta, ambient_coords, betas);
        item.series = *series;
        item.provenance = provenance;
        items.push_back(std::move(item));
    }
    return items;
}

}  // namespace stratify
