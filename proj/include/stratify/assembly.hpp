#pragma once

#include "stratify/series.hpp"
#include "stratify/strata.hpp"

namespace stratify {

// One unstable stratum (or one beta' of a normal representation) entering a
// Kirwan-type sum as (1/weyl_share) t^{2 codim} series.
struct StratumContribution {
    int codim = 1;
    int weyl_share = 1;
    TruncatedSeries series = TruncatedSeries::constant(1, 0);
    std::string provenance;
};

// Poincare series of P^N times prod (1 - t^{2i})^{-1} over the exponents i,
// minus the unstable strata.
TruncatedSeries semistable_series(int ambient_dim, const std::vector<int>& bsl_exponents,
                                  const std::vector<StratumContribution>& strata, int order);

// p_n_z (t^2 + t^4 + ... + t^{2(normal_rank - 1)}).
TruncatedSeries main_term(const TruncatedSeries& p_n_z, int normal_rank, int order);

// Sum of (1/w) t^{2d} series; fails unless every coefficient is an integer.
TruncatedSeries extra_term(const std::vector<StratumContribution>& items, int order);

// Shifted intersection Betti numbers of P(N_x)//R: degree q carries ip[q-2]
// for 2 <= q <= c and ip[q] for q > c.
TruncatedSeries b_shift(const BettiTable& ip, int c, int order);

// Correction P(blowup) - IP(base) for the blowup of a point in an n-fold with
// exceptional divisor E of dimension n - 1.
TruncatedSeries blowup_correction(const BettiTable& exceptional, int n);

// Items for the extra term of a normal representation: every nonzero beta' of
// codimension d with 2d <= order, weighted by the number of index-set elements in
// its coordinate-permutation orbit. series_for_codim must cover every such d.
std::vector<StratumContribution> normal_rep_items(
    const std::vector<BetaStratum>& rep_strata, int ambient_coords,
    const std::function<std::optional<TruncatedSeries>(int codim)>& series_for_codim, int order,
    const std::string& provenance);

}  // namespace stratify
