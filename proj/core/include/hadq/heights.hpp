#pragma once

#include <cstdint>
#include <vector>

#include "hadq/places.hpp"
#include "hadq/series.hpp"

namespace hadq {

// Weil height of a projective tuple: the scaled representative with coprime
// integral coordinates reduces the defining sum over places to a single
// archimedean (resp. degree) term. Invariant under scaling; AllZero if every
// coordinate vanishes.
double weil_height(const FieldCtx& ctx, const std::vector<Element>& coords);

// h_K(a) = h_K(1 : a).
double height_of(const FieldCtx& ctx, const Element& a);

// Finite-window samples of (1/N) h_K(truncation data), plus the average of
// the last `window` samples as the recorded extrapolation. No asymptotic claim
// beyond the window is made.
struct HeightEstimate {
    std::vector<std::pair<std::uint64_t, double>> samples;  // (N, value), N increasing
    double extrapolated = 0;
    unsigned window = 0;
};

// (1/n) h_K(1, f_{/n}, ..., (f^r)_{/n}) for each n in `orders` (strictly
// increasing, nonempty); r >= 1.
HeightEstimate truncation_height_curve(const PowerSeries& f, unsigned r,
                                       const std::vector<std::uint64_t>& orders);

// Per-place estimates of log+ R_v^{-1} from a finite coefficient window: the
// max of (1/n) log+ |a_n|_v over the upper half of the window. The window is
// recorded so callers know this is a finite proxy for a limsup.
struct RadiusProfile {
    struct Entry {
        Place place;
        double log_inv_radius = 0;  // >= 0
    };
    std::vector<Entry> per_place;  // ordered by place
    double total = 0;
    std::uint64_t audited_bound = 0;
    std::size_t coeff_window = 0;
};

RadiusProfile radius_profile(const PowerSeries& f, std::uint64_t place_bound,
                             std::size_t coeff_window);

// Audit of the self-mapping-disk condition at the non-archimedean places:
// candidate radii r_v from |a_n|_v <= r_v^{1-n}, the partial sum of
// log r_v^{-1}, and a verdict once the sum crosses the divergence threshold.
struct AnalyticityAudit {
    struct Entry {
        Place place;
        double log_inv_radius = 0;   // log r_v^{-1}, may be +infinity
        bool unit_obstruction = false;  // |a_0|_v or |a_1|_v already too large
    };
    std::vector<Entry> per_place;
    double divergence_sum = 0;
    double threshold = 0;
    bool refuted_at_bound = false;  // verdict: refuted-at-bound vs plausible
    std::uint64_t audited_bound = 0;
    std::size_t coeff_window = 0;
};

AnalyticityAudit a_analyticity_audit(const PowerSeries& f, std::uint64_t place_bound,
                                     std::size_t coeff_window, double threshold = 3.0);

}  // namespace hadq
