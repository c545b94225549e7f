#pragma once

#include <functional>
#include <optional>

#include "hadq/expsum.hpp"
#include "hadq/residue.hpp"
#include "hadq/series.hpp"

namespace hadq {

// Reductions of a_0..a_order at the place s; NotReducible(n) identifies the
// first non-integral coefficient.
std::vector<ResidueField::Elem> reduce_series(const PowerSeries& f, const Place& s,
                                              std::size_t order);
std::vector<ResidueField::Elem> reduce_prefix(const std::vector<Element>& coeffs,
                                              const ResidueField& rf);

// A bidegree-(h, r) relation over k(s), coefficients indexed by the power of y.
struct ModRelation {
    std::vector<std::vector<ResidueField::Elem>> coef_y;  // coef_y[j][i] for t^i y^j
    unsigned h = 0;
};

// Coefficient budget certifying a bidegree-(h, r) relation on a prefix: the
// relation must vanish modulo t^{(h+1)(r+1) + h r}.
std::size_t relation_budget(unsigned h, unsigned r);

// The least H <= degree_cap admitting a nonzero relation of bidegree (H, r)
// vanishing past the budget; empty when no relation exists up to the cap.
// Deterministic tie-break: least H, then the lexicographically least
// echelon-form kernel vector, normalized so the leading entry is 1.
std::optional<ModRelation> minimal_relation_mod(const std::vector<ResidueField::Elem>& fs,
                                                const ResidueField& rf, unsigned r,
                                                unsigned degree_cap);

// Kernel basis of the given rows over k(s), standard echelon form.
std::vector<std::vector<ResidueField::Elem>> nullspace_mod(
    const ResidueField& rf, std::vector<std::vector<ResidueField::Elem>> rows,
    std::size_t cols);

struct PeriodReport {
    bool invertible_everywhere = false;
    std::optional<std::uint64_t> period;  // least period of n -> 1/b_n mod p
};

// Values b_n mod p over one full cycle; requires p-integral data.
PeriodReport hadamard_inverse_period_mod(const ExpSumForm& e, std::uint64_t p);

struct DensityEstimate {
    double numerator_log = 0;
    double denominator_log = 0;
    double ratio = 0;
    std::uint64_t n = 0;
};

// The log-weighted counting ratio at cutoff n of the places satisfying the
// qualifier (archimedean places never count; the denominator runs over all
// non-archimedean places of cardinality <= n).
DensityEstimate place_set_density(const std::function<bool(const Place&)>& qualifier,
                                  const FieldCtx& ctx, std::uint64_t n);

// Density of the places at which every coefficient b_n of the exponential sum
// is a unit; poles must already lie in K and be simple. Over a function field
// only degree-1 places qualify for the numerator.
DensityEstimate split_unit_density(const ExpSumForm& g, const FieldCtx& ctx, std::uint64_t n);

// Reduction-degree profile: h_s for every non-archimedean place up to the
// bound, +infinity-at-cap when the search cap is exhausted, and the
// not-reducible marker when some audited coefficient fails to reduce.
struct ReductionProfile {
    enum class Status { Ok, NotReducible, AtCap };
    struct Entry {
        Place place;
        Status status = Status::AtCap;
        unsigned h = 0;                    // valid when status == Ok
        std::size_t failure_index = 0;     // valid when status == NotReducible
        std::optional<ModRelation> relation;
    };
    unsigned r = 0;
    std::uint64_t place_bound = 0;
    unsigned search_cap = 0;
    std::size_t reduction_window = 0;
    std::vector<Entry> entries;  // ordered by place

    // (1/n) sum of log|k(s)| over audited places with 4 r^2 h_s < n.
    double lhs_lambda(std::uint64_t n) const;
};

// Audits every place of residue cardinality <= place_bound. The reduction
// window (how far reducibility is checked) defaults to
// max(budget(cap), min(place_bound + 1, 512)) and is recorded in the result.
ReductionProfile profile(const PowerSeries& f, unsigned r, std::uint64_t place_bound,
                         unsigned degree_cap, std::size_t window_override = 0);

}  // namespace hadq
