#pragma once

#include <optional>

#include "hadq/heights.hpp"
#include "hadq/reduction.hpp"
#include "hadq/series.hpp"

namespace hadq {

// Row and column counts of the relation-finding system: M rows of vanishing
// constraints and the column count N as printed in the source formulas. The
// stated N undercounts the monomials of bidegree ((2r+1)L, r) by r + 1; the
// matrix actually built uses n_monomials columns.
struct SiegelDims {
    std::uint64_t m = 0;
    std::uint64_t n_stated = 0;
    std::uint64_t n_monomials = 0;
};

SiegelDims siegel_dims(unsigned r, unsigned L);

struct RelationCertificate {
    BivariateRelation relation;
    std::size_t vanishing_order = 0;  // >= M when produced by find_relation
    std::optional<std::pair<std::size_t, Element>> first_nonzero;
    double height_of_relation = 0;
    double siegel_bound = 0;
    unsigned r = 0, L = 0;
    std::size_t verify_cap = 0;
};

// Expand Phi(t, f(t)) to check_order coefficients; returns the vanishing
// order and, if any, the first nonzero coefficient.
std::pair<std::size_t, std::optional<std::pair<std::size_t, Element>>> verify_relation(
    const BivariateRelation& rel, const PowerSeries& f, std::size_t check_order);

// Exact kernel construction: a nonzero Phi of bidegree ((2r+1)L, r) with
// Phi(t, f) = 0 mod t^M, selected deterministically (echelon kernel basis,
// normalization, then the candidate minimizing (height, t-degree, lex)), and
// verified beyond M up to the cap (default 5M).
RelationCertificate find_relation(const PowerSeries& f, unsigned r, unsigned L,
                                  std::size_t verify_cap = 0);

struct SiegelBoundReport {
    double height_of_relation = 0;
    double bound_stated = 0;     // (eps/2) log N_stated + 2r h + G
    double bound_monomials = 0;  // same with the true column count
    bool satisfied = false;      // height <= stated bound
};

SiegelBoundReport siegel_bound_report(const RelationCertificate& cert, const PowerSeries& f);

// Height of the first nonzero coefficient c against the audited sum of
// log|k(s)| over places with 4 r^2 h_s < n; the product formula forces
// h_K(c) >= the audited partial sum.
struct ProductFormulaOnC {
    std::size_t n = 0;
    double height_c = 0;
    double partial_sum = 0;
    std::uint64_t qualifying_places = 0;
    bool holds = false;
};

ProductFormulaOnC product_formula_on_c(const RelationCertificate& cert,
                                       const ReductionProfile& prof, const FieldCtx& ctx);

}  // namespace hadq
