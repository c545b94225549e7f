#pragma once

#include <optional>

#include "hadq/expsum.hpp"
#include "hadq/relation.hpp"

namespace hadq {

enum class Verdict { AlgebraicCertified, InequalityHoldsAtAudit, Inconclusive };

std::string verdict_str(Verdict v);

// Knobs for the published constants; defaults reproduce the stated criterion.
struct CriterionConstants {
    unsigned lhs_divisor_factor = 4;   // qualifying places: h_s < n / (factor * r^2)
    unsigned rhs_multiplier_base = 2;  // right-hand side factor (base * r + 1)
    double comparison_margin = 1e-9;   // interval safety for real comparisons
};

// Finite-audit evaluation of the algebraicity criterion. The left-hand ladder
// is a proxy for a liminf over all places and is therefore evidence, not
// proof; the audit bound is recorded in the report.
struct CriterionReport {
    unsigned r = 0;
    unsigned L_used = 0;
    std::uint64_t place_bound = 0;
    std::size_t reduction_window = 0;
    unsigned search_cap = 0;
    CriterionConstants constants;
    std::vector<std::pair<std::uint64_t, double>> lhs;  // (n, Lambda(n))
    std::vector<std::pair<std::uint64_t, double>> rhs;  // (n, (2r+1)/n * h_K(...))
    double margin = 0;  // min over the ladder of lhs - rhs
    std::optional<RelationCertificate> certificate;
    Verdict verdict = Verdict::Inconclusive;
    bool anomaly = false;  // margin positive but no exact certificate after retry
};

CriterionReport criterion_run(const PowerSeries& f, unsigned r,
                              const std::vector<std::uint64_t>& ladder,
                              std::uint64_t place_bound, unsigned L,
                              const CriterionConstants& constants = {},
                              std::size_t window_override = 0);

// First place in the given order at which the exponential sum decomposes with
// a dominant base; reports whether the dominant part is constant, which is
// the case upgrading the conclusion to algebraicity of the quotient itself.
struct DominantPoleHypothesis {
    Place v0;
    DominantPoleDecomposition decomposition;
};

std::optional<DominantPoleHypothesis> dominant_pole_hypothesis(
    const ExpSumForm& g, const std::vector<Place>& places);

// Pipeline for the dominant-pole theorem: build h = f (Hadamard/) g, locate a
// dominant pole, transform to p(t d/dt)^l h(beta t), and run the criterion on
// the transformed series.
struct Theorem14Report {
    bool pole_found = false;
    Place v0;
    bool simple = false;
    Element beta;
    PolyK p;
    unsigned l = 1;
    std::optional<CriterionReport> criterion;
};

Theorem14Report theorem14_check(const PowerSeries& f, const ExpSumForm& g,
                                const std::vector<Place>& places, unsigned l, unsigned r,
                                const std::vector<std::uint64_t>& ladder,
                                std::uint64_t place_bound, unsigned L,
                                const CriterionConstants& constants = {});

// Hypothesis checker for the split-unit density theorem. Mode Algebraic tests
// radii_sum <= delta / (divisor d^4); mode Rational (f rational, r = 1) tests
// the series height against delta / divisor.
enum class Theorem17Mode { Algebraic, Rational };

struct Theorem17Report {
    unsigned d = 0;        // deg_t of the verified minimal relation
    bool d_exact = false;  // irreducibility audit passed; otherwise an upper bound
    DensityEstimate delta_hat;
    double radii_sum = 0;
    double height_estimate = 0;  // Rational mode only
    double threshold = 0;
    double divisor = 12;
    bool hypothesis_satisfied = false;
    Theorem17Mode mode = Theorem17Mode::Algebraic;
    CriterionReport criterion;
};

Theorem17Report theorem17_check(const BivariateRelation& f_rel, const PowerSeries& f,
                                const ExpSumForm& g, std::uint64_t place_bound,
                                const std::vector<std::uint64_t>& ladder, unsigned L,
                                Theorem17Mode mode = Theorem17Mode::Algebraic,
                                double divisor = 12.0,
                                std::uint64_t density_bound = 0,
                                std::size_t radius_window = 64,
                                const CriterionConstants& constants = {});

}  // namespace hadq
