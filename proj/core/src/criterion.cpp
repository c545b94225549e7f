#include "hadq/criterion.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "hadq/errors.hpp"

namespace hadq {

std::string verdict_str(Verdict v) {
    switch (v) {
        case Verdict::AlgebraicCertified:
            return "algebraic-certified";
        case Verdict::InequalityHoldsAtAudit:
            return "inequality-holds-at-audit";
        case Verdict::Inconclusive:
            return "inconclusive";
    }
    return "?";
}

namespace {

bool certificate_exact(const RelationCertificate& cert) { return !cert.first_nonzero; }

}  // namespace

CriterionReport criterion_run(const PowerSeries& f, unsigned r,
                              const std::vector<std::uint64_t>& ladder,
                              std::uint64_t place_bound, unsigned L,
                              const CriterionConstants& constants,
                              std::size_t window_override) {
    if (ladder.empty()) throw InvalidArgument("empty sample ladder");
    for (std::size_t i = 1; i < ladder.size(); ++i)
        if (ladder[i] <= ladder[i - 1])
            throw InvalidArgument("ladder must be strictly increasing");

    CriterionReport out;
    out.r = r;
    out.L_used = L;
    out.place_bound = place_bound;
    out.constants = constants;

    // h_s beyond this cap cannot qualify for any n in the ladder.
    std::uint64_t divisor = static_cast<std::uint64_t>(constants.lhs_divisor_factor) * r * r;
    unsigned cap = static_cast<unsigned>((ladder.back() - 1) / std::max<std::uint64_t>(divisor, 1));
    auto prof = profile(f, r, place_bound, cap, window_override);
    out.reduction_window = prof.reduction_window;
    out.search_cap = prof.search_cap;
    for (std::uint64_t n : ladder) {
        double lambda = 0;
        for (const auto& e : prof.entries) {
            if (e.status != ReductionProfile::Status::Ok) continue;
            if (static_cast<std::uint64_t>(divisor) * e.h < n)
                lambda += e.place.residue_log_card();
        }
        out.lhs.emplace_back(n, lambda / static_cast<double>(n));
    }

    auto heights = truncation_height_curve(f, r, ladder);
    double rhs_factor = static_cast<double>(constants.rhs_multiplier_base) * r + 1;
    for (const auto& [n, v] : heights.samples) out.rhs.emplace_back(n, rhs_factor * v);

    out.margin = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < out.lhs.size(); ++i)
        out.margin = std::min(out.margin, out.lhs[i].second - out.rhs[i].second);

    out.certificate = find_relation(f, r, L);
    if (!certificate_exact(*out.certificate) && out.margin > constants.comparison_margin) {
        // The criterion predicts a relation; retry once at 2L before reporting
        // the anomaly.
        out.L_used = 2 * L;
        out.certificate = find_relation(f, r, 2 * L);
        if (!certificate_exact(*out.certificate)) out.anomaly = true;
    }

    if (certificate_exact(*out.certificate))
        out.verdict = Verdict::AlgebraicCertified;
    else if (out.margin > constants.comparison_margin)
        out.verdict = Verdict::InequalityHoldsAtAudit;
    else
        out.verdict = Verdict::Inconclusive;
    return out;
}

std::optional<DominantPoleHypothesis> dominant_pole_hypothesis(
    const ExpSumForm& g, const std::vector<Place>& places) {
    for (const auto& v : places) {
        try {
            DominantPoleHypothesis out{v, dominant_pole_decompose(g, v)};
            return out;
        } catch (const NoDominantPole&) {
            continue;
        }
    }
    return std::nullopt;
}

Theorem14Report theorem14_check(const PowerSeries& f, const ExpSumForm& g,
                                const std::vector<Place>& places, unsigned l, unsigned r,
                                const std::vector<std::uint64_t>& ladder,
                                std::uint64_t place_bound, unsigned L,
                                const CriterionConstants& constants) {
    Theorem14Report out;
    out.l = l;
    auto hyp = dominant_pole_hypothesis(g, places);
    if (!hyp) return out;
    out.pole_found = true;
    out.v0 = hyp->v0;
    out.simple = hyp->decomposition.simple;
    out.beta = hyp->decomposition.beta;
    out.p = hyp->decomposition.p;

    auto [gn, gd] = expsum_to_rational(g);
    PowerSeries gs = PowerSeries::rational_fn(gn, gd);
    PowerSeries h = hadamard_quotient(f, gs);
    PowerSeries transformed = scale(out.beta, h);
    for (unsigned k = 0; k < l; ++k) transformed = diff_op(out.p, transformed);
    out.criterion = criterion_run(transformed, r, ladder, place_bound, L, constants);
    return out;
}

namespace {

// Desk-scale irreducibility audit for d = deg_t of the relation: linear in y
// is always irreducible; for quadratic y-degree, a factorization would force
// a linear factor through the series branch, i.e. the series itself would be
// rational, which a degree-1 relation probe refutes. Higher y-degrees are
// reported as an upper bound.
bool relation_degree_exact(const BivariateRelation& rel, const PowerSeries& f, unsigned L) {
    int dy = rel.deg_y();
    if (dy <= 1) return true;
    if (dy == 2) {
        auto probe = find_relation(f, 1, L);
        return probe.first_nonzero.has_value();  // no exact linear relation
    }
    return false;
}

}  // namespace

Theorem17Report theorem17_check(const BivariateRelation& f_rel, const PowerSeries& f,
                                const ExpSumForm& g, std::uint64_t place_bound,
                                const std::vector<std::uint64_t>& ladder, unsigned L,
                                Theorem17Mode mode, double divisor,
                                std::uint64_t density_bound, std::size_t radius_window,
                                const CriterionConstants& constants) {
    if (!g.simple()) throw NonSimplePoles();
    if (g.is_zero()) throw InvalidArgument("zero Hadamard denominator");

    // The relation must verify cleanly for f before it is trusted.
    {
        std::size_t cap = 4 * relation_budget(static_cast<unsigned>(std::max(f_rel.deg_t(), 1)),
                                              static_cast<unsigned>(std::max(f_rel.deg_y(), 1)));
        auto [van, first] = verify_relation(f_rel, f, cap);
        (void)van;
        if (first)
            throw UnverifiedRelation("relation fails at order " + std::to_string(first->first));
    }

    Theorem17Report out;
    out.mode = mode;
    out.divisor = divisor;
    out.d = static_cast<unsigned>(std::max(f_rel.deg_t(), 0));
    out.d_exact = relation_degree_exact(f_rel, f, L);
    if (out.d == 0) throw InvalidArgument("relation does not involve t");

    out.delta_hat = split_unit_density(g, f.ctx(), density_bound ? density_bound : place_bound);

    auto [gn, gd] = expsum_to_rational(g);
    PowerSeries gs = PowerSeries::rational_fn(gn, gd);
    PowerSeries h = hadamard_quotient(f, gs);

    out.radii_sum = radius_profile(h, place_bound, radius_window).total;

    unsigned r = 1;
    if (mode == Theorem17Mode::Algebraic) {
        double d4 = std::pow(static_cast<double>(out.d), 4.0);
        out.threshold = out.delta_hat.ratio / (divisor * d4);
        out.hypothesis_satisfied = out.radii_sum <= out.threshold + constants.comparison_margin;
        r = out.d;
    } else {
        out.threshold = out.delta_hat.ratio / divisor;
        out.height_estimate = truncation_height_curve(h, 1, ladder).extrapolated;
        out.hypothesis_satisfied = out.height_estimate < out.threshold - constants.comparison_margin;
        r = 1;
    }

    out.criterion = criterion_run(h, r, ladder, place_bound, L, constants);
    return out;
}

}  // namespace hadq
