#include "hadq/relation.hpp"

#include <algorithm>
#include <cmath>

#include "hadq/errors.hpp"

namespace hadq {

SiegelDims siegel_dims(unsigned r, unsigned L) {
    if (r < 1 || L < 1) throw InvalidArgument("r and L must be at least 1");
    SiegelDims d;
    d.m = 2ull * r * (r + 1) * L;
    d.n_stated = (2ull * r + 1) * (r + 1) * L;
    d.n_monomials = ((2ull * r + 1) * L + 1) * (r + 1);
    return d;
}

std::pair<std::size_t, std::optional<std::pair<std::size_t, Element>>> verify_relation(
    const BivariateRelation& rel, const PowerSeries& f, std::size_t check_order) {
    if (check_order < 1) throw InvalidArgument("check order must be at least 1");
    const FieldCtx& ctx = f.ctx();
    std::vector<Element> acc(check_order, Element::zero(ctx));
    std::vector<Element> base = f.prefix(check_order);
    for (std::size_t j = rel.coeffs_y().size(); j-- > 0;) {
        acc = series_mul(ctx, acc, base, check_order);
        const PolyK& p = rel.coeff_y(j);
        for (int i = 0; i <= p.deg() && i < static_cast<int>(check_order); ++i)
            acc[i] = acc[i] + p.coeff(i);
    }
    for (std::size_t n = 0; n < check_order; ++n)
        if (!acc[n].is_zero()) return {n, std::make_pair(n, acc[n])};
    return {check_order, std::nullopt};
}

RelationCertificate find_relation(const PowerSeries& f, unsigned r, unsigned L,
                                  std::size_t verify_cap) {
    const FieldCtx& ctx = f.ctx();
    auto dims = siegel_dims(r, L);
    const std::size_t M = static_cast<std::size_t>(dims.m);
    const unsigned dt = (2 * r + 1) * L;
    if (verify_cap == 0) verify_cap = 5 * M;

    RelationCertificate cert;
    cert.r = r;
    cert.L = L;
    cert.verify_cap = verify_cap;

    // Degenerate input: the zero series satisfies y = 0.
    auto prefix = f.prefix(M);
    if (std::all_of(prefix.begin(), prefix.end(), [](const Element& e) { return e.is_zero(); })) {
        cert.relation = BivariateRelation(
            ctx, {PolyK(ctx), PolyK::constant(ctx, Element::one(ctx))});
        auto [van, first] = verify_relation(cert.relation, f, verify_cap);
        cert.vanishing_order = van;
        cert.first_nonzero = first;
        cert.height_of_relation = weil_height(ctx, cert.relation.flat_coeffs());
        cert.siegel_bound = siegel_bound_report(cert, f).bound_stated;
        return cert;
    }

    // Rows: coefficient of t^m in Phi(t, f) for m < M. Columns ordered
    // (y-degree descending, t-degree ascending).
    std::vector<std::vector<Element>> pw;
    for (unsigned j = 0; j <= r; ++j) pw.push_back(prefix_power(f, j, M));
    const std::size_t cols = static_cast<std::size_t>(dims.n_monomials);
    auto col_index = [&](unsigned j, unsigned i) {
        return static_cast<std::size_t>(r - j) * (dt + 1) + i;
    };
    std::vector<std::vector<Element>> rows(M, std::vector<Element>(cols, Element::zero(ctx)));
    for (std::size_t m = 0; m < M; ++m)
        for (unsigned j = 0; j <= r; ++j)
            for (unsigned i = 0; i <= dt && i <= m; ++i)
                rows[m][col_index(j, i)] = pw[j][m - i];

    auto basis = nullspace_K(ctx, std::move(rows), cols);
    require_internal(!basis.empty(), "monomial count exceeds M, kernel must be nonzero");

    // Normalize each basis vector (falling back to the unstripped form when
    // removing a common t-power would lose the vanishing guarantee), then pick
    // the minimum under (deepest vanishing, height, t-degree, lex on the flat
    // coefficient tuple).
    struct Candidate {
        BivariateRelation rel;
        std::size_t vanishing;
        std::optional<std::pair<std::size_t, Element>> first_nonzero;
        double height;
        int deg_t;
        std::vector<std::string> key;
    };
    std::optional<Candidate> best;
    for (const auto& v : basis) {
        std::vector<PolyK> cy;
        for (unsigned j = 0; j <= r; ++j) {
            std::vector<Element> c;
            for (unsigned i = 0; i <= dt; ++i) c.push_back(v[col_index(j, i)]);
            cy.emplace_back(ctx, std::move(c));
        }
        BivariateRelation raw(ctx, std::move(cy));
        BivariateRelation rel = raw.normalized(true);
        auto [van, first] = verify_relation(rel, f, verify_cap);
        if (van < M) {
            rel = raw.normalized(false);
            std::tie(van, first) = verify_relation(rel, f, verify_cap);
            require_internal(van >= M, "kernel vector must vanish through order M");
        }
        Candidate cand{rel, van, first, weil_height(ctx, rel.flat_coeffs()), rel.deg_t(), {}};
        for (const auto& e : rel.flat_coeffs()) cand.key.push_back(e.str());
        bool better = false;
        if (!best)
            better = true;
        else if (cand.vanishing != best->vanishing)
            better = cand.vanishing > best->vanishing;
        else if (cand.height < best->height - 1e-12)
            better = true;
        else if (cand.height < best->height + 1e-12) {
            if (cand.deg_t != best->deg_t)
                better = cand.deg_t < best->deg_t;
            else
                better = cand.key < best->key;
        }
        if (better) best = std::move(cand);
    }

    cert.relation = std::move(best->rel);
    cert.vanishing_order = best->vanishing;
    cert.first_nonzero = best->first_nonzero;
    cert.height_of_relation = weil_height(ctx, cert.relation.flat_coeffs());
    cert.siegel_bound = siegel_bound_report(cert, f).bound_stated;
    return cert;
}

SiegelBoundReport siegel_bound_report(const RelationCertificate& cert, const PowerSeries& f) {
    const FieldCtx& ctx = f.ctx();
    auto dims = siegel_dims(cert.r, cert.L);
    const std::size_t M = static_cast<std::size_t>(dims.m);

    std::vector<Element> tuple{Element::one(ctx)};
    for (unsigned j = 1; j <= cert.r; ++j) {
        auto pw = prefix_power(f, j, M + 1);
        for (const auto& e : pw) tuple.push_back(e);
    }
    double h_trunc = weil_height(ctx, tuple);

    SiegelBoundReport out;
    out.height_of_relation = weil_height(ctx, cert.relation.flat_coeffs());
    out.bound_stated = ctx.epsilon() / 2 * std::log(static_cast<double>(dims.n_stated)) +
                       2.0 * cert.r * h_trunc + ctx.genus_term();
    out.bound_monomials = ctx.epsilon() / 2 * std::log(static_cast<double>(dims.n_monomials)) +
                          2.0 * cert.r * h_trunc + ctx.genus_term();
    out.satisfied = out.height_of_relation <= out.bound_stated + 1e-9;
    return out;
}

ProductFormulaOnC product_formula_on_c(const RelationCertificate& cert,
                                       const ReductionProfile& prof, const FieldCtx& ctx) {
    if (!cert.first_nonzero) throw NoNonzeroTerm();
    const auto& [n, c] = *cert.first_nonzero;
    ProductFormulaOnC out;
    out.n = n;
    out.height_c = height_of(ctx, c);
    for (const auto& e : prof.entries) {
        if (e.status != ReductionProfile::Status::Ok) continue;
        if (4ull * prof.r * prof.r * e.h < n) {
            out.partial_sum += e.place.residue_log_card();
            ++out.qualifying_places;
        }
    }
    out.holds = out.height_c >= out.partial_sum - 1e-9;
    return out;
}

}  // namespace hadq
