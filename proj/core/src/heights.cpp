#include "hadq/heights.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "hadq/errors.hpp"
#include "hadq/numutil.hpp"

namespace hadq {

double weil_height(const FieldCtx& ctx, const std::vector<Element>& coords) {
    if (coords.empty()) throw AllZero();
    bool any = false;
    for (const auto& c : coords) any = any || !c.is_zero();
    if (!any) throw AllZero();

    if (ctx.kind == FieldKind::Rationals) {
        mpz_class l = 1;
        for (const auto& c : coords)
            if (!c.is_zero())
                mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.rat().get_den().get_mpz_t());
        mpz_class g = 0, biggest = 0;
        for (const auto& c : coords) {
            if (c.is_zero()) continue;
            mpz_class y = c.rat().get_num() * (l / c.rat().get_den());
            mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), y.get_mpz_t());
            y = abs(y);
            if (y > biggest) biggest = y;
        }
        return log_abs(biggest) - log_abs(g);
    }

    const GF& f = GF::get(ctx.q);
    FqPoly l = FqPoly::constant(f, 1);
    for (const auto& c : coords)
        if (!c.is_zero()) {
            FqPoly gg = FqPoly::gcd(l, c.ff().den());
            l = l.divrem(gg).first * c.ff().den();
        }
    FqPoly g = FqPoly::zero(f);
    int maxdeg = 0;
    for (const auto& c : coords) {
        if (c.is_zero()) continue;
        FqPoly y = c.ff().num() * l.divrem(c.ff().den()).first;
        g = FqPoly::gcd(g, y);
        maxdeg = std::max(maxdeg, y.deg());
    }
    return static_cast<double>(maxdeg - g.deg()) * std::log(static_cast<double>(ctx.q));
}

double height_of(const FieldCtx& ctx, const Element& a) {
    return weil_height(ctx, {Element::one(ctx), a});
}

HeightEstimate truncation_height_curve(const PowerSeries& f, unsigned r,
                                       const std::vector<std::uint64_t>& orders) {
    if (r < 1) throw InvalidArgument("power count r must be at least 1");
    if (orders.empty()) throw InvalidArgument("empty order ladder");
    for (std::size_t i = 1; i < orders.size(); ++i)
        if (orders[i] <= orders[i - 1])
            throw InvalidArgument("orders must be strictly increasing");
    const FieldCtx& ctx = f.ctx();
    std::size_t maxn = static_cast<std::size_t>(orders.back());

    std::vector<std::vector<Element>> powers;
    for (unsigned j = 1; j <= r; ++j) powers.push_back(prefix_power(f, j, maxn + 1));

    HeightEstimate out;
    for (std::uint64_t n : orders) {
        std::vector<Element> tuple{Element::one(ctx)};
        for (unsigned j = 0; j < r; ++j)
            for (std::size_t i = 0; i <= n; ++i) tuple.push_back(powers[j][i]);
        out.samples.emplace_back(n, weil_height(ctx, tuple) / static_cast<double>(n));
    }
    out.window = static_cast<unsigned>(std::min<std::size_t>(3, out.samples.size()));
    double s = 0;
    for (std::size_t i = out.samples.size() - out.window; i < out.samples.size(); ++i)
        s += out.samples[i].second;
    out.extrapolated = s / out.window;
    return out;
}

RadiusProfile radius_profile(const PowerSeries& f, std::uint64_t place_bound,
                             std::size_t coeff_window) {
    if (coeff_window < 2) throw InvalidArgument("coefficient window too small");
    auto places = enumerate_places(f.ctx(), place_bound);
    auto coeffs = f.prefix(coeff_window + 1);

    RadiusProfile out;
    out.audited_bound = place_bound;
    out.coeff_window = coeff_window;
    for (const auto& v : places) {
        double est = 0;
        for (std::size_t n = (coeff_window + 1) / 2; n <= coeff_window; ++n) {
            if (coeffs[n].is_zero()) continue;
            est = std::max(est, log_abs_at(v, coeffs[n]) / static_cast<double>(n));
        }
        out.per_place.push_back({v, est});
        out.total += est;
    }
    return out;
}

AnalyticityAudit a_analyticity_audit(const PowerSeries& f, std::uint64_t place_bound,
                                     std::size_t coeff_window, double threshold) {
    if (coeff_window < 2) throw InvalidArgument("coefficient window too small");
    auto places = enumerate_places(f.ctx(), place_bound);
    auto coeffs = f.prefix(coeff_window + 1);

    AnalyticityAudit out;
    out.threshold = threshold;
    out.audited_bound = place_bound;
    out.coeff_window = coeff_window;
    for (const auto& v : places) {
        if (v.is_archimedean()) continue;
        AnalyticityAudit::Entry entry{v, 0.0, false};
        // n = 0, 1 cannot be fixed by shrinking r_v: they demand |a_n|_v <= 1.
        for (std::size_t n = 0; n <= 1 && n < coeffs.size(); ++n)
            if (!coeffs[n].is_zero() && log_abs_at(v, coeffs[n]) > 0) entry.unit_obstruction = true;
        if (entry.unit_obstruction) {
            entry.log_inv_radius = std::numeric_limits<double>::infinity();
        } else {
            for (std::size_t n = 2; n <= coeff_window; ++n) {
                if (coeffs[n].is_zero()) continue;
                entry.log_inv_radius = std::max(
                    entry.log_inv_radius, log_abs_at(v, coeffs[n]) / static_cast<double>(n - 1));
            }
        }
        out.divergence_sum += entry.log_inv_radius;
        out.per_place.push_back(std::move(entry));
    }
    out.refuted_at_bound = out.divergence_sum > threshold;
    return out;
}

}  // namespace hadq
