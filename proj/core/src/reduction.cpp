#include "hadq/reduction.hpp"

#include <algorithm>
#include <cmath>

#include "hadq/errors.hpp"
#include "hadq/numutil.hpp"

namespace hadq {

std::vector<ResidueField::Elem> reduce_prefix(const std::vector<Element>& coeffs,
                                              const ResidueField& rf) {
    std::vector<ResidueField::Elem> out;
    out.reserve(coeffs.size());
    for (std::size_t n = 0; n < coeffs.size(); ++n) {
        auto r = rf.reduce(coeffs[n]);
        if (!r) throw NotReducible(n);
        out.push_back(*r);
    }
    return out;
}

std::vector<ResidueField::Elem> reduce_series(const PowerSeries& f, const Place& s,
                                              std::size_t order) {
    return reduce_prefix(f.prefix(order + 1), ResidueField::at(s));
}

std::size_t relation_budget(unsigned h, unsigned r) {
    return static_cast<std::size_t>(h + 1) * (r + 1) + static_cast<std::size_t>(h) * r;
}

std::vector<std::vector<ResidueField::Elem>> nullspace_mod(
    const ResidueField& rf, std::vector<std::vector<ResidueField::Elem>> rows,
    std::size_t cols) {
    const std::size_t m = rows.size();
    for (auto& r : rows) r.resize(cols, 0);
    std::vector<std::size_t> pivot_col;
    std::size_t rank = 0;
    for (std::size_t c = 0; c < cols && rank < m; ++c) {
        std::size_t sel = m;
        for (std::size_t r = rank; r < m; ++r)
            if (rows[r][c] != 0) {
                sel = r;
                break;
            }
        if (sel == m) continue;
        std::swap(rows[rank], rows[sel]);
        ResidueField::Elem inv = rf.inv(rows[rank][c]);
        for (std::size_t k = c; k < cols; ++k) rows[rank][k] = rf.mul(rows[rank][k], inv);
        for (std::size_t r = 0; r < m; ++r) {
            if (r == rank || rows[r][c] == 0) continue;
            ResidueField::Elem f = rows[r][c];
            for (std::size_t k = c; k < cols; ++k)
                rows[r][k] = rf.sub(rows[r][k], rf.mul(f, rows[rank][k]));
        }
        pivot_col.push_back(c);
        ++rank;
    }
    std::vector<bool> is_pivot(cols, false);
    for (auto c : pivot_col) is_pivot[c] = true;
    std::vector<std::vector<ResidueField::Elem>> basis;
    for (std::size_t free_c = 0; free_c < cols; ++free_c) {
        if (is_pivot[free_c]) continue;
        std::vector<ResidueField::Elem> v(cols, 0);
        v[free_c] = rf.one();
        for (std::size_t r = 0; r < rank; ++r) v[pivot_col[r]] = rf.neg(rows[r][free_c]);
        basis.push_back(std::move(v));
    }
    return basis;
}

namespace {

// Truncated powers fs^0..fs^r of the reduced series, each to `order` terms.
std::vector<std::vector<ResidueField::Elem>> mod_powers(
    const std::vector<ResidueField::Elem>& fs, const ResidueField& rf, unsigned r,
    std::size_t order) {
    std::vector<std::vector<ResidueField::Elem>> pw(r + 1);
    pw[0].assign(order, 0);
    if (order > 0) pw[0][0] = rf.one();
    for (unsigned j = 1; j <= r; ++j) {
        pw[j].assign(order, 0);
        for (std::size_t a = 0; a < order; ++a) {
            if (pw[j - 1][a] == 0) continue;
            for (std::size_t b = 0; a + b < order && b < fs.size(); ++b) {
                if (fs[b] == 0) continue;
                pw[j][a + b] = rf.add(pw[j][a + b], rf.mul(pw[j - 1][a], fs[b]));
            }
        }
    }
    return pw;
}

}  // namespace

std::optional<ModRelation> minimal_relation_mod(const std::vector<ResidueField::Elem>& fs,
                                                const ResidueField& rf, unsigned r,
                                                unsigned degree_cap) {
    if (r < 1) throw InvalidArgument("relation degree r must be at least 1");
    std::size_t need = relation_budget(degree_cap, r);
    if (fs.size() < need) throw InsufficientPrefix(need, fs.size());

    auto pw = mod_powers(fs, rf, r, need);
    for (unsigned h = 0; h <= degree_cap; ++h) {
        std::size_t vanish = relation_budget(h, r);
        // Columns ordered y-degree descending, then t-degree ascending.
        std::size_t cols = static_cast<std::size_t>(h + 1) * (r + 1);
        auto col_index = [&](unsigned j, unsigned i) {
            return static_cast<std::size_t>(r - j) * (h + 1) + i;
        };
        std::vector<std::vector<ResidueField::Elem>> rows(
            vanish, std::vector<ResidueField::Elem>(cols, 0));
        for (std::size_t m = 0; m < vanish; ++m)
            for (unsigned j = 0; j <= r; ++j)
                for (unsigned i = 0; i <= h && i <= m; ++i)
                    rows[m][col_index(j, i)] = pw[j][m - i];
        auto basis = nullspace_mod(rf, std::move(rows), cols);
        if (basis.empty()) continue;
        // Lexicographically least echelon vector, then normalize the leading
        // entry to 1.
        std::size_t best = 0;
        for (std::size_t i = 1; i < basis.size(); ++i)
            if (basis[i] < basis[best]) best = i;
        auto& v = basis[best];
        std::size_t lead = 0;
        while (v[lead] == 0) ++lead;
        ResidueField::Elem s = rf.inv(v[lead]);
        for (auto& e : v) e = rf.mul(e, s);
        ModRelation rel;
        rel.h = h;
        rel.coef_y.assign(r + 1, std::vector<ResidueField::Elem>(h + 1, 0));
        for (unsigned j = 0; j <= r; ++j)
            for (unsigned i = 0; i <= h; ++i) rel.coef_y[j][i] = v[col_index(j, i)];
        return rel;
    }
    return std::nullopt;
}

PeriodReport hadamard_inverse_period_mod(const ExpSumForm& e, std::uint64_t p) {
    if (!is_prime_u64(p)) throw InvalidArgument("place must be a finite prime");
    if (e.ctx().kind != FieldKind::Rationals)
        throw InvalidArgument("period computation works over Q");

    // Reduce the data mod p; non-integral constants are errors here.
    struct Term {
        std::vector<std::uint64_t> poly;  // coefficients of q_i mod p
        std::uint64_t base;
    };
    std::vector<Term> terms;
    bool all_const = true;
    for (const auto& t : e.terms()) {
        Term term;
        auto reduce_q = [&](const mpq_class& v) -> std::uint64_t {
            std::uint64_t den = mpz_fdiv_ui(v.get_den().get_mpz_t(), p);
            if (den == 0) throw NonIntegralData("denominator divisible by " + std::to_string(p));
            return mulmod_u64(mpz_fdiv_ui(v.get_num().get_mpz_t(), p), invmod_u64(den, p), p);
        };
        for (int d = 0; d <= t.poly.deg(); ++d) term.poly.push_back(reduce_q(t.poly.coeff(d).rat()));
        term.base = reduce_q(t.base.rat());
        if (term.poly.size() > 1) all_const = false;
        terms.push_back(std::move(term));
    }

    std::uint64_t cycle = all_const ? (p - 1) : p * (p - 1);
    if (cycle == 0) cycle = 1;  // p = 2 degenerate with all_const
    std::vector<std::uint64_t> values;
    values.reserve(cycle + 1);
    std::vector<std::uint64_t> pows(terms.size(), 1);
    for (std::uint64_t n = 0; n <= cycle; ++n) {
        std::uint64_t v = 0;
        for (std::size_t i = 0; i < terms.size(); ++i) {
            // Horner for q_i(n) mod p.
            std::uint64_t nq = n % p, qv = 0;
            for (std::size_t d = terms[i].poly.size(); d-- > 0;)
                qv = (mulmod_u64(qv, nq, p) + terms[i].poly[d]) % p;
            v = (v + mulmod_u64(qv, pows[i], p)) % p;
        }
        values.push_back(v);
        if (v == 0) return PeriodReport{false, std::nullopt};
        for (std::size_t i = 0; i < terms.size(); ++i)
            pows[i] = mulmod_u64(pows[i], terms[i].base, p);
    }

    // Least divisor of the cycle length that is a period of 1/b_n.
    std::vector<std::uint64_t> inv_values(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) inv_values[i] = invmod_u64(values[i], p);
    for (std::uint64_t t = 1; t <= cycle; ++t) {
        if (cycle % t != 0) continue;
        bool ok = true;
        for (std::size_t n = 0; n + t < inv_values.size() && ok; ++n)
            ok = inv_values[n] == inv_values[n + t];
        if (ok) return PeriodReport{true, t};
    }
    return PeriodReport{true, cycle};
}

DensityEstimate place_set_density(const std::function<bool(const Place&)>& qualifier,
                                  const FieldCtx& ctx, std::uint64_t n) {
    if (n < 2) throw InvalidArgument("density cutoff must be at least 2");
    DensityEstimate out;
    out.n = n;
    for (const auto& s : enumerate_places(ctx, n)) {
        if (s.is_archimedean()) continue;
        double w = s.residue_log_card();
        out.denominator_log += w;
        if (qualifier(s)) out.numerator_log += w;
    }
    require_internal(out.denominator_log > 0, "no places below the cutoff");
    out.ratio = out.numerator_log / out.denominator_log;
    return out;
}

namespace {

// Does every value of the exponential sum reduce to a unit mod p? The data
// must reduce; the sequence is checked over one full cycle [0, p-1].
bool all_units_mod_p(const std::vector<std::pair<std::uint64_t, std::uint64_t>>& cg,
                     std::uint64_t p) {
    std::vector<std::uint64_t> pows(cg.size(), 1);
    for (std::uint64_t k = 0; k <= (p >= 2 ? p - 1 : 1); ++k) {
        std::uint64_t v = 0;
        for (std::size_t i = 0; i < cg.size(); ++i) v = (v + mulmod_u64(cg[i].first, pows[i], p)) % p;
        if (v == 0) return false;
        for (std::size_t i = 0; i < cg.size(); ++i)
            pows[i] = mulmod_u64(pows[i], cg[i].second, p);
    }
    return true;
}

}  // namespace

DensityEstimate split_unit_density(const ExpSumForm& g, const FieldCtx& ctx, std::uint64_t n) {
    if (n < 2) throw InvalidArgument("density cutoff must be at least 2");
    if (!g.simple()) throw NonSimplePoles();

    DensityEstimate out;
    out.n = n;
    if (ctx.kind == FieldKind::Rationals) {
        for (std::uint64_t p : primes_upto(n)) {
            if (p > n) break;
            double w = std::log(static_cast<double>(p));
            out.denominator_log += w;
            // Reduce (c_i, gamma_i); non-integral data disqualifies the place.
            std::vector<std::pair<std::uint64_t, std::uint64_t>> cg;
            bool integral = true;
            for (const auto& t : g.terms()) {
                auto red = [&](const mpq_class& v, std::uint64_t& dst) {
                    std::uint64_t den = mpz_fdiv_ui(v.get_den().get_mpz_t(), p);
                    if (den == 0) return false;
                    dst = mulmod_u64(mpz_fdiv_ui(v.get_num().get_mpz_t(), p),
                                     invmod_u64(den, p), p);
                    return true;
                };
                std::uint64_t c = 0, b = 0;
                if (!red(t.poly.coeff(0).rat(), c) || !red(t.base.rat(), b)) {
                    integral = false;
                    break;
                }
                cg.emplace_back(c, b);
            }
            if (integral && all_units_mod_p(cg, p)) out.numerator_log += w;
        }
        require_internal(out.denominator_log > 0, "no primes below the cutoff");
        out.ratio = out.numerator_log / out.denominator_log;
        return out;
    }

    // Function field: only degree-1 places count as split completely.
    for (const auto& s : enumerate_places(ctx, n)) {
        if (s.is_archimedean()) continue;
        double w = s.residue_log_card();
        out.denominator_log += w;
        if (s.residue_degree() != 1) continue;
        ResidueField rf = ResidueField::at(s);
        std::vector<std::pair<ResidueField::Elem, ResidueField::Elem>> cg;
        bool integral = true;
        for (const auto& t : g.terms()) {
            auto c = rf.reduce(t.poly.coeff(0));
            auto b = rf.reduce(t.base);
            if (!c || !b) {
                integral = false;
                break;
            }
            cg.emplace_back(*c, *b);
        }
        if (!integral) continue;
        bool units = true;
        std::vector<ResidueField::Elem> pows(cg.size(), rf.one());
        std::uint64_t cycle = rf.card() - 1 > 0 ? rf.card() - 1 : 1;
        for (std::uint64_t k = 0; k <= cycle && units; ++k) {
            ResidueField::Elem v = 0;
            for (std::size_t i = 0; i < cg.size(); ++i)
                v = rf.add(v, rf.mul(cg[i].first, pows[i]));
            if (rf.is_zero(v)) units = false;
            for (std::size_t i = 0; i < cg.size(); ++i)
                pows[i] = rf.mul(pows[i], cg[i].second);
        }
        if (units) out.numerator_log += w;
    }
    require_internal(out.denominator_log > 0, "no places below the cutoff");
    out.ratio = out.numerator_log / out.denominator_log;
    return out;
}

double ReductionProfile::lhs_lambda(std::uint64_t n) const {
    double s = 0;
    for (const auto& e : entries) {
        if (e.status != Status::Ok) continue;
        // h_s < n / (4 r^2), exactly: 4 r^2 h_s < n.
        if (4ull * r * r * e.h < n) s += e.place.residue_log_card();
    }
    return s / static_cast<double>(n);
}

ReductionProfile profile(const PowerSeries& f, unsigned r, std::uint64_t place_bound,
                         unsigned degree_cap, std::size_t window_override) {
    ReductionProfile out;
    out.r = r;
    out.place_bound = place_bound;
    out.search_cap = degree_cap;
    std::size_t need = relation_budget(degree_cap, r);
    out.reduction_window =
        window_override > 0
            ? std::max(window_override, need)
            : std::max(need, static_cast<std::size_t>(
                                 std::min<std::uint64_t>(place_bound + 1, 512)));

    auto coeffs = f.prefix(out.reduction_window);
    for (const auto& s : enumerate_places(f.ctx(), place_bound)) {
        if (s.is_archimedean()) continue;
        ReductionProfile::Entry entry;
        entry.place = s;
        ResidueField rf = ResidueField::at(s);
        try {
            auto fs = reduce_prefix(coeffs, rf);
            auto rel = minimal_relation_mod(fs, rf, r, degree_cap);
            if (rel) {
                entry.status = ReductionProfile::Status::Ok;
                entry.h = rel->h;
                entry.relation = std::move(rel);
            } else {
                entry.status = ReductionProfile::Status::AtCap;
            }
        } catch (const NotReducible& e) {
            entry.status = ReductionProfile::Status::NotReducible;
            entry.failure_index = e.index();
        }
        out.entries.push_back(std::move(entry));
    }
    return out;
}

}  // namespace hadq
