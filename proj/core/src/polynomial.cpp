#include "hadq/polynomial.hpp"

#include <algorithm>
#include <sstream>

#include "hadq/errors.hpp"

namespace hadq {

void PolyK::trim() {
    while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

PolyK::PolyK(const FieldCtx& ctx, std::vector<Element> coeffs)
    : ctx_(ctx), c_(std::move(coeffs)) {
    trim();
}

PolyK PolyK::constant(const FieldCtx& ctx, Element c) {
    PolyK out(ctx);
    if (!c.is_zero()) out.c_.push_back(std::move(c));
    return out;
}

PolyK PolyK::from_ints(const FieldCtx& ctx, const std::vector<long long>& coeffs) {
    std::vector<Element> c;
    c.reserve(coeffs.size());
    for (long long v : coeffs) c.push_back(Element::from_int(ctx, v));
    return PolyK(ctx, std::move(c));
}

Element PolyK::coeff(std::size_t i) const {
    return i < c_.size() ? c_[i] : Element::zero(ctx_);
}

const Element& PolyK::lc() const {
    require_internal(!c_.empty(), "leading coefficient of zero polynomial");
    return c_.back();
}

PolyK PolyK::operator+(const PolyK& o) const {
    std::vector<Element> c(std::max(c_.size(), o.c_.size()), Element::zero(ctx_));
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = coeff(i) + o.coeff(i);
    return PolyK(ctx_, std::move(c));
}

PolyK PolyK::operator-(const PolyK& o) const {
    std::vector<Element> c(std::max(c_.size(), o.c_.size()), Element::zero(ctx_));
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = coeff(i) - o.coeff(i);
    return PolyK(ctx_, std::move(c));
}

PolyK PolyK::operator*(const PolyK& o) const {
    if (is_zero() || o.is_zero()) return PolyK(ctx_);
    std::vector<Element> c(c_.size() + o.c_.size() - 1, Element::zero(ctx_));
    for (std::size_t i = 0; i < c_.size(); ++i)
        for (std::size_t j = 0; j < o.c_.size(); ++j) c[i + j] = c[i + j] + c_[i] * o.c_[j];
    return PolyK(ctx_, std::move(c));
}

PolyK PolyK::operator-() const {
    std::vector<Element> c(c_.size(), Element::zero(ctx_));
    for (std::size_t i = 0; i < c_.size(); ++i) c[i] = -c_[i];
    return PolyK(ctx_, std::move(c));
}

PolyK PolyK::scaled(const Element& s) const {
    std::vector<Element> c(c_.size(), Element::zero(ctx_));
    for (std::size_t i = 0; i < c_.size(); ++i) c[i] = c_[i] * s;
    return PolyK(ctx_, std::move(c));
}

PolyK PolyK::derivative() const {
    if (c_.size() <= 1) return PolyK(ctx_);
    std::vector<Element> c(c_.size() - 1, Element::zero(ctx_));
    for (std::size_t i = 1; i < c_.size(); ++i)
        c[i - 1] = c_[i] * Element::from_int(ctx_, static_cast<long long>(i));
    return PolyK(ctx_, std::move(c));
}

PolyK PolyK::shifted(unsigned k) const {
    if (is_zero()) return *this;
    std::vector<Element> c(c_.size() + k, Element::zero(ctx_));
    for (std::size_t i = 0; i < c_.size(); ++i) c[i + k] = c_[i];
    return PolyK(ctx_, std::move(c));
}

PolyK PolyK::pow(unsigned e) const {
    PolyK acc = PolyK::constant(ctx_, Element::one(ctx_));
    PolyK base = *this;
    while (e) {
        if (e & 1) acc = acc * base;
        if (e >>= 1) base = base * base;
    }
    return acc;
}

Element PolyK::eval(const Element& x) const {
    Element acc = Element::zero(ctx_);
    for (std::size_t i = c_.size(); i-- > 0;) acc = acc * x + c_[i];
    return acc;
}

Element PolyK::eval_at_integer(long long n) const { return eval(Element::from_int(ctx_, n)); }

std::pair<PolyK, PolyK> PolyK::divrem(const PolyK& d) const {
    if (d.is_zero()) throw ZeroElement();
    if (deg() < d.deg()) return {PolyK(ctx_), *this};
    std::vector<Element> rem = c_;
    std::vector<Element> quo(deg() - d.deg() + 1, Element::zero(ctx_));
    Element ilc = d.lc().inverse();
    for (int k = deg() - d.deg(); k >= 0; --k) {
        Element c = rem[k + d.deg()] * ilc;
        quo[k] = c;
        if (c.is_zero()) continue;
        for (int i = 0; i <= d.deg(); ++i) rem[k + i] = rem[k + i] - c * d.coeff(i);
    }
    return {PolyK(ctx_, std::move(quo)), PolyK(ctx_, std::move(rem))};
}

PolyK PolyK::gcd(PolyK a, PolyK b) {
    while (!b.is_zero()) {
        PolyK r = a.divrem(b).second;
        a = std::move(b);
        b = std::move(r);
    }
    if (!a.is_zero()) a = a.scaled(a.lc().inverse());
    return a;
}

std::string PolyK::str(const std::string& var) const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (std::size_t i = c_.size(); i-- > 0;) {
        if (c_[i].is_zero()) continue;
        if (!first) os << " + ";
        os << "(" << c_[i].str() << ")";
        if (i > 0) {
            os << "*" << var;
            if (i > 1) os << "^" << i;
        }
        first = false;
    }
    return os.str();
}

std::vector<Element> series_mul(const FieldCtx& ctx, const std::vector<Element>& a,
                                const std::vector<Element>& b, std::size_t order) {
    std::vector<Element> c(order, Element::zero(ctx));
    for (std::size_t i = 0; i < a.size() && i < order; ++i) {
        if (a[i].is_zero()) continue;
        std::size_t jmax = std::min(order - i, b.size());
        for (std::size_t j = 0; j < jmax; ++j) {
            if (b[j].is_zero()) continue;
            c[i + j] = c[i + j] + a[i] * b[j];
        }
    }
    return c;
}

std::vector<Element> series_inv(const FieldCtx& ctx, const std::vector<Element>& a,
                                std::size_t order) {
    require_internal(!a.empty() && !a[0].is_zero(), "series inverse needs a unit constant term");
    std::vector<Element> inv(order, Element::zero(ctx));
    inv[0] = a[0].inverse();
    // inv[n] = -a0^{-1} * sum_{k=1}^{n} a_k inv_{n-k}
    for (std::size_t n = 1; n < order; ++n) {
        Element s = Element::zero(ctx);
        std::size_t kmax = std::min(n, a.size() - 1);
        for (std::size_t k = 1; k <= kmax; ++k) s = s + a[k] * inv[n - k];
        inv[n] = -(inv[0] * s);
    }
    return inv;
}

// ---------------------------------------------------------------------------
// BivariateRelation

void BivariateRelation::trim() {
    while (!cy_.empty() && cy_.back().is_zero()) cy_.pop_back();
}

BivariateRelation::BivariateRelation(const FieldCtx& ctx, std::vector<PolyK> coef_y)
    : ctx_(ctx), cy_(std::move(coef_y)) {
    trim();
}

BivariateRelation BivariateRelation::from_matrix(const FieldCtx& ctx,
                                                 const std::vector<std::vector<Element>>& rows) {
    std::size_t dy = 0;
    for (const auto& row : rows) dy = std::max(dy, row.size());
    std::vector<PolyK> cy;
    for (std::size_t j = 0; j < dy; ++j) {
        std::vector<Element> c;
        for (std::size_t i = 0; i < rows.size(); ++i)
            c.push_back(j < rows[i].size() ? rows[i][j] : Element::zero(ctx));
        cy.emplace_back(ctx, std::move(c));
    }
    return BivariateRelation(ctx, std::move(cy));
}

int BivariateRelation::deg_t() const {
    int d = -1;
    for (const auto& p : cy_) d = std::max(d, p.deg());
    return d;
}

const PolyK& BivariateRelation::coeff_y(std::size_t j) const {
    require_internal(j < cy_.size(), "y-degree out of range");
    return cy_[j];
}

std::vector<std::vector<Element>> BivariateRelation::matrix() const {
    int dt = deg_t();
    std::vector<std::vector<Element>> rows;
    for (int i = 0; i <= std::max(dt, 0); ++i) {
        std::vector<Element> row;
        for (std::size_t j = 0; j < cy_.size(); ++j) row.push_back(cy_[j].coeff(i));
        rows.push_back(std::move(row));
    }
    return rows;
}

std::vector<Element> BivariateRelation::flat_coeffs() const {
    std::vector<Element> out;
    int dt = deg_t();
    for (std::size_t j = cy_.size(); j-- > 0;)
        for (int i = 0; i <= dt; ++i) out.push_back(cy_[j].coeff(i));
    return out;
}

BivariateRelation BivariateRelation::derivative_y() const {
    std::vector<PolyK> cy;
    for (std::size_t j = 1; j < cy_.size(); ++j)
        cy.push_back(cy_[j].scaled(Element::from_int(ctx_, static_cast<long long>(j))));
    return BivariateRelation(ctx_, std::move(cy));
}

Element BivariateRelation::eval(const Element& t0, const Element& y0) const {
    Element acc = Element::zero(ctx_);
    for (std::size_t j = cy_.size(); j-- > 0;) acc = acc * y0 + cy_[j].eval(t0);
    return acc;
}

std::vector<Element> BivariateRelation::eval_series(const std::vector<Element>& y,
                                                    std::size_t order) const {
    // Horner in y over the truncated series ring.
    std::vector<Element> acc(order, Element::zero(ctx_));
    for (std::size_t j = cy_.size(); j-- > 0;) {
        acc = series_mul(ctx_, acc, y, order);
        for (int i = 0; i <= cy_[j].deg() && i < static_cast<int>(order); ++i)
            acc[i] = acc[i] + cy_[j].coeff(i);
    }
    return acc;
}

BivariateRelation BivariateRelation::normalized(bool strip_t_power) const {
    require_internal(!is_zero(), "normalizing the zero relation");
    std::vector<PolyK> cy = cy_;

    if (strip_t_power) {
        unsigned tshift = static_cast<unsigned>(-1);
        for (const auto& p : cy) {
            if (p.is_zero()) continue;
            unsigned low = 0;
            while (p.coeff(low).is_zero()) ++low;
            tshift = std::min(tshift, low);
        }
        if (tshift > 0 && tshift != static_cast<unsigned>(-1)) {
            for (auto& p : cy) {
                if (p.is_zero()) continue;
                std::vector<Element> c(p.coeffs().begin() + tshift, p.coeffs().end());
                p = PolyK(ctx_, std::move(c));
            }
        }
    }

    if (ctx_.kind == FieldKind::Rationals) {
        // Clear denominators, divide by integer content.
        mpz_class l = 1;
        for (const auto& p : cy)
            for (const auto& e : p.coeffs())
                if (!e.is_zero()) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(),
                                          e.rat().get_den().get_mpz_t());
        mpz_class g = 0;
        for (const auto& p : cy)
            for (const auto& e : p.coeffs())
                if (!e.is_zero()) {
                    mpz_class num = e.rat().get_num() * l / e.rat().get_den();
                    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), num.get_mpz_t());
                }
        Element s = Element::rational(mpq_class(l) / mpq_class(g));
        for (auto& p : cy) p = p.scaled(s);
        // Sign: leading entry in (y descending, t ascending) order positive.
        for (std::size_t j = cy.size(); j-- > 0;) {
            const PolyK& p = cy[j];
            if (p.is_zero()) continue;
            unsigned low = 0;
            while (p.coeff(low).is_zero()) ++low;
            if (sgn(p.coeff(low).rat()) < 0)
                for (auto& pp : cy) pp = -pp;
            break;
        }
        return BivariateRelation(ctx_, std::move(cy));
    }

    // Function field: clear polynomial denominators, divide by the gcd of the
    // numerators, then scale so the leading entry is monic.
    const GF& f = GF::get(ctx_.q);
    FqPoly l = FqPoly::constant(f, 1);
    for (const auto& p : cy)
        for (const auto& e : p.coeffs())
            if (!e.is_zero()) {
                FqPoly g = FqPoly::gcd(l, e.ff().den());
                l = l.divrem(g).first * e.ff().den();
            }
    FqPoly g = FqPoly::zero(f);
    for (const auto& p : cy)
        for (const auto& e : p.coeffs())
            if (!e.is_zero()) {
                FqPoly num = e.ff().num() * l.divrem(e.ff().den()).first;
                g = FqPoly::gcd(g, num);
            }
    Element s = Element::function_field(RatFn(l, g));
    for (auto& p : cy) p = p.scaled(s);
    for (std::size_t j = cy.size(); j-- > 0;) {
        const PolyK& p = cy[j];
        if (p.is_zero()) continue;
        unsigned low = 0;
        while (p.coeff(low).is_zero()) ++low;
        const RatFn& lead = p.coeff(low).ff();
        require_internal(lead.den().is_one(), "normalization left a denominator");
        GF::Elem lcc = lead.num().lc();
        if (lcc != 1) {
            Element inv = Element::function_field(
                RatFn::from_poly(FqPoly::constant(f, f.inv(lcc))));
            for (auto& pp : cy) pp = pp.scaled(inv);
        }
        break;
    }
    return BivariateRelation(ctx_, std::move(cy));
}

std::string BivariateRelation::str() const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (std::size_t j = cy_.size(); j-- > 0;) {
        if (cy_[j].is_zero()) continue;
        if (!first) os << " + ";
        os << "(" << cy_[j].str() << ")";
        if (j > 0) {
            os << "*y";
            if (j > 1) os << "^" << j;
        }
        first = false;
    }
    return os.str();
}

std::vector<std::vector<Element>> nullspace_K(const FieldCtx& ctx,
                                              std::vector<std::vector<Element>> rows,
                                              std::size_t cols) {
    const std::size_t m = rows.size();
    for (auto& r : rows) r.resize(cols, Element::zero(ctx));

    std::vector<std::size_t> pivot_col;
    std::size_t rank = 0;
    for (std::size_t c = 0; c < cols && rank < m; ++c) {
        std::size_t sel = m;
        for (std::size_t r = rank; r < m; ++r)
            if (!rows[r][c].is_zero()) {
                sel = r;
                break;
            }
        if (sel == m) continue;
        std::swap(rows[rank], rows[sel]);
        Element inv = rows[rank][c].inverse();
        for (std::size_t k = c; k < cols; ++k) rows[rank][k] = rows[rank][k] * inv;
        for (std::size_t r = 0; r < m; ++r) {
            if (r == rank || rows[r][c].is_zero()) continue;
            Element f = rows[r][c];
            for (std::size_t k = c; k < cols; ++k)
                rows[r][k] = rows[r][k] - f * rows[rank][k];
        }
        pivot_col.push_back(c);
        ++rank;
    }

    std::vector<bool> is_pivot(cols, false);
    for (auto c : pivot_col) is_pivot[c] = true;

    std::vector<std::vector<Element>> basis;
    for (std::size_t free_c = 0; free_c < cols; ++free_c) {
        if (is_pivot[free_c]) continue;
        std::vector<Element> v(cols, Element::zero(ctx));
        v[free_c] = Element::one(ctx);
        for (std::size_t r = 0; r < rank; ++r)
            v[pivot_col[r]] = -rows[r][free_c];
        basis.push_back(std::move(v));
    }
    return basis;
}

}  // namespace hadq
