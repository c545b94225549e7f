#pragma once

#include <vector>

#include "hadq/field.hpp"

namespace hadq {

// Dense univariate polynomial with coefficients in the global field K.
class PolyK {
public:
    PolyK() = default;
    explicit PolyK(const FieldCtx& ctx) : ctx_(ctx) {}
    PolyK(const FieldCtx& ctx, std::vector<Element> coeffs);

    static PolyK constant(const FieldCtx& ctx, Element c);
    static PolyK from_ints(const FieldCtx& ctx, const std::vector<long long>& coeffs);

    const FieldCtx& ctx() const { return ctx_; }
    int deg() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    bool is_constant() const { return c_.size() <= 1; }
    Element coeff(std::size_t i) const;
    const Element& lc() const;
    const std::vector<Element>& coeffs() const { return c_; }

    PolyK operator+(const PolyK& o) const;
    PolyK operator-(const PolyK& o) const;
    PolyK operator*(const PolyK& o) const;
    PolyK operator-() const;
    PolyK scaled(const Element& s) const;
    PolyK derivative() const;
    PolyK shifted(unsigned k) const;  // multiply by t^k
    PolyK pow(unsigned e) const;

    Element eval(const Element& x) const;
    Element eval_at_integer(long long n) const;  // evaluate at the image of n in K

    std::pair<PolyK, PolyK> divrem(const PolyK& d) const;
    static PolyK gcd(PolyK a, PolyK b);  // normalized with lc = 1 (or zero)

    bool operator==(const PolyK& o) const { return c_ == o.c_; }
    std::string str(const std::string& var = "t") const;

private:
    FieldCtx ctx_;
    std::vector<Element> c_;
    void trim();
};

// Truncated power series arithmetic on coefficient vectors (length = order).
std::vector<Element> series_mul(const FieldCtx& ctx, const std::vector<Element>& a,
                                const std::vector<Element>& b, std::size_t order);
// Inverse of a series with nonzero constant term, modulo t^order.
std::vector<Element> series_inv(const FieldCtx& ctx, const std::vector<Element>& a,
                                std::size_t order);

// A nonzero bivariate polynomial Phi(t, y) over K with bounded bidegree,
// stored as polynomials in t indexed by the power of y.
class BivariateRelation {
public:
    BivariateRelation() = default;
    BivariateRelation(const FieldCtx& ctx, std::vector<PolyK> coef_y);
    // Rows indexed by the power of t, columns by the power of y.
    static BivariateRelation from_matrix(const FieldCtx& ctx,
                                         const std::vector<std::vector<Element>>& rows);

    const FieldCtx& ctx() const { return ctx_; }
    int deg_y() const { return static_cast<int>(cy_.size()) - 1; }
    int deg_t() const;
    bool is_zero() const { return cy_.empty(); }
    const PolyK& coeff_y(std::size_t j) const;
    const std::vector<PolyK>& coeffs_y() const { return cy_; }
    std::vector<std::vector<Element>> matrix() const;  // [i][j] layout
    std::vector<Element> flat_coeffs() const;          // all entries, (j desc, i asc)

    BivariateRelation derivative_y() const;
    Element eval(const Element& t0, const Element& y0) const;
    // Phi(t, y(t)) modulo t^order for a truncated series y.
    std::vector<Element> eval_series(const std::vector<Element>& y, std::size_t order) const;

    // Canonical form: optionally strip any common power of t, clear
    // denominators, divide by content, and scale so the leading entry in
    // (y-degree descending, t-degree ascending) order is 1 over F_q(x) or
    // positive with integer coefficients of gcd 1 over Q. Stripping a t-power
    // lowers the vanishing order of Phi(t, f); callers that need a vanishing
    // guarantee must re-verify or pass strip_t_power = false.
    BivariateRelation normalized(bool strip_t_power = true) const;

    bool operator==(const BivariateRelation& o) const { return cy_ == o.cy_; }
    std::string str() const;

private:
    FieldCtx ctx_;
    std::vector<PolyK> cy_;
    void trim();
};

// Exact kernel of the M x N matrix `rows` over K: a basis of the nullspace in
// reduced-echelon standard form, following the given column order.
std::vector<std::vector<Element>> nullspace_K(const FieldCtx& ctx,
                                              std::vector<std::vector<Element>> rows,
                                              std::size_t cols);

}  // namespace hadq
