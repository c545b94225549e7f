#include "hadq/expsum.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

#include "hadq/errors.hpp"
#include "hadq/numutil.hpp"

namespace hadq {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Solve the square system A x = rhs exactly; A must be invertible.
std::vector<Element> solve_linear(const FieldCtx& ctx, std::vector<std::vector<Element>> a,
                                  std::vector<Element> rhs) {
    const std::size_t n = a.size();
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t sel = n;
        for (std::size_t r = c; r < n; ++r)
            if (!a[r][c].is_zero()) {
                sel = r;
                break;
            }
        require_internal(sel != n, "singular confluent system");
        std::swap(a[c], a[sel]);
        std::swap(rhs[c], rhs[sel]);
        Element inv = a[c][c].inverse();
        for (std::size_t k = c; k < n; ++k) a[c][k] = a[c][k] * inv;
        rhs[c] = rhs[c] * inv;
        for (std::size_t r = 0; r < n; ++r) {
            if (r == c || a[r][c].is_zero()) continue;
            Element f = a[r][c];
            for (std::size_t k = c; k < n; ++k) a[r][k] = a[r][k] - f * a[c][k];
            rhs[r] = rhs[r] - f * rhs[c];
        }
    }
    return rhs;
}

// Candidate roots in K of a polynomial with cleared coefficients, from the
// divisors of the constant and leading coefficients.
std::vector<Element> root_candidates(const PolyK& poly) {
    const FieldCtx& ctx = poly.ctx();
    std::vector<Element> out;
    if (ctx.kind == FieldKind::Rationals) {
        mpz_class l = 1;
        for (const auto& e : poly.coeffs())
            if (!e.is_zero())
                mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), e.rat().get_den().get_mpz_t());
        mpz_class c0 = poly.coeff(0).rat().get_num() * l / poly.coeff(0).rat().get_den();
        mpz_class cd = poly.lc().rat().get_num() * l / poly.lc().rat().get_den();
        auto divisors = [](const mpz_class& n) {
            std::vector<mpz_class> divs{1};
            for (const auto& [p, e] : factor_mpz(n)) {
                std::size_t sz = divs.size();
                mpz_class pe = 1;
                for (unsigned k = 1; k <= e; ++k) {
                    pe *= p;
                    for (std::size_t i = 0; i < sz; ++i) divs.push_back(divs[i] * pe);
                }
                if (divs.size() > 200000)
                    throw FactorizationTooHard("too many divisor candidates");
            }
            return divs;
        };
        for (const auto& u : divisors(c0))
            for (const auto& v : divisors(cd)) {
                out.push_back(Element::rational(mpq_class(u, v)));
                out.push_back(Element::rational(mpq_class(-u, v)));
            }
        return out;
    }
    const GF& f = GF::get(ctx.q);
    FqPoly l = FqPoly::constant(f, 1);
    for (const auto& e : poly.coeffs())
        if (!e.is_zero()) {
            FqPoly g = FqPoly::gcd(l, e.ff().den());
            l = l.divrem(g).first * e.ff().den();
        }
    auto cleared = [&](const Element& e) {
        return e.ff().num() * l.divrem(e.ff().den()).first;
    };
    auto divisors = [&](const FqPoly& n) {
        std::vector<FqPoly> divs{FqPoly::constant(f, 1)};
        FqPoly rest = n;
        for (unsigned d = 1; rest.deg() > 0; ++d) {
            for (const auto& pi : monic_irreducibles(f, d)) {
                unsigned mult = 0;
                while (pi.divides(rest)) {
                    rest = rest.divrem(pi).first;
                    ++mult;
                }
                if (mult == 0) continue;
                std::size_t sz = divs.size();
                FqPoly pe = FqPoly::constant(f, 1);
                for (unsigned k = 1; k <= mult; ++k) {
                    pe = pe * pi;
                    for (std::size_t i = 0; i < sz; ++i) divs.push_back(divs[i] * pe);
                }
                if (rest.deg() == 0) break;
            }
        }
        return divs;
    };
    auto us = divisors(cleared(poly.coeff(0)));
    auto vs = divisors(cleared(poly.lc()));
    for (const auto& u : us)
        for (const auto& v : vs)
            for (GF::Elem unit = 1; unit < f.q(); ++unit)
                out.push_back(Element::function_field(RatFn(u.scaled(unit), v)));
    return out;
}

}  // namespace

ExpSumForm ExpSumForm::make(const FieldCtx& ctx, std::vector<ExpSumTerm> terms) {
    ExpSumForm e;
    e.ctx_ = ctx;
    for (auto& t : terms) {
        if (t.poly.is_zero()) continue;
        if (t.base.is_zero()) throw InvalidArgument("exponential sum base must be nonzero");
        bool merged = false;
        for (auto& have : e.terms_)
            if (have.base == t.base) {
                have.poly = have.poly + t.poly;
                merged = true;
                break;
            }
        if (!merged) e.terms_.push_back(std::move(t));
    }
    e.terms_.erase(std::remove_if(e.terms_.begin(), e.terms_.end(),
                                  [](const ExpSumTerm& t) { return t.poly.is_zero(); }),
                   e.terms_.end());
    std::sort(e.terms_.begin(), e.terms_.end(), [](const ExpSumTerm& a, const ExpSumTerm& b) {
        return a.base.str() < b.base.str();
    });
    return e;
}

bool ExpSumForm::simple() const {
    return std::all_of(terms_.begin(), terms_.end(),
                       [](const ExpSumTerm& t) { return t.poly.is_constant(); });
}

Element ExpSumForm::value_at(unsigned long long n) const {
    Element acc = Element::zero(ctx_);
    for (const auto& t : terms_)
        acc = acc + t.poly.eval_at_integer(static_cast<long long>(n)) *
                        t.base.pow(static_cast<long long>(n));
    return acc;
}

ExpSumForm rational_to_expsum(const PolyK& num, const PolyK& den) {
    const FieldCtx& ctx = num.ctx();
    if (den.is_zero() || den.coeff(0).is_zero())
        throw InvalidArgument("denominator needs a nonzero constant term");
    if (num.deg() >= den.deg()) throw NonProperRational();
    if (num.is_zero()) return ExpSumForm::make(ctx, {});

    // Extract roots of the denominator in K with multiplicity.
    PolyK rem = den;
    std::vector<std::pair<Element, unsigned>> roots;
    for (const auto& cand : root_candidates(den)) {
        if (rem.deg() == 0) break;
        unsigned mult = 0;
        while (rem.deg() > 0 && rem.eval(cand).is_zero()) {
            PolyK lin(ctx, {-cand, Element::one(ctx)});
            rem = rem.divrem(lin).first;
            ++mult;
        }
        if (mult > 0) roots.emplace_back(cand, mult);
    }
    if (rem.deg() > 0) throw NonSplitDenominator(rem.str());

    unsigned chr = ctx.characteristic();
    for (const auto& [rho, mult] : roots) {
        (void)rho;
        if (chr != 0 && mult > chr)
            throw Unsupported("pole multiplicity exceeds the characteristic; the polynomial "
                              "coefficient form does not apply");
    }

    // Solve for the polynomial coefficients against the first deg(den)
    // series coefficients.
    const unsigned D = static_cast<unsigned>(den.deg());
    std::vector<Element> b(D, Element::zero(ctx));
    {
        Element q0inv = den.coeff(0).inverse();
        for (unsigned n = 0; n < D; ++n) {
            Element s = num.coeff(n);
            for (unsigned i = 1; i <= std::min<unsigned>(n, den.deg()); ++i)
                s = s - den.coeff(i) * b[n - i];
            b[n] = s * q0inv;
        }
    }
    std::vector<std::vector<Element>> a(D, std::vector<Element>());
    for (unsigned n = 0; n < D; ++n) {
        Element en = Element::from_int(ctx, n);
        for (const auto& [rho, mult] : roots) {
            Element gamma = rho.inverse();
            Element gn = gamma.pow(n);
            Element nd = Element::one(ctx);
            for (unsigned d = 0; d < mult; ++d) {
                a[n].push_back(nd * gn);
                nd = nd * en;
            }
        }
    }
    auto x = solve_linear(ctx, std::move(a), std::move(b));

    std::vector<ExpSumTerm> terms;
    std::size_t idx = 0;
    for (const auto& [rho, mult] : roots) {
        std::vector<Element> coeffs(x.begin() + idx, x.begin() + idx + mult);
        idx += mult;
        terms.push_back(ExpSumTerm{PolyK(ctx, std::move(coeffs)), rho.inverse()});
    }
    ExpSumForm out = ExpSumForm::make(ctx, std::move(terms));

    // Reconstruction check over the documented window.
    {
        std::size_t window = 2 * (std::max(num.deg(), 0) + den.deg() + 1);
        Element q0inv = den.coeff(0).inverse();
        std::vector<Element> chk;
        for (std::size_t n = 0; n < window; ++n) {
            Element s = num.coeff(n);
            for (std::size_t i = 1; i <= std::min<std::size_t>(n, den.deg()); ++i)
                s = s - den.coeff(i) * chk[n - i];
            chk.push_back(s * q0inv);
            require_internal(out.value_at(n) == chk.back(),
                             "exponential-sum reconstruction mismatch");
        }
    }
    return out;
}

std::pair<PolyK, PolyK> expsum_to_rational(const ExpSumForm& e) {
    const FieldCtx& ctx = e.ctx();
    PolyK num(ctx), den = PolyK::constant(ctx, Element::one(ctx));
    for (const auto& term : e.terms()) {
        // sum_n q(n) (gamma t)^n as a rational function: apply t d/dt to
        // 1/(1 - gamma t) once per power of n and combine.
        PolyK base_den(ctx, {Element::one(ctx), -term.base});  // 1 - gamma t
        PolyK n_term(ctx), d_term = PolyK::constant(ctx, Element::one(ctx));
        PolyK sn = PolyK::constant(ctx, Element::one(ctx));  // current numerator
        PolyK sd = base_den;                                 // current denominator
        for (int d = 0; d <= term.poly.deg(); ++d) {
            if (d > 0) {
                // (N/D) -> t (N' D - N D') / D^2
                PolyK nn = (sn.derivative() * sd - sn * sd.derivative()).shifted(1);
                sd = sd * sd;
                sn = std::move(nn);
            }
            if (!term.poly.coeff(d).is_zero()) {
                // accumulate coeff * sn/sd into n_term/d_term
                n_term = n_term * sd + sn.scaled(term.poly.coeff(d)) * d_term;
                d_term = d_term * sd;
            }
        }
        num = num * d_term + n_term * den;
        den = den * d_term;
    }
    // Cancel common factors and normalize den(0) = 1.
    PolyK g = PolyK::gcd(num, den);
    if (!g.is_zero() && g.deg() > 0) {
        num = num.divrem(g).first;
        den = den.divrem(g).first;
    }
    require_internal(!den.coeff(0).is_zero(), "exponential sum produced a pole at t = 0");
    Element s = den.coeff(0).inverse();
    return {num.scaled(s), den.scaled(s)};
}

namespace {

// Exact three-way comparison of |a|_{v0} and |b|_{v0} (a, b nonzero).
int cmp_abs_at(const Place& v0, const Element& a, const Element& b) {
    if (v0.is_archimedean()) {
        int c = cmp(abs(a.rat()), abs(b.rat()));
        return c;
    }
    long long oa = ord_at(v0, a), ob = ord_at(v0, b);
    if (oa == ob) return 0;
    return oa > ob ? -1 : 1;  // larger valuation = smaller absolute value
}

}  // namespace

DominantPoleDecomposition dominant_pole_decompose(const ExpSumForm& e, const Place& v0) {
    if (e.is_zero()) throw InvalidArgument("empty exponential sum");
    const auto& terms = e.terms();
    std::size_t best = 0;
    for (std::size_t i = 1; i < terms.size(); ++i)
        if (cmp_abs_at(v0, terms[i].base, terms[best].base) > 0) best = i;
    std::string ties;
    for (std::size_t i = 0; i < terms.size(); ++i) {
        if (i == best) continue;
        if (cmp_abs_at(v0, terms[i].base, terms[best].base) == 0) {
            if (!ties.empty()) ties += ", ";
            ties += terms[i].base.str();
        }
    }
    if (!ties.empty()) throw NoDominantPole(terms[best].base.str() + ", " + ties);

    DominantPoleDecomposition out;
    out.beta = terms[best].base;
    out.p = terms[best].poly;
    for (std::size_t i = 0; i < terms.size(); ++i) {
        if (i == best) continue;
        out.tail.push_back(ExpSumTerm{terms[i].poly, terms[i].base / out.beta});
    }
    out.simple = out.p.is_constant();
    return out;
}

HadamardInverseApprox hadamard_inverse_approx(const ExpSumForm& e, const Place& v0, unsigned J) {
    const FieldCtx& ctx = e.ctx();
    auto dec = dominant_pole_decompose(e, v0);
    if (!dec.simple) throw NonSimpleDominantPole();
    Element c = dec.p.coeff(0);
    Element cinv = c.inverse();

    HadamardInverseApprox out;
    out.terms = J;
    if (dec.tail.empty()) {
        out.u = ExpSumForm::make(
            ctx, {ExpSumTerm{PolyK::constant(ctx, cinv), Element::one(ctx)}});
        out.log_radius = kInf;
        out.log_scale = -kInf;
        return out;
    }

    // u = sum_{j=0}^{J} (-1)^j w^j / c^{j+1} with w the tail.
    std::vector<ExpSumTerm> u_terms{
        ExpSumTerm{PolyK::constant(ctx, cinv), Element::one(ctx)}};
    std::vector<ExpSumTerm> wpow{
        ExpSumTerm{PolyK::constant(ctx, Element::one(ctx)), Element::one(ctx)}};
    Element sign_c = cinv;
    for (unsigned j = 1; j <= J; ++j) {
        std::vector<ExpSumTerm> next;
        for (const auto& s : wpow)
            for (const auto& t : dec.tail) {
                ExpSumTerm prod{s.poly * t.poly, s.base * t.base};
                bool merged = false;
                for (auto& have : next)
                    if (have.base == prod.base) {
                        have.poly = have.poly + prod.poly;
                        merged = true;
                        break;
                    }
                if (!merged) next.push_back(std::move(prod));
            }
        wpow = std::move(next);
        sign_c = -(sign_c * cinv);
        for (const auto& s : wpow)
            u_terms.push_back(ExpSumTerm{s.poly.scaled(sign_c), s.base});
    }
    out.u = ExpSumForm::make(ctx, std::move(u_terms));

    // Certified remainder envelope |r_n| <= A sigma^{n(J+1)}.
    double log_rho = -kInf;
    int max_deg = 0;
    for (const auto& t : dec.tail) {
        log_rho = std::max(log_rho, log_abs_at(v0, t.base));
        max_deg = std::max(max_deg, t.poly.deg());
    }
    require_internal(log_rho < 0, "tail bases must be contracting");
    double log_c = log_abs_at(v0, c);
    double log_sigma, log_w;
    if (!v0.is_archimedean()) {
        // Ultrametric: |q(n)|_v is bounded by the largest coefficient.
        log_sigma = log_rho;
        log_w = -kInf;
        for (const auto& t : dec.tail)
            for (const auto& coeffe : t.poly.coeffs())
                if (!coeffe.is_zero()) log_w = std::max(log_w, log_abs_at(v0, coeffe));
    } else {
        double l1 = 0;
        for (const auto& t : dec.tail)
            for (const auto& coeffe : t.poly.coeffs())
                if (!coeffe.is_zero()) l1 += std::exp(log_abs_at(v0, coeffe));
        if (max_deg == 0) {
            log_sigma = log_rho;
            log_w = std::log(l1);
        } else {
            // Absorb the polynomial growth into a slightly larger base.
            log_sigma = log_rho / 2;
            double gap = log_sigma - log_rho;  // > 0
            double best = 0;
            double nstar = max_deg / gap;
            for (double n : {std::floor(nstar) - 1, std::floor(nstar), std::ceil(nstar)}) {
                if (n < 0) continue;
                best = std::max(best, max_deg * std::log1p(n) - n * gap);
            }
            log_w = std::log(l1) + best;
        }
    }

    // Index beyond which |c + w_n| is at least |c| (ultrametric) or |c|/2.
    double slack = v0.is_archimedean() ? std::log(2.0) : 0.0;
    std::size_t n0 = 0;
    while (log_w + static_cast<double>(n0) * log_sigma >= log_c - slack) {
        ++n0;
        if (n0 > 100000)
            throw Unsupported("remainder certification window too large at this place");
    }
    double log_a = static_cast<double>(J + 1) * log_w -
                   static_cast<double>(J + 2) * log_c + slack;
    for (std::size_t n = 0; n < n0; ++n) {
        Element bn = e.value_at(n);
        if (bn.is_zero()) throw ZeroDenominatorCoefficient(n);
        Element rn = dec.beta.pow(static_cast<long long>(n)) / bn - out.u.value_at(n);
        if (rn.is_zero()) continue;
        log_a = std::max(log_a, log_abs_at(v0, rn) -
                                    static_cast<double>(n) * (J + 1) * log_sigma);
    }
    out.log_radius = -static_cast<double>(J + 1) * log_sigma;
    out.log_scale = log_a;
    return out;
}

}  // namespace hadq
