#include "hadq/field.hpp"

#include "hadq/errors.hpp"

namespace hadq {

namespace {
void check_same_kind(const Element& a, const Element& b) {
    require_internal(a.is_rational_kind() == b.is_rational_kind(),
                     "mixed-field element arithmetic");
}
}  // namespace

Element Element::zero(const FieldCtx& ctx) {
    if (ctx.kind == FieldKind::Rationals) return Element(mpq_class(0));
    return Element(RatFn(GF::get(ctx.q)));
}

Element Element::one(const FieldCtx& ctx) {
    if (ctx.kind == FieldKind::Rationals) return Element(mpq_class(1));
    const GF& f = GF::get(ctx.q);
    return Element(RatFn::from_poly(FqPoly::constant(f, 1)));
}

Element Element::from_int(const FieldCtx& ctx, long long v) {
    if (ctx.kind == FieldKind::Rationals) {
        mpq_class q;
        mpz_class z;
        mpz_set_si(z.get_mpz_t(), static_cast<long>(v));
        q = z;
        return Element(std::move(q));
    }
    const GF& f = GF::get(ctx.q);
    return Element(RatFn::from_poly(FqPoly::constant(f, f.from_int(v))));
}

bool Element::is_zero() const {
    if (is_rational_kind()) return sgn(rat()) == 0;
    return ff().is_zero();
}

bool Element::is_one() const {
    if (is_rational_kind()) return rat() == 1;
    return ff().is_one();
}

Element Element::operator+(const Element& o) const {
    check_same_kind(*this, o);
    if (is_rational_kind()) return Element(mpq_class(rat() + o.rat()));
    return Element(ff() + o.ff());
}

Element Element::operator-(const Element& o) const {
    check_same_kind(*this, o);
    if (is_rational_kind()) return Element(mpq_class(rat() - o.rat()));
    return Element(ff() - o.ff());
}

Element Element::operator*(const Element& o) const {
    check_same_kind(*this, o);
    if (is_rational_kind()) return Element(mpq_class(rat() * o.rat()));
    return Element(ff() * o.ff());
}

Element Element::operator/(const Element& o) const {
    check_same_kind(*this, o);
    if (o.is_zero()) throw ZeroElement();
    if (is_rational_kind()) return Element(mpq_class(rat() / o.rat()));
    return Element(ff() / o.ff());
}

Element Element::operator-() const {
    if (is_rational_kind()) return Element(mpq_class(-rat()));
    return Element(-ff());
}

Element Element::inverse() const {
    if (is_zero()) throw ZeroElement();
    if (is_rational_kind()) return Element(mpq_class(1 / rat()));
    return Element(ff().inverse());
}

Element Element::pow(long long e) const {
    if (e < 0) return inverse().pow(-e);
    Element base = *this;
    Element acc = is_rational_kind() ? Element(mpq_class(1))
                                     : Element(RatFn::from_poly(
                                           FqPoly::constant(ff().field(), 1)));
    unsigned long long k = static_cast<unsigned long long>(e);
    while (k) {
        if (k & 1) acc = acc * base;
        if (k >>= 1) base = base * base;
    }
    return acc;
}

bool Element::operator==(const Element& o) const {
    if (is_rational_kind() != o.is_rational_kind()) return false;
    if (is_rational_kind()) return rat() == o.rat();
    return ff() == o.ff();
}

std::string Element::str() const {
    if (is_rational_kind()) return rat().get_str();
    return ff().str();
}

Element Element::parse(const FieldCtx& ctx, const std::string& text) {
    if (text.empty()) throw ParseError("empty element");
    if (ctx.kind == FieldKind::Rationals) {
        try {
            mpq_class v(text);
            v.canonicalize();
            return Element(std::move(v));
        } catch (const std::invalid_argument&) {
            throw ParseError("bad rational literal: " + text);
        }
    }
    return Element(RatFn::parse(GF::get(ctx.q), text));
}

}  // namespace hadq
