#include "hadq/residue.hpp"

#include "hadq/errors.hpp"
#include "hadq/numutil.hpp"

namespace hadq {

ResidueField ResidueField::at(const Place& s) {
    ResidueField out(s);
    switch (s.kind()) {
        case Place::Kind::FinitePrime:
            out.mode_ = Mode::PrimeZ;
            out.p_ = s.prime();
            break;
        case Place::Kind::MonicIrreducible:
            out.mode_ = Mode::PolyMod;
            out.gf_ = &s.pi().field();
            out.pi_ = s.pi();
            break;
        case Place::Kind::DegreePlace:
            out.mode_ = Mode::BaseGF;
            out.gf_ = &GF::get(s.base_q());
            break;
        default:
            throw InvalidArgument("archimedean place has no residue field");
    }
    return out;
}

std::uint64_t ResidueField::card() const {
    switch (mode_) {
        case Mode::PrimeZ:
            return p_;
        case Mode::BaseGF:
            return gf_->q();
        case Mode::PolyMod: {
            std::uint64_t c = 1;
            for (int i = 0; i < pi_.deg(); ++i) c *= gf_->q();
            return c;
        }
    }
    return 0;
}

ResidueField::Elem ResidueField::one() const { return 1; }

FqPoly ResidueField::unpack(Elem a) const {
    std::vector<GF::Elem> c(pi_.deg());
    for (int i = 0; i < pi_.deg(); ++i, a /= gf_->q())
        c[i] = static_cast<GF::Elem>(a % gf_->q());
    return FqPoly(*gf_, std::move(c));
}

ResidueField::Elem ResidueField::pack(const FqPoly& f) const {
    Elem out = 0;
    for (int i = pi_.deg() - 1; i >= 0; --i) out = out * gf_->q() + f.coeff(i);
    return out;
}

ResidueField::Elem ResidueField::add(Elem a, Elem b) const {
    switch (mode_) {
        case Mode::PrimeZ:
            return (a + b) % p_;
        case Mode::BaseGF:
            return gf_->add(static_cast<GF::Elem>(a), static_cast<GF::Elem>(b));
        case Mode::PolyMod:
            return pack(unpack(a) + unpack(b));
    }
    return 0;
}

ResidueField::Elem ResidueField::sub(Elem a, Elem b) const { return add(a, neg(b)); }

ResidueField::Elem ResidueField::neg(Elem a) const {
    switch (mode_) {
        case Mode::PrimeZ:
            return a == 0 ? 0 : p_ - a;
        case Mode::BaseGF:
            return gf_->neg(static_cast<GF::Elem>(a));
        case Mode::PolyMod:
            return pack(unpack(a).scaled(gf_->neg(1)));
    }
    return 0;
}

ResidueField::Elem ResidueField::mul(Elem a, Elem b) const {
    switch (mode_) {
        case Mode::PrimeZ:
            return mulmod_u64(a, b, p_);
        case Mode::BaseGF:
            return gf_->mul(static_cast<GF::Elem>(a), static_cast<GF::Elem>(b));
        case Mode::PolyMod:
            return pack((unpack(a) * unpack(b)) % pi_);
    }
    return 0;
}

ResidueField::Elem ResidueField::inv(Elem a) const {
    if (a == 0) throw ZeroElement();
    switch (mode_) {
        case Mode::PrimeZ:
            return invmod_u64(a, p_);
        case Mode::BaseGF:
            return gf_->inv(static_cast<GF::Elem>(a));
        case Mode::PolyMod: {
            auto [g, u, v] = FqPoly::xgcd(unpack(a), pi_);
            (void)v;
            require_internal(g.is_one(), "non-invertible residue");
            return pack(u % pi_);
        }
    }
    return 0;
}

ResidueField::Elem ResidueField::from_int(long long v) const {
    switch (mode_) {
        case Mode::PrimeZ: {
            long long r = v % static_cast<long long>(p_);
            if (r < 0) r += p_;
            return static_cast<Elem>(r);
        }
        case Mode::BaseGF:
            return gf_->from_int(v);
        case Mode::PolyMod:
            return pack(FqPoly::constant(*gf_, gf_->from_int(v)));
    }
    return 0;
}

std::optional<ResidueField::Elem> ResidueField::reduce(const Element& a) const {
    if (a.is_zero()) return Elem{0};
    switch (mode_) {
        case Mode::PrimeZ: {
            const mpq_class& r = a.rat();
            std::uint64_t den = mpz_fdiv_ui(r.get_den().get_mpz_t(), p_);
            if (den == 0) return std::nullopt;
            std::uint64_t num = mpz_fdiv_ui(r.get_num().get_mpz_t(), p_);
            return mulmod_u64(num, invmod_u64(den, p_), p_);
        }
        case Mode::PolyMod: {
            const RatFn& r = a.ff();
            FqPoly den = r.den() % pi_;
            if (den.is_zero()) return std::nullopt;
            FqPoly num = r.num() % pi_;
            auto [g, u, v] = FqPoly::xgcd(den, pi_);
            (void)v;
            require_internal(g.is_one(), "canonical form shares a factor with pi");
            return pack((num * u) % pi_);
        }
        case Mode::BaseGF: {
            const RatFn& r = a.ff();
            int dn = r.num().deg(), dd = r.den().deg();
            if (dn > dd) return std::nullopt;
            if (dn < dd) return Elem{0};
            return gf_->mul(r.num().lc(), gf_->inv(r.den().lc()));
        }
    }
    return std::nullopt;
}

std::string ResidueField::elem_str(Elem a) const {
    if (mode_ == Mode::PolyMod) return unpack(a).str();
    return std::to_string(a);
}

}  // namespace hadq
