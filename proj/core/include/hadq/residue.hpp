#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "hadq/places.hpp"

namespace hadq {

// Arithmetic in the residue field k(s) of a non-archimedean place. Elements
// are packed into 64-bit words: the residue itself over a prime place, the
// base-q digit expansion of a polynomial representative modulo pi over a
// function-field place, and a GF(q) index at the degree place.
class ResidueField {
public:
    using Elem = std::uint64_t;

    static ResidueField at(const Place& s);

    std::uint64_t card() const;
    const Place& place() const { return place_; }

    Elem zero() const { return 0; }
    Elem one() const;
    bool is_zero(Elem a) const { return a == 0; }
    Elem add(Elem a, Elem b) const;
    Elem sub(Elem a, Elem b) const;
    Elem neg(Elem a) const;
    Elem mul(Elem a, Elem b) const;
    Elem inv(Elem a) const;
    Elem from_int(long long v) const;

    // Reduction of an element of K; empty when not s-integral.
    std::optional<Elem> reduce(const Element& a) const;

    std::string elem_str(Elem a) const;

private:
    enum class Mode { PrimeZ, PolyMod, BaseGF };
    explicit ResidueField(Place s) : place_(std::move(s)) {}

    Place place_;
    Mode mode_ = Mode::PrimeZ;
    std::uint64_t p_ = 0;    // PrimeZ
    const GF* gf_ = nullptr; // PolyMod / BaseGF
    FqPoly pi_;              // PolyMod

    FqPoly unpack(Elem a) const;
    Elem pack(const FqPoly& f) const;
};

}  // namespace hadq
