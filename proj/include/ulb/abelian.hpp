#ifndef ULB_ABELIAN_HPP
#define ULB_ABELIAN_HPP

#include "ulb/linalg.hpp"

#include <map>
#include <vector>

namespace ulb {

// Finite abelian group in invariant-factor form.  Elements are coordinate
// vectors, one residue per factor; the trivial group has the empty vector.
struct FiniteAbelianGroup {
    std::vector<long long> factors; // each > 1, each dividing the next

    using Elem = std::vector<long long>;

    // Filters out unit factors and validates the divisibility chain.
    static FiniteAbelianGroup from_factors(const std::vector<Integer>& fs);

    unsigned long long order() const;
    bool is_cyclic() const { return factors.size() <= 1; }
    bool operator==(const FiniteAbelianGroup&) const = default;

    Elem zero() const { return Elem(factors.size(), 0); }
    Elem reduce(Elem e) const;
    Elem add(const Elem& a, const Elem& b) const;
    Elem sub(const Elem& a, const Elem& b) const;
    Elem neg(const Elem& a) const;
    Elem mul(const Elem& a, long long k) const;
    long long element_order(const Elem& a) const;

    // All elements in lexicographic coordinate order.
    std::vector<Elem> elements() const;
    std::vector<Elem> two_torsion() const;

    // Subgroup spanned by the given elements, as a sorted element list.
    std::vector<Elem> span(const std::vector<Elem>& gens) const;

    // All subgroups of the given order, each a sorted element list.  Cyclic
    // groups have at most one; otherwise subgroups are generated
    // exhaustively, refusing groups larger than the documented capacity.
    std::vector<std::vector<Elem>> subgroups_of_order(unsigned long long t) const;
};

// Quotient H/T with its own invariant-factor structure and a projection map.
struct QuotientGroup {
    FiniteAbelianGroup quotient;
    // Projection H -> H/T and fibers H/T -> sorted elements of H.
    FiniteAbelianGroup::Elem project(const FiniteAbelianGroup::Elem& h) const;
    std::vector<FiniteAbelianGroup::Elem> fiber(const FiniteAbelianGroup::Elem& q) const;

    FiniteAbelianGroup source;
    std::vector<std::vector<long long>> proj_matrix; // rows map source coords
    std::vector<long long> proj_moduli;
    std::map<FiniteAbelianGroup::Elem, std::vector<FiniteAbelianGroup::Elem>> fibers;
};

QuotientGroup quotient_by(const FiniteAbelianGroup& H,
                          const std::vector<FiniteAbelianGroup::Elem>& subgroup);

} // namespace ulb

#endif
