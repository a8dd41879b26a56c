#ifndef ULB_SPINC_HPP
#define ULB_SPINC_HPP

#include "ulb/char_cosets.hpp"

#include <optional>
#include <string>

namespace ulb {

enum class ValueKind { rho, d };

// Spin^c structures of a rational homology sphere as a torsor over
// H = H^2(Y;Z), with element labels chosen relative to a spin basepoint so
// that conjugation acts by negation.  Values may be partial: only elements
// present in `values` constrain a match.  rho-values live in (-1, 1] and are
// compared mod 2; d-values are exact rationals.
struct SpincTorsor {
    FiniteAbelianGroup group;
    std::map<FiniteAbelianGroup::Elem, Rational> values;
    std::vector<FiniteAbelianGroup::Elem> spin_elements;
    ValueKind kind = ValueKind::rho;

    static SpincTorsor from_d_table(const DInvariantTable& t);
    // Known values only at the given spin elements (all 2-torsion labels).
    static SpincTorsor spin_only(const FiniteAbelianGroup& H,
                                 const std::map<FiniteAbelianGroup::Elem, Rational>& spin_values);

    // The orientation reverse -Y: all values negated (rho renormalized).
    SpincTorsor mirrored() const;
    // Mod-2 reduction of a d-torsor.
    SpincTorsor rho_reduction() const;
};

// Equivariant affine monomorphism Char(Q)/2QZ^r -> Spin^c(Y)/T.  The image
// of each source coset is stored as the full T-coset in H.
struct AffineMono {
    std::vector<FiniteAbelianGroup::Elem> subgroup_T;
    std::vector<FiniteAbelianGroup::Elem> generator_images; // in H/T coordinates
    FiniteAbelianGroup::Elem basepoint_image;               // in H/T coordinates
    std::map<FiniteAbelianGroup::Elem, std::vector<FiniteAbelianGroup::Elem>> image_classes;
};

// All equivariant affine monomorphisms with |T| = t whose image classes
// satisfy the mod-2 value congruence against every known value of Y.
std::vector<AffineMono> affine_monomorphisms(const CharCosetSystem& S, const SpincTorsor& Y,
                                             unsigned long long t);

// phi and phi composed with the source involution satisfy exactly the same
// constraints, so monomorphisms come in conjugate pairs; this counts pairs.
std::size_t mono_count_up_to_conjugation(const CharCosetSystem& S,
                                         const std::vector<AffineMono>& monos);

// Counts matchings modulo precomposition with any automorphism of the source
// label group that preserves the given per-coset values (such automorphisms
// permute the constraints, so they act on the solution set).
std::size_t mono_count_up_to_symmetry(const CharCosetSystem& S,
                                      const std::map<FiniteAbelianGroup::Elem, Rational>& values,
                                      const std::vector<AffineMono>& monos);

struct ObstructionVerdict {
    bool obstructed = false;
    std::string rule;   // which test decided
    std::string detail; // human-readable exact witness
    std::vector<long long> witness_coset;
    std::optional<Rational> witness_source_value;
    std::optional<Rational> witness_target_value;
    std::size_t congruence_mono_count = 0;
    std::vector<AffineMono> monos; // survivors (congruence level, and for the
                                   // d test also the inequality)
};

// Prop.-3.1-style test: Y cannot bound a form Q unless some equivariant
// affine monomorphism matches all rho congruences.
ObstructionVerdict rho_obstruction(const IntMatrix& Q, const SpincTorsor& Y);

// Prop.-3.2-style test for negative-definite Q against d-values: every
// congruence-compatible monomorphism must also satisfy m_Q <= d.
ObstructionVerdict d_obstruction(const IntMatrix& Q, const SpincTorsor& Y);

} // namespace ulb

#endif
