#ifndef ULB_CHAR_COSETS_HPP
#define ULB_CHAR_COSETS_HPP

#include "ulb/abelian.hpp"

#include <map>

namespace ulb {

// The cosets Char(Q)/2QZ^r of characteristic covectors of a symmetric
// nonsingular Q, labeled by the group Z^r/QZ^r.  Labels are shifted so that
// a fixed coset (one with xi = Qx) is the zero element; the involution
// [xi] -> [-xi] is then plain negation and the fixed cosets are exactly the
// 2-torsion labels that appear in fixed_labels.
struct CharCosetSystem {
    IntMatrix Q;
    std::size_t rank = 0;
    FiniteAbelianGroup group;
    // Coset representatives.  For negative-definite Q these are all box
    // vectors Q_ii <= xi_i < -Q_ii (so per-coset maximization is possible);
    // otherwise a single representative per coset.
    std::vector<std::vector<Integer>> representatives;
    std::map<FiniteAbelianGroup::Elem, std::vector<std::size_t>> cosets;
    std::vector<FiniteAbelianGroup::Elem> fixed_labels;
    std::vector<Integer> basepoint; // xi_0, a fixed-coset representative
    bool box_complete = false;

    FiniteAbelianGroup::Elem involution(const FiniteAbelianGroup::Elem& l) const {
        return group.neg(l);
    }
    FiniteAbelianGroup::Elem label_of(const std::vector<Integer>& xi) const;
};

struct MFunction {
    std::map<FiniteAbelianGroup::Elem, Rational> values;
};

struct DInvariantTable {
    FiniteAbelianGroup group;
    std::map<FiniteAbelianGroup::Elem, Rational> values;
    std::vector<FiniteAbelianGroup::Elem> spin_elements;
};

// Box-based coset partition; Q must be symmetric negative-definite.
CharCosetSystem coset_system(const IntMatrix& Q);

// One representative per coset for any symmetric nonsingular Q; supports the
// rho computation when Q is not definite (no box, no maximization).
CharCosetSystem coset_system_any(const IntMatrix& Q);

// Per-coset maximum of (xi^T Q^{-1} xi + r)/4 over the box representatives.
MFunction m_function(const CharCosetSystem& S);

// Per-coset (xi^T Q^{-1} xi - sig(Q))/4 reduced mod 2 into (-1, 1].
std::map<FiniteAbelianGroup::Elem, Rational> rho_invariants(const CharCosetSystem& S);

// Correction terms of the double branched cover of a nonsplit alternating
// link from its negative-definite Goeritz matrix; values are the m-function,
// spin elements are the fixed cosets.
DInvariantTable d_invariants_alternating(const IntMatrix& G);

} // namespace ulb

#endif
