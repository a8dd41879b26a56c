#ifndef ULB_LATTICE_HPP
#define ULB_LATTICE_HPP

#include "ulb/linalg.hpp"

#include <vector>

namespace ulb {

struct CapacityError : std::runtime_error {
    explicit CapacityError(const std::string& what) : std::runtime_error(what) {}
};

// A lattice given by its Gram form.
struct Lattice {
    IntMatrix gram;
    Definiteness def;

    static Lattice from_gram(const IntMatrix& gram);
    std::size_t rank() const { return gram.rows(); }
};

// Isometric embedding into the standard cubic lattice Z^N: row i of `images`
// is the image of the i-th basis vector, so images * images^T = gram.
struct Embedding {
    IntMatrix images;
    std::size_t ambient_rank;
};

struct ComplementData {
    IntMatrix basis; // rows span {v in Z^N : v orthogonal to every image row}
    IntMatrix gram;  // basis * basis^T
};

// All embeddings of a positive-definite lattice into Z^N, one representative
// per equivalence class under signed coordinate permutations of Z^N.
// Representatives are canonical forms (sign-normalized, sorted columns),
// listed in lexicographic order.  Composing with automorphisms of the source
// lattice can merge classes further; published embedding lists for Goeritz
// lattices are Z^N-classes, so that finer quotient is not applied here.
std::vector<Embedding> orthogonal_embeddings(const Lattice& L, std::size_t N);

// Canonical form of an image matrix under signed column permutations.
IntMatrix signed_permutation_canonical(const IntMatrix& images);

// Permutation matrices P with P * gram * P^T = gram.
std::vector<IntMatrix> permutation_automorphisms(const IntMatrix& gram);

// Groups Z^N-classes that coincide as unordered sets of image vectors, i.e.
// up to permutation automorphisms of the gram.  Returns index groups.
std::vector<std::vector<std::size_t>> embedding_set_classes(const std::vector<Embedding>& classes,
                                                            const IntMatrix& gram);

ComplementData orthogonal_complement(const Embedding& E);

// All x != 0 with x^T gram x = norm, for positive-definite gram, one vector
// per +-pair (first nonzero coordinate positive), lexicographically sorted.
std::vector<std::vector<Integer>> vectors_of_norm(const IntMatrix& gram, const Integer& norm);

// All k-element sets {v_1,...,v_k} of pairwise orthogonal vectors of square 2
// in the (possibly degenerate positive-semidefinite) complement lattice, up
// to sign and order; vectors are rows, in the coordinates of C.basis.
// Null directions of a degenerate Gram carry no norm-2 vectors and are
// factored out through the quotient by the kernel sublattice.
std::vector<IntMatrix> norm_two_orthogonal_sets(const ComplementData& C, std::size_t k);

// True iff the quotient of the ambient lattice by the row span is
// torsion-free.  Rows must be linearly independent.
bool is_primitive_sublattice(const IntMatrix& vectors);
bool is_primitive_sublattice(const IntMatrix& vectors, const ComplementData& ambient);

// All P with P * gram * P^T = gram (finite for definite gram).
std::vector<IntMatrix> lattice_automorphisms(const IntMatrix& gram);

// Exact isometry test for positive-definite forms.
bool is_isometric(const IntMatrix& g1, const IntMatrix& g2);

} // namespace ulb

#endif
