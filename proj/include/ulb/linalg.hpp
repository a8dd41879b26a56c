#ifndef ULB_LINALG_HPP
#define ULB_LINALG_HPP

#include "ulb/int_matrix.hpp"

#include <optional>
#include <stdexcept>
#include <vector>

namespace ulb {

struct SingularMatrixError : std::runtime_error {
    SingularMatrixError() : std::runtime_error("matrix is singular") {}
};

// U * A * V = D with U, V unimodular and D diagonal, each nonzero diagonal
// entry nonnegative and dividing the next.
struct SNFDecomposition {
    IntMatrix U, D, V;
    std::vector<Integer> invariant_factors; // diagonal of D
};

// Pivot rule: smallest nonzero absolute value, ties broken row-major.
SNFDecomposition smith_normal_form(const IntMatrix& A);

// Exact signed determinant (fraction-free Bareiss elimination).
Integer determinant(const IntMatrix& A);

// Exact inverse over the rationals; throws SingularMatrixError.
RatMatrix rational_inverse(const IntMatrix& A);

// Solve A x = b exactly (A square nonsingular).
std::vector<Rational> solve_rational(const IntMatrix& A, const std::vector<Rational>& b);

// xi^T A^{-1} xi for square nonsingular A.
Rational evaluate_form(const IntMatrix& Q, const std::vector<Integer>& xi);

struct Inertia {
    std::size_t positive = 0, negative = 0, zero = 0;
    long signature() const {
        return static_cast<long>(positive) - static_cast<long>(negative);
    }
};

// Exact inertia of a symmetric matrix (diagonal pivots, 2x2 blocks for
// zero-diagonal steps).
Inertia inertia(const IntMatrix& A);

enum class Definiteness { positive, negative, indefinite_or_degenerate };

// Decided by the exact leading-principal-minor test.
Definiteness definiteness(const IntMatrix& A);

std::size_t rank(const IntMatrix& A);

// Basis (as rows) of {x in Z^n : A x = 0}; the kernel sublattice is saturated.
IntMatrix integer_kernel(const IntMatrix& A);

// Columns of V (from the SNF of A) that complement the kernel columns; rows of
// the returned matrix form a basis of a direct complement of ker(A) in Z^n.
IntMatrix kernel_complement(const IntMatrix& A);

// Exact inverse of a unimodular integer matrix.
IntMatrix unimodular_inverse(const IntMatrix& U);

// Solutions x in {0,1}^n of A x = b over GF(2); empty if inconsistent.
std::vector<std::vector<int>> solve_mod2(const IntMatrix& A, const std::vector<Integer>& b);

// floor(sqrt(n)) for n >= 0.
Integer isqrt(const Integer& n);

bool is_perfect_square(const Integer& n);

} // namespace ulb

#endif
