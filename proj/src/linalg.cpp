#include "ulb/linalg.hpp"

#include <algorithm>
#include <cstdlib>

namespace ulb {

namespace {

// Entries at (i,k) for i>k and (k,j) for j>k all zero.
bool pivot_isolated(const IntMatrix& D, std::size_t k) {
    for (std::size_t i = k + 1; i < D.rows(); ++i)
        if (D(i, k) != 0) return false;
    for (std::size_t j = k + 1; j < D.cols(); ++j)
        if (D(k, j) != 0) return false;
    return true;
}

// Smallest nonzero |entry| in the trailing submatrix, row-major ties.
bool find_pivot(const IntMatrix& D, std::size_t k, std::size_t& pi, std::size_t& pj) {
    bool found = false;
    Integer best;
    for (std::size_t i = k; i < D.rows(); ++i)
        for (std::size_t j = k; j < D.cols(); ++j) {
            if (D(i, j) == 0) continue;
            Integer a = abs(D(i, j));
            if (!found || a < best) {
                found = true;
                best = a;
                pi = i;
                pj = j;
            }
        }
    return found;
}

} // namespace

SNFDecomposition smith_normal_form(const IntMatrix& A) {
    const std::size_t m = A.rows(), n = A.cols();
    SNFDecomposition r;
    r.D = A;
    r.U = IntMatrix::identity(m);
    r.V = IntMatrix::identity(n);
    IntMatrix& D = r.D;
    IntMatrix& U = r.U;
    IntMatrix& V = r.V;

    const std::size_t steps = std::min(m, n);
    for (std::size_t k = 0; k < steps; ++k) {
        std::size_t pi, pj;
        if (!find_pivot(D, k, pi, pj)) break; // trailing block is zero
        D.swap_rows(k, pi);
        U.swap_rows(k, pi);
        D.swap_cols(k, pj);
        V.swap_cols(k, pj);

        while (true) {
            // Clear column k below and row k to the right.
            for (std::size_t i = k + 1; i < m; ++i) {
                if (D(i, k) == 0) continue;
                Integer q = D(i, k) / D(k, k); // truncated
                if (q != 0) {
                    D.add_row(i, k, -q);
                    U.add_row(i, k, -q);
                }
            }
            for (std::size_t j = k + 1; j < n; ++j) {
                if (D(k, j) == 0) continue;
                Integer q = D(k, j) / D(k, k);
                if (q != 0) {
                    D.add_col(j, k, -q);
                    V.add_col(j, k, -q);
                }
            }
            if (!pivot_isolated(D, k)) {
                // Remainders survive; move the new smallest entry into place.
                if (!find_pivot(D, k, pi, pj)) break;
                D.swap_rows(k, pi);
                U.swap_rows(k, pi);
                D.swap_cols(k, pj);
                V.swap_cols(k, pj);
                continue;
            }
            // Pivot isolated; enforce divisibility into the remainder block.
            bool fixed = true;
            for (std::size_t i = k + 1; i < m && fixed; ++i)
                for (std::size_t j = k + 1; j < n && fixed; ++j)
                    if (D(i, j) % D(k, k) != 0) {
                        D.add_row(k, i, 1);
                        U.add_row(k, i, 1);
                        fixed = false;
                    }
            if (fixed) break;
        }
        if (D(k, k) < 0) {
            D.negate_row(k);
            U.negate_row(k);
        }
    }

    r.invariant_factors.resize(steps);
    for (std::size_t k = 0; k < steps; ++k) r.invariant_factors[k] = D(k, k);
    return r;
}

Integer determinant(const IntMatrix& A) {
    if (!A.is_square()) throw std::invalid_argument("determinant of non-square matrix");
    const std::size_t n = A.rows();
    if (n == 0) return 1;
    IntMatrix M = A;
    Integer prev = 1;
    int sign = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (M(k, k) == 0) {
            std::size_t p = k + 1;
            while (p < n && M(p, k) == 0) ++p;
            if (p == n) return 0;
            M.swap_rows(k, p);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) {
                Integer t = M(i, j) * M(k, k) - M(i, k) * M(k, j);
                M(i, j) = t / prev; // exact by Bareiss
            }
            M(i, k) = 0;
        }
        prev = M(k, k);
    }
    return sign > 0 ? M(n - 1, n - 1) : -M(n - 1, n - 1);
}

RatMatrix rational_inverse(const IntMatrix& A) {
    if (!A.is_square()) throw std::invalid_argument("inverse of non-square matrix");
    const std::size_t n = A.rows();
    RatMatrix M(A);
    RatMatrix inv = RatMatrix::identity(n);
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t p = k;
        while (p < n && M(p, k) == 0) ++p;
        if (p == n) throw SingularMatrixError();
        if (p != k)
            for (std::size_t j = 0; j < n; ++j) {
                std::swap(M(k, j), M(p, j));
                std::swap(inv(k, j), inv(p, j));
            }
        Rational d = M(k, k);
        for (std::size_t j = 0; j < n; ++j) {
            M(k, j) /= d;
            inv(k, j) /= d;
        }
        for (std::size_t i = 0; i < n; ++i) {
            if (i == k || M(i, k) == 0) continue;
            Rational f = M(i, k);
            for (std::size_t j = 0; j < n; ++j) {
                M(i, j) -= f * M(k, j);
                inv(i, j) -= f * inv(k, j);
            }
        }
    }
    return inv;
}

std::vector<Rational> solve_rational(const IntMatrix& A, const std::vector<Rational>& b) {
    if (!A.is_square() || b.size() != A.rows())
        throw std::invalid_argument("solve_rational dimension mismatch");
    const std::size_t n = A.rows();
    RatMatrix M(A);
    std::vector<Rational> x = b;
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t p = k;
        while (p < n && M(p, k) == 0) ++p;
        if (p == n) throw SingularMatrixError();
        if (p != k) {
            for (std::size_t j = 0; j < n; ++j) std::swap(M(k, j), M(p, j));
            std::swap(x[k], x[p]);
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            if (M(i, k) == 0) continue;
            Rational f = M(i, k) / M(k, k);
            for (std::size_t j = k; j < n; ++j) M(i, j) -= f * M(k, j);
            x[i] -= f * x[k];
        }
    }
    for (std::size_t i = n; i-- > 0;) {
        Rational s = x[i];
        for (std::size_t j = i + 1; j < n; ++j) s -= M(i, j) * x[j];
        x[i] = s / M(i, i);
    }
    return x;
}

Rational evaluate_form(const IntMatrix& Q, const std::vector<Integer>& xi) {
    if (!Q.is_square()) throw std::invalid_argument("evaluate_form: Q not square");
    if (xi.size() != Q.rows()) throw std::invalid_argument("evaluate_form: length mismatch");
    std::vector<Rational> b(xi.size());
    for (std::size_t i = 0; i < xi.size(); ++i) b[i] = Rational(xi[i]);
    std::vector<Rational> y = solve_rational(Q, b);
    Rational s = 0;
    for (std::size_t i = 0; i < xi.size(); ++i) s += Rational(xi[i]) * y[i];
    return s;
}

Inertia inertia(const IntMatrix& A) {
    if (!A.is_symmetric()) throw std::invalid_argument("inertia of non-symmetric matrix");
    const std::size_t n = A.rows();
    RatMatrix M(A);
    std::vector<std::size_t> live(n);
    for (std::size_t i = 0; i < n; ++i) live[i] = i;
    Inertia res;
    while (!live.empty()) {
        std::size_t pick = live.size();
        for (std::size_t a = 0; a < live.size(); ++a)
            if (M(live[a], live[a]) != 0) {
                pick = a;
                break;
            }
        if (pick < live.size()) {
            std::size_t p = live[pick];
            Rational d = M(p, p);
            if (d > 0)
                ++res.positive;
            else
                ++res.negative;
            live.erase(live.begin() + pick);
            for (std::size_t a = 0; a < live.size(); ++a)
                for (std::size_t b = 0; b < live.size(); ++b) {
                    std::size_t i = live[a], j = live[b];
                    M(i, j) -= M(i, p) * M(p, j) / d;
                }
            continue;
        }
        // All remaining diagonal entries vanish.
        std::size_t pa = live.size(), pb = live.size();
        for (std::size_t a = 0; a < live.size() && pa == live.size(); ++a)
            for (std::size_t b = a + 1; b < live.size(); ++b)
                if (M(live[a], live[b]) != 0) {
                    pa = a;
                    pb = b;
                    break;
                }
        if (pa == live.size()) {
            res.zero += live.size();
            break;
        }
        // Hyperbolic 2x2 block contributes one of each sign.
        std::size_t p = live[pa], q = live[pb];
        Rational c = M(p, q);
        ++res.positive;
        ++res.negative;
        live.erase(live.begin() + pb);
        live.erase(live.begin() + pa);
        for (std::size_t a = 0; a < live.size(); ++a)
            for (std::size_t b = 0; b < live.size(); ++b) {
                std::size_t i = live[a], j = live[b];
                M(i, j) -= (M(i, p) * M(q, j) + M(i, q) * M(p, j)) / c;
            }
    }
    return res;
}

Definiteness definiteness(const IntMatrix& A) {
    if (!A.is_symmetric()) throw std::invalid_argument("definiteness of non-symmetric matrix");
    const std::size_t n = A.rows();
    bool pos = true, neg = true;
    for (std::size_t k = 1; k <= n; ++k) {
        Integer mk = determinant(A.submatrix(0, k, 0, k));
        if (mk <= 0) pos = false;
        if ((k % 2 == 1 && mk >= 0) || (k % 2 == 0 && mk <= 0)) neg = false;
        if (!pos && !neg) return Definiteness::indefinite_or_degenerate;
    }
    if (pos) return Definiteness::positive;
    if (neg) return Definiteness::negative;
    return Definiteness::indefinite_or_degenerate;
}

std::size_t rank(const IntMatrix& A) {
    auto snf = smith_normal_form(A);
    std::size_t r = 0;
    for (const auto& d : snf.invariant_factors)
        if (d != 0) ++r;
    return r;
}

IntMatrix integer_kernel(const IntMatrix& A) {
    auto snf = smith_normal_form(A);
    const std::size_t n = A.cols();
    std::vector<std::vector<Integer>> rows;
    for (std::size_t j = 0; j < n; ++j) {
        bool zero_col = j >= snf.invariant_factors.size() || snf.invariant_factors[j] == 0;
        if (zero_col) rows.push_back(snf.V.col(j));
    }
    if (rows.empty()) return IntMatrix(0, n);
    return IntMatrix::from_rows(rows);
}

IntMatrix kernel_complement(const IntMatrix& A) {
    auto snf = smith_normal_form(A);
    const std::size_t n = A.cols();
    std::vector<std::vector<Integer>> rows;
    for (std::size_t j = 0; j < n; ++j) {
        bool zero_col = j >= snf.invariant_factors.size() || snf.invariant_factors[j] == 0;
        if (!zero_col) rows.push_back(snf.V.col(j));
    }
    if (rows.empty()) return IntMatrix(0, n);
    return IntMatrix::from_rows(rows);
}

IntMatrix unimodular_inverse(const IntMatrix& U) {
    RatMatrix inv = rational_inverse(U);
    IntMatrix out(U.rows(), U.cols());
    for (std::size_t i = 0; i < U.rows(); ++i)
        for (std::size_t j = 0; j < U.cols(); ++j) {
            const Rational& q = inv(i, j);
            if (q.get_den() != 1)
                throw std::invalid_argument("unimodular_inverse: matrix not unimodular");
            out(i, j) = q.get_num();
        }
    return out;
}

std::vector<std::vector<int>> solve_mod2(const IntMatrix& A, const std::vector<Integer>& b) {
    const std::size_t m = A.rows(), n = A.cols();
    if (b.size() != m) throw std::invalid_argument("solve_mod2 dimension mismatch");
    std::vector<std::vector<int>> M(m, std::vector<int>(n + 1));
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < n; ++j)
            M[i][j] = mpz_odd_p(A(i, j).get_mpz_t()) ? 1 : 0;
        M[i][n] = mpz_odd_p(b[i].get_mpz_t()) ? 1 : 0;
    }
    std::vector<std::size_t> pivot_col;
    std::size_t r = 0;
    for (std::size_t c = 0; c < n && r < m; ++c) {
        std::size_t p = r;
        while (p < m && M[p][c] == 0) ++p;
        if (p == m) continue;
        std::swap(M[p], M[r]);
        for (std::size_t i = 0; i < m; ++i)
            if (i != r && M[i][c])
                for (std::size_t j = c; j <= n; ++j) M[i][j] ^= M[r][j];
        pivot_col.push_back(c);
        ++r;
    }
    for (std::size_t i = r; i < m; ++i)
        if (M[i][n]) return {}; // inconsistent
    std::vector<std::size_t> free_cols;
    {
        std::size_t pc = 0;
        for (std::size_t c = 0; c < n; ++c) {
            if (pc < pivot_col.size() && pivot_col[pc] == c)
                ++pc;
            else
                free_cols.push_back(c);
        }
    }
    std::vector<std::vector<int>> sols;
    const std::size_t nfree = free_cols.size();
    for (std::size_t mask = 0; mask < (std::size_t{1} << nfree); ++mask) {
        std::vector<int> x(n, 0);
        for (std::size_t f = 0; f < nfree; ++f) x[free_cols[f]] = (mask >> f) & 1;
        for (std::size_t i = 0; i < pivot_col.size(); ++i) {
            int v = M[i][n];
            for (std::size_t f = 0; f < nfree; ++f)
                if (M[i][free_cols[f]]) v ^= x[free_cols[f]];
            x[pivot_col[i]] = v;
        }
        sols.push_back(std::move(x));
    }
    return sols;
}

Integer isqrt(const Integer& n) {
    if (n < 0) throw std::invalid_argument("isqrt of negative");
    Integer r;
    mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
    return r;
}

bool is_perfect_square(const Integer& n) {
    if (n < 0) return false;
    return mpz_perfect_square_p(n.get_mpz_t()) != 0;
}

} // namespace ulb
