#include "ulb/lattice.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>

namespace ulb {

Lattice Lattice::from_gram(const IntMatrix& gram) {
    if (!gram.is_symmetric()) throw std::invalid_argument("lattice gram must be symmetric");
    return Lattice{gram, definiteness(gram)};
}

namespace {

using Vec64 = std::vector<long long>;

long long to_int64_checked(const Integer& v, const char* what) {
    // Coordinates are bounded by sqrt of the diagonal, so this cap keeps all
    // search arithmetic safely inside 64 bits.
    if (!v.fits_slong_p() || v > 1000000 || v < -1000000)
        throw CapacityError(std::string("entry too large for ") + what);
    return v.get_si();
}

// Enumerates v in Z^N with |v|^2 = norm and v . placed[j] = targets[j],
// pruned by remaining norm and the Cauchy-Schwarz bound against each placed
// row's suffix norm.  Canonical-prefix constraints restrict the search to
// matrices whose columns stay sign-normalized (first nonzero entry positive)
// and non-increasing, which picks exactly one matrix per orbit under signed
// column permutations.
struct CandidateSearch {
    std::size_t dim;
    long long norm;
    const std::vector<Vec64>& placed;
    const std::vector<long long>& targets;
    const std::vector<Vec64>& suffix; // suffix[j][c] = sum_{k >= c} placed[j][k]^2
    const std::vector<char>& tie_with_prev; // column prefix equals previous column's
    const std::vector<char>& zero_prefix;   // column prefix is all zero
    std::function<void(const Vec64&)> sink;

    Vec64 cur;
    std::vector<long long> dots;

    void run() {
        cur.assign(dim, 0);
        dots.assign(placed.size(), 0);
        descend(0, norm);
    }

    void descend(std::size_t c, long long rem) {
        if (c == dim) {
            if (rem == 0 && dots == targets) sink(cur);
            return;
        }
        long long bound = 0;
        while ((bound + 1) * (bound + 1) <= rem) ++bound;
        long long hi = bound, lo = -bound;
        if (c > 0 && tie_with_prev[c]) hi = std::min(hi, cur[c - 1]);
        if (zero_prefix[c]) lo = 0;
        for (long long v = hi; v >= lo; --v) {
            long long rem2 = rem - v * v;
            if (rem2 < 0) continue;
            cur[c] = v;
            bool ok = true;
            for (std::size_t j = 0; j < placed.size(); ++j) {
                dots[j] += v * placed[j][c];
                long long need = targets[j] - dots[j];
                long long cap = c + 1 < dim ? suffix[j][c + 1] : 0;
                if (need * need > rem2 * cap) ok = false;
            }
            if (ok) descend(c + 1, rem2);
            for (std::size_t j = 0; j < placed.size(); ++j) dots[j] -= v * placed[j][c];
        }
        cur[c] = 0;
    }
};

IntMatrix matrix_from_rows64(const std::vector<Vec64>& rows) {
    IntMatrix m(rows.size(), rows.empty() ? 0 : rows[0].size());
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < rows[i].size(); ++j) m(i, j) = static_cast<long>(rows[i][j]);
    return m;
}

std::vector<Integer> column_sign_canonical(std::vector<Integer> col) {
    for (const auto& e : col) {
        if (e > 0) return col;
        if (e < 0) {
            for (auto& x : col) x = -x;
            return col;
        }
    }
    return col;
}

} // namespace

IntMatrix signed_permutation_canonical(const IntMatrix& images) {
    std::vector<std::vector<Integer>> cols;
    cols.reserve(images.cols());
    for (std::size_t j = 0; j < images.cols(); ++j)
        cols.push_back(column_sign_canonical(images.col(j)));
    std::sort(cols.begin(), cols.end(), std::greater<>());
    IntMatrix out(images.rows(), images.cols());
    for (std::size_t j = 0; j < cols.size(); ++j)
        for (std::size_t i = 0; i < images.rows(); ++i) out(i, j) = cols[j][i];
    return out;
}

std::vector<Embedding> orthogonal_embeddings(const Lattice& L, std::size_t N) {
    if (L.def != Definiteness::positive)
        throw std::invalid_argument("orthogonal_embeddings requires a positive-definite lattice");
    const std::size_t m = L.rank();
    if (m > N)
        throw std::invalid_argument("ambient rank smaller than lattice rank");

    std::vector<std::vector<long long>> g(m, std::vector<long long>(m));
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j)
            g[i][j] = to_int64_checked(L.gram(i, j), "embedding search");

    std::vector<IntMatrix> found;
    std::vector<Vec64> placed;
    std::vector<Vec64> suffix;

    auto push_suffix = [&](const Vec64& row) {
        Vec64 s(N + 1, 0);
        for (std::size_t c = N; c-- > 0;) s[c] = s[c + 1] + row[c] * row[c];
        placed.push_back(row);
        suffix.push_back(std::move(s));
    };

    std::function<void(std::size_t)> place = [&](std::size_t i) {
        if (i == m) {
            found.push_back(matrix_from_rows64(placed));
            return;
        }
        std::vector<long long> targets(i);
        for (std::size_t j = 0; j < i; ++j) targets[j] = g[i][j];
        std::vector<char> tie(N, 1), zero(N, 1);
        for (std::size_t c = 0; c < N; ++c) {
            for (std::size_t j = 0; j < i; ++j) {
                if (placed[j][c] != 0) zero[c] = 0;
                if (c > 0 && placed[j][c] != placed[j][c - 1]) tie[c] = 0;
            }
        }
        CandidateSearch search{N,      g[i][i], placed, targets, suffix, tie, zero,
                               [&](const Vec64& v) {
                                   push_suffix(v);
                                   place(i + 1);
                                   placed.pop_back();
                                   suffix.pop_back();
                               }};
        search.run();
    };

    if (m == 0) {
        found.push_back(IntMatrix(0, N));
    } else {
        place(0);
    }

    // The prefix constraints make each found matrix canonical under signed
    // column permutations already; the set keeps the output sorted.
    std::set<IntMatrix> classes;
    for (const auto& E : found) classes.insert(signed_permutation_canonical(E));

    std::vector<Embedding> out;
    for (const auto& E : classes) {
        if (E * E.transpose() != L.gram)
            throw std::logic_error("embedding search produced a non-isometry");
        out.push_back(Embedding{E, N});
    }
    return out;
}

ComplementData orthogonal_complement(const Embedding& E) {
    IntMatrix basis = integer_kernel(E.images);
    if (basis.rows() + E.images.rows() != E.ambient_rank)
        throw std::logic_error("complement rank mismatch");
    return ComplementData{basis, basis * basis.transpose()};
}

namespace {

// Exact LDL^T data for a positive-definite rational form.
struct LDL {
    std::size_t n;
    std::vector<Rational> d;
    RatMatrix L; // unit lower triangular
};

LDL ldl_decompose(const IntMatrix& gram) {
    const std::size_t n = gram.rows();
    RatMatrix M(gram);
    LDL out{n, std::vector<Rational>(n), RatMatrix::identity(n)};
    for (std::size_t k = 0; k < n; ++k) {
        Rational dk = M(k, k);
        if (dk <= 0) throw std::invalid_argument("LDL requires a positive-definite form");
        out.d[k] = dk;
        for (std::size_t i = k + 1; i < n; ++i) out.L(i, k) = M(i, k) / dk;
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j)
                M(i, j) -= M(i, k) * M(k, j) / dk;
    }
    return out;
}

// Integer range { x : (x + t)^2 <= R }, empty when R < 0.
bool quadratic_range(const Rational& t, const Rational& R, Integer& lo, Integer& hi) {
    if (R < 0) return false;
    const Integer p = t.get_num(), q = t.get_den();
    // u = x*q + p must satisfy u^2 <= R * q^2.
    Rational s = R * q * q;
    Integer cap = s.get_num() / s.get_den(); // floor, s >= 0
    Integer umax = isqrt(cap);
    mpz_cdiv_q(lo.get_mpz_t(), Integer(-umax - p).get_mpz_t(), q.get_mpz_t());
    mpz_fdiv_q(hi.get_mpz_t(), Integer(umax - p).get_mpz_t(), q.get_mpz_t());
    return lo <= hi;
}

} // namespace

std::vector<std::vector<Integer>> vectors_of_norm(const IntMatrix& gram, const Integer& norm) {
    if (!gram.is_symmetric()) throw std::invalid_argument("vectors_of_norm: gram not symmetric");
    std::vector<std::vector<Integer>> out;
    if (norm <= 0 || gram.rows() == 0) return out;
    LDL ldl = ldl_decompose(gram);
    const std::size_t n = ldl.n;
    std::vector<Integer> x(n, 0);
    Rational target(norm);

    // Q(x) = sum_k d_k (x_k + sum_{j>k} L(j,k) x_j)^2, outermost index last.
    std::function<void(std::size_t, Rational)> rec = [&](std::size_t k1, Rational rem) {
        std::size_t k = k1 - 1;
        Rational t = 0;
        for (std::size_t j = k + 1; j < n; ++j) t += ldl.L(j, k) * Rational(x[j]);
        Integer lo, hi;
        if (!quadratic_range(t, rem / ldl.d[k], lo, hi)) return;
        for (Integer v = lo; v <= hi; ++v) {
            x[k] = v;
            Rational c = Rational(v) + t;
            Rational used = ldl.d[k] * c * c;
            if (k == 0) {
                if (used == rem) {
                    // keep one vector per +-pair
                    for (std::size_t i = 0; i < n; ++i) {
                        if (x[i] == 0) continue;
                        if (x[i] > 0) out.push_back(x);
                        break;
                    }
                }
            } else {
                rec(k, rem - used);
            }
        }
        x[k] = 0;
    };
    rec(n, target);
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<IntMatrix> norm_two_orthogonal_sets(const ComplementData& C, std::size_t k) {
    if (k == 0) throw std::invalid_argument("norm_two_orthogonal_sets: k must be >= 1");
    const IntMatrix& G = C.gram;
    std::vector<IntMatrix> out;
    if (G.rows() == 0) return out;

    // Factor out null directions through the quotient by the kernel lattice.
    IntMatrix W = IntMatrix::identity(G.rows());
    IntMatrix Gred = G;
    if (determinant(G) == 0) {
        W = kernel_complement(G);
        Gred = W * G * W.transpose();
    }
    if (Gred.rows() > 0 && definiteness(Gred) != Definiteness::positive)
        throw std::invalid_argument("norm_two_orthogonal_sets: gram not positive semidefinite");
    if (Gred.rows() == 0) return out;

    auto shorts = vectors_of_norm(Gred, 2);
    // Gram products for the orthogonality tests.
    std::vector<std::vector<Integer>> gprod(shorts.size());
    for (std::size_t a = 0; a < shorts.size(); ++a) {
        IntMatrix va = IntMatrix::row_vector(shorts[a]);
        gprod[a] = (Gred * va.transpose()).col(0);
    }
    std::vector<std::size_t> chosen;
    std::function<void(std::size_t)> rec = [&](std::size_t start) {
        if (chosen.size() == k) {
            std::vector<std::vector<Integer>> rows;
            for (std::size_t idx : chosen) {
                IntMatrix v = IntMatrix::row_vector(shorts[idx]) * W;
                rows.push_back(v.row(0));
            }
            std::sort(rows.begin(), rows.end(), std::greater<>());
            out.push_back(IntMatrix::from_rows(rows));
            return;
        }
        for (std::size_t a = start; a < shorts.size(); ++a) {
            bool ok = true;
            for (std::size_t idx : chosen)
                if (dot(shorts[a], gprod[idx]) != 0) {
                    ok = false;
                    break;
                }
            if (ok) {
                chosen.push_back(a);
                rec(a + 1);
                chosen.pop_back();
            }
        }
    };
    rec(0);
    std::sort(out.begin(), out.end());
    return out;
}

bool is_primitive_sublattice(const IntMatrix& vectors) {
    auto snf = smith_normal_form(vectors);
    std::size_t rk = 0;
    for (const auto& f : snf.invariant_factors)
        if (f != 0) ++rk;
    if (rk != vectors.rows())
        throw std::invalid_argument("is_primitive_sublattice: vectors are dependent");
    for (const auto& f : snf.invariant_factors)
        if (f != 0 && f != 1) return false;
    return true;
}

bool is_primitive_sublattice(const IntMatrix& vectors, const ComplementData& ambient) {
    // The complement is saturated in Z^N, so primitivity inside it coincides
    // with primitivity of the coordinate matrix.
    if (vectors.cols() != ambient.basis.rows())
        throw std::invalid_argument("is_primitive_sublattice: coordinate length mismatch");
    return is_primitive_sublattice(vectors);
}

namespace {

// Rows placed one at a time; candidates for row i are vectors of the correct
// norm in the target metric, matched against required pairwise products.
std::vector<IntMatrix> isometry_search(const IntMatrix& target_gram, const IntMatrix& metric,
                                       bool first_only) {
    const std::size_t m = target_gram.rows();
    std::vector<IntMatrix> results;
    if (m == 0) {
        results.push_back(IntMatrix(0, metric.rows()));
        return results;
    }

    std::map<Integer, std::vector<std::vector<Integer>>> by_norm;
    for (std::size_t i = 0; i < m; ++i) {
        Integer n = target_gram(i, i);
        if (by_norm.count(n)) continue;
        auto half = vectors_of_norm(metric, n);
        auto& full = by_norm[n];
        for (const auto& v : half) {
            full.push_back(v);
            std::vector<Integer> neg(v.size());
            for (std::size_t j = 0; j < v.size(); ++j) neg[j] = -v[j];
            full.push_back(neg);
        }
    }
    std::map<const std::vector<Integer>*, std::vector<Integer>> mprod;

    std::vector<const std::vector<Integer>*> rows;
    std::function<bool(std::size_t)> rec = [&](std::size_t i) -> bool {
        if (i == m) {
            std::vector<std::vector<Integer>> mat;
            for (auto* r : rows) mat.push_back(*r);
            results.push_back(IntMatrix::from_rows(mat));
            return first_only;
        }
        for (const auto& cand : by_norm.at(target_gram(i, i))) {
            bool ok = true;
            for (std::size_t j = 0; j < i && ok; ++j) {
                auto it = mprod.find(rows[j]);
                if (it == mprod.end()) {
                    IntMatrix v = IntMatrix::row_vector(*rows[j]);
                    it = mprod.emplace(rows[j], (metric * v.transpose()).col(0)).first;
                }
                if (dot(cand, it->second) != target_gram(i, j)) ok = false;
            }
            if (!ok) continue;
            rows.push_back(&cand);
            if (rec(i + 1)) return true;
            rows.pop_back();
        }
        return false;
    };
    rec(0);
    return results;
}

} // namespace

std::vector<IntMatrix> permutation_automorphisms(const IntMatrix& gram) {
    if (!gram.is_symmetric())
        throw std::invalid_argument("permutation_automorphisms: gram not symmetric");
    const std::size_t n = gram.rows();
    std::vector<std::size_t> p(n);
    for (std::size_t i = 0; i < n; ++i) p[i] = i;
    std::vector<IntMatrix> out;
    do {
        bool ok = true;
        for (std::size_t i = 0; i < n && ok; ++i)
            for (std::size_t j = i; j < n && ok; ++j)
                if (gram(p[i], p[j]) != gram(i, j)) ok = false;
        if (ok) {
            IntMatrix P(n, n);
            for (std::size_t i = 0; i < n; ++i) P(i, p[i]) = 1;
            out.push_back(P);
        }
    } while (std::next_permutation(p.begin(), p.end()));
    return out;
}

std::vector<std::vector<std::size_t>> embedding_set_classes(const std::vector<Embedding>& classes,
                                                            const IntMatrix& gram) {
    auto perms = permutation_automorphisms(gram);
    std::map<IntMatrix, std::vector<std::size_t>> groups;
    for (std::size_t i = 0; i < classes.size(); ++i) {
        IntMatrix best = signed_permutation_canonical(classes[i].images);
        for (const auto& P : perms) {
            IntMatrix c = signed_permutation_canonical(P * classes[i].images);
            if (c < best) best = c;
        }
        groups[best].push_back(i);
    }
    std::vector<std::vector<std::size_t>> out;
    for (auto& [key, idx] : groups) out.push_back(idx);
    return out;
}

std::vector<IntMatrix> lattice_automorphisms(const IntMatrix& gram) {
    if (!gram.is_symmetric()) throw std::invalid_argument("automorphisms: gram not symmetric");
    IntMatrix g = gram;
    if (gram.rows() > 0 && definiteness(gram) == Definiteness::negative) g = -gram;
    if (g.rows() > 0 && definiteness(g) != Definiteness::positive)
        throw std::invalid_argument("automorphisms require a definite gram");
    return isometry_search(g, g, /*first_only=*/false);
}

bool is_isometric(const IntMatrix& g1, const IntMatrix& g2) {
    if (!g1.is_symmetric() || !g2.is_symmetric())
        throw std::invalid_argument("is_isometric: grams must be symmetric");
    if (g1.rows() != g2.rows()) return false;
    if (determinant(g1) != determinant(g2)) return false;
    if (g1.rows() == 0) return true;
    if (definiteness(g1) != Definiteness::positive || definiteness(g2) != Definiteness::positive)
        throw std::invalid_argument("is_isometric supports positive-definite forms");
    return !isometry_search(g1, g2, /*first_only=*/true).empty();
}

} // namespace ulb
