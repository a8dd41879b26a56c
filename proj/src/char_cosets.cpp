#include "ulb/char_cosets.hpp"

#include "ulb/lattice.hpp"

#include <algorithm>
#include <functional>
#include <set>

namespace ulb {

namespace {

// Raw label of y in Z^r/QZ^r: (U y) mod the invariant factors, keeping only
// coordinates with factor > 1.
struct Labeler {
    IntMatrix U;
    std::vector<Integer> diag; // all invariant factors of Q
    FiniteAbelianGroup group;

    FiniteAbelianGroup::Elem raw(const std::vector<Integer>& y) const {
        FiniteAbelianGroup::Elem l;
        for (std::size_t i = 0; i < diag.size(); ++i) {
            Integer s = 0;
            for (std::size_t j = 0; j < y.size(); ++j) s += U(i, j) * y[j];
            if (diag[i] == 1) continue;
            Integer m;
            mpz_fdiv_r(m.get_mpz_t(), s.get_mpz_t(), diag[i].get_mpz_t());
            if (!m.fits_slong_p()) throw CapacityError("coset label overflow");
            l.push_back(m.get_si());
        }
        return l;
    }
};

Labeler make_labeler(const IntMatrix& Q) {
    auto snf = smith_normal_form(Q);
    for (const auto& f : snf.invariant_factors)
        if (f == 0) throw std::invalid_argument("coset system requires nonsingular Q");
    return Labeler{snf.U, snf.invariant_factors,
                   FiniteAbelianGroup::from_factors(snf.invariant_factors)};
}

std::vector<Integer> char_offset(const std::vector<Integer>& xi, const std::vector<Integer>& base) {
    std::vector<Integer> y(xi.size());
    for (std::size_t i = 0; i < xi.size(); ++i) {
        Integer d = xi[i] - base[i];
        if (mpz_odd_p(d.get_mpz_t()))
            throw std::invalid_argument("vector is not characteristic for Q");
        y[i] = d / 2;
    }
    return y;
}

// Fixed characteristic vectors Qx with x running over the mod-2 solutions of
// Q x = diag(Q); distinct solutions give distinct cosets.
std::vector<std::vector<Integer>> fixed_characteristic_vectors(const IntMatrix& Q) {
    const std::size_t r = Q.rows();
    std::vector<Integer> diag(r);
    for (std::size_t i = 0; i < r; ++i) diag[i] = Q(i, i);
    auto sols = solve_mod2(Q, diag);
    if (sols.empty()) throw std::logic_error("characteristic mod-2 system is always solvable");
    std::vector<std::vector<Integer>> out;
    for (const auto& x : sols) {
        std::vector<Integer> qx(r, 0);
        for (std::size_t i = 0; i < r; ++i)
            for (std::size_t j = 0; j < r; ++j)
                if (x[j]) qx[i] += Q(i, j);
        out.push_back(std::move(qx));
    }
    std::sort(out.begin(), out.end());
    return out;
}

CharCosetSystem build_system(const IntMatrix& Q, bool box) {
    if (!Q.is_symmetric()) throw std::invalid_argument("coset system requires symmetric Q");
    const std::size_t r = Q.rows();
    CharCosetSystem S;
    S.Q = Q;
    S.rank = r;
    S.box_complete = box;

    Labeler lab = make_labeler(Q);
    S.group = lab.group;

    std::vector<Integer> diag(r);
    for (std::size_t i = 0; i < r; ++i) diag[i] = Q(i, i);

    // Fixed cosets, raw-labeled relative to diag(Q).
    auto fixed_vectors = fixed_characteristic_vectors(Q);
    std::set<FiniteAbelianGroup::Elem> fixed_raw;
    for (const auto& xi : fixed_vectors) fixed_raw.insert(lab.raw(char_offset(xi, diag)));
    if (fixed_raw.size() != fixed_vectors.size())
        throw std::logic_error("fixed cosets must be distinct");

    if (box) {
        // All characteristic vectors with Q_ii <= xi_i < -Q_ii.
        std::vector<Integer> cur(r);
        std::function<void(std::size_t)> rec = [&](std::size_t i) {
            if (i == r) {
                S.representatives.push_back(cur);
                return;
            }
            for (Integer v = Q(i, i); v < -Q(i, i); v += 2) {
                cur[i] = v;
                rec(i + 1);
            }
        };
        rec(0);
    } else {
        // One representative per coset: diag + 2 * U^{-1} * lifted label.
        IntMatrix Uinv = unimodular_inverse(lab.U);
        auto enumerate = [&](auto&& self, std::size_t i, std::vector<Integer>& lift) -> void {
            if (i == lab.diag.size()) {
                std::vector<Integer> y(r, 0);
                for (std::size_t a = 0; a < r; ++a)
                    for (std::size_t b = 0; b < r; ++b) y[a] += Uinv(a, b) * lift[b];
                std::vector<Integer> xi(r);
                for (std::size_t a = 0; a < r; ++a) xi[a] = diag[a] + 2 * y[a];
                S.representatives.push_back(std::move(xi));
                return;
            }
            for (Integer v = 0; v < lab.diag[i]; ++v) {
                lift[i] = v;
                self(self, i + 1, lift);
            }
            lift[i] = 0;
        };
        std::vector<Integer> lift(lab.diag.size(), 0);
        enumerate(enumerate, 0, lift);
    }

    // Bucket representatives by raw label.
    std::map<FiniteAbelianGroup::Elem, std::vector<std::size_t>> raw_cosets;
    for (std::size_t i = 0; i < S.representatives.size(); ++i)
        raw_cosets[lab.raw(char_offset(S.representatives[i], diag))].push_back(i);

    Integer det = determinant(Q);
    if (raw_cosets.size() != abs(det))
        throw std::logic_error("coset count must equal |det Q|");

    // Basepoint: lexicographically smallest representative lying in a fixed
    // coset; its coset becomes the zero label.
    FiniteAbelianGroup::Elem base_raw;
    {
        bool have = false;
        std::vector<Integer> best;
        for (const auto& [rawl, idx] : raw_cosets) {
            if (!fixed_raw.count(rawl)) continue;
            for (std::size_t i : idx) {
                if (!have || S.representatives[i] < best) {
                    have = true;
                    best = S.representatives[i];
                    base_raw = rawl;
                    S.basepoint = best;
                }
            }
        }
        if (!have) throw std::logic_error("no fixed coset representative found");
    }

    for (const auto& [rawl, idx] : raw_cosets) S.cosets[S.group.sub(rawl, base_raw)] = idx;
    for (const auto& rawl : fixed_raw) {
        auto l = S.group.sub(rawl, base_raw);
        if (S.group.add(l, l) != S.group.zero())
            throw std::logic_error("fixed coset label must be 2-torsion");
        S.fixed_labels.push_back(l);
    }
    std::sort(S.fixed_labels.begin(), S.fixed_labels.end());
    return S;
}

} // namespace

FiniteAbelianGroup::Elem CharCosetSystem::label_of(const std::vector<Integer>& xi) const {
    Labeler lab = make_labeler(Q);
    return lab.raw(char_offset(xi, basepoint));
}

CharCosetSystem coset_system(const IntMatrix& Q) {
    if (Q.rows() == 0 || definiteness(Q) != Definiteness::negative)
        throw std::invalid_argument("coset_system requires a negative-definite Q");
    return build_system(Q, /*box=*/true);
}

CharCosetSystem coset_system_any(const IntMatrix& Q) {
    if (Q.rows() == 0) throw std::invalid_argument("coset_system_any: empty Q");
    if (definiteness(Q) == Definiteness::negative) return build_system(Q, /*box=*/true);
    if (determinant(Q) == 0) throw std::invalid_argument("coset_system_any: singular Q");
    return build_system(Q, /*box=*/false);
}

MFunction m_function(const CharCosetSystem& S) {
    if (!S.box_complete)
        throw std::invalid_argument("m_function needs the box representatives of a definite Q");
    MFunction m;
    for (const auto& [label, idx] : S.cosets) {
        bool have = false;
        Rational best;
        for (std::size_t i : idx) {
            Rational v = (evaluate_form(S.Q, S.representatives[i]) + static_cast<long>(S.rank)) / 4;
            if (!have || v > best) {
                have = true;
                best = v;
            }
        }
        m.values[label] = best;
    }
    return m;
}

std::map<FiniteAbelianGroup::Elem, Rational> rho_invariants(const CharCosetSystem& S) {
    long sig = inertia(S.Q).signature();
    std::map<FiniteAbelianGroup::Elem, Rational> out;
    for (const auto& [label, idx] : S.cosets) {
        const auto& xi = S.representatives[idx.front()];
        out[label] = reduce_mod2((evaluate_form(S.Q, xi) - sig) / 4);
    }
    return out;
}

DInvariantTable d_invariants_alternating(const IntMatrix& G) {
    auto S = coset_system(G); // rejects non-definite input
    auto m = m_function(S);
    DInvariantTable t;
    t.group = S.group;
    t.values = m.values;
    t.spin_elements = S.fixed_labels;
    return t;
}

} // namespace ulb
