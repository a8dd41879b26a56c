#include "ulb/abelian.hpp"

#include "ulb/lattice.hpp" // CapacityError

#include <algorithm>
#include <numeric>
#include <set>

namespace ulb {

namespace {
constexpr unsigned long long kSubgroupCapacity = 65536;
}

FiniteAbelianGroup FiniteAbelianGroup::from_factors(const std::vector<Integer>& fs) {
    FiniteAbelianGroup g;
    for (const auto& f : fs) {
        if (f < 0) throw std::invalid_argument("negative invariant factor");
        if (f == 0) throw std::invalid_argument("invariant factor zero: group not finite");
        if (f == 1) continue;
        if (!f.fits_slong_p()) throw CapacityError("invariant factor exceeds capacity");
        g.factors.push_back(f.get_si());
    }
    for (std::size_t i = 0; i + 1 < g.factors.size(); ++i)
        if (g.factors[i + 1] % g.factors[i] != 0)
            throw std::invalid_argument("invariant factors must form a divisibility chain");
    return g;
}

unsigned long long FiniteAbelianGroup::order() const {
    unsigned long long n = 1;
    for (long long f : factors) {
        if (n > (1ULL << 62) / static_cast<unsigned long long>(f))
            throw CapacityError("group order exceeds capacity");
        n *= static_cast<unsigned long long>(f);
    }
    return n;
}

FiniteAbelianGroup::Elem FiniteAbelianGroup::reduce(Elem e) const {
    if (e.size() != factors.size()) throw std::invalid_argument("element size mismatch");
    for (std::size_t i = 0; i < e.size(); ++i) {
        e[i] %= factors[i];
        if (e[i] < 0) e[i] += factors[i];
    }
    return e;
}

FiniteAbelianGroup::Elem FiniteAbelianGroup::add(const Elem& a, const Elem& b) const {
    Elem c(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) c[i] = a[i] + b[i];
    return reduce(std::move(c));
}

FiniteAbelianGroup::Elem FiniteAbelianGroup::sub(const Elem& a, const Elem& b) const {
    Elem c(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) c[i] = a[i] - b[i];
    return reduce(std::move(c));
}

FiniteAbelianGroup::Elem FiniteAbelianGroup::neg(const Elem& a) const {
    Elem c(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) c[i] = -a[i];
    return reduce(std::move(c));
}

FiniteAbelianGroup::Elem FiniteAbelianGroup::mul(const Elem& a, long long k) const {
    Elem c(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        long long m = factors[i];
        long long v = ((a[i] % m) * (k % m)) % m;
        c[i] = v;
    }
    return reduce(std::move(c));
}

long long FiniteAbelianGroup::element_order(const Elem& a) const {
    long long o = 1;
    for (std::size_t i = 0; i < a.size(); ++i) {
        long long oi = factors[i] / std::gcd(factors[i], a[i]);
        o = std::lcm(o, oi);
    }
    return o;
}

std::vector<FiniteAbelianGroup::Elem> FiniteAbelianGroup::elements() const {
    if (order() > kSubgroupCapacity)
        throw CapacityError("group too large to enumerate");
    std::vector<Elem> out;
    Elem cur = zero();
    std::function<void(std::size_t)> rec = [&](std::size_t i) {
        if (i == factors.size()) {
            out.push_back(cur);
            return;
        }
        for (long long v = 0; v < factors[i]; ++v) {
            cur[i] = v;
            rec(i + 1);
        }
        cur[i] = 0;
    };
    rec(0);
    return out;
}

std::vector<FiniteAbelianGroup::Elem> FiniteAbelianGroup::two_torsion() const {
    std::vector<Elem> out;
    Elem cur = zero();
    std::function<void(std::size_t)> rec = [&](std::size_t i) {
        if (i == factors.size()) {
            out.push_back(cur);
            return;
        }
        cur[i] = 0;
        rec(i + 1);
        if (factors[i] % 2 == 0) {
            cur[i] = factors[i] / 2;
            rec(i + 1);
        }
        cur[i] = 0;
    };
    rec(0);
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<FiniteAbelianGroup::Elem> FiniteAbelianGroup::span(const std::vector<Elem>& gens) const {
    std::set<Elem> s;
    s.insert(zero());
    std::vector<Elem> frontier{zero()};
    while (!frontier.empty()) {
        std::vector<Elem> next;
        for (const auto& e : frontier)
            for (const auto& g : gens) {
                Elem f = add(e, g);
                if (s.insert(f).second) next.push_back(f);
            }
        frontier = std::move(next);
        if (s.size() > kSubgroupCapacity) throw CapacityError("subgroup span exceeds capacity");
    }
    return std::vector<Elem>(s.begin(), s.end());
}

std::vector<std::vector<FiniteAbelianGroup::Elem>>
FiniteAbelianGroup::subgroups_of_order(unsigned long long t) const {
    const unsigned long long n = order();
    std::vector<std::vector<Elem>> out;
    if (t == 0 || n % t != 0) return out;
    if (t == 1) {
        out.push_back({zero()});
        return out;
    }
    if (is_cyclic()) {
        // Unique subgroup per order, generated by n/t.
        long long g = static_cast<long long>(n / t);
        std::vector<Elem> sub;
        for (unsigned long long k = 0; k < t; ++k)
            sub.push_back(reduce({static_cast<long long>(k) * g}));
        std::sort(sub.begin(), sub.end());
        out.push_back(std::move(sub));
        return out;
    }
    if (n > kSubgroupCapacity)
        throw CapacityError("subgroup enumeration limited to groups of order <= 65536");
    auto all = elements();
    std::set<std::vector<Elem>> seen;
    std::vector<std::pair<std::vector<Elem>, std::vector<Elem>>> queue; // (subgroup, gens)
    queue.push_back({{zero()}, {}});
    seen.insert({zero()});
    while (!queue.empty()) {
        auto [sub, gens] = queue.back();
        queue.pop_back();
        if (sub.size() == t) {
            out.push_back(sub);
            continue;
        }
        for (const auto& g : all) {
            if (std::binary_search(sub.begin(), sub.end(), g)) continue;
            auto gens2 = gens;
            gens2.push_back(g);
            auto sub2 = span(gens2);
            if (sub2.size() > t || t % sub2.size() != 0) continue;
            if (seen.insert(sub2).second) queue.push_back({sub2, gens2});
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

FiniteAbelianGroup::Elem QuotientGroup::project(const FiniteAbelianGroup::Elem& h) const {
    FiniteAbelianGroup::Elem q;
    for (std::size_t i = 0; i < proj_matrix.size(); ++i) {
        long long s = 0;
        for (std::size_t j = 0; j < h.size(); ++j) s += proj_matrix[i][j] * h[j];
        long long m = proj_moduli[i];
        s %= m;
        if (s < 0) s += m;
        q.push_back(s);
    }
    return q;
}

std::vector<FiniteAbelianGroup::Elem> QuotientGroup::fiber(
    const FiniteAbelianGroup::Elem& q) const {
    auto it = fibers.find(q);
    if (it == fibers.end()) throw std::invalid_argument("no fiber for quotient element");
    return it->second;
}

QuotientGroup quotient_by(const FiniteAbelianGroup& H,
                          const std::vector<FiniteAbelianGroup::Elem>& subgroup) {
    const std::size_t s = H.factors.size();
    // Relation matrix [diag(factors) | subgroup generators].
    IntMatrix R(s, s + subgroup.size());
    for (std::size_t i = 0; i < s; ++i) R(i, i) = static_cast<long>(H.factors[i]);
    for (std::size_t k = 0; k < subgroup.size(); ++k)
        for (std::size_t i = 0; i < s; ++i) R(i, s + k) = static_cast<long>(subgroup[k][i]);
    auto snf = smith_normal_form(R);

    QuotientGroup q;
    q.source = H;
    std::vector<Integer> qfactors;
    for (std::size_t i = 0; i < s; ++i) {
        Integer d = snf.D(i, i);
        if (d > 1) {
            qfactors.push_back(d);
            std::vector<long long> row(s);
            for (std::size_t j = 0; j < s; ++j) {
                if (!snf.U(i, j).fits_slong_p()) throw CapacityError("projection overflow");
                row[j] = snf.U(i, j).get_si();
            }
            q.proj_matrix.push_back(std::move(row));
            q.proj_moduli.push_back(d.get_si());
        }
    }
    q.quotient = FiniteAbelianGroup::from_factors(qfactors);
    for (const auto& h : H.elements()) q.fibers[q.project(h)].push_back(h);
    if (!subgroup.empty() && q.fibers.size() != H.order() / subgroup.size())
        throw std::logic_error("quotient fiber count mismatch");
    return q;
}

} // namespace ulb
