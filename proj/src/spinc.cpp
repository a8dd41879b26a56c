#include "ulb/spinc.hpp"

#include "ulb/lattice.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace ulb {

namespace {

using Elem = FiniteAbelianGroup::Elem;

std::string elem_str(const Elem& e) {
    std::ostringstream os;
    os << "(";
    for (std::size_t i = 0; i < e.size(); ++i) os << (i ? "," : "") << e[i];
    os << ")";
    return os.str();
}

std::string vec_str(const std::vector<Integer>& v) {
    std::ostringstream os;
    os << "(";
    for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i].get_str();
    os << ")";
    return os.str();
}

} // namespace

SpincTorsor SpincTorsor::from_d_table(const DInvariantTable& t) {
    SpincTorsor y;
    y.group = t.group;
    y.values = t.values;
    y.spin_elements = t.spin_elements;
    y.kind = ValueKind::d;
    return y;
}

SpincTorsor SpincTorsor::spin_only(const FiniteAbelianGroup& H,
                                   const std::map<Elem, Rational>& spin_values) {
    SpincTorsor y;
    y.group = H;
    y.kind = ValueKind::rho;
    for (const auto& [e, v] : spin_values) {
        if (H.add(e, e) != H.zero())
            throw std::invalid_argument("spin elements must be 2-torsion labels");
        y.spin_elements.push_back(e);
        y.values[e] = reduce_mod2(v);
    }
    std::sort(y.spin_elements.begin(), y.spin_elements.end());
    return y;
}

SpincTorsor SpincTorsor::mirrored() const {
    SpincTorsor y = *this;
    for (auto& [e, v] : y.values) v = kind == ValueKind::rho ? reduce_mod2(-v) : -v;
    return y;
}

SpincTorsor SpincTorsor::rho_reduction() const {
    SpincTorsor y = *this;
    y.kind = ValueKind::rho;
    for (auto& [e, v] : y.values) v = reduce_mod2(v);
    return y;
}

std::vector<AffineMono> affine_monomorphisms(const CharCosetSystem& S, const SpincTorsor& Y,
                                             unsigned long long t) {
    const FiniteAbelianGroup& G = S.group;
    const FiniteAbelianGroup& H = Y.group;
    if (H.order() != G.order() * t * t)
        throw std::invalid_argument("affine_monomorphisms: |H| != |det Q| * t^2");

    auto source_rho = rho_invariants(S);

    std::vector<AffineMono> out;
    for (const auto& T : H.subgroups_of_order(t)) {
        QuotientGroup ht = quotient_by(H, T);
        const FiniteAbelianGroup& Q = ht.quotient;

        // With an odd-order T every involution-fixed class must contain a
        // spin structure; a torsor violating that is not a Spin^c torsor of
        // a rational homology sphere.
        if (t % 2 == 1 && !Y.spin_elements.empty()) {
            for (const auto& c : Q.two_torsion()) {
                bool has_spin = false;
                for (const auto& h : ht.fiber(c))
                    if (std::binary_search(Y.spin_elements.begin(), Y.spin_elements.end(), h))
                        has_spin = true;
                if (!has_spin)
                    throw std::invalid_argument(
                        "fixed class without spin element under odd-order T");
            }
        }

        // Generator images: g_i of order dividing the i-th invariant factor.
        auto quotient_elems = Q.elements();
        std::vector<std::vector<Elem>> gen_choices(G.factors.size());
        for (std::size_t i = 0; i < G.factors.size(); ++i)
            for (const auto& e : quotient_elems)
                if (G.factors[i] % Q.element_order(e) == 0) gen_choices[i].push_back(e);

        std::vector<Elem> two_tor = Q.two_torsion();
        std::vector<Elem> gens(G.factors.size());
        auto try_mono = [&](const std::vector<Elem>& gen_images) {
            // Injectivity: the image subgroup has |G| elements.
            if (Q.span(gen_images).size() != G.order()) return;
            for (const auto& b : two_tor) {
                // phi(g) = b + mu(g); check the value congruence on every
                // source coset against all known values in the image class.
                AffineMono mono;
                mono.subgroup_T = T;
                mono.generator_images = gen_images;
                mono.basepoint_image = b;
                bool ok = true;
                for (const auto& [label, idx] : S.cosets) {
                    Elem img = b;
                    for (std::size_t i = 0; i < gen_images.size(); ++i)
                        img = Q.add(img, Q.mul(gen_images[i], label[i]));
                    auto fiber = ht.fiber(img);
                    const Rational& rho = source_rho.at(label);
                    for (const auto& h : fiber) {
                        auto it = Y.values.find(h);
                        if (it != Y.values.end() && !congruent_mod2(rho, it->second)) {
                            ok = false;
                            break;
                        }
                    }
                    if (!ok) break;
                    mono.image_classes[label] = fiber;
                }
                if (ok) out.push_back(std::move(mono));
            }
        };
        std::function<void(std::size_t)> choose = [&](std::size_t i) {
            if (i == gens.size()) {
                try_mono(gens);
                return;
            }
            for (const auto& e : gen_choices[i]) {
                gens[i] = e;
                choose(i + 1);
            }
        };
        choose(0);
    }
    return out;
}

std::size_t mono_count_up_to_conjugation(const CharCosetSystem& S,
                                         const std::vector<AffineMono>& monos) {
    std::set<std::map<Elem, std::vector<Elem>>> keys;
    for (const auto& mono : monos) {
        std::map<Elem, std::vector<Elem>> conj;
        for (const auto& [label, fiber] : mono.image_classes)
            conj[S.group.neg(label)] = fiber;
        keys.insert(std::min(mono.image_classes, conj));
    }
    return keys.size();
}

std::size_t mono_count_up_to_symmetry(const CharCosetSystem& S,
                                      const std::map<Elem, Rational>& values,
                                      const std::vector<AffineMono>& monos) {
    const FiniteAbelianGroup& G = S.group;
    // Value-preserving automorphisms of G.
    std::vector<std::vector<Elem>> choices(G.factors.size());
    auto all = G.elements();
    for (std::size_t i = 0; i < G.factors.size(); ++i)
        for (const auto& e : all)
            if (G.factors[i] % G.element_order(e) == 0) choices[i].push_back(e);
    std::vector<std::vector<Elem>> symmetries;
    std::vector<Elem> gens(G.factors.size());
    std::function<void(std::size_t)> rec = [&](std::size_t i) {
        if (i == gens.size()) {
            if (G.span(gens).size() != G.order()) return;
            // sigma(label) = sum label_i * gens[i]
            std::vector<Elem> sigma;
            bool preserves = true;
            for (const auto& [label, idx] : S.cosets) {
                Elem img = G.zero();
                for (std::size_t k = 0; k < gens.size(); ++k)
                    img = G.add(img, G.mul(gens[k], label[k]));
                if (values.at(img) != values.at(label)) {
                    preserves = false;
                    break;
                }
                sigma.push_back(img);
            }
            if (preserves) symmetries.push_back(std::move(sigma));
            return;
        }
        for (const auto& e : choices[i]) {
            gens[i] = e;
            rec(i + 1);
        }
    };
    rec(0);

    std::vector<Elem> labels;
    for (const auto& [label, idx] : S.cosets) labels.push_back(label);
    std::set<std::map<Elem, std::vector<Elem>>> keys;
    for (const auto& mono : monos) {
        std::map<Elem, std::vector<Elem>> best = mono.image_classes;
        for (const auto& sigma : symmetries) {
            std::map<Elem, std::vector<Elem>> composed;
            for (std::size_t i = 0; i < labels.size(); ++i)
                composed[labels[i]] = mono.image_classes.at(sigma[i]);
            if (composed < best) best = std::move(composed);
        }
        keys.insert(best);
    }
    return keys.size();
}

namespace {

// Shared arithmetic gate: |H| = delta * t^2.
bool order_gate(const IntMatrix& Q, const SpincTorsor& Y, unsigned long long& t,
                ObstructionVerdict& v) {
    Integer det = determinant(Q);
    if (det == 0) throw std::invalid_argument("obstruction tests require nonsingular Q");
    Integer delta = abs(det);
    Integer order(static_cast<unsigned long>(Y.group.order()));
    if (order % delta != 0 || !is_perfect_square(order / delta)) {
        v.obstructed = true;
        v.rule = "order-arithmetic";
        v.detail = "|H| = " + order.get_str() + " is not |det Q| * t^2 with |det Q| = " +
                   delta.get_str();
        return false;
    }
    t = isqrt(order / delta).get_ui();
    return true;
}

void attach_spectrum_witness(const CharCosetSystem& S, const SpincTorsor& Y,
                             ObstructionVerdict& v) {
    auto rho = rho_invariants(S);
    std::vector<Rational> spectrum;
    for (const auto& [e, val] : Y.values) spectrum.push_back(val);
    for (const auto& [label, idx] : S.cosets) {
        const Rational& r = rho.at(label);
        bool present = false;
        for (const auto& s : spectrum)
            if (congruent_mod2(r, s)) present = true;
        if (!present) {
            v.witness_coset = label;
            v.witness_source_value = r;
            v.detail = "coset of " + vec_str(S.representatives[idx.front()]) + " has rho = " +
                       rational_to_string(r) +
                       " (mod 2), absent from the target rho-spectrum";
            return;
        }
    }
    v.detail = "no equivariant affine monomorphism satisfies the congruences";
}

} // namespace

ObstructionVerdict rho_obstruction(const IntMatrix& Q, const SpincTorsor& Y) {
    ObstructionVerdict v;
    v.rule = "rho-congruence";
    unsigned long long t = 0;
    if (!order_gate(Q, Y, t, v)) return v;

    CharCosetSystem S = coset_system_any(Q);
    auto monos = affine_monomorphisms(S, Y, t);
    v.congruence_mono_count = monos.size();
    if (monos.empty()) {
        v.obstructed = true;
        attach_spectrum_witness(S, Y, v);
        return v;
    }
    v.monos = std::move(monos);
    v.detail = "congruence-compatible monomorphisms exist";
    return v;
}

ObstructionVerdict d_obstruction(const IntMatrix& Q, const SpincTorsor& Y) {
    if (Y.kind != ValueKind::d)
        throw std::invalid_argument("d_obstruction needs a torsor with d-values");
    if (Q.rows() == 0 || definiteness(Q) != Definiteness::negative)
        throw std::invalid_argument("d_obstruction requires negative-definite Q");

    ObstructionVerdict v;
    v.rule = "d-inequality";
    unsigned long long t = 0;
    if (!order_gate(Q, Y, t, v)) return v;

    CharCosetSystem S = coset_system(Q);
    auto m = m_function(S);
    auto monos = affine_monomorphisms(S, Y, t);
    v.congruence_mono_count = monos.size();
    if (monos.empty()) {
        v.obstructed = true;
        attach_spectrum_witness(S, Y, v);
        return v;
    }

    std::vector<AffineMono> survivors;
    bool witness_set = false;
    for (auto& mono : monos) {
        bool ok = true;
        for (const auto& [label, fiber] : mono.image_classes) {
            const Rational& mv = m.values.at(label);
            for (const auto& h : fiber) {
                auto it = Y.values.find(h);
                if (it == Y.values.end()) continue;
                if (mv > it->second) {
                    ok = false;
                    if (!witness_set) {
                        witness_set = true;
                        v.witness_coset = label;
                        v.witness_source_value = mv;
                        v.witness_target_value = it->second;
                        v.detail = "m = " + rational_to_string(mv) + " > d = " +
                                   rational_to_string(it->second) + " at coset " +
                                   elem_str(label);
                    }
                    break;
                }
            }
            if (!ok) break;
        }
        if (ok) survivors.push_back(std::move(mono));
    }
    if (survivors.empty()) {
        v.obstructed = true;
        return v;
    }
    v.monos = std::move(survivors);
    v.detail = "monomorphism satisfying congruences and inequalities exists";
    return v;
}

} // namespace ulb
