#include "ulb/pipeline.hpp"

#include "ulb/lattice.hpp"

#include <json.hpp>

#include <algorithm>
#include <cctype>
#include <sstream>
#include <tuple>

namespace ulb {

namespace {

long ceil_half(long x) { return x >= 0 ? (x + 1) / 2 : x / 2; }

long two_pow(std::size_t e) { return 1L << e; }

} // namespace

std::pair<long, long> bound_from_signature(long sigma, long eta, long k) {
    long p = std::max(0L, ceil_half(-sigma - eta + k - 1));
    long n = std::max(0L, ceil_half(sigma - eta + k - 1));
    return {p, n};
}

std::pair<long, std::string> lemma_det_bound(long k, long eta, const Integer& det) {
    long base = std::max(0L, k - 1 - eta);
    if (det == 0) return {base, "det 0 (nullity positive); bound k-1-eta"};
    Integer pow2 = 1;
    for (long i = 1; i < k; ++i) pow2 *= 2;
    if (det % pow2 == 0 && is_perfect_square(det / pow2))
        return {base, "det = 2^{k-1} * square; bound k-1-eta"};
    return {std::max(base, k), "det not of the form 2^{k-1} * square; bound raised to k"};
}

std::pair<long, long> lemma_sublinks_bound(const SublinkTree& tree) {
    if (tree.is_leaf()) {
        if (!tree.u_min || !tree.cstar_min)
            throw std::invalid_argument("sublink leaf lacks bound data");
        return {*tree.u_min, *tree.cstar_min};
    }
    if (tree.children.size() != 2)
        throw std::invalid_argument("sublink split must have exactly two parts");
    auto [ua, ca] = lemma_sublinks_bound(tree.children[0]);
    auto [ub, cb] = lemma_sublinks_bound(tree.children[1]);
    long l = std::abs(tree.lk);
    return {ua + ub + l, ca + cb + l};
}

KohnCase lemma_kohn_check(const LinkRecord& r) {
    if (r.components != 2 || !r.homology || !r.homology->is_cyclic() || !r.determinant ||
        *r.determinant == 0)
        return KohnCase::inapplicable;
    const Integer& det = *r.determinant;
    if (det % 2 == 0 && is_perfect_square(det / 2)) return KohnCase::not_obstructed_i;
    if (det % 16 == 0) return KohnCase::not_obstructed_iii;
    if (det % 4 == 0) {
        if (!r.signatures) return KohnCase::inapplicable; // case (ii) undecidable
        for (long s : *r.signatures)
            if (s == 1 || s == -1) return KohnCase::not_obstructed_ii;
    }
    return KohnCase::cstar_ge_3;
}

std::vector<long> qa_candidates(const Integer& det) {
    std::vector<long> out;
    Integer d = abs(det);
    for (long a = 2; Integer(4 * a - 4) <= d; ++a) {
        Integer q = 4 * a - 4;
        if (d % q == 0 && is_perfect_square(d / q)) out.push_back(a);
    }
    return out;
}

namespace {

IntMatrix q_a_form(long a) { return IntMatrix{{-a, 1, 1}, {1, -2, 0}, {1, 0, -2}}; }

// The rank-3 negative-definite form with |det| = 2 from the c* < 3
// classification (a = b = 1, c = 0 case).
IntMatrix det2_form() { return IntMatrix{{-1, 1, 0}, {1, -2, 0}, {0, 0, -2}}; }

struct SidedData {
    // Data for the link side under test (possibly the mirror of the record).
    IntMatrix posdef;          // Goeritz lattice Lambda of this side
    IntMatrix negdef;          // negative-definite Goeritz of this side
    bool have_grams = false;
    std::vector<long> sigs;    // quasi-orientation signatures of this side
};

const IntMatrix& posdef_of(const GoeritzData& g) {
    return definiteness(g.white_gram) == Definiteness::positive ? g.white_gram : g.black_gram;
}
const IntMatrix& negdef_of(const GoeritzData& g) {
    return definiteness(g.white_gram) == Definiteness::negative ? g.white_gram : g.black_gram;
}

SidedData side_data(const LinkRecord& r, bool mirrored) {
    SidedData s;
    std::optional<GoeritzData> g;
    if (r.pd)
        g = goeritz_from_pd(*r.pd);
    else if (r.goeritz)
        g = *r.goeritz;
    if (g) {
        if (definiteness(g->white_gram) == Definiteness::indefinite_or_degenerate ||
            definiteness(g->black_gram) == Definiteness::indefinite_or_degenerate)
            throw std::invalid_argument("record Goeritz data is not alternating-definite");
        s.posdef = mirrored ? -negdef_of(*g) : posdef_of(*g);
        s.negdef = mirrored ? -posdef_of(*g) : negdef_of(*g);
        s.have_grams = true;
    }
    if (r.signatures) {
        s.sigs = *r.signatures;
        if (mirrored)
            for (long& v : s.sigs) v = -v;
    } else if (r.pd) {
        s.sigs = quasi_orientation_signatures(*r.pd);
        if (mirrored)
            for (long& v : s.sigs) v = -v;
    }
    return s;
}

struct BranchResult {
    bool applicable = false;
    bool obstructed = false;
    ProvenanceEntry entry;
};

std::string budget_str(long p, long n, bool mirrored, long sigma) {
    std::ostringstream os;
    os << "(p,n)=(" << p << "," << n << ") sigma=" << sigma
       << (mirrored ? " [mirror]" : "");
    return os.str();
}

// Corollary-2 test: embed Lambda in Z^{m + 2(p+n) - k + 1 + eta} and demand
// p+n pairwise orthogonal square-2 complement vectors spanning a primitive
// sublattice.
BranchResult embedding_branch(const SidedData& side, long p, long n, long k, long eta,
                              bool mirrored, long sigma) {
    BranchResult res;
    if (!side.have_grams) return res;
    res.applicable = true;
    res.entry.rule = "corollary-embedding";
    const std::size_t m = side.posdef.rows();
    const std::size_t N = m + 2 * (p + n) - k + 1 + eta;
    auto classes = orthogonal_embeddings(Lattice::from_gram(side.posdef), N);
    res.entry.inputs = budget_str(p, n, mirrored, sigma) + " rank " + std::to_string(m) +
                       " into Z^" + std::to_string(N);
    if (classes.empty()) {
        res.obstructed = true;
        res.entry.witness = "Goeritz lattice admits no embedding";
        return res;
    }
    if (p + n == 0) {
        res.obstructed = false;
        res.entry.witness = "no square-2 vectors demanded";
        return res;
    }
    std::size_t with_sets = 0;
    for (const auto& E : classes) {
        auto C = orthogonal_complement(E);
        auto sets = norm_two_orthogonal_sets(C, p + n);
        if (sets.empty()) continue;
        ++with_sets;
        for (const auto& S : sets) {
            if (is_primitive_sublattice(S, C)) {
                res.obstructed = false;
                res.entry.witness = "embedding with a primitive orthogonal square-2 set exists";
                return res;
            }
        }
    }
    res.obstructed = true;
    res.entry.witness =
        std::to_string(classes.size()) + " embedding classes; " + std::to_string(with_sets) +
        " admit orthogonal square-2 sets; none spans a primitive sublattice";
    return res;
}

// Rank-3 linking-form test against the Q_a family (and the det-2 form).
BranchResult linking_form_branch(const LinkRecord& r, const SidedData& side, long p, long n,
                                 long k, long eta, bool mirrored, long sigma) {
    BranchResult res;
    long rank = 2 * (p + n) + eta - k + 1;
    if (k != 2 || rank != 3 || !r.homology || !r.homology->is_cyclic() || !r.determinant ||
        *r.determinant == 0)
        return res;
    const Integer& det = *r.determinant;

    std::vector<std::pair<std::string, IntMatrix>> candidates;
    for (long a : qa_candidates(det)) candidates.push_back({"Q_" + std::to_string(a), q_a_form(a)});
    if (det % 2 == 0 && is_perfect_square(det / 2))
        candidates.push_back({"det-2-form", det2_form()});

    res.applicable = true;
    res.entry.rule = "linking-form";
    res.entry.inputs = budget_str(p, n, mirrored, sigma) + " det " + det.get_str();
    if (candidates.empty()) {
        res.obstructed = true;
        res.entry.witness = "no rank-3 candidate form: det admits no Q_a and is not 2t^2";
        return res;
    }

    // Value data for Y = double branched cover of this side.
    std::optional<SpincTorsor> d_torsor;
    if (side.have_grams)
        d_torsor = SpincTorsor::from_d_table(d_invariants_alternating(side.negdef));

    std::vector<std::string> killed;
    bool all_dead = true;
    std::string survivor;
    for (const auto& [name, Q] : candidates) {
        bool dead = false;
        std::string why;
        if (d_torsor) {
            auto v = d_obstruction(Q, *d_torsor);
            dead = v.obstructed;
            why = v.detail;
        } else if (!side.sigs.empty()) {
            // Spin-only data: rho at the spin structures is -sigma/4; the
            // assignment of signatures to spin elements is not pinned, so a
            // candidate dies only if every assignment is obstructed.
            auto spins = side.sigs;
            std::sort(spins.begin(), spins.end());
            dead = true;
            do {
                auto two_tor = r.homology->two_torsion();
                if (two_tor.size() != spins.size()) {
                    // spin count must be 2^{k-1} = |H[2]| for genuine covers
                    throw std::invalid_argument("record homology has wrong 2-torsion rank");
                }
                std::map<FiniteAbelianGroup::Elem, Rational> vals;
                for (std::size_t i = 0; i < spins.size(); ++i)
                    vals[two_tor[i]] = reduce_mod2(Rational(-spins[i]) / 4);
                auto Y = SpincTorsor::spin_only(*r.homology, vals);
                auto v = rho_obstruction(Q, Y);
                if (!v.obstructed) {
                    dead = false;
                    break;
                }
                why = v.detail;
            } while (std::next_permutation(spins.begin(), spins.end()));
        } else {
            return BranchResult{}; // no value data at all
        }
        if (dead)
            killed.push_back(name + " (" + why + ")");
        else {
            all_dead = false;
            survivor = name;
            break;
        }
    }
    res.obstructed = all_dead;
    if (all_dead) {
        std::string w = "all candidate forms obstructed:";
        for (const auto& s : killed) w += " " + s + ";";
        res.entry.witness = w;
    } else {
        res.entry.witness = "candidate form " + survivor + " is not obstructed";
    }
    return res;
}

// All equality-case tests for one (orientation, mirror) side with exact
// equality p = (-sigma - eta + k - 1)/2 assumed checked by the caller.
ObstructionRun equality_tests(const LinkRecord& r, const SidedData& side, long sigma, long p,
                              long n, long k, long eta, bool mirrored) {
    ObstructionRun run;
    auto emb = embedding_branch(side, p, n, k, eta, mirrored, sigma);
    auto lf = linking_form_branch(r, side, p, n, k, eta, mirrored, sigma);
    if (emb.applicable) run.provenance.push_back(emb.entry);
    if (lf.applicable) run.provenance.push_back(lf.entry);
    if (!emb.applicable && !lf.applicable) {
        run.outcome = ObstructionRun::Outcome::inconclusive;
        run.provenance.push_back({"equality-case", budget_str(p, n, mirrored, sigma),
                                  "no applicable branch (missing diagram or homology data)"});
        return run;
    }
    bool obstructed = (emb.applicable && emb.obstructed) || (lf.applicable && lf.obstructed);
    run.outcome = obstructed ? ObstructionRun::Outcome::obstructed
                             : ObstructionRun::Outcome::not_obstructed;
    return run;
}

long record_eta(const LinkRecord& r) {
    if (r.nullity) return *r.nullity;
    if (r.determinant && *r.determinant != 0) return 0;
    throw std::invalid_argument("record lacks nullity data");
}

} // namespace

ObstructionRun run_obstruction(const LinkRecord& r, const CrossingBudget& budget) {
    if (r.components == 0) throw std::invalid_argument("record lacks component count");
    long k = static_cast<long>(r.components);
    long eta = record_eta(r);
    if (!r.signatures && !r.pd)
        throw std::invalid_argument("record lacks signature data");

    ObstructionRun agg;
    bool any_equality = false, any_pass = false, all_obstructed = true;
    for (bool mirrored : {false, true}) {
        SidedData side = side_data(r, mirrored);
        long p = mirrored ? budget.n : budget.p;
        long n = mirrored ? budget.p : budget.n;
        std::vector<long> sigmas = side.sigs;
        std::sort(sigmas.begin(), sigmas.end());
        sigmas.erase(std::unique(sigmas.begin(), sigmas.end()), sigmas.end());
        for (long sigma : sigmas) {
            if (2 * p != -sigma - eta + k - 1) continue; // equality case only
            any_equality = true;
            auto run = equality_tests(r, side, sigma, p, n, k, eta, mirrored);
            for (auto& e : run.provenance) agg.provenance.push_back(e);
            if (run.outcome == ObstructionRun::Outcome::not_obstructed) any_pass = true;
            if (run.outcome != ObstructionRun::Outcome::obstructed) all_obstructed = false;
        }
    }
    if (!any_equality) {
        agg.outcome = ObstructionRun::Outcome::inconclusive;
        agg.provenance.push_back(
            {"equality-case", "", "inconclusive: equality case not met for any orientation"});
        return agg;
    }
    agg.outcome = all_obstructed ? ObstructionRun::Outcome::obstructed
                  : any_pass     ? ObstructionRun::Outcome::not_obstructed
                                 : ObstructionRun::Outcome::inconclusive;
    return agg;
}

namespace {

// Certify that no immersion with exactly B double points exists, by fixing a
// quasi-orientation and excluding every split B = p + n, using the
// inequality on either side and the equality-case tests where they apply.
bool exclude_budget_level(const LinkRecord& r, long B, long k, long eta,
                          std::vector<ProvenanceEntry>& prov) {
    SidedData plain = side_data(r, false);
    SidedData mirrored = side_data(r, true);
    if (plain.sigs.empty()) return false;

    for (long sigma : plain.sigs) {
        bool all_excluded = true;
        std::vector<ProvenanceEntry> local;
        for (long p = 0; p <= B && all_excluded; ++p) {
            long n = B - p;
            long pmin = bound_from_signature(sigma, eta, k).first;
            long pmin_mirror = bound_from_signature(-sigma, eta, k).first;
            if (p < pmin) {
                local.push_back({"signature-inequality",
                                 "(p,n)=(" + std::to_string(p) + "," + std::to_string(n) +
                                     ") sigma=" + std::to_string(sigma),
                                 "p below the signature minimum"});
                continue;
            }
            if (2 * p == -sigma - eta + k - 1) {
                auto run = equality_tests(r, plain, sigma, p, n, k, eta, false);
                if (run.outcome == ObstructionRun::Outcome::obstructed) {
                    for (auto& e : run.provenance) local.push_back(e);
                    continue;
                }
            }
            // Mirror side carries (n, p).
            if (n < pmin_mirror) {
                local.push_back({"signature-inequality",
                                 "(p,n)=(" + std::to_string(n) + "," + std::to_string(p) +
                                     ") sigma=" + std::to_string(-sigma) + " [mirror]",
                                 "p below the signature minimum"});
                continue;
            }
            if (2 * n == sigma - eta + k - 1) {
                auto run = equality_tests(r, mirrored, -sigma, n, p, k, eta, true);
                if (run.outcome == ObstructionRun::Outcome::obstructed) {
                    for (auto& e : run.provenance) local.push_back(e);
                    continue;
                }
            }
            all_excluded = false;
        }
        if (all_excluded) {
            for (auto& e : local) prov.push_back(e);
            return true;
        }
    }
    return false;
}

} // namespace

Verdict evaluate_record(const LinkRecord& r) {
    Verdict v;
    long k = static_cast<long>(r.components);

    std::optional<long> eta;
    if (r.nullity)
        eta = *r.nullity;
    else if (r.determinant && *r.determinant != 0)
        eta = 0;

    std::vector<long> sigs;
    if (r.signatures)
        sigs = *r.signatures;
    else if (r.pd)
        sigs = quasi_orientation_signatures(*r.pd);

    if (!sigs.empty() && eta && k > 0) {
        long best = 0, best_sigma = 0;
        for (long s : sigs) {
            auto [p, n] = bound_from_signature(s, *eta, k);
            if (p + n > best) {
                best = p + n;
                best_sigma = s;
            }
        }
        if (best > v.lower_bound_cstar) {
            v.lower_bound_cstar = best;
            v.provenance.push_back({"signature-bound",
                                    "sigma=" + std::to_string(best_sigma) +
                                        " eta=" + std::to_string(*eta),
                                    "c* >= p_min + n_min = " + std::to_string(best)});
        }
    }

    if (k > 0 && eta && r.determinant) {
        auto [b, note] = lemma_det_bound(k, *eta, *r.determinant);
        if (b > v.lower_bound_cstar) {
            v.lower_bound_cstar = b;
            v.provenance.push_back(
                {"determinant-bound", "det=" + r.determinant->get_str(), note});
        }
    }

    long sub_u = 0;
    if (r.sublinks) {
        auto [u, c] = lemma_sublinks_bound(*r.sublinks);
        sub_u = u;
        if (c > v.lower_bound_cstar) {
            v.lower_bound_cstar = c;
            v.provenance.push_back(
                {"sublink-bound", "", "c* >= " + std::to_string(c) + " from sublink recursion"});
        }
        if (u > 0)
            v.provenance.push_back(
                {"sublink-bound", "", "u >= " + std::to_string(u) + " from sublink recursion"});
    }

    auto kohn = lemma_kohn_check(r);
    if (kohn == KohnCase::cstar_ge_3 && v.lower_bound_cstar < 3) {
        v.lower_bound_cstar = 3;
        v.provenance.push_back({"kohn-trichotomy",
                                "det=" + (r.determinant ? r.determinant->get_str() : "?"),
                                "neither 2t^2 nor divisible by 16, no signature of "
                                "absolute value 1"});
    }

    // Escalate through budget levels with the Theorem-1 machinery when a
    // diagram is available.
    if ((r.pd || r.goeritz) && k > 0 && eta) {
        long cap = r.known_upper_bound ? *r.known_upper_bound : v.lower_bound_cstar + 2;
        while (v.lower_bound_cstar < cap) {
            std::vector<ProvenanceEntry> prov;
            if (!exclude_budget_level(r, v.lower_bound_cstar, k, *eta, prov)) break;
            v.lower_bound_cstar += 1;
            v.provenance.push_back({"theorem-obstruction", "",
                                    "all immersions with " +
                                        std::to_string(v.lower_bound_cstar - 1) +
                                        " double points excluded; c* >= " +
                                        std::to_string(v.lower_bound_cstar)});
            for (auto& e : prov) v.provenance.push_back(e);
        }
    }

    v.lower_bound_u = std::max(v.lower_bound_cstar, sub_u);
    if (r.known_upper_bound && *r.known_upper_bound == v.lower_bound_u)
        v.matched_upper = *r.known_upper_bound;
    return v;
}

namespace {

// Natural ordering for Thistlethwaite names: L<crossings><a|n><index>.
std::tuple<long, char, long, std::string> name_key(const std::string& name) {
    long cr = 0, idx = 0;
    char kind = 'z';
    std::size_t i = 0;
    if (i < name.size() && (name[i] == 'L' || name[i] == 'l')) ++i;
    std::size_t j = i;
    while (j < name.size() && std::isdigit(static_cast<unsigned char>(name[j]))) ++j;
    if (j > i) cr = std::stol(name.substr(i, j - i));
    if (j < name.size()) kind = name[j];
    std::size_t m = j + 1;
    std::size_t e = m;
    while (e < name.size() && std::isdigit(static_cast<unsigned char>(name[e]))) ++e;
    if (e > m) idx = std::stol(name.substr(m, e - m));
    return {cr, kind, idx, name};
}

} // namespace

std::string table_tsv(const std::vector<LinkRecord>& records) {
    std::vector<const LinkRecord*> ordered;
    for (const auto& r : records) ordered.push_back(&r);
    std::sort(ordered.begin(), ordered.end(), [](const LinkRecord* a, const LinkRecord* b) {
        return name_key(a->name) < name_key(b->name);
    });
    std::ostringstream os;
    os << "name\tk\tcstar_lower\tu_lower\tdataset_u\trules\n";
    for (const LinkRecord* r : ordered) {
        Verdict v = evaluate_record(*r);
        os << r->name << "\t";
        if (r->components > 0)
            os << r->components;
        else
            os << "?";
        os << "\t" << v.lower_bound_cstar << "\t" << v.lower_bound_u << "\t";
        if (r->known_upper_bound)
            os << *r->known_upper_bound;
        else
            os << "?";
        os << "\t";
        std::vector<std::string> rules;
        for (const auto& e : v.provenance)
            if (std::find(rules.begin(), rules.end(), e.rule) == rules.end())
                rules.push_back(e.rule);
        if (rules.empty()) os << "insufficient-data";
        for (std::size_t i = 0; i < rules.size(); ++i) os << (i ? "," : "") << rules[i];
        os << "\n";
    }
    return os.str();
}

namespace {

using nlohmann::json;

SublinkTree sublink_from_json(const json& j) {
    SublinkTree t;
    if (j.contains("children")) {
        for (const auto& c : j.at("children")) t.children.push_back(sublink_from_json(c));
        t.lk = j.at("lk").get<long>();
        if (t.children.size() != 2)
            throw std::invalid_argument("sublink split must have two children");
    } else {
        t.u_min = j.at("u").get<long>();
        t.cstar_min = j.at("cstar").get<long>();
    }
    return t;
}

LinkRecord record_from_json(const json& j) {
    LinkRecord r;
    r.name = j.at("name").get<std::string>();
    if (j.contains("rolfsen")) r.rolfsen = j.at("rolfsen").get<std::string>();
    if (j.contains("components")) r.components = j.at("components").get<std::size_t>();
    if (j.contains("signatures")) r.signatures = j.at("signatures").get<std::vector<long>>();
    if (j.contains("nullity")) r.nullity = j.at("nullity").get<long>();
    if (j.contains("determinant")) r.determinant = Integer(j.at("determinant").get<long>());
    if (j.contains("homology")) {
        std::vector<Integer> fs;
        for (const auto& f : j.at("homology")) fs.emplace_back(f.get<long>());
        r.homology = FiniteAbelianGroup::from_factors(fs);
    }
    if (j.contains("pd")) {
        if (j.at("pd").is_string())
            r.pd = pd_from_text(j.at("pd").get<std::string>());
        else
            r.pd = pd_from_text(j.at("pd").dump());
    }
    if (j.contains("goeritz")) {
        auto gram = [](const json& rows) {
            std::vector<std::vector<Integer>> m;
            for (const auto& row : rows) {
                std::vector<Integer> v;
                for (const auto& x : row) v.emplace_back(x.get<long>());
                m.push_back(std::move(v));
            }
            return IntMatrix::from_rows(m);
        };
        GoeritzData g;
        g.white_gram = gram(j.at("goeritz").at("white"));
        g.black_gram = gram(j.at("goeritz").at("black"));
        Integer dw = abs(determinant(g.white_gram));
        if (dw != abs(determinant(g.black_gram)))
            throw std::invalid_argument(r.name + ": Goeritz matrices must have equal |det|");
        g.determinant = dw;
        g.nullity_zero = dw != 0;
        r.goeritz = g;
    }
    if (j.contains("sublinks")) r.sublinks = sublink_from_json(j.at("sublinks"));
    if (j.contains("known_upper_bound")) r.known_upper_bound = j.at("known_upper_bound").get<long>();
    if (j.contains("upper_certificate"))
        r.upper_certificate = j.at("upper_certificate").get<std::string>();
    if (j.contains("lemmas")) r.lemmas = j.at("lemmas").get<std::vector<std::string>>();
    if (j.contains("provenance"))
        for (const auto& [k, v] : j.at("provenance").items())
            r.provenance[k] = v.get<std::string>();

    // Field invariants.
    if (r.components > 0 && r.signatures &&
        r.signatures->size() != static_cast<std::size_t>(two_pow(r.components - 1)))
        throw std::invalid_argument(r.name + ": signatures must list one value per "
                                             "quasi-orientation");
    if (r.determinant && r.homology) {
        Integer order(static_cast<unsigned long>(r.homology->order()));
        if (*r.determinant != 0 && order != *r.determinant)
            throw std::invalid_argument(r.name + ": |homology| must equal the determinant");
    }
    if (r.determinant && r.nullity) {
        if ((*r.determinant == 0) != (*r.nullity > 0))
            throw std::invalid_argument(r.name + ": nullity positive iff determinant zero");
    }
    return r;
}

} // namespace

LinkRecord record_from_json_text(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw std::invalid_argument(std::string("malformed JSON: ") + e.what());
    }
    return record_from_json(j);
}

std::vector<LinkRecord> dataset_from_json_text(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw std::invalid_argument(std::string("malformed JSON: ") + e.what());
    }
    std::vector<LinkRecord> out;
    const json& links = j.contains("links") ? j.at("links") : j;
    for (const auto& rec : links) out.push_back(record_from_json(rec));
    return out;
}

} // namespace ulb
