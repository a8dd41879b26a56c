#ifndef ULB_PIPELINE_HPP
#define ULB_PIPELINE_HPP

#include "ulb/diagram.hpp"
#include "ulb/spinc.hpp"

#include <optional>

namespace ulb {

// Sublink decomposition for the recursive unlinking bound: either a leaf
// with known bounds for that sublink, or a split into two parts with their
// linking number.
struct SublinkTree {
    std::optional<long> u_min;     // leaf data
    std::optional<long> cstar_min; // leaf data
    std::vector<SublinkTree> children;
    long lk = 0;

    bool is_leaf() const { return children.empty(); }
};

struct LinkRecord {
    std::string name;
    std::string rolfsen;
    std::size_t components = 0; // 0 = unknown
    std::optional<std::vector<long>> signatures; // one per quasi-orientation
    std::optional<long> nullity;
    std::optional<Integer> determinant;
    std::optional<FiniteAbelianGroup> homology;
    std::optional<PDCode> pd;
    std::optional<GoeritzData> goeritz; // used when no diagram is given
    std::optional<SublinkTree> sublinks;
    std::optional<long> known_upper_bound;
    std::string upper_certificate;
    std::vector<std::string> lemmas; // section-5 rule assignment tags
    std::map<std::string, std::string> provenance;
};

struct ProvenanceEntry {
    std::string rule;
    std::string inputs;
    std::string witness;
};

struct Verdict {
    long lower_bound_cstar = 0;
    long lower_bound_u = 0;
    std::optional<long> matched_upper;
    std::vector<ProvenanceEntry> provenance;
};

struct CrossingBudget {
    long p = 0;
    long n = 0;
};

// Lemma-2.2 style minimum double-point counts for one orientation.
std::pair<long, long> bound_from_signature(long sigma, long eta, long k);

// Lemma-2.5 bound: c* >= k-1-eta, raised to k when det is not 2^{k-1} times
// a perfect square.  The note records which case applied.
std::pair<long, std::string> lemma_det_bound(long k, long eta, const Integer& det);

// Lemma-2.6 recursive bound: (u_min, cstar_min).
std::pair<long, long> lemma_sublinks_bound(const SublinkTree& tree);

enum class KohnCase { cstar_ge_3, not_obstructed_i, not_obstructed_ii, not_obstructed_iii,
                      inapplicable };
KohnCase lemma_kohn_check(const LinkRecord& r);

// {a >= 2 : (4a-4) | det and det/(4a-4) is a perfect square}.
std::vector<long> qa_candidates(const Integer& det);

struct ObstructionRun {
    enum class Outcome { obstructed, not_obstructed, inconclusive };
    Outcome outcome = Outcome::inconclusive;
    std::vector<ProvenanceEntry> provenance;
};

// Theorem-1 equality-case tests for one budget: embedding branch and the
// rank-3 linking-form branch, over every quasi-orientation (and the mirror)
// for which the equality p = (-sigma - eta + k - 1)/2 holds.
ObstructionRun run_obstruction(const LinkRecord& r, const CrossingBudget& budget);

// Full lower-bound pipeline for one record.
Verdict evaluate_record(const LinkRecord& r);

// TSV table: name, k, c* lower bound, u lower bound, dataset u, rules.
std::string table_tsv(const std::vector<LinkRecord>& records);

LinkRecord record_from_json_text(const std::string& text);
std::vector<LinkRecord> dataset_from_json_text(const std::string& text);

} // namespace ulb

#endif
