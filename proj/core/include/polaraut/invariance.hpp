// Deciding which affine automorphisms commute with successive cancellation
// decoding: the structure-based decision procedure, the complete SC-invariant
// group computation, a randomized commuting oracle, equivalence classes of
// automorphisms, and non-redundant ensemble sampling.

#pragma once

#include "polaraut/automorphism.hpp"
#include "polaraut/gf2.hpp"
#include "polaraut/monomial.hpp"

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

namespace polaraut {

struct TraceEntry {
    int depth = 0;                        // recursion depth, root = 0
    std::vector<int> structure;           // block sizes examined at this node
    std::string branch;                   // base | halves | first_block | last_block | none
    std::vector<std::uint64_t> subcode_z; // z-labels of the node's information set
    bool verdict = false;
};

struct InvarianceVerdict {
    bool value = false;
    std::vector<TraceEntry> trace;  // preorder transcript of the recursion
};

// TRUE iff every automorphism whose matrix has exactly this block structure
// commutes with SC decoding of C(info). Base case: single-block structures
// commute precisely on Rate-0 / Rate-1 / repetition / single-parity-check
// codes. A trailing block of size one recurses into both half branches; a
// larger trailing block requires all frozen bits in the first constraint
// block or all information bits in the last one.
InvarianceVerdict dec_aut(const BlockStructure& s, const InfoSet& info);

// dec_aut applied to the matrix's own structure; requires the matrix to be
// an automorphism of the code. The verdict extends to (M, b) for every b.
bool sc_invariant(const Gf2Matrix& mat, const InfoSet& info);

// Structure of the complete SC-invariant affine automorphism group: every
// block size is the largest value for which dec_aut stays TRUE.
BlockStructure dec_group(const InfoSet& info);

struct OracleConfig {
    int gaussian_trials = 1000;  // i.i.d. N(0,1) LLR probes
    int structured_fills = 4;    // random fills per structured pattern
    int max_depth = -1;          // constraint-nesting depth; -1 means min(m-1, 5)
    double epsilon = 1e-3;       // magnitude of the "small" probe value
};

struct OracleResult {
    bool commutes = true;
    std::uint64_t probes = 0;
    std::uint64_t skipped = 0;  // probes whose decode hit opposing infinities
    std::uint64_t ties = 0;     // mismatches that vanished under jitter (decision ties)
    std::optional<std::vector<double>> counterexample;  // jitter-robust witness
};

// Deterministic enumeration of structured probe vectors: every nesting of
// the four constraint moves (fix the top coordinate to 1 with +inf padding /
// to 0 with epsilon padding, and the same pair on the bottom coordinate),
// with Gaussian fills on the remaining free positions.
std::vector<std::vector<double>> structured_probes(int m, int fills_per_pattern, int max_depth,
                                                   double epsilon, std::mt19937_64& rng);

// Empirical falsifier for "perm(M, b) commutes with SC": Gaussian probes
// plus the structured schedule. One-sided; a pass proves nothing.
OracleResult commute_oracle(const Gf2Matrix& mat, std::uint32_t shift, const InfoSet& info,
                            const OracleConfig& cfg, std::mt19937_64& rng);

// Two automorphisms produce identical permuted-SC results iff they lie in
// the same left coset of the SC-invariant group: the linear part of
// t2 after t1^-1 must be a member of BLTA(dec_group(info)).
bool equivalent(const AffineMap& t1, const AffineMap& t2, const InfoSet& info);

struct EquivClassSummary {
    BlockStructure aut_structure;
    BlockStructure inv_structure;
    FactoredCount class_count;
};

// Number of automorphism equivalence classes: |Aut| / |SC-invariant group|,
// exact in factored form.
EquivClassSummary count_classes(const InfoSet& info);
FactoredCount class_count_for(const BlockStructure& aut, const BlockStructure& inv);

// t pairwise non-equivalent automorphisms, identity first, by rejection
// sampling over the full automorphism group. Deterministic given the
// generator state. Throws when t exceeds the class count.
std::vector<AffineMap> sample_ensemble(const InfoSet& info, std::uint64_t t, std::mt19937_64& rng);

}  // namespace polaraut
