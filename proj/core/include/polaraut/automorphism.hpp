// Affine automorphisms of decreasing monomial codes as coordinate
// permutations: building position permutations from affine maps, applying
// them to vectors, membership testing by monomial substitution, and the
// complete affine automorphism group of a code.

#pragma once

#include "polaraut/gf2.hpp"
#include "polaraut/monomial.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace polaraut {

class Permutation {
public:
    Permutation() = default;
    explicit Permutation(std::vector<std::uint32_t> table);  // checks bijectivity
    static Permutation identity(std::uint64_t n);

    std::uint64_t size() const { return table_.size(); }
    std::uint32_t operator()(std::uint64_t z) const { return table_[z]; }
    const std::vector<std::uint32_t>& table() const { return table_; }

    Permutation inverse() const;
    // Function composition: (p.compose(q))(z) = p(q(z)).
    Permutation compose(const Permutation& q) const;
    bool operator==(const Permutation&) const = default;

private:
    std::vector<std::uint32_t> table_;
};

// Applies the permutation with out[i] = in[p(i)].
std::vector<double> apply_perm(const Permutation& p, std::span<const double> v);
std::vector<std::uint8_t> apply_perm(const Permutation& p, std::span<const std::uint8_t> v);

// Position permutation of (M, b): z maps through a-space, a -> M a + b.
// Respects composition: perm(f after g) = perm(f) after perm(g).
Permutation perm_from_affine(const AffineMap& t);

// True iff substituting x -> M x into every information monomial expands
// (over GF(2), with squares collapsed) into information monomials only.
// Translation parts never matter for decreasing codes.
bool is_automorphism(const Gf2Matrix& mat, const InfoSet& info);

// Finest block structure s with Aut(C(info)) = BLTA(s), found by testing the
// m-1 adjacent transvections; within-block transvections generate each
// diagonal block and lower entries are always automorphisms.
BlockStructure automorphism_group(const InfoSet& info);

// An affine map bundled with its position permutation, validated against a
// specific code at construction.
struct AffineAutomorphism {
    AffineMap map;
    Permutation perm;
    int m = 0;
};

AffineAutomorphism make_automorphism(const AffineMap& map, const InfoSet& info);

}  // namespace polaraut
