// Decreasing monomial codes: monomial indexing, the partial order on
// monomials, downward closures, subcode extraction under fixed-bit
// constraints, and polar encoding.
//
// Two index spaces coexist. A code position z in [0, 2^m) corresponds to the
// binary vector a = bits of (2^m - 1 - z) with a_1 in bit 0 ("a-space"); the
// monomial at position z is x_1^{a_1}...x_m^{a_m}. Everything internal works
// in a-space; z labels appear at I/O boundaries only.

#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace polaraut {

std::uint32_t z_to_a(std::uint64_t z, int m);
std::uint64_t a_to_z(std::uint32_t a, int m);

struct Monomial {
    int m = 0;
    std::uint32_t exps = 0;  // bit i-1 set iff variable x_i present

    int degree() const;
    // Convenience for literals: Monomial::of(6, {1,2,3,6}) is x1*x2*x3*x6.
    static Monomial of(int m, const std::vector<int>& vars);
    bool operator==(const Monomial&) const = default;
};

// The partial order: f precedes g iff some divisor of g of the same degree
// dominates f index-wise.
bool precedes(const Monomial& f, const Monomial& g);

// Set of a-space index vectors; the frozen set is its complement in F_2^m.
class InfoSet {
public:
    InfoSet() = default;
    InfoSet(int m, std::vector<std::uint32_t> members);
    static InfoSet from_z_labels(int m, const std::vector<std::uint64_t>& zs);

    int m() const { return m_; }
    std::uint64_t n() const { return 1ull << m_; }
    std::size_t size() const { return members_.size(); }
    bool empty() const { return members_.empty(); }
    bool contains(std::uint32_t a) const;
    const std::vector<std::uint32_t>& members() const { return members_; }
    std::vector<std::uint64_t> z_labels() const;  // ascending

    bool operator==(const InfoSet&) const = default;

private:
    int m_ = 0;
    std::vector<std::uint32_t> members_;  // sorted, unique a-masks
};

InfoSet decreasing_closure(int m, const std::vector<Monomial>& gens);
bool is_decreasing(const InfoSet& info);

// Fixed-bit constraints (1-based coordinate, bit value), positions distinct.
struct IndexConstraint {
    std::vector<std::pair<int, int>> fixed;
};

// Members satisfying the constraint, with the constrained coordinates
// removed; the result lives in dimension m - |constraint|.
InfoSet subcode_info(const InfoSet& info, const IndexConstraint& c);

class PolarCode {
public:
    PolarCode() = default;
    // Requires a decreasing information set unless allow_non_decreasing is
    // set, in which case the code is tagged unverified.
    explicit PolarCode(InfoSet info, bool allow_non_decreasing = false);

    int m() const { return info_.m(); }
    std::uint64_t n() const { return info_.n(); }
    std::size_t k() const { return info_.size(); }
    const InfoSet& info() const { return info_; }
    bool verified_decreasing() const { return verified_; }
    bool is_frozen_z(std::uint64_t z) const { return frozen_z_[z] != 0; }
    const std::vector<std::uint8_t>& frozen_z() const { return frozen_z_; }

private:
    InfoSet info_;
    std::vector<std::uint8_t> frozen_z_;  // indexed by position z
    bool verified_ = false;
};

// Systematic-free polar encoding: message bits occupy the information
// positions in ascending z order, frozen positions are zero.
std::vector<std::uint8_t> encode(const PolarCode& code, std::span<const std::uint8_t> message);

// Information set of the K most reliable positions of a binary erasure
// channel with the given erasure probability, by the 2x2 parameter
// recursion z -> {2z - z^2, z^2}. Exact dyadic arithmetic for m <= 10,
// double precision above; ties prefer the larger z. The result is checked
// to be decreasing.
InfoSet bec_construct(int m, std::uint64_t k, double erasure);

}  // namespace polaraut
