// Exact linear algebra over GF(2) for dimensions up to 32.
//
// Matrices act on binary column vectors a = (a_1,...,a_m)^T stored as
// machine-word bitmasks with a_1 in bit 0. Row/column indices in the API are
// 0-based; the accompanying docs and file formats count from 1.

#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

namespace polaraut {

inline constexpr int kMaxDim = 32;

// Dense square binary matrix, one 32-bit row mask per row (bit c = column c).
class Gf2Matrix {
public:
    Gf2Matrix() = default;
    explicit Gf2Matrix(int m);
    static Gf2Matrix identity(int m);
    static Gf2Matrix from_rows(int m, std::vector<std::uint32_t> rows);

    int dim() const { return m_; }
    bool get(int r, int c) const;
    void set(int r, int c, bool v);
    std::uint32_t row(int r) const { return rows_[static_cast<std::size_t>(r)]; }
    void xor_row(int dst, int src) { rows_[static_cast<std::size_t>(dst)] ^= rows_[static_cast<std::size_t>(src)]; }

    bool operator==(const Gf2Matrix&) const = default;

private:
    int m_ = 0;
    std::vector<std::uint32_t> rows_;
};

// Ordered block sizes <s_1,...,s_l>, s_i >= 1, summing to m. Empty is the
// (unique) structure of dimension 0.
class BlockStructure {
public:
    BlockStructure() = default;
    explicit BlockStructure(std::vector<int> sizes);
    static BlockStructure from_breakpoints(int m, const std::vector<int>& interior);

    int m() const { return m_; }
    int blocks() const { return static_cast<int>(sizes_.size()); }
    const std::vector<int>& sizes() const { return sizes_; }
    // Prefix sum S_t = s_1 + ... + s_{t-1}; t ranges over [1, blocks()+1].
    int prefix(int t) const;
    // Interior breakpoints {S_2,...,S_l}; uniquely identifies the group.
    std::vector<int> breakpoints() const;

    bool operator==(const BlockStructure&) const = default;
    std::string to_string() const;

private:
    int m_ = 0;
    std::vector<int> sizes_;
};

// Group order in factored form odd * 2^pow2. The odd factor is kept in a
// 64-bit word; operations that would overflow it throw std::overflow_error.
struct FactoredCount {
    std::uint64_t odd = 1;
    int pow2 = 0;

    bool operator==(const FactoredCount&) const = default;
    // Formats as "21*2^28" (or just "21" / "2^28" when a factor is trivial).
    std::string to_string() const;
    // Plain integer value when it fits in 64 bits.
    std::optional<std::uint64_t> exact() const;
    // Exact decimal rendering regardless of magnitude.
    std::string decimal() const;
};

FactoredCount factored_div(const FactoredCount& num, const FactoredCount& den);

// Invertible affine transformation a |-> matrix*a + shift.
struct AffineMap {
    Gf2Matrix matrix;
    std::uint32_t shift = 0;

    AffineMap() = default;
    AffineMap(Gf2Matrix mat, std::uint32_t b);  // checks invertibility
    int dim() const { return matrix.dim(); }
    static AffineMap identity(int m);

    bool operator==(const AffineMap&) const = default;
};

Gf2Matrix mat_mul(const Gf2Matrix& a, const Gf2Matrix& b);
std::uint32_t mat_vec(const Gf2Matrix& a, std::uint32_t v);
int rank(const Gf2Matrix& a);
bool is_invertible(const Gf2Matrix& a);
Gf2Matrix mat_inv(const Gf2Matrix& a);  // throws std::domain_error when singular

std::uint32_t affine_apply(const AffineMap& t, std::uint32_t a);
AffineMap affine_compose(const AffineMap& f, const AffineMap& g);  // f after g
AffineMap affine_inverse(const AffineMap& f);

// Finest block lower-triangular structure of an invertible matrix: the
// greedy smallest-prefix split such that no diagonal block splits further.
BlockStructure block_structure(const Gf2Matrix& mat);

struct LtNormalization {
    Gf2Matrix l1;  // unit lower-triangular
    Gf2Matrix u;   // unit upper-triangular, u = l1 * input * l2
    Gf2Matrix l2;  // unit lower-triangular
};

// Two-sided unit lower-triangular reduction to unit upper-triangular form.
// Preserves block_structure of the input.
LtNormalization lt_normalize(const Gf2Matrix& mat);

// Splits a unit upper-triangular matrix at the start of its last structural
// block: u = first*last = last*first, where `first` carries the leading
// principal block and `last` the trailing one (identity elsewhere).
std::pair<Gf2Matrix, Gf2Matrix> decompose_upper(const Gf2Matrix& u);

// Membership in the block lower-triangular pattern of s, including the
// full-rank requirement. Singular matrices simply return false.
bool is_member_blta(const Gf2Matrix& mat, const BlockStructure& s);

// Number of invertible matrices in the block pattern of s:
//   prod_i |GL(s_i,2)| * 2^((m^2 - sum s_i^2)/2).
// Counts linear parts only; the affine group is larger by a factor 2^m.
FactoredCount blta_order(const BlockStructure& s);

// Structure of the intersection: BLTA(gro(s1,s2)) = BLTA(s1) & BLTA(s2).
// The breakpoint set of the result is the union of the inputs' breakpoints.
BlockStructure gro(const BlockStructure& s1, const BlockStructure& s2);

// Uniform random element of the affine group with block pattern s: diagonal
// blocks uniform over GL(s_i,2) by rejection, everything below the blocks
// and the shift uniform bits. Deterministic given the generator state.
AffineMap sample_blta(const BlockStructure& s, std::mt19937_64& rng);

}  // namespace polaraut
