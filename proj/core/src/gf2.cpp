#include "polaraut/gf2.hpp"

#include "polaraut/biguint.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

namespace polaraut {

namespace {

void check_dim(int m) {
    if (m < 0 || m > kMaxDim)
        throw std::invalid_argument("Gf2Matrix: dimension must be in [0, 32], got " + std::to_string(m));
}

std::uint32_t low_mask(int bits) {
    return bits >= 32 ? 0xFFFFFFFFu : ((1u << bits) - 1u);
}

std::uint32_t draw_bits(std::mt19937_64& rng, int bits) {
    if (bits == 0)
        return 0;
    return static_cast<std::uint32_t>(rng()) & low_mask(bits);
}

}  // namespace

Gf2Matrix::Gf2Matrix(int m) : m_(m), rows_(static_cast<std::size_t>(m), 0u) {
    check_dim(m);
}

Gf2Matrix Gf2Matrix::identity(int m) {
    Gf2Matrix out(m);
    for (int i = 0; i < m; ++i)
        out.set(i, i, true);
    return out;
}

Gf2Matrix Gf2Matrix::from_rows(int m, std::vector<std::uint32_t> rows) {
    check_dim(m);
    if (static_cast<int>(rows.size()) != m)
        throw std::invalid_argument("Gf2Matrix::from_rows: expected " + std::to_string(m) + " rows");
    for (std::uint32_t r : rows)
        if ((r & ~low_mask(m)) != 0)
            throw std::invalid_argument("Gf2Matrix::from_rows: row has bits beyond the dimension");
    Gf2Matrix out;
    out.m_ = m;
    out.rows_ = std::move(rows);
    return out;
}

bool Gf2Matrix::get(int r, int c) const {
    return (rows_[static_cast<std::size_t>(r)] >> c) & 1u;
}

void Gf2Matrix::set(int r, int c, bool v) {
    std::uint32_t bit = 1u << c;
    if (v)
        rows_[static_cast<std::size_t>(r)] |= bit;
    else
        rows_[static_cast<std::size_t>(r)] &= ~bit;
}

BlockStructure::BlockStructure(std::vector<int> sizes) : sizes_(std::move(sizes)) {
    for (int s : sizes_) {
        if (s < 1)
            throw std::invalid_argument("BlockStructure: block sizes must be positive");
        m_ += s;
    }
    check_dim(m_);
}

BlockStructure BlockStructure::from_breakpoints(int m, const std::vector<int>& interior) {
    std::vector<int> sizes;
    int prev = 0;
    for (int b : interior) {
        if (b <= prev || b >= m)
            throw std::invalid_argument("BlockStructure: breakpoints must be strictly increasing in (0, m)");
        sizes.push_back(b - prev);
        prev = b;
    }
    if (m > 0)
        sizes.push_back(m - prev);
    return BlockStructure(std::move(sizes));
}

int BlockStructure::prefix(int t) const {
    if (t < 1 || t > blocks() + 1)
        throw std::out_of_range("BlockStructure::prefix: t out of range");
    int acc = 0;
    for (int i = 0; i + 1 < t; ++i)
        acc += sizes_[static_cast<std::size_t>(i)];
    return acc;
}

std::vector<int> BlockStructure::breakpoints() const {
    std::vector<int> out;
    int acc = 0;
    for (std::size_t i = 0; i + 1 < sizes_.size(); ++i) {
        acc += sizes_[i];
        out.push_back(acc);
    }
    return out;
}

std::string BlockStructure::to_string() const {
    std::string out = "[";
    for (std::size_t i = 0; i < sizes_.size(); ++i) {
        if (i)
            out += ',';
        out += std::to_string(sizes_[i]);
    }
    return out + "]";
}

std::string FactoredCount::to_string() const {
    if (pow2 == 0)
        return std::to_string(odd);
    if (odd == 1)
        return "2^" + std::to_string(pow2);
    return std::to_string(odd) + "*2^" + std::to_string(pow2);
}

std::optional<std::uint64_t> FactoredCount::exact() const {
    if (pow2 >= 64)
        return std::nullopt;
    std::uint64_t shifted = odd << pow2;
    if ((shifted >> pow2) != odd)
        return std::nullopt;
    return shifted;
}

std::string FactoredCount::decimal() const {
    return BigUint(odd).shifted_left(static_cast<unsigned>(pow2)).decimal();
}

FactoredCount factored_div(const FactoredCount& num, const FactoredCount& den) {
    if (den.odd == 0)
        throw std::domain_error("factored_div: zero divisor");
    if (num.pow2 < den.pow2 || num.odd % den.odd != 0)
        throw std::domain_error("factored_div: quotient is not an integer");
    return FactoredCount{num.odd / den.odd, num.pow2 - den.pow2};
}

AffineMap::AffineMap(Gf2Matrix mat, std::uint32_t b) : matrix(std::move(mat)), shift(b) {
    if (!is_invertible(matrix))
        throw std::domain_error("AffineMap: matrix is singular");
    if ((shift & ~low_mask(matrix.dim())) != 0)
        throw std::invalid_argument("AffineMap: shift has bits beyond the dimension");
}

AffineMap AffineMap::identity(int m) {
    return AffineMap(Gf2Matrix::identity(m), 0);
}

Gf2Matrix mat_mul(const Gf2Matrix& a, const Gf2Matrix& b) {
    if (a.dim() != b.dim())
        throw std::invalid_argument("mat_mul: dimension mismatch");
    std::vector<std::uint32_t> rows(static_cast<std::size_t>(a.dim()), 0u);
    for (int i = 0; i < a.dim(); ++i) {
        std::uint32_t acc = 0;
        std::uint32_t bits = a.row(i);
        while (bits) {
            int j = std::countr_zero(bits);
            bits &= bits - 1;
            acc ^= b.row(j);
        }
        rows[static_cast<std::size_t>(i)] = acc;
    }
    return Gf2Matrix::from_rows(a.dim(), std::move(rows));
}

std::uint32_t mat_vec(const Gf2Matrix& a, std::uint32_t v) {
    std::uint32_t out = 0;
    for (int i = 0; i < a.dim(); ++i)
        out |= static_cast<std::uint32_t>(std::popcount(a.row(i) & v) & 1) << i;
    return out;
}

int rank(const Gf2Matrix& a) {
    std::vector<std::uint32_t> rows;
    rows.reserve(static_cast<std::size_t>(a.dim()));
    for (int i = 0; i < a.dim(); ++i)
        rows.push_back(a.row(i));
    int r = 0;
    for (int c = 0; c < a.dim() && r < a.dim(); ++c) {
        int pivot = -1;
        for (int i = r; i < a.dim(); ++i)
            if ((rows[static_cast<std::size_t>(i)] >> c) & 1u) {
                pivot = i;
                break;
            }
        if (pivot < 0)
            continue;
        std::swap(rows[static_cast<std::size_t>(pivot)], rows[static_cast<std::size_t>(r)]);
        for (int i = r + 1; i < a.dim(); ++i)
            if ((rows[static_cast<std::size_t>(i)] >> c) & 1u)
                rows[static_cast<std::size_t>(i)] ^= rows[static_cast<std::size_t>(r)];
        ++r;
    }
    return r;
}

bool is_invertible(const Gf2Matrix& a) {
    return rank(a) == a.dim();
}

Gf2Matrix mat_inv(const Gf2Matrix& a) {
    const int m = a.dim();
    std::vector<std::uint64_t> w(static_cast<std::size_t>(m));
    for (int i = 0; i < m; ++i)
        w[static_cast<std::size_t>(i)] = a.row(i) | (1ull << (m + i));
    for (int c = 0; c < m; ++c) {
        int pivot = -1;
        for (int i = c; i < m; ++i)
            if ((w[static_cast<std::size_t>(i)] >> c) & 1u) {
                pivot = i;
                break;
            }
        if (pivot < 0)
            throw std::domain_error("mat_inv: singular matrix");
        std::swap(w[static_cast<std::size_t>(pivot)], w[static_cast<std::size_t>(c)]);
        for (int i = 0; i < m; ++i)
            if (i != c && ((w[static_cast<std::size_t>(i)] >> c) & 1u))
                w[static_cast<std::size_t>(i)] ^= w[static_cast<std::size_t>(c)];
    }
    std::vector<std::uint32_t> rows(static_cast<std::size_t>(m));
    for (int i = 0; i < m; ++i)
        rows[static_cast<std::size_t>(i)] = static_cast<std::uint32_t>(w[static_cast<std::size_t>(i)] >> m);
    return Gf2Matrix::from_rows(m, std::move(rows));
}

std::uint32_t affine_apply(const AffineMap& t, std::uint32_t a) {
    return mat_vec(t.matrix, a) ^ t.shift;
}

AffineMap affine_compose(const AffineMap& f, const AffineMap& g) {
    if (f.dim() != g.dim())
        throw std::invalid_argument("affine_compose: dimension mismatch");
    return AffineMap(mat_mul(f.matrix, g.matrix), mat_vec(f.matrix, g.shift) ^ f.shift);
}

AffineMap affine_inverse(const AffineMap& f) {
    Gf2Matrix inv = mat_inv(f.matrix);
    return AffineMap(inv, mat_vec(inv, f.shift));
}

BlockStructure block_structure(const Gf2Matrix& mat) {
    if (!is_invertible(mat))
        throw std::domain_error("block_structure: singular matrix");
    const int m = mat.dim();
    std::vector<int> sizes;
    int pos = 0;
    while (pos < m) {
        int s = 1;
        for (;; ++s) {
            std::uint32_t high = low_mask(m) & ~low_mask(pos + s);
            bool clean = true;
            for (int r = pos; r < pos + s && clean; ++r)
                clean = (mat.row(r) & high) == 0;
            if (clean)
                break;
        }
        sizes.push_back(s);
        pos += s;
    }
    return BlockStructure(std::move(sizes));
}

LtNormalization lt_normalize(const Gf2Matrix& mat) {
    if (!is_invertible(mat))
        throw std::domain_error("lt_normalize: singular matrix");
    const int m = mat.dim();
    Gf2Matrix u = mat;
    Gf2Matrix l1 = Gf2Matrix::identity(m);
    Gf2Matrix l2 = Gf2Matrix::identity(m);
    for (int r = m - 1; r >= 0; --r) {
        if (!u.get(r, r)) {
            int src = -1;
            for (int i = 0; i < r; ++i)
                if (u.get(i, r)) {
                    src = i;
                    break;
                }
            // src exists: the leading (r+1)x(r+1) block stays invertible.
            u.xor_row(r, src);
            l1.xor_row(r, src);
        }
        for (int j = 0; j < r; ++j) {
            if (!u.get(r, j))
                continue;
            // add column r to column j, in u and in the running l2
            for (int i = 0; i < m; ++i) {
                if (u.get(i, r))
                    u.set(i, j, !u.get(i, j));
                if (l2.get(i, r))
                    l2.set(i, j, !l2.get(i, j));
            }
        }
    }
    return LtNormalization{std::move(l1), std::move(u), std::move(l2)};
}

std::pair<Gf2Matrix, Gf2Matrix> decompose_upper(const Gf2Matrix& u) {
    const int m = u.dim();
    for (int i = 0; i < m; ++i) {
        if (!u.get(i, i))
            throw std::invalid_argument("decompose_upper: matrix is not unit upper-triangular");
        for (int j = 0; j < i; ++j)
            if (u.get(i, j))
                throw std::invalid_argument("decompose_upper: matrix is not unit upper-triangular");
    }
    BlockStructure s = block_structure(u);
    const int split = m - s.sizes().back();
    Gf2Matrix first = Gf2Matrix::identity(m);
    Gf2Matrix last = Gf2Matrix::identity(m);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) {
            if (i < split && j < split)
                first.set(i, j, u.get(i, j));
            if (i >= split && j >= split)
                last.set(i, j, u.get(i, j));
        }
    return {std::move(first), std::move(last)};
}

bool is_member_blta(const Gf2Matrix& mat, const BlockStructure& s) {
    if (mat.dim() != s.m())
        throw std::invalid_argument("is_member_blta: dimension mismatch");
    const int m = mat.dim();
    int pos = 0;
    for (int b = 0; b < s.blocks(); ++b) {
        int end = pos + s.sizes()[static_cast<std::size_t>(b)];
        std::uint32_t high = low_mask(m) & ~low_mask(end);
        for (int r = pos; r < end; ++r)
            if (mat.row(r) & high)
                return false;
        pos = end;
    }
    return is_invertible(mat);
}

FactoredCount blta_order(const BlockStructure& s) {
    FactoredCount out;
    int diag_sq = 0;
    for (int k : s.sizes()) {
        diag_sq += k * k;
        out.pow2 += k * (k - 1) / 2;
        for (int j = 1; j <= k; ++j) {
            std::uint64_t factor = (1ull << j) - 1ull;
            std::uint64_t prod;
            if (__builtin_mul_overflow(out.odd, factor, &prod))
                throw std::overflow_error("blta_order: odd factor exceeds 64 bits");
            out.odd = prod;
        }
    }
    out.pow2 += (s.m() * s.m() - diag_sq) / 2;
    return out;
}

BlockStructure gro(const BlockStructure& s1, const BlockStructure& s2) {
    if (s1.m() != s2.m())
        throw std::invalid_argument("gro: dimension mismatch");
    std::vector<int> merged = s1.breakpoints();
    for (int b : s2.breakpoints())
        merged.push_back(b);
    std::sort(merged.begin(), merged.end());
    merged.erase(std::unique(merged.begin(), merged.end()), merged.end());
    return BlockStructure::from_breakpoints(s1.m(), merged);
}

AffineMap sample_blta(const BlockStructure& s, std::mt19937_64& rng) {
    const int m = s.m();
    Gf2Matrix mat(m);
    int pos = 0;
    for (int k : s.sizes()) {
        if (k == 1) {
            mat.set(pos, pos, true);
        } else {
            Gf2Matrix block(k);
            do {
                std::vector<std::uint32_t> rows(static_cast<std::size_t>(k));
                for (int i = 0; i < k; ++i)
                    rows[static_cast<std::size_t>(i)] = draw_bits(rng, k);
                block = Gf2Matrix::from_rows(k, std::move(rows));
            } while (!is_invertible(block));
            for (int i = 0; i < k; ++i)
                for (int j = 0; j < k; ++j)
                    mat.set(pos + i, pos + j, block.get(i, j));
        }
        pos += k;
    }
    pos = 0;
    for (int k : s.sizes()) {
        for (int r = pos; r < pos + k; ++r) {
            std::uint32_t below = draw_bits(rng, pos);
            for (int c = 0; c < pos; ++c)
                if ((below >> c) & 1u)
                    mat.set(r, c, true);
        }
        pos += k;
    }
    return AffineMap(std::move(mat), draw_bits(rng, m));
}

}  // namespace polaraut
