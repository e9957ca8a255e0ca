// Minimal unsigned big integer: just enough for exact erasure-probability
// recursions and decimal rendering of large group orders.

#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <vector>

namespace polaraut {

class BigUint {
public:
    BigUint() = default;
    explicit BigUint(std::uint64_t v);

    bool is_zero() const { return w_.empty(); }
    static BigUint mul(const BigUint& a, const BigUint& b);
    BigUint shifted_left(unsigned bits) const;
    // Requires a >= b.
    static BigUint sub(const BigUint& a, const BigUint& b);
    std::strong_ordering operator<=>(const BigUint& other) const;
    bool operator==(const BigUint& other) const { return w_ == other.w_; }

    std::string decimal() const;

private:
    void trim();
    std::vector<std::uint64_t> w_;  // little-endian 64-bit limbs, no trailing zeros
};

}  // namespace polaraut
