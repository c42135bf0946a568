#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace robustness {

/// Seeded 64-bit avalanche hash (splitmix64 finalizer over the seeded input).
std::uint64_t hash64(std::uint64_t element, std::uint64_t seed);

/// Register index and rank produced by one hashed element.
struct RegisterUpdate {
    std::uint32_t index;
    std::uint8_t rank;
};

RegisterUpdate register_update(std::uint64_t hash, int p);

/// Classic HyperLogLog estimate with linear counting for small cardinalities.
double estimate_registers(std::span<const std::uint8_t> registers);

double hll_alpha(std::size_t r);

/**
 * HyperLogLog counter with 2^p six-bit registers (stored one per byte).
 */
class HllCounter {
  public:
    static constexpr int kMinP = 4;
    static constexpr int kMaxP = 16;

    HllCounter(int p, std::uint64_t seed);

    int p() const { return p_; }
    std::uint64_t seed() const { return seed_; }
    std::size_t num_registers() const { return registers_.size(); }
    std::span<const std::uint8_t> registers() const { return registers_; }

    void add(std::uint64_t element);
    /// Registerwise maximum; throws std::invalid_argument on a p or seed mismatch.
    void merge(const HllCounter &other);
    double estimate() const { return estimate_registers(registers_); }

    bool empty() const;
    std::string hex_dump() const;

    friend bool operator==(const HllCounter &, const HllCounter &) = default;

  private:
    friend class CounterArray;

    int p_;
    std::uint64_t seed_;
    std::vector<std::uint8_t> registers_;
};

HllCounter merged(HllCounter a, const HllCounter &b);

/**
 * One counter per node, laid out as a single (node, register) block.
 */
class CounterArray {
  public:
    CounterArray(std::size_t num_counters, int p, std::uint64_t seed);

    int p() const { return p_; }
    std::uint64_t seed() const { return seed_; }
    std::size_t size() const { return size_; }
    std::size_t registers_per_counter() const { return r_; }

    std::span<std::uint8_t> counter(std::size_t i) { return {data_.data() + i * r_, r_}; }
    std::span<const std::uint8_t> counter(std::size_t i) const { return {data_.data() + i * r_, r_}; }

    void add(std::size_t i, std::uint64_t element);
    double estimate(std::size_t i) const { return estimate_registers(counter(i)); }

    /// Copies counter i into an HllCounter value.
    HllCounter extract(std::size_t i) const;

    friend bool operator==(const CounterArray &, const CounterArray &) = default;

  private:
    int p_;
    std::uint64_t seed_;
    std::size_t r_;
    std::size_t size_;
    std::vector<std::uint8_t> data_;
};

/// dst[j] = max(dst[j], src[j]); returns true if any register grew.
bool max_into(std::span<std::uint8_t> dst, std::span<const std::uint8_t> src);

}  // namespace robustness
