#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <vector>

namespace hzent {

/// Occupation numbers of up to four bosonic modes.
///
/// Two-mode tuples are (n_a, n_b, 0, 0). Four-mode tuples are ordered
/// (n_a1, n_b1, n_a2, n_b2), so pair p occupies slots 2p and 2p+1.
using Occupation = std::array<std::int32_t, 4>;

/// Mode ids used by ladder strings.
namespace modes {
inline constexpr int a = 0;
inline constexpr int b = 1;
inline constexpr int a1 = 0;
inline constexpr int b1 = 1;
inline constexpr int a2 = 2;
inline constexpr int b2 = 3;
}  // namespace modes

/// Two modes whose summed occupation is conserved.
struct ModePair {
    int first = modes::a;
    int second = modes::b;

    static constexpr ModePair pair(int p) { return {2 * p, 2 * p + 1}; }
    friend constexpr bool operator==(ModePair, ModePair) = default;
};

/// Occupation-number basis of a number-conserving sector.
///
/// Each coupled pair (a_i, b_i) carries a fixed total. Tuples are stored in
/// lexicographic order and the position of a tuple is its lexicographic rank,
/// which is computed arithmetically rather than looked up.
class FockBasis {
public:
    static FockBasis two_mode(int total);
    static FockBasis four_mode(int total1, int total2);

    int mode_count() const { return mode_count_; }
    int pair_count() const { return mode_count_ / 2; }
    std::span<const int> sector() const { return sector_; }
    int sector_total(int pair) const { return sector_.at(pair); }

    std::size_t dim() const { return occupations_.size(); }
    std::span<const Occupation> occupations() const { return occupations_; }
    const Occupation& operator[](std::size_t i) const { return occupations_[i]; }

    bool contains(const Occupation& occ) const;
    std::optional<std::size_t> index_of(const Occupation& occ) const;

    friend bool operator==(const FockBasis& x, const FockBasis& y) {
        return x.mode_count_ == y.mode_count_ && x.sector_ == y.sector_;
    }

private:
    FockBasis(int mode_count, std::vector<int> sector);

    int mode_count_;
    std::vector<int> sector_;
    std::vector<Occupation> occupations_;
};

using BasisPtr = std::shared_ptr<const FockBasis>;

BasisPtr enumerate_two_mode(int total);
BasisPtr enumerate_four_mode(int total1, int total2);

}  // namespace hzent
