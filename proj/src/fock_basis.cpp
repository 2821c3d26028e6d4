#include "hzent/fock_basis.hpp"

#include <stdexcept>
#include <string>

namespace hzent {

FockBasis::FockBasis(int mode_count, std::vector<int> sector)
    : mode_count_(mode_count), sector_(std::move(sector)) {
    for (int total : sector_) {
        if (total < 0) {
            throw std::invalid_argument("sector total must be nonnegative, got " +
                                        std::to_string(total));
        }
    }
    if (mode_count_ == 2) {
        const int n = sector_[0];
        occupations_.reserve(n + 1);
        for (int na = 0; na <= n; ++na) {
            occupations_.push_back({na, n - na, 0, 0});
        }
    } else {
        const int n1 = sector_[0];
        const int n2 = sector_[1];
        occupations_.reserve(static_cast<std::size_t>(n1 + 1) * (n2 + 1));
        for (int na1 = 0; na1 <= n1; ++na1) {
            for (int na2 = 0; na2 <= n2; ++na2) {
                occupations_.push_back({na1, n1 - na1, na2, n2 - na2});
            }
        }
    }
}

FockBasis FockBasis::two_mode(int total) { return FockBasis(2, {total}); }

FockBasis FockBasis::four_mode(int total1, int total2) {
    return FockBasis(4, {total1, total2});
}

bool FockBasis::contains(const Occupation& occ) const {
    for (int m = 0; m < 4; ++m) {
        if (occ[m] < 0) return false;
    }
    if (mode_count_ == 2) {
        return occ[2] == 0 && occ[3] == 0 && occ[0] + occ[1] == sector_[0];
    }
    return occ[0] + occ[1] == sector_[0] && occ[2] + occ[3] == sector_[1];
}

std::optional<std::size_t> FockBasis::index_of(const Occupation& occ) const {
    if (!contains(occ)) return std::nullopt;
    if (mode_count_ == 2) return static_cast<std::size_t>(occ[0]);
    return static_cast<std::size_t>(occ[0]) * (sector_[1] + 1) + occ[2];
}

BasisPtr enumerate_two_mode(int total) {
    return std::make_shared<const FockBasis>(FockBasis::two_mode(total));
}

BasisPtr enumerate_four_mode(int total1, int total2) {
    return std::make_shared<const FockBasis>(FockBasis::four_mode(total1, total2));
}

}  // namespace hzent
