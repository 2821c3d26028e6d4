#include "hzent/ladder.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <stdexcept>

namespace hzent {

LadderString::LadderString(std::initializer_list<LadderFactor> factors) : factors_(factors) {
    canonicalize();
}

LadderString::LadderString(std::vector<LadderFactor> factors) : factors_(std::move(factors)) {
    canonicalize();
}

// Merges adjacent equal (mode, kind) factors and removes zero powers so that
// equal operators compare equal.
void LadderString::canonicalize() {
    std::vector<LadderFactor> merged;
    merged.reserve(factors_.size());
    for (const auto& f : factors_) {
        if (f.mode < 0 || f.mode > 3) {
            throw std::invalid_argument("ladder factor mode out of range");
        }
        if (f.power < 0) throw std::invalid_argument("ladder factor power must be positive");
        if (f.power == 0) continue;
        if (!merged.empty() && merged.back().mode == f.mode &&
            merged.back().creation == f.creation) {
            merged.back().power += f.power;
        } else {
            merged.push_back(f);
        }
    }
    factors_ = std::move(merged);
}

LadderString LadderString::adjoint() const {
    std::vector<LadderFactor> out(factors_.rbegin(), factors_.rend());
    for (auto& f : out) f.creation = !f.creation;
    return LadderString(std::move(out));
}

std::array<int, 4> LadderString::occupation_shift() const {
    std::array<int, 4> shift{};
    for (const auto& f : factors_) shift[f.mode] += f.creation ? f.power : -f.power;
    return shift;
}

bool LadderString::conserves(const FockBasis& basis) const {
    const auto shift = occupation_shift();
    if (basis.mode_count() == 2) {
        for (const auto& f : factors_) {
            if (f.mode >= 2) return false;
        }
        return shift[0] + shift[1] == 0;
    }
    return shift[0] + shift[1] == 0 && shift[2] + shift[3] == 0;
}

std::string LadderString::to_string() const {
    static constexpr const char* names[] = {"a", "b", "a2", "b2"};
    if (factors_.empty()) return "1";
    std::ostringstream os;
    for (std::size_t i = 0; i < factors_.size(); ++i) {
        const auto& f = factors_[i];
        if (i) os << ' ';
        os << names[f.mode] << (f.creation ? "+" : "");
        if (f.power != 1) os << '^' << f.power;
    }
    return os.str();
}

LadderString operator*(const LadderString& x, const LadderString& y) {
    std::vector<LadderFactor> f = x.factors_;
    f.insert(f.end(), y.factors_.begin(), y.factors_.end());
    return LadderString(std::move(f));
}

OperatorSum OperatorSum::adjoint() const {
    OperatorSum out;
    out.terms_.reserve(terms_.size());
    for (const auto& [c, s] : terms_) out.terms_.emplace_back(std::conj(c), s.adjoint());
    return out;
}

OperatorSum OperatorSum::simplified() const {
    std::map<LadderString, Complex> acc;
    for (const auto& [c, s] : terms_) acc[s] += c;
    OperatorSum out;
    for (auto& [s, c] : acc) {
        if (c != Complex(0.0)) out.terms_.emplace_back(c, s);
    }
    return out;
}

OperatorSum& OperatorSum::operator+=(const OperatorSum& other) {
    terms_.insert(terms_.end(), other.terms_.begin(), other.terms_.end());
    return *this;
}

OperatorSum& OperatorSum::operator-=(const OperatorSum& other) {
    for (const auto& [c, s] : other.terms_) terms_.emplace_back(-c, s);
    return *this;
}

OperatorSum& OperatorSum::operator*=(Complex c) {
    for (auto& t : terms_) t.first *= c;
    return *this;
}

OperatorSum operator*(const OperatorSum& x, const OperatorSum& y) {
    OperatorSum out;
    out.terms_.reserve(x.terms_.size() * y.terms_.size());
    for (const auto& [cx, sx] : x.terms_) {
        for (const auto& [cy, sy] : y.terms_) out.terms_.emplace_back(cx * cy, sx * sy);
    }
    return out.simplified();
}

OperatorSum transform_modes(const OperatorSum& op, const Eigen::MatrixXcd& u) {
    if (u.rows() != u.cols() || u.rows() < 2 || u.rows() > 4) {
        throw std::invalid_argument("mode transformation must be square with 2..4 modes");
    }
    const int n = static_cast<int>(u.rows());
    OperatorSum out;
    for (const auto& [coeff, str] : op.terms()) {
        OperatorSum expanded = OperatorSum::identity(coeff);
        for (const auto& f : str.factors()) {
            if (f.mode >= n) throw std::invalid_argument("mode outside transformation");
            OperatorSum single;
            for (int k = 0; k < n; ++k) {
                const Complex w = f.creation ? std::conj(u(f.mode, k)) : u(f.mode, k);
                if (w != Complex(0.0)) single += OperatorSum(w, LadderString{{k, f.creation, 1}});
            }
            for (int p = 0; p < f.power; ++p) expanded = expanded * single;
        }
        out += expanded;
    }
    return out.simplified();
}

}  // namespace hzent
