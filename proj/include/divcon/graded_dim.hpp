#pragma once

// Lattice-point counts for the bi-graded ring of a cD/2 divisorial
// contraction with discrepancy 2.
//
// For odd r >= 7 the degree-i piece is indexed by
//   N_i = { l in Z_{>=0}^5 : ((r+1)/2) l1 + ((r-1)/2) l2 + 2 l3 + l4 + r l5 = i,  l1, l2 <= 1 }
// split by the parity of l1 + l2 + l3.  dim V_i^j = #N_i^j, and the
// difference #N_i^j - #N_{i-2}^{1-j} - (2i+1)/r is a periodic correction
// B(k+2) - B(k) with k = 2i + rj mod 2r.  This header enumerates the sets,
// checks the set decomposition behind that recursion, and rebuilds B.

#include <algorithm>
#include <compare>
#include <cstddef>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "divcon/errors.hpp"
#include "divcon/rational.hpp"

namespace divcon {

struct NiPoint {
    int l1 = 0;
    int l2 = 0;
    int l3 = 0;
    int l4 = 0;
    int l5 = 0;

    int parity() const { return (l1 + l2 + l3) % 2; }

    long weighted_sum(int r) const {
        return static_cast<long>((r + 1) / 2) * l1 + static_cast<long>((r - 1) / 2) * l2 +
               2L * l3 + l4 + static_cast<long>(r) * l5;
    }

    friend auto operator<=>(const NiPoint&, const NiPoint&) = default;
};

inline void require_graded_r(int r) {
    if (r < 7 || r % 2 == 0) {
        throw PreconditionError("r must be odd and >= 7, got " + std::to_string(r));
    }
}

/// All points of N_i in lexicographic order; empty for i < 0.
inline std::vector<NiPoint> enumerate_ni(int r, long i) {
    require_graded_r(r);
    std::vector<NiPoint> out;
    if (i < 0) {
        return out;
    }
    const long a = (r + 1) / 2;
    const long b = (r - 1) / 2;
    for (int l1 = 0; l1 <= 1; ++l1) {
        for (int l2 = 0; l2 <= 1; ++l2) {
            for (long l3 = 0; 2 * l3 <= i; ++l3) {
                for (long l5 = 0; r * l5 <= i; ++l5) {
                    const long l4 = i - a * l1 - b * l2 - 2 * l3 - r * l5;
                    if (l4 >= 0) {
                        out.push_back({l1, l2, static_cast<int>(l3), static_cast<int>(l4),
                                       static_cast<int>(l5)});
                    }
                }
            }
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

/// Points of N_i of parity j.
inline std::vector<NiPoint> enumerate_ni(int r, long i, int j) {
    auto all = enumerate_ni(r, i);
    std::erase_if(all, [j](const NiPoint& p) { return p.parity() != j; });
    return all;
}

inline std::size_t dim_v(int r, long i, int j) {
    if (j != 0 && j != 1) {
        throw PreconditionError("parity j must be 0 or 1");
    }
    return enumerate_ni(r, i, j).size();
}

/// #N_i^j - #N_{i-2}^{1-j} against the boundary slice {l3 = 0}: for j = 0 the
/// points (0,0,0,*,*) and (1,1,0,*,*), for j = 1 the points (0,1,0,*,*) and
/// (1,0,0,*,*).
inline bool check_decomposition(int r, long i, int j) {
    if (i < 0) {
        throw PreconditionError("check_decomposition needs i >= 0");
    }
    const auto lhs = static_cast<long>(dim_v(r, i, j)) - static_cast<long>(dim_v(r, i - 2, 1 - j));
    long boundary = 0;
    for (const auto& p : enumerate_ni(r, i, j)) {
        if (p.l3 != 0) {
            continue;
        }
        const bool counted = j == 0 ? (p.l1 == p.l2) : (p.l1 != p.l2);
        boundary += counted ? 1 : 0;
    }
    return lhs == boundary;
}

class DimensionTable {
public:
    DimensionTable(int r, long i_max) : r_(r), i_max_(i_max) {
        require_graded_r(r);
        if (i_max < 0) {
            throw PreconditionError("i_max must be non-negative");
        }
        for (long i = 0; i <= i_max; ++i) {
            auto pts = enumerate_ni(r, i);
            std::size_t even = 0;
            for (const auto& p : pts) {
                even += p.parity() == 0 ? 1 : 0;
            }
            rows_[{i, 0}] = even;
            rows_[{i, 1}] = pts.size() - even;
        }
    }

    int r() const { return r_; }
    long i_max() const { return i_max_; }

    std::size_t at(long i, int j) const {
        if (i < 0) {
            return 0;
        }
        const auto it = rows_.find({i, j});
        if (it == rows_.end()) {
            throw PreconditionError("no entry (" + std::to_string(i) + "," + std::to_string(j) + ") in the table");
        }
        return it->second;
    }

    const std::map<std::pair<long, int>, std::size_t>& rows() const { return rows_; }

private:
    int r_;
    long i_max_;
    std::map<std::pair<long, int>, std::size_t> rows_;
};

/// Values of B(k+2) - B(k) on residues k mod 2r.
class DeltaProfile {
public:
    DeltaProfile(int r, std::map<int, Rational> delta) : r_(r), delta_(std::move(delta)) {
        if (r < 1 || r % 2 == 0) {
            throw PreconditionError("profile modulus 2r needs odd r");
        }
        for (const auto& [k, _] : delta_) {
            if (k < 0 || k >= 2 * r) {
                throw PreconditionError("residue " + std::to_string(k) + " outside [0, 2r)");
            }
        }
    }

    int r() const { return r_; }
    int modulus() const { return 2 * r_; }
    const std::map<int, Rational>& values() const { return delta_; }

    bool complete() const { return delta_.size() == static_cast<std::size_t>(2 * r_); }

    /// Sum of delta over the orbit of k -> k+2 containing residues of the given parity.
    Rational orbit_sum(int parity) const {
        Rational sum = 0;
        for (const auto& [k, d] : delta_) {
            if (k % 2 == parity) {
                sum += d;
            }
        }
        return sum;
    }

private:
    int r_;
    std::map<int, Rational> delta_;
};

inline int delta_key(int r, long i, int j) {
    return static_cast<int>(mod_floor(2LL * i + static_cast<long long>(r) * j, 2LL * r));
}

/// Delta(i, j) = #N_i^j - #N_{i-2}^{1-j} - (2i+1)/r for a single pair.
inline Rational delta_value(int r, long i, int j) {
    return Rational(static_cast<long>(dim_v(r, i, j)) - static_cast<long>(dim_v(r, i - 2, 1 - j))) -
           Rational(2 * i + 1, r);
}

/// Builds the profile from all 2 <= i <= i_max, throwing WellDefinednessError
/// as soon as one residue class receives two different values.
inline DeltaProfile delta_profile(int r, long i_max) {
    require_graded_r(r);
    if (i_max < 2L * r) {
        throw PreconditionError("delta_profile needs i_max >= 2r (" + std::to_string(2 * r) +
                                "), got " + std::to_string(i_max));
    }
    DimensionTable table(r, i_max);
    std::map<int, Rational> delta;
    for (long i = 2; i <= i_max; ++i) {
        for (int j = 0; j <= 1; ++j) {
            const Rational d = Rational(static_cast<long>(table.at(i, j)) -
                                        static_cast<long>(table.at(i - 2, 1 - j))) -
                               Rational(2 * i + 1, r);
            const int k = delta_key(r, i, j);
            auto [it, inserted] = delta.emplace(k, d);
            if (!inserted && it->second != d) {
                throw WellDefinednessError("residue " + std::to_string(k) + " mod " +
                                           std::to_string(2 * r) + " has values " +
                                           to_string(it->second) + " and " + to_string(d) +
                                           " (at i=" + std::to_string(i) + ", j=" + std::to_string(j) +
                                           ")");
            }
        }
    }
    return DeltaProfile(r, std::move(delta));
}

/// Rebuilds B on Z/2r from its differences, normalized by B(0) = B(1) = 0.
inline std::map<int, Rational> solve_b(const DeltaProfile& profile) {
    if (!profile.complete()) {
        throw PreconditionError("profile does not cover every residue mod 2r");
    }
    const int m = profile.modulus();
    std::map<int, Rational> b;
    for (int start = 0; start <= 1; ++start) {
        b[start] = 0;
        int k = start;
        Rational acc = 0;
        for (int step = 0; step < profile.r(); ++step) {
            acc += profile.values().at(k);
            k = (k + 2) % m;
            if (k != start) {
                b[k] = acc;
            }
        }
        if (acc != 0) {
            throw InconsistencyError("orbit of residue " + std::to_string(start) +
                                     " does not close: telescoping sum " + to_string(acc));
        }
    }
    return b;
}

}  // namespace divcon
