#pragma once

// Test-only oracles, kept independent of the library's search and closure
// paths on purpose: subsets are enumerated exhaustively and predicates are
// evaluated straight from the definitions.

#include <algorithm>
#include <numeric>
#include <optional>
#include <vector>

#include "fusalg/module.hpp"

namespace oracles {

using fusalg::FiniteModule;
using fusalg::FiniteRing;
using fusalg::SubsetMask;

/// All right (or two-sided) ideals by filtering every subset containing 0.
/// Exponential; callers keep the order at 16 or below.
inline std::vector<SubsetMask> ideals_by_subset_filter(const FiniteRing& ring, bool two_sided) {
    const int n = ring.order();
    std::vector<SubsetMask> out;
    for (std::uint32_t bits = 1; bits < (1u << n); bits += 2) { // bit 0 set: contains zero
        std::vector<int> elems;
        for (int i = 0; i < n; ++i)
            if (bits & (1u << i)) elems.push_back(i);
        bool ok = true;
        for (std::size_t i = 0; i < elems.size() && ok; ++i) {
            for (std::size_t j = 0; j < elems.size() && ok; ++j)
                if (!(bits & (1u << ring.add(elems[i], elems[j])))) ok = false;
            for (int r = 0; r < n && ok; ++r) {
                if (!(bits & (1u << ring.mul(elems[i], r)))) ok = false;
                if (two_sided && !(bits & (1u << ring.mul(r, elems[i])))) ok = false;
            }
        }
        if (ok) out.push_back(SubsetMask::from_indices(n, elems));
    }
    std::sort(out.begin(), out.end(), [](const SubsetMask& a, const SubsetMask& b) {
        if (a.count() != b.count()) return a.count() < b.count();
        return a < b;
    });
    return out;
}

inline std::vector<SubsetMask> submodules_by_subset_filter(const FiniteModule& mod) {
    const int q = mod.order();
    std::vector<SubsetMask> out;
    for (std::uint32_t bits = 1; bits < (1u << q); bits += 2) {
        std::vector<int> elems;
        for (int i = 0; i < q; ++i)
            if (bits & (1u << i)) elems.push_back(i);
        bool ok = true;
        for (std::size_t i = 0; i < elems.size() && ok; ++i) {
            for (std::size_t j = 0; j < elems.size() && ok; ++j)
                if (!(bits & (1u << mod.add(elems[i], elems[j])))) ok = false;
            for (int r = 0; r < mod.ring().order() && ok; ++r)
                if (!(bits & (1u << mod.act(elems[i], r)))) ok = false;
        }
        if (ok) out.push_back(SubsetMask::from_indices(q, elems));
    }
    std::sort(out.begin(), out.end(), [](const SubsetMask& a, const SubsetMask& b) {
        if (a.count() != b.count()) return a.count() < b.count();
        return a < b;
    });
    return out;
}

/// Definitional essentiality: I meets every nonzero ideal from the full
/// lattice (supplied by the subset filter or the closure enumerator).
inline bool essential_by_definition(const SubsetMask& ideal, const std::vector<SubsetMask>& all_ideals) {
    for (const auto& j : all_ideals) {
        if (!j.any_beyond_zero()) continue;
        if (!(ideal & j).any_beyond_zero()) return false;
    }
    return true;
}

/// Searches all bijections fixing 0 for a ring isomorphism.
inline std::optional<std::vector<int>> find_ring_isomorphism(const FiniteRing& a, const FiniteRing& b) {
    if (a.order() != b.order()) return std::nullopt;
    const int n = a.order();
    std::vector<int> perm(std::size_t(n) - 1);
    std::iota(perm.begin(), perm.end(), 1);
    do {
        std::vector<int> map(n);
        map[0] = 0;
        for (int i = 1; i < n; ++i) map[i] = perm[std::size_t(i) - 1];
        if (map[a.one()] != b.one()) continue;
        bool ok = true;
        for (int x = 0; x < n && ok; ++x)
            for (int y = 0; y < n && ok; ++y)
                if (map[a.add(x, y)] != b.add(map[x], map[y]) || map[a.mul(x, y)] != b.mul(map[x], map[y]))
                    ok = false;
        if (ok) return map;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return std::nullopt;
}

} // namespace oracles
