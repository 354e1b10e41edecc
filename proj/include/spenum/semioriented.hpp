// Spanning trees up to automorphisms that may exchange the terminals.
//
// Without a terminal-exchanging automorphism the oriented list is already the
// answer. Otherwise each oriented representative T has a partner, the
// representative of the orbit of r(T) for the reversal r, and we keep T when
// its index tuple is lexicographically at least its partner's. The test is
// made only at the root; everything below is plain oriented enumeration.

#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "spenum/canonical.hpp"
#include "spenum/core.hpp"
#include "spenum/enumerate.hpp"

namespace spenum {

class ImageNotFound : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/// image[x] is the index, in the mirror's list, of the orbit of r(T_x).
struct IndexPermutation {
    std::vector<std::uint64_t> image;

    std::size_t size() const noexcept { return image.size(); }
    std::uint64_t operator()(std::uint64_t x) const { return image.at(x); }
    bool is_bijection() const;
    /// True when `back` undoes this permutation.
    bool inverts(const IndexPermutation& back) const;
    friend bool operator==(const IndexPermutation&, const IndexPermutation&) = default;
};

IndexPermutation reversal_index_perm(const OrientedSP& child, const OrientedSP& mirror, const LeafBijection& r,
                                     TreeKind kind = TreeKind::Spanning);

struct SemiorientedResult {
    TreeList trees;
    std::uint64_t candidates = 0;    // oriented trees examined
    std::uint64_t fixed_points = 0;  // candidates equal to their own partner
    bool has_reversal = false;
};

/// With `verify_with_oracle`, the output is re-partitioned by brute force and
/// std::logic_error is thrown on any missing or duplicated orbit.
SemiorientedResult semioriented_enumerate(const SemiorientedSP& g, bool verify_with_oracle = false);
TreeList semioriented_spanning(const SemiorientedSP& g, bool verify_with_oracle = false);

/// (oriented + trees fixed by the reversal) / 2, without enumerating.
BigInt count_semioriented(const SemiorientedSP& g);
/// Number of oriented representatives whose orbit is closed under reversal.
BigInt count_reversal_fixed(const SemiorientedSP& g);

}  // namespace spenum
