// Canonical codes for oriented series-parallel graphs and the explicit leaf
// bijections they induce.
//
// Code grammar: leaf -> E; series -> S ( c_1 ... c_k ) in chain order;
// parallel -> P ( sorted c_i ) with children sorted by descending code.
// Tokens order as S < P < E < ( < ).

#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "spenum/core.hpp"

namespace spenum {

class CanonicalCode {
public:
    enum class Token : std::uint8_t { Series = 0, Parallel = 1, Edge = 2, Open = 3, Close = 4 };

    CanonicalCode() = default;

    static CanonicalCode edge();
    static CanonicalCode series(const std::vector<const CanonicalCode*>& children);
    /// Sorts a copy of the children before concatenating.
    static CanonicalCode parallel(std::vector<const CanonicalCode*> children);

    std::size_t token_count() const noexcept { return tokens_.size(); }
    /// Raw token bytes, usable as a hash key.
    const std::string& bytes() const noexcept { return tokens_; }
    /// Letters S, P, E and parentheses, e.g. "P(ES(EE))".
    std::string to_string() const;

    friend bool operator==(const CanonicalCode&, const CanonicalCode&) = default;
    friend std::strong_ordering operator<=>(const CanonicalCode& a, const CanonicalCode& b) noexcept {
        int c = a.tokens_.compare(b.tokens_);
        return c < 0 ? std::strong_ordering::less : c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal;
    }

private:
    std::string tokens_;  // one byte per Token
};

/// Leaf map between two decomposition trees together with the vertex map it induces.
struct LeafBijection {
    std::vector<std::pair<std::uint32_t, std::uint32_t>> leaves;  // (from, to), sorted by from
    std::map<VertexLabel, VertexLabel> vertices;

    std::optional<std::uint32_t> image(std::uint32_t leaf) const;
    EdgeSet apply(const EdgeSet& es) const;
    LeafBijection inverse() const;
    bool is_identity() const;
};

CanonicalCode canonical_code(const DecompTree& tree);
CanonicalCode canonical_code(const OrientedSP& g);
/// Code of the same graph with its terminals exchanged.
CanonicalCode reversal_code(const DecompTree& tree);
CanonicalCode reversal_code(const OrientedSP& g);

/// Global leaf indices in canonical position order: series children in chain
/// order, parallel children by descending code with ties broken by child index.
/// With `reverse`, the order for the terminal-exchanged graph.
std::vector<std::uint32_t> canonical_leaf_order(const DecompTree& tree, bool reverse = false);

/// Terminal-fixing isomorphism a -> b, or nullopt when none exists.
std::optional<LeafBijection> iso_map(const DecompTree& a, const DecompTree& b);
std::optional<LeafBijection> iso_map(const OrientedSP& a, const OrientedSP& b);

/// Isomorphism from a onto b that sends a's source to b's sink and a's sink to b's source.
std::optional<LeafBijection> reversal_map(const DecompTree& a, const DecompTree& b);

/// Checks that `map` sends every leaf of `from` onto a leaf of `to` with
/// consistent endpoints and that the terminals go where expected.
bool verify_bijection(const DecompTree& from, const DecompTree& to, const LeafBijection& map, bool reversing);

struct IsoClass {
    std::size_t representative;  // child index
    std::vector<std::size_t> members;  // child indices, ascending; members[0] == representative
    std::vector<LeafBijection> to_representative;  // parallel to `members`
    CanonicalCode code;
};

struct IsoClassPartition {
    std::vector<IsoClass> classes;  // descending by code
};

IsoClassPartition partition_classes(const DecompTree& parallel_node);

struct MirrorPairing {
    NodeKind kind = NodeKind::Leaf;
    /// Series: reversal maps from child i onto child k-1-i.
    std::vector<LeafBijection> series_maps;

    struct ClassPair {
        std::size_t forward;   // class index
        std::size_t backward;  // class index, equal to forward for self-reverse classes
        LeafBijection map;     // reversal map from forward's representative onto backward's
    };
    /// Parallel: one entry per class; entry i has forward == i.
    std::vector<ClassPair> class_pairs;
};

/// Pairing witnessing an automorphism that exchanges the terminals, or nullopt.
std::optional<MirrorPairing> mirror_pairing(const DecompTree& node);

/// The terminal-exchanging automorphism of the whole tree as a leaf map, if any.
std::optional<LeafBijection> reversal_automorphism(const DecompTree& tree);

}  // namespace spenum
