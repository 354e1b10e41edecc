// Text formats for series-parallel instances, edge-list decomposition and a
// seeded random instance generator.
//
// Expression grammar (whitespace insignificant):
//   expr     := edge | series | parallel
//   edge     := "e(" label "," label ")"
//   series   := "S(" expr ("," expr)+ ")"
//   parallel := "P(" expr ("," expr)+ ")"
//   label    := [A-Za-z0-9_]+

#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "spenum/core.hpp"

namespace spenum {

class ParseError : public std::runtime_error {
public:
    ParseError(std::size_t position, const std::string& message);
    std::size_t position() const noexcept { return position_; }

private:
    std::size_t position_;
};

/// Parses one expression into a normalized, validated tree. Syntax problems
/// raise ParseError; structural ones raise ValidationError.
DecompTree parse_sp(std::string_view text);

/// Compact form: no whitespace, children in stored order.
std::string serialize_sp(const DecompTree& tree);

/// One expression per line; blank lines and '#' comments are skipped.
std::vector<DecompTree> parse_sp_lines(std::string_view text);

enum class DecompositionFailure { NotSeriesParallel, DisconnectedInput, InvalidInput };

class DecompositionError : public std::runtime_error {
public:
    DecompositionError(DecompositionFailure kind, const std::string& message);
    DecompositionFailure kind() const noexcept { return kind_; }

private:
    DecompositionFailure kind_;
};

using LabelPair = std::pair<VertexLabel, VertexLabel>;

/// Recognizes a two-terminal series-parallel graph by series and parallel
/// reductions and returns a normalized tree with terminals (s, t).
DecompTree decompose_edge_list(const std::vector<LabelPair>& edges, const VertexLabel& s, const VertexLabel& t);

struct EdgeListInput {
    VertexLabel s;
    VertexLabel t;
    std::vector<LabelPair> edges;
};

/// Edge-list file: a "terminals s t" line followed by one "u v" pair per line.
EdgeListInput parse_edge_list(std::string_view text);

/// Loads either format; edge-list input is recognized by its "terminals" header.
std::vector<DecompTree> parse_instances(std::string_view text);

struct RandomSpParams {
    std::uint64_t seed = 1;
    unsigned max_depth = 4;
    unsigned max_children = 3;
    double leaf_bias = 0.3;
};

/// Deterministic in the seed. Labels are "v0", "v1", ... with v0, v1 the terminals.
DecompTree random_sp(const RandomSpParams& params);

/// Terminal-swapped copy: series children reversed, every leaf flipped.
DecompTree reversed(const DecompTree& tree);

}  // namespace spenum
