#pragma once

#include "qsft/embedding.hpp"

#include <string>
#include <string_view>

namespace qsft {

struct SeedBundle {
    std::string name;
    EmbeddingPair pair;
};

/// Line format:
///   name <text>
///   graph G|H
///   vertex <id>
///   edge <id> <src> <dst>
///   map vertex <h-id> <g-id>
///   map xi0 <h-edge> <g-edge>
///   map xi1 <h-edge> <g-edge>
/// with '#' comments. Errors are ParseError with a "line N:" prefix.
SeedBundle parse_bundle(std::string_view text);

SeedBundle load_bundle(const std::string& path);

std::string format_bundle(const EmbeddingPair& p, const std::string& name);

}  // namespace qsft
