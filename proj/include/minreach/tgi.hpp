#pragma once

#include <string>
#include <string_view>
#include <variant>

#include "minreach/instance.hpp"

namespace minreach::tgi {

enum class ProblemKind { Delete, Delay, Slow, WForest };

std::string_view kind_name(ProblemKind kind);

using AnyInstance =
    std::variant<DeleteInstance, DelayInstance, SlowInstance, WeightedForestDelayInstance>;

ProblemKind kind_of(const AnyInstance& inst);
const TemporalGraph& graph_of(const AnyInstance& inst);
const SourceSet& sources_of(const AnyInstance& inst);

/// Parse failure with the 1-based offending line (0 when the problem is not
/// tied to a single line).
struct ParseError : std::invalid_argument {
    int line;
    ParseError(int line_, const std::string& reason)
        : std::invalid_argument("line " + std::to_string(line_) + ": " + reason), line(line_) {}
};

/// Parses the line-oriented TGI text format:
///   tgi 1
///   n <int> tau <int>
///   problem <delete|delay|slow|wforest>
///   k <int> r <int> [delta <int>]
///   sources <id> ...
///   weight <id> <nonneg|inf>        (wforest only, default 1)
///   e <u> <v> <t> [g=<gamma>] [!]   (! marks undelayable, wforest only)
/// '#' starts a comment. Declared tau must cover every edge label; the
/// stored lifetime is normalized to max(t).
AnyInstance parse_instance(std::string_view text);

/// Canonical serialization: sorted edges, normalized whitespace, defaults
/// omitted. parse(serialize(x)) reproduces x.
std::string serialize_instance(const AnyInstance& inst);

/// FNV-1a 64 over the canonical serialization, as 16 hex digits.
std::string digest(const AnyInstance& inst);

}  // namespace minreach::tgi
