#pragma once

#include "logdiv/fan.hpp"
#include "logdiv/monoid.hpp"

#include <cstddef>
#include <optional>
#include <vector>

namespace logdiv {

/// Result of blowing up an affine fan along a monomial ideal: the normal-fan
/// subdivision of the base cone by the domains of linearity of
/// v |-> min over generators of <g, v>, plus, for every piece, the generator
/// realizing the minimum there (lex-least on ties).
struct BlowupResult {
    Fan base;
    Fan subdivision;
    /// Canonical (sorted, deduplicated) generator list actually used.
    std::vector<Vec> generators;
    /// Parallel to subdivision.max_cones(): the dominating generator.
    std::vector<Vec> minimal_generator;
};

/// Blow-up of an affine fan (exactly one maximal cone) along an ideal of its
/// chart monoid. Errors: Unsupported (non-affine base), SourceMismatch
/// (ideal not in the chart monoid), EmptyIdeal.
BlowupResult log_blowup(const Fan& base, const MonoidIdeal& ideal);

/// Convenience form taking raw generator vectors in the dual lattice.
BlowupResult log_blowup(const Fan& base, const std::vector<Vec>& ideal_gens);

/// The generator g with g' - g nonnegative on `cone` for every other
/// generator g' (i.e. the ideal pulls back to the principal ideal (g) on the
/// chart of `cone`), or nullopt if no generator dominates. Lex-least on ties.
std::optional<Vec> ideal_pullback_principal(const std::vector<Vec>& ideal_gens, const Cone& cone);

} // namespace logdiv
