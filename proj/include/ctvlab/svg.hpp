#pragma once

#include <string>

#include "ctvlab/transversal.hpp"
#include "ctvlab/tverberg.hpp"

namespace ctvlab {

// Renders measures and a transversal certificate into an SVG: clouds are
// projected onto the orthogonal complement of the flat's direction (must be
// 2-dimensional), witness halfspace boundaries are drawn as lines, the flat's
// projection point as a cross.  Output only; doubles appear here and nowhere
// else.
std::string transversal_svg(const std::vector<MassCloud>& measures, const TransversalCert& cert);

// Projected part hulls and the common point q for a Tverberg certificate
// (projection onto the complement of the flat's direction, 2-dim only).
std::string tverberg_svg(const TvInstance& instance, const TverbergCert& cert);

} // namespace ctvlab
